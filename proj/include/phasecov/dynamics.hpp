// Copyright 2026 The phasecov Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Two dynamical families of phase-covariant maps, each mixed with its
// unital partner at weight p:
//   exponential decay  l1 = e^-t,  l3 = e^-2t,  l* = p (1 - e^-2t)
//   oscillation        l1 = cos t, l3 = cos^2 t, l* = p sin^2 t
// Besides evaluating the general closed forms along a trajectory, this
// module carries hand-reduced per-family expressions, which serve as an
// independent cross-check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <string_view>
#include <vector>

#include "phasecov/channel.hpp"
#include "phasecov/entanglement.hpp"
#include "phasecov/error.hpp"
#include "phasecov/measures.hpp"
#include "phasecov/parallel.hpp"

namespace phasecov {

enum class FamilyKind { ExponentialDecay, Oscillation };

constexpr std::string_view to_string(FamilyKind k) {
  return k == FamilyKind::ExponentialDecay ? "exp" : "osc";
}

struct TrajectoryFamily {
  FamilyKind kind = FamilyKind::ExponentialDecay;
  double p = 1.0;
  Sign sign = Sign::Plus;
};

/// lambda* is formed as sign p (1 - lambda3) from the rounded lambda3, which
/// equals p (1 - e^-2t) and p sin^2 t but keeps p = 1 exactly on the CP
/// boundary |lambda*| + lambda3 = 1.
inline ChannelParams sample(const TrajectoryFamily& family, double t) {
  if (!(t >= 0.0)) {
    std::ostringstream os;
    os << "time " << t << " < 0";
    throw Error(ErrorCode::OutOfRange, os.str());
  }
  const double s = to_double(family.sign) * family.p;
  const double l1 = family.kind == FamilyKind::ExponentialDecay ? std::exp(-t) : std::cos(t);
  const double l3 = l1 * l1;
  return {l1, l3, s * (1.0 - l3)};
}

/// Measures evaluated from the per-family reduced expressions.
struct PaperMeasures {
  double f_min = 0.0;
  double f_max = 0.0;
  double nu2_squared = 0.0;
  double nu_inf = 0.0;
};

/// Exponential-decay family. At t = 0 the 0/0 quotients take their exact
/// limits: (1 - e^-t)/sinh t -> 1 and (1 - e^-2t)/(1 - e^-t) -> 2.
inline PaperMeasures paper_formulas_exp(double p, double t) {
  const double e1 = std::exp(-t);
  const double e2 = std::exp(-2.0 * t);
  const double one_minus_e1 = -std::expm1(-t);
  const double one_minus_e2 = -std::expm1(-2.0 * t);
  const double sh = std::sinh(t);
  const bool at_origin = t == 0.0;

  PaperMeasures m;
  m.f_min = 0.5 * (1.0 - p + (1.0 + p) * e2);

  const double saturated = 0.5 * (1.0 + p + (1.0 - p) * e2);
  const double fmax_threshold = at_origin ? 1.0 : one_minus_e1 / sh;
  const double ratio = at_origin ? 2.0 : one_minus_e2 / one_minus_e1;
  m.f_max = p <= fmax_threshold ? ratio / 4.0 * (2.0 + p * p * sh) : saturated;

  m.nu2_squared = 0.5 * (1.0 + p * p) + 0.5 * (1.0 - p * p) * e2;

  const double inf_threshold = at_origin ? 0.5 : one_minus_e1 / (2.0 * sh);
  m.nu_inf = p <= inf_threshold ? 0.5 * (1.0 + e1) : saturated;
  return m;
}

/// Oscillating family. The branch conditions are open at cos t = +-1, where
/// the limit from either side is the interior branch, so those points join
/// it. 1 - cos t is formed as sin^2 t / (1 + cos t) for cos t > 0 to avoid
/// cancellation.
inline PaperMeasures paper_formulas_osc(double p, double t) {
  const double c = std::cos(t);
  const double sn = std::sin(t);
  const double s2 = sn * sn;
  const double one_minus_c = c > 0.0 ? s2 / (1.0 + c) : 1.0 - c;
  const auto interior = [&] { return s2 * (4.0 * c + p * p * s2) / (8.0 * c * one_minus_c); };

  PaperMeasures m;
  if (-1.0 <= c && c < 0.0 && p <= 2.0 * std::abs(c) / s2 * one_minus_c) {
    m.f_min = interior();
  } else {
    m.f_min = 0.5 * (1.0 + c * c - p * s2);
  }
  if (0.0 < c && c <= 1.0 && p <= 2.0 * c / s2 * one_minus_c) {
    m.f_max = interior();
  } else {
    m.f_max = 0.5 * (1.0 + c * c + p * s2);
  }
  m.nu2_squared = 0.5 * (1.0 + c * c + p * p * s2);
  m.nu_inf = 0.5 * (1.0 + std::max(std::abs(c), std::abs(c * c + p * s2)));
  return m;
}

/// max{0, e^-t (1 - sqrt(1 - p^2) sinh t)}
inline double concurrence_exp(double p, double t) {
  return std::max(0.0, std::exp(-t) * (1.0 - std::sqrt(std::max(0.0, 1.0 - p * p)) * std::sinh(t)));
}

/// 1/2 max{0, 2|cos t| - sqrt(1 - p^2) sin^2 t}
inline double concurrence_osc(double p, double t) {
  const double sn = std::sin(t);
  return 0.5 * std::max(0.0, 2.0 * std::abs(std::cos(t)) -
                                 std::sqrt(std::max(0.0, 1.0 - p * p)) * sn * sn);
}

inline PaperMeasures paper_formulas(FamilyKind kind, double p, double t) {
  return kind == FamilyKind::ExponentialDecay ? paper_formulas_exp(p, t) : paper_formulas_osc(p, t);
}

inline double paper_concurrence(FamilyKind kind, double p, double t) {
  return kind == FamilyKind::ExponentialDecay ? concurrence_exp(p, t) : concurrence_osc(p, t);
}

/// Agreement tolerance between the general closed forms and the reduced
/// per-family expressions.
inline constexpr double kTrajectoryTol = 1e-9;

struct TrajectorySample {
  double t = 0.0;
  double p = 0.0;
  ChannelParams params;
  double f_min = 0.0;
  double f_max = 0.0;
  double nu2_squared = 0.0;
  double nu_inf_paper = 0.0;
  double nu_inf_bloch = 0.0;
  double concurrence = 0.0;
  double eof = 0.0;
  PaperMeasures paper;
  double paper_concurrence = 0.0;
  /// Set when a reduced expression disagrees with its closed form by more
  /// than kTrajectoryTol. nu_inf_bloch is not compared.
  bool flagged = false;
};

inline TrajectorySample evaluate_sample(const TrajectoryFamily& family, double t) {
  TrajectorySample s;
  s.t = t;
  s.p = family.p;
  s.params = sample(family, t);
  const MeasureReport m = evaluate_measures(s.params);
  s.f_min = m.f_min.value;
  s.f_max = m.f_max.value;
  s.nu2_squared = m.nu2_squared.value;
  s.nu_inf_paper = m.nu_inf_paper;
  s.nu_inf_bloch = m.nu_inf_bloch.value;
  s.concurrence = concurrence_closed(s.params);
  s.eof = entanglement_of_formation(s.concurrence);
  s.paper = paper_formulas(family.kind, family.p, t);
  s.paper_concurrence = paper_concurrence(family.kind, family.p, t);
  s.flagged = std::abs(s.f_min - s.paper.f_min) > kTrajectoryTol ||
              std::abs(s.f_max - s.paper.f_max) > kTrajectoryTol ||
              std::abs(s.nu2_squared - s.paper.nu2_squared) > kTrajectoryTol ||
              std::abs(s.nu_inf_paper - s.paper.nu_inf) > kTrajectoryTol ||
              std::abs(s.concurrence - s.paper_concurrence) > kTrajectoryTol;
  return s;
}

/// Evaluates the family on a sorted, nonnegative time grid. Output order
/// matches the grid whatever the worker count.
inline std::vector<TrajectorySample> run_trajectory(const TrajectoryFamily& family,
                                                    const std::vector<double>& t_grid,
                                                    unsigned workers = configured_threads()) {
  if (!std::is_sorted(t_grid.begin(), t_grid.end()) ||
      (!t_grid.empty() && !(t_grid.front() >= 0.0))) {
    throw Error(ErrorCode::OutOfRange, "time grid must be sorted and nonnegative");
  }
  if (!(family.p >= 0.0 && family.p <= 1.0)) {
    std::ostringstream os;
    os << "mixing weight " << family.p << " outside [0, 1]";
    throw Error(ErrorCode::OutOfRange, os.str());
  }
  std::vector<TrajectorySample> out(t_grid.size());
  parallel_chunks(t_grid.size(), workers, [&](std::size_t begin, std::size_t end, std::size_t) {
    for (std::size_t k = begin; k < end; ++k) out[k] = evaluate_sample(family, t_grid[k]);
  });
  return out;
}

/// n points from start to stop inclusive; n = 1 gives {start}.
inline std::vector<double> linspace(double start, double stop, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t k = 0; k < n; ++k) {
    v[k] = n == 1 ? start
                  : (k + 1 == n ? stop
                                : start + (stop - start) * static_cast<double>(k) /
                                              static_cast<double>(n - 1));
  }
  return v;
}

inline std::vector<double> default_time_grid(FamilyKind kind) {
  return kind == FamilyKind::ExponentialDecay ? linspace(0.0, 4.0, 401)
                                              : linspace(0.0, 2.0 * std::numbers::pi, 629);
}

inline std::vector<double> default_mixing_weights() { return {0.0, 0.3, 0.5, 0.7, 1.0}; }

}  // namespace phasecov
