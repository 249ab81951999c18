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

// Brute-force verification of the closed-form measures. Every objective is
// evaluated from the channel action on explicit pure inputs sampled over the
// whole Bloch sphere (x3 rows times azimuth columns), so the search does not
// rely on the azimuthal symmetry the closed forms exploit. The best grid
// point is then polished by golden-section search along x3.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "phasecov/channel.hpp"
#include "phasecov/core_linear.hpp"
#include "phasecov/entanglement.hpp"
#include "phasecov/error.hpp"
#include "phasecov/measures.hpp"
#include "phasecov/parallel.hpp"
#include "phasecov/sampling.hpp"

namespace phasecov {

struct GridSpec {
  int n_polar = 4001;
  int n_azimuth = 64;
  int refinement = 40;

  void validate() const {
    if (n_polar < 2 || n_azimuth < 1 || refinement < 0) {
      std::ostringstream os;
      os << "grid " << n_polar << "," << n_azimuth << "," << refinement
         << " needs nPolar >= 2, nAzimuth >= 1, refinement >= 0";
      throw Error(ErrorCode::OutOfRange, os.str());
    }
  }
};

struct OracleReport {
  double value = 0.0;
  BlochVector argument;
  double closed_form_value = 0.0;
  double absolute_gap = 0.0;
  /// Only used by brute_fixed_point.
  std::size_t iterations = 0;
};

enum class Goal { Minimize, Maximize };

namespace detail {

inline BlochVector sphere_point(double x3, double phi) {
  const double rho = std::sqrt(std::max(0.0, 1.0 - x3 * x3));
  return {rho * std::cos(phi), rho * std::sin(phi), x3};
}

constexpr bool better(Goal g, double candidate, double incumbent) {
  return g == Goal::Maximize ? candidate > incumbent : candidate < incumbent;
}

struct GridBest {
  double value = std::numeric_limits<double>::quiet_NaN();
  std::size_t index = 0;
  bool found = false;
};

/// Golden-section search for the optimum of f over [lo, hi]. The returned
/// point is never worse than `start`, which must lie in the interval.
template <typename F>
std::pair<double, double> golden_section(F&& f, Goal g, double lo, double hi, double start,
                                         double start_value, int iterations) {
  constexpr double inv_phi = std::numbers::phi - 1.0;
  double best_x = start;
  double best_v = start_value;
  const auto consider = [&](double x, double v) {
    if (better(g, v, best_v)) {
      best_x = x;
      best_v = v;
    }
  };
  consider(lo, f(lo));
  consider(hi, f(hi));
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < iterations; ++it) {
    if (better(g, fc, fd) || fc == fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    consider(c, fc);
    consider(d, fd);
  }
  return {best_x, best_v};
}

}  // namespace detail

struct SearchResult {
  double value = 0.0;
  BlochVector argument;
};

/// Optimises objective(BlochVector) over pure states. Rows are x3 values
/// -1 + 2i/(nPolar - 1), columns azimuths 2 pi j / nAzimuth; ties resolve to
/// the smallest row-major index, which makes the result independent of the
/// worker count.
template <typename Objective>
SearchResult sphere_search(const Objective& objective, Goal goal, const GridSpec& grid,
                           unsigned workers = configured_threads()) {
  grid.validate();
  const auto n_polar = static_cast<std::size_t>(grid.n_polar);
  const auto n_az = static_cast<std::size_t>(grid.n_azimuth);
  const auto row_x3 = [&](std::size_t i) {
    return i + 1 == n_polar ? 1.0 : -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n_polar - 1);
  };
  const auto column_phi = [&](std::size_t j) {
    return 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_az);
  };
  std::vector<double> cos_phi(n_az), sin_phi(n_az);
  for (std::size_t j = 0; j < n_az; ++j) {
    cos_phi[j] = std::cos(column_phi(j));
    sin_phi[j] = std::sin(column_phi(j));
  }

  std::vector<detail::GridBest> partial(std::max(1u, workers));
  parallel_chunks(n_polar, workers, [&](std::size_t begin, std::size_t end, std::size_t chunk) {
    detail::GridBest best;
    for (std::size_t i = begin; i < end; ++i) {
      const double x3 = row_x3(i);
      const double rho = std::sqrt(std::max(0.0, 1.0 - x3 * x3));
      for (std::size_t j = 0; j < n_az; ++j) {
        const double v = objective(BlochVector{rho * cos_phi[j], rho * sin_phi[j], x3});
        if (!best.found || detail::better(goal, v, best.value)) {
          best = {v, i * n_az + j, true};
        }
      }
    }
    partial[chunk] = best;
  });

  detail::GridBest best;
  for (const auto& p : partial) {
    if (!p.found) continue;
    if (!best.found || detail::better(goal, p.value, best.value) ||
        (p.value == best.value && p.index < best.index)) {
      best = p;
    }
  }

  const std::size_t i = best.index / n_az;
  const double phi = column_phi(best.index % n_az);
  const double x3 = row_x3(i);
  const double lo = row_x3(i == 0 ? 0 : i - 1);
  const double hi = row_x3(std::min(n_polar - 1, i + 1));
  const auto along_x3 = [&](double z) { return objective(detail::sphere_point(z, phi)); };
  const auto [bx, bv] =
      detail::golden_section(along_x3, goal, lo, hi, x3, best.value, grid.refinement);
  return {bv, detail::sphere_point(bx, phi)};
}

namespace objective {

/// Tr(P channel(P)) = (1 + x . channel(x)) / 2
inline auto fidelity(const ChannelParams& p) {
  return [p](const BlochVector& x) { return 0.5 * (1.0 + x.dot(apply_bloch(p, x))); };
}

/// Tr(channel(P)^2) from the output eigenvalues (1 +- r)/2.
inline auto purity(const ChannelParams& p) {
  return [p](const BlochVector& x) {
    const double r = apply_bloch(p, x).norm();
    const double hi = 0.5 * (1.0 + r);
    const double lo = 0.5 * (1.0 - r);
    return hi * hi + lo * lo;
  };
}

/// Schatten p-norm of channel(P) from its eigenvalues.
inline auto schatten(const ChannelParams& params, double p) {
  return [params, p](const BlochVector& x) {
    const double r = apply_bloch(params, x).norm();
    const double hi = 0.5 * (1.0 + r);
    const double lo = 0.5 * (1.0 - r);
    if (std::isinf(p)) return hi;
    return std::pow(std::pow(hi, p) + std::pow(lo, p), 1.0 / p);
  };
}

/// max_Q Tr(Q channel(P)) with Q aligned to the output Bloch vector, using
/// the bilinear form 1/2 [1 + l* y3 + l1 x1 y1 + l1 x2 y2 + l3 x3 y3].
inline auto best_projector_overlap(const ChannelParams& p) {
  return [p](const BlochVector& x) {
    const BlochVector out = apply_bloch(p, x);
    const double r = out.norm();
    const BlochVector y = r > 0.0 ? (1.0 / r) * out : BlochVector{0.0, 0.0, 1.0};
    return 0.5 * (1.0 + p.lambda_star * y.x3 + p.lambda1 * x.x1 * y.x1 +
                  p.lambda1 * x.x2 * y.x2 + p.lambda3 * x.x3 * y.x3);
  };
}

}  // namespace objective

namespace detail {
inline OracleReport make_report(const SearchResult& r, double closed) {
  return {r.value, r.argument, closed, std::abs(r.value - closed), 0};
}
}  // namespace detail

struct FidelityExtrema {
  OracleReport min;
  OracleReport max;
};

inline FidelityExtrema brute_fidelity_extrema(const ChannelParams& p, const GridSpec& grid = {},
                                              unsigned workers = configured_threads()) {
  require_cp(p);
  const auto f = objective::fidelity(p);
  return {detail::make_report(sphere_search(f, Goal::Minimize, grid, workers), f_min_closed(p).value),
          detail::make_report(sphere_search(f, Goal::Maximize, grid, workers), f_max_closed(p).value)};
}

/// Maximal output Schatten p-norm; compared against nu_p_general.
inline OracleReport brute_output_norm(const ChannelParams& params, double p,
                                      const GridSpec& grid = {},
                                      unsigned workers = configured_threads()) {
  require_cp(params);
  if (!(p >= 1.0)) {
    std::ostringstream os;
    os << "Schatten exponent " << p << " < 1";
    throw Error(ErrorCode::InvalidExponent, os.str());
  }
  return detail::make_report(
      sphere_search(objective::schatten(params, p), Goal::Maximize, grid, workers),
      nu_p_general(params, p));
}

/// Maximal output purity Tr(channel(P)^2); compared against the squared
/// 2-norm closed form.
inline OracleReport brute_output_purity(const ChannelParams& p, const GridSpec& grid = {},
                                        unsigned workers = configured_threads()) {
  require_cp(p);
  return detail::make_report(sphere_search(objective::purity(p), Goal::Maximize, grid, workers),
                             nu2_squared_closed(p).value);
}

/// max_P max_Q Tr(Q channel(P)), inner maximum taken analytically.
inline OracleReport brute_inf_double_max(const ChannelParams& p, const GridSpec& grid = {},
                                         unsigned workers = configured_threads()) {
  require_cp(p);
  return detail::make_report(
      sphere_search(objective::best_projector_overlap(p), Goal::Maximize, grid, workers),
      nu_inf_bloch(p).value);
}

/// Iterates the channel from the maximally mixed state until successive
/// Bloch vectors differ by less than 1e-14.
inline OracleReport brute_fixed_point(const ChannelParams& p) {
  require_cp(p);
  if (std::abs(p.lambda3) >= 1.0 - kStateTol) {
    throw Error(ErrorCode::NoConvergence, "|lambda3| = 1 gives a marginal fixed point");
  }
  constexpr std::size_t kMaxIterations = 10000;
  constexpr double kStep = 1e-14;
  BlochVector v{};
  for (std::size_t it = 1; it <= kMaxIterations; ++it) {
    const BlochVector next = apply_bloch(p, v);
    const double step = max_abs_diff(next, v);
    v = next;
    if (step < kStep) {
      const BlochVector target = invariant_state(p).bloch();
      return {v.x3, v, target.x3, max_abs_diff(v, target), it};
    }
  }
  std::ostringstream os;
  os << "no convergence after " << kMaxIterations << " iterations for " << p;
  throw Error(ErrorCode::NoConvergence, os.str());
}

/// Per-measure worst gaps over a random sample of CP channels.
struct AuditSummary {
  std::size_t samples = 0;
  double f_min_gap = 0.0;
  double f_max_gap = 0.0;
  double nu2_squared_gap = 0.0;
  double nu_inf_bloch_gap = 0.0;
  double double_max_gap = 0.0;
  /// |nu_inf_paper - oracle|, the known discrepancy channel.
  double nu_inf_paper_gap = 0.0;
  ChannelParams nu_inf_paper_worst;
  /// Same gap restricted to |l3| >= |l1| or l* = 0.
  double nu_inf_paper_gap_agreeing_regime = 0.0;
  std::size_t paper_gap_above_1e3 = 0;

  double max_checked_gap() const {
    return std::max({f_min_gap, f_max_gap, nu2_squared_gap, nu_inf_bloch_gap, double_max_gap});
  }
  bool passed(double tol = 1e-6) const { return max_checked_gap() < tol; }
};

inline AuditSummary run_audit(std::size_t n_samples, std::uint64_t seed, const GridSpec& grid = {},
                              unsigned workers = configured_threads()) {
  ParamSampler sampler(seed);
  AuditSummary s;
  s.samples = n_samples;
  for (std::size_t k = 0; k < n_samples; ++k) {
    const ChannelParams p = sampler.cp_params();
    const FidelityExtrema fid = brute_fidelity_extrema(p, grid, workers);
    const OracleReport purity = brute_output_purity(p, grid, workers);
    const OracleReport inf = brute_output_norm(p, kInfinityNorm, grid, workers);
    const OracleReport dbl = brute_inf_double_max(p, grid, workers);
    s.f_min_gap = std::max(s.f_min_gap, fid.min.absolute_gap);
    s.f_max_gap = std::max(s.f_max_gap, fid.max.absolute_gap);
    s.nu2_squared_gap = std::max(s.nu2_squared_gap, purity.absolute_gap);
    s.nu_inf_bloch_gap = std::max(s.nu_inf_bloch_gap, inf.absolute_gap);
    s.double_max_gap = std::max(s.double_max_gap, std::abs(dbl.value - inf.value));
    const double paper_gap = std::abs(nu_inf_paper(p) - inf.value);
    if (paper_gap > s.nu_inf_paper_gap) {
      s.nu_inf_paper_gap = paper_gap;
      s.nu_inf_paper_worst = p;
    }
    if (std::abs(p.lambda3) >= std::abs(p.lambda1) || p.lambda_star == 0.0) {
      s.nu_inf_paper_gap_agreeing_regime = std::max(s.nu_inf_paper_gap_agreeing_regime, paper_gap);
    }
    if (paper_gap > 1e-3) ++s.paper_gap_above_1e3;
  }
  return s;
}

}  // namespace phasecov
