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

// Closed-form performance measures of phase-covariant channels on pure
// inputs: extremal channel fidelities, maximal output 2-norm, and maximal
// output infinity-norm. Every objective depends on the input only through
// its x3 Bloch coordinate, so each extremum is attained on a ring of the
// Bloch sphere described by an ExtremalFamily.

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string_view>

#include "phasecov/channel.hpp"
#include "phasecov/core_linear.hpp"
#include "phasecov/error.hpp"

namespace phasecov {

enum class Branch { Interior, Endpoint };

constexpr std::string_view to_string(Branch b) {
  return b == Branch::Interior ? "interior" : "endpoint";
}

/// Pure inputs (x1, +-sqrt(1 - x3^2 - x1^2), x3) with x1 free in
/// [-sqrt(1 - x3^2), sqrt(1 - x3^2)].
struct ExtremalFamily {
  double x3 = 1.0;

  double x1_bound() const { return std::sqrt(std::max(0.0, 1.0 - x3 * x3)); }

  /// Member with the given x1 (clamped to the allowed range) and sign of x2.
  BlochVector member(double x1, bool positive_x2 = true) const {
    const double b = x1_bound();
    x1 = std::clamp(x1, -b, b);
    const double x2 = std::sqrt(std::max(0.0, 1.0 - x3 * x3 - x1 * x1));
    return {x1, positive_x2 ? x2 : -x2, x3};
  }
};

struct ClosedForm {
  double value = 0.0;
  ExtremalFamily family;
  Branch branch = Branch::Endpoint;
};

namespace detail {
constexpr double sign_or_plus(double x) { return x < 0.0 ? -1.0 : 1.0; }
}  // namespace detail

/// Tr(P channel(P)) for the pure state with Bloch vector v.
inline double fidelity_on_pure(const ChannelParams& p, const BlochVector& v) {
  if (std::abs(v.norm_squared() - 1.0) > 1e-9) {
    std::ostringstream os;
    os << "Bloch vector with squared norm " << v.norm_squared() << " is not pure";
    throw Error(ErrorCode::NotPure, os.str());
  }
  return 0.5 * (1.0 + p.lambda1 * (v.x1 * v.x1 + v.x2 * v.x2) + p.lambda3 * v.x3 * v.x3 +
                p.lambda_star * v.x3);
}

/// Minimal channel fidelity over pure inputs.
inline ClosedForm f_min_closed(const ChannelParams& p) {
  require_cp(p);
  const double gap = p.lambda3 - p.lambda1;
  const double ls = p.lambda_star;
  if (gap > 0.0 && std::abs(ls) < 2.0 * gap) {
    return {0.5 * (1.0 + p.lambda1 - ls * ls / (4.0 * gap)), {-ls / (2.0 * gap)},
            Branch::Interior};
  }
  return {0.5 * (1.0 + p.lambda3 - std::abs(ls)), {-detail::sign_or_plus(ls)},
          Branch::Endpoint};
}

/// Maximal channel fidelity over pure inputs.
inline ClosedForm f_max_closed(const ChannelParams& p) {
  require_cp(p);
  const double gap = p.lambda1 - p.lambda3;
  const double ls = p.lambda_star;
  if (gap > 0.0 && std::abs(ls) < 2.0 * gap) {
    return {0.5 * (1.0 + p.lambda1 + ls * ls / (4.0 * gap)), {ls / (2.0 * gap)},
            Branch::Interior};
  }
  return {0.5 * (1.0 + p.lambda3 + std::abs(ls)), {detail::sign_or_plus(ls)},
          Branch::Endpoint};
}

/// Square of the maximal output 2-norm (maximal output purity).
inline ClosedForm nu2_squared_closed(const ChannelParams& p) {
  require_cp(p);
  const double l1sq = p.lambda1 * p.lambda1;
  const double l3sq = p.lambda3 * p.lambda3;
  const double ls = p.lambda_star;
  const double cross = p.lambda3 * ls;
  const double gap = l1sq - l3sq;
  if (gap > 0.0 && std::abs(cross) < gap) {
    return {0.5 * (1.0 + l1sq + l1sq * ls * ls / gap), {cross / gap}, Branch::Interior};
  }
  return {0.5 * (1.0 + l3sq + ls * ls + 2.0 * std::abs(cross)), {detail::sign_or_plus(cross)},
          Branch::Endpoint};
}

/// Maximal output infinity-norm using only the extreme points x_k, y_k = +-1
/// of the bilinear form Tr(Q channel(P)):
///   1/2 [1 + max{|l1|, |l3 + l*|, |l3 - l*|}].
/// Underestimates the true maximum when the output-norm maximiser is an
/// interior ring; see nu_inf_bloch.
inline double nu_inf_paper(const ChannelParams& p) {
  require_cp(p);
  const double m = std::max({std::abs(p.lambda1), std::abs(p.lambda3 + p.lambda_star),
                             std::abs(p.lambda3 - p.lambda_star)});
  return 0.5 * (1.0 + m);
}

/// Largest output Bloch norm over pure inputs, from the 2-norm maximiser.
inline double max_output_bloch_norm(const ChannelParams& p) {
  return std::sqrt(std::max(0.0, 2.0 * nu2_squared_closed(p).value - 1.0));
}

/// Maximal output infinity-norm 1/2 (1 + max_P |channel(P) Bloch vector|).
/// Shares its maximising family with the 2-norm.
inline ClosedForm nu_inf_bloch(const ChannelParams& p) {
  const ClosedForm nu2 = nu2_squared_closed(p);
  const double s = std::sqrt(std::max(0.0, 2.0 * nu2.value - 1.0));
  return {0.5 * (1.0 + s), nu2.family, nu2.branch};
}

inline constexpr double kInfinityNorm = std::numeric_limits<double>::infinity();

/// Maximal output Schatten p-norm, p >= 1 or kInfinityNorm.
inline double nu_p_general(const ChannelParams& params, double p) {
  if (!(p >= 1.0)) {
    std::ostringstream os;
    os << "Schatten exponent " << p << " < 1";
    throw Error(ErrorCode::InvalidExponent, os.str());
  }
  if (std::isinf(p)) return nu_inf_bloch(params).value;
  const double s = max_output_bloch_norm(params);
  const double hi = 0.5 * (1.0 + s);
  const double lo = 0.5 * (1.0 - s);
  return std::pow(std::pow(hi, p) + std::pow(lo, p), 1.0 / p);
}

struct MeasureReport {
  ClosedForm f_min;
  ClosedForm f_max;
  ClosedForm nu2_squared;
  double nu_inf_paper = 0.0;
  ClosedForm nu_inf_bloch;
};

inline MeasureReport evaluate_measures(const ChannelParams& p) {
  return {f_min_closed(p), f_max_closed(p), nu2_squared_closed(p), nu_inf_paper(p),
          nu_inf_bloch(p)};
}

}  // namespace phasecov
