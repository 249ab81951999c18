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

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "phasecov/core_linear.hpp"
#include "phasecov/error.hpp"

namespace phasecov {

/// Slack allowed on both complete-positivity inequalities. The comparison
/// is boundary inclusive: the example trajectories sit exactly on the
/// boundary.
inline constexpr double kCpTol = 1e-9;

/// Phase-covariant qubit channel in canonical form
///   rho -> 1/2 [ (I + l* s3) Tr rho + l1 s1 Tr(rho s1) + l1 s2 Tr(rho s2)
///                + l3 s3 Tr(rho s3) ].
/// The eigenvalue for sigma2 equals lambda1 and is not stored.
struct ChannelParams {
  double lambda1 = 1.0;
  double lambda3 = 1.0;
  double lambda_star = 0.0;

  static constexpr ChannelParams identity() { return {1.0, 1.0, 0.0}; }

  friend constexpr bool operator==(const ChannelParams&, const ChannelParams&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const ChannelParams& p) {
  return os << "(" << p.lambda1 << ", " << p.lambda3 << ", " << p.lambda_star << ")";
}

struct CpReport {
  bool valid = false;
  /// (1) - (|l*| + |l3|)
  double slack_a = 0.0;
  /// (1 + l3)^2 - (4 l1^2 + l*^2)
  double slack_b = 0.0;
};

inline CpReport validate_cp(const ChannelParams& p) {
  CpReport r;
  r.slack_a = 1.0 - (std::abs(p.lambda_star) + std::abs(p.lambda3));
  r.slack_b = (1.0 + p.lambda3) * (1.0 + p.lambda3) -
              (4.0 * p.lambda1 * p.lambda1 + p.lambda_star * p.lambda_star);
  const bool finite = std::isfinite(p.lambda1) && std::isfinite(p.lambda3) &&
                      std::isfinite(p.lambda_star);
  r.valid = finite && r.slack_a >= -kCpTol && r.slack_b >= -kCpTol;
  return r;
}

inline bool is_cp(const ChannelParams& p) { return validate_cp(p).valid; }

inline void require_cp(const ChannelParams& p) {
  const CpReport r = validate_cp(p);
  if (!r.valid) {
    std::ostringstream os;
    os << "parameters " << p << " violate complete positivity (slacks " << r.slack_a
       << ", " << r.slack_b << ")";
    throw Error(ErrorCode::InvalidChannel, os.str());
  }
}

/// Channel action on a Bloch vector with no validation. Hot loops use this.
constexpr BlochVector apply_bloch(const ChannelParams& p, const BlochVector& v) {
  return {p.lambda1 * v.x1, p.lambda1 * v.x2, p.lambda_star + p.lambda3 * v.x3};
}

/// Channel action extended linearly to arbitrary 2x2 matrices. Needed for
/// (id (x) channel) on off-diagonal operator blocks, which are not states.
inline ComplexMatrix2 apply_linear(const ChannelParams& p, const ComplexMatrix2& m) {
  const Complex tr = m.trace();
  const Complex t1 = (m * pauli::sigma1).trace();
  const Complex t2 = (m * pauli::sigma2).trace();
  const Complex t3 = (m * pauli::sigma3).trace();
  return Complex(0.5) * (tr * (pauli::identity + Complex(p.lambda_star) * pauli::sigma3) +
                         (p.lambda1 * t1) * pauli::sigma1 + (p.lambda1 * t2) * pauli::sigma2 +
                         (p.lambda3 * t3) * pauli::sigma3);
}

inline QubitState apply(const ChannelParams& p, const QubitState& rho) {
  require_cp(p);
  BlochVector out = apply_bloch(p, rho.bloch());
  // Parameters inside the CP tolerance band can push the norm past 1 by
  // O(kCpTol); project back onto the sphere.
  const double n = out.norm();
  if (n > 1.0) out = (1.0 / n) * out;
  return QubitState::from_bloch(out);
}

/// Fixed point of the channel. Fails when lambda3 = 1, where CP forces
/// lambda* = 0 and every state on the sigma3 axis is invariant.
inline QubitState invariant_state(const ChannelParams& p) {
  require_cp(p);
  if (std::abs(1.0 - p.lambda3) <= kStateTol) {
    throw Error(ErrorCode::DegenerateFixedPoint, "lambda3 = 1 has no unique fixed point");
  }
  const double z = p.lambda_star / (1.0 - p.lambda3);
  return QubitState::from_bloch({0.0, 0.0, std::clamp(z, -1.0, 1.0)});
}

/// |l*| / (1 - |l3|): 0 for unital maps, 1 for maximally non-unital maps.
struct NonUnitalityDegree {
  double value = 0.0;
};

inline NonUnitalityDegree non_unitality(const ChannelParams& p) {
  require_cp(p);
  const double gap = 1.0 - std::abs(p.lambda3);
  if (gap <= kStateTol) return {0.0};
  return {std::min(1.0, std::abs(p.lambda_star) / gap)};
}

enum class Sign : int { Plus = 1, Minus = -1 };

constexpr double to_double(Sign s) { return s == Sign::Plus ? 1.0 : -1.0; }

/// The maximally non-unital endpoint (l1, l3, +-(1 - |l3|)) must be CP.
inline bool endpoint_is_cp(double lambda1, double lambda3) {
  const double ns = 1.0 - std::abs(lambda3);
  return 4.0 * lambda1 * lambda1 + ns * ns <= (1.0 + lambda3) * (1.0 + lambda3) + kCpTol;
}

/// Convex mixture (1 - p) U + p NU of the unital channel with eigenvalues
/// (l1, l3) and its maximally non-unital partner.
inline ChannelParams mix_unital_nonunital(double lambda1, double lambda3, double p,
                                          Sign sign = Sign::Plus) {
  if (!(p >= 0.0 && p <= 1.0)) {
    std::ostringstream os;
    os << "mixing weight " << p << " outside [0, 1]";
    throw Error(ErrorCode::OutOfRange, os.str());
  }
  if (!endpoint_is_cp(lambda1, lambda3) || std::abs(lambda3) > 1.0 + kCpTol) {
    std::ostringstream os;
    os << "maximally non-unital endpoint for (" << lambda1 << ", " << lambda3
       << ") is not completely positive";
    throw Error(ErrorCode::EndpointNotCP, os.str());
  }
  return {lambda1, lambda3, to_double(sign) * p * (1.0 - std::abs(lambda3))};
}

/// exp(-i sigma3 phi)
inline ComplexMatrix2 phase_rotation(double phi) {
  return {std::polar(1.0, -phi), 0.0, 0.0, std::polar(1.0, phi)};
}

/// Max-entry distance between channel(U rho U^dag) and U channel(rho) U^dag.
inline double check_covariance(const ChannelParams& p, const QubitState& rho, double phi) {
  require_cp(p);
  const ComplexMatrix2 u = phase_rotation(phi);
  const ComplexMatrix2 m = rho.matrix();
  const ComplexMatrix2 lhs = apply_linear(p, u * m * u.adjoint());
  const ComplexMatrix2 rhs = u * apply_linear(p, m) * u.adjoint();
  return lhs.max_abs_diff(rhs);
}

}  // namespace phasecov
