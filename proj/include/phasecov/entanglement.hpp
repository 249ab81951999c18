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

// Entanglement of a maximally entangled qubit pair after one half passes
// through a phase-covariant channel. The evolved state keeps the X shape
// (nonzero only on the diagonal and anti-diagonal), so all spectra reduce to
// 2x2 blocks on the index pairs {0, 3} and {1, 2}.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <sstream>
#include <utility>

#include "phasecov/channel.hpp"
#include "phasecov/core_linear.hpp"
#include "phasecov/error.hpp"

namespace phasecov {

/// Dense 4x4 complex matrix on the two-qubit space, basis |ab> -> 2a + b.
class ComplexMatrix4 {
 public:
  constexpr ComplexMatrix4() = default;

  constexpr Complex operator()(std::size_t r, std::size_t c) const { return m_[4 * r + c]; }
  constexpr Complex& operator()(std::size_t r, std::size_t c) { return m_[4 * r + c]; }

  static constexpr ComplexMatrix4 identity() {
    ComplexMatrix4 m;
    for (std::size_t i = 0; i < 4; ++i) m(i, i) = 1.0;
    return m;
  }

  /// a (x) b
  static ComplexMatrix4 kron(const ComplexMatrix2& a, const ComplexMatrix2& b) {
    ComplexMatrix4 m;
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t k = 0; k < 2; ++k)
          for (std::size_t l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return m;
  }

  /// 2x2 block acting on the second qubit, for first-qubit indices (a, b).
  ComplexMatrix2 block(std::size_t a, std::size_t b) const {
    return {(*this)(2 * a, 2 * b), (*this)(2 * a, 2 * b + 1), (*this)(2 * a + 1, 2 * b),
            (*this)(2 * a + 1, 2 * b + 1)};
  }

  void set_block(std::size_t a, std::size_t b, const ComplexMatrix2& m) {
    for (std::size_t k = 0; k < 2; ++k)
      for (std::size_t l = 0; l < 2; ++l) (*this)(2 * a + k, 2 * b + l) = m(k, l);
  }

  Complex trace() const { return m_[0] + m_[5] + m_[10] + m_[15]; }

  ComplexMatrix4 conjugate() const {
    ComplexMatrix4 r;
    for (std::size_t i = 0; i < 16; ++i) r.m_[i] = std::conj(m_[i]);
    return r;
  }

  ComplexMatrix4 adjoint() const {
    ComplexMatrix4 r;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
  }

  double max_abs_diff(const ComplexMatrix4& o) const {
    double d = 0.0;
    for (std::size_t i = 0; i < 16; ++i) d = std::max(d, std::abs(m_[i] - o.m_[i]));
    return d;
  }

  friend ComplexMatrix4 operator+(const ComplexMatrix4& a, const ComplexMatrix4& b) {
    ComplexMatrix4 r;
    for (std::size_t i = 0; i < 16; ++i) r.m_[i] = a.m_[i] + b.m_[i];
    return r;
  }
  friend ComplexMatrix4 operator*(Complex s, const ComplexMatrix4& a) {
    ComplexMatrix4 r;
    for (std::size_t i = 0; i < 16; ++i) r.m_[i] = s * a.m_[i];
    return r;
  }
  friend ComplexMatrix4 operator*(const ComplexMatrix4& a, const ComplexMatrix4& b) {
    ComplexMatrix4 r;
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) {
        Complex s = 0.0;
        for (std::size_t k = 0; k < 4; ++k) s += a(i, k) * b(k, j);
        r(i, j) = s;
      }
    return r;
  }

 private:
  std::array<Complex, 16> m_{};
};

/// True for the diagonal and anti-diagonal positions of a 4x4 matrix.
constexpr bool in_x_pattern(std::size_t r, std::size_t c) { return r == c || r + c == 3; }

/// Largest modulus outside the X pattern.
inline double x_pattern_violation(const ComplexMatrix4& m) {
  double v = 0.0;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      if (!in_x_pattern(r, c)) v = std::max(v, std::abs(m(r, c)));
  return v;
}

/// Two-qubit density matrix with X sparsity.
class TwoQubitXState {
 public:
  static TwoQubitXState from_matrix(const ComplexMatrix4& m) {
    const double off = x_pattern_violation(m);
    if (off > kStateTol) {
      std::ostringstream os;
      os << "entry of modulus " << off << " outside the X pattern";
      throw Error(ErrorCode::NotXState, os.str());
    }
    const double herm = m.max_abs_diff(m.adjoint());
    if (herm > kStateTol) {
      std::ostringstream os;
      os << "non-Hermitian X state (deviation " << herm << ")";
      throw Error(ErrorCode::NonHermitian, os.str());
    }
    const double tr = m.trace().real();
    if (std::abs(tr - 1.0) > kStateTol) {
      std::ostringstream os;
      os << "trace " << tr << " != 1";
      throw Error(ErrorCode::OutOfRange, os.str());
    }
    return TwoQubitXState(m);
  }

  const ComplexMatrix4& matrix() const { return m_; }

  /// Eigenvalues of the two Hermitian 2x2 blocks, ascending.
  std::array<double, 4> eigenvalues() const {
    std::array<double, 4> ev{};
    const auto block = [&](std::size_t i, std::size_t j, std::size_t out) {
      const double a = m_(i, i).real();
      const double d = m_(j, j).real();
      const double r = std::hypot(0.5 * (a - d), std::abs(m_(i, j)));
      ev[out] = 0.5 * (a + d) - r;
      ev[out + 1] = 0.5 * (a + d) + r;
    };
    block(0, 3, 0);
    block(1, 2, 2);
    std::sort(ev.begin(), ev.end());
    return ev;
  }

  double purity() const {
    double s = 0.0;
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) s += std::norm(m_(r, c));
    return s;
  }

 private:
  explicit TwoQubitXState(const ComplexMatrix4& m) : m_(m) {}
  ComplexMatrix4 m_;
};

/// (I(x)I + s1(x)s1 - s2(x)s2 + s3(x)s3) / 4
inline TwoQubitXState maximally_entangled() {
  const auto kron = ComplexMatrix4::kron;
  const ComplexMatrix4 m =
      Complex(0.25) * (kron(pauli::identity, pauli::identity) + kron(pauli::sigma1, pauli::sigma1) +
                       Complex(-1.0) * kron(pauli::sigma2, pauli::sigma2) +
                       kron(pauli::sigma3, pauli::sigma3));
  return TwoQubitXState::from_matrix(m);
}

/// (id (x) channel) applied block by block to an arbitrary two-qubit operator.
inline ComplexMatrix4 apply_second_qubit(const ChannelParams& p, const ComplexMatrix4& m) {
  ComplexMatrix4 out;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) out.set_block(a, b, apply_linear(p, m.block(a, b)));
  return out;
}

/// Maximally entangled state with the channel acting on the second qubit:
///   (I(x)I + l* I(x)s3 + l1 s1(x)s1 - l1 s2(x)s2 + l3 s3(x)s3) / 4
inline TwoQubitXState evolve_one_sided(const ChannelParams& p) {
  require_cp(p);
  const auto kron = ComplexMatrix4::kron;
  const ComplexMatrix4 m =
      Complex(0.25) * (kron(pauli::identity, pauli::identity) +
                       Complex(p.lambda_star) * kron(pauli::identity, pauli::sigma3) +
                       Complex(p.lambda1) * kron(pauli::sigma1, pauli::sigma1) +
                       Complex(-p.lambda1) * kron(pauli::sigma2, pauli::sigma2) +
                       Complex(p.lambda3) * kron(pauli::sigma3, pauli::sigma3));
  return TwoQubitXState::from_matrix(m);
}

/// rho (s2 (x) s2) conj(rho) (s2 (x) s2)
inline ComplexMatrix4 x_matrix(const TwoQubitXState& rho) {
  const ComplexMatrix4 flip = ComplexMatrix4::kron(pauli::sigma2, pauli::sigma2);
  return rho.matrix() * flip * rho.matrix().conjugate() * flip;
}

/// Eigenvalues of X(rho), descending, clamped at zero.
struct ConcurrenceSpectrum {
  std::array<double, 4> r{};
};

namespace detail {
inline ConcurrenceSpectrum sorted_spectrum(std::array<double, 4> r) {
  for (double& v : r) v = std::max(0.0, v);
  std::sort(r.begin(), r.end(), std::greater<>());
  return {r};
}

inline double wootters(const ConcurrenceSpectrum& s) {
  const double c = std::sqrt(s.r[0]) - std::sqrt(s.r[1]) - std::sqrt(s.r[2]) - std::sqrt(s.r[3]);
  return std::clamp(c, 0.0, 1.0);
}

/// Radicands that CP makes nonnegative; tiny negatives are rounding.
inline double clamped_sqrt(double x) { return x < 0.0 && x > -kStateTol ? 0.0 : std::sqrt(std::max(0.0, x)); }
}  // namespace detail

/// The closed-form eigenvalues of X for the evolved maximally entangled state,
/// labelled as
///   R1 = R2 = [(1 - l3)^2 - l*^2] / 16,
///   R+- = [2|l1| +- sqrt((1 + l3)^2 - l*^2)]^2 / 16.
struct LabelledSpectrum {
  double r_plus = 0.0;
  double r_one = 0.0;
  double r_minus = 0.0;
};

inline LabelledSpectrum concurrence_spectrum_labelled(const ChannelParams& p) {
  require_cp(p);
  const double ls2 = p.lambda_star * p.lambda_star;
  const double inner = (1.0 - p.lambda3) * (1.0 - p.lambda3) - ls2;
  const double outer = detail::clamped_sqrt((1.0 + p.lambda3) * (1.0 + p.lambda3) - ls2);
  const double two_l1 = 2.0 * std::abs(p.lambda1);
  return {(two_l1 + outer) * (two_l1 + outer) / 16.0, std::max(0.0, inner) / 16.0,
          (two_l1 - outer) * (two_l1 - outer) / 16.0};
}

inline ConcurrenceSpectrum concurrence_spectrum_closed(const ChannelParams& p) {
  const LabelledSpectrum s = concurrence_spectrum_labelled(p);
  return detail::sorted_spectrum({s.r_plus, s.r_one, s.r_one, s.r_minus});
}

/// 1/2 max{0, 2|l1| - sqrt((1 - l3)^2 - l*^2)}
inline double concurrence_closed(const ChannelParams& p) {
  require_cp(p);
  const double root = detail::clamped_sqrt((p.lambda3 - 1.0) * (p.lambda3 - 1.0) -
                                           p.lambda_star * p.lambda_star);
  return std::min(1.0, 0.5 * std::max(0.0, 2.0 * std::abs(p.lambda1) - root));
}

/// Spectrum of X(rho) from its two 2x2 blocks.
inline ConcurrenceSpectrum concurrence_spectrum(const TwoQubitXState& rho) {
  const ComplexMatrix4 x = x_matrix(rho);
  std::array<double, 4> ev{};
  const auto block = [&](std::size_t i, std::size_t j, std::size_t out) {
    const Complex half_sum = 0.5 * (x(i, i) + x(j, j));
    const Complex half_diff = 0.5 * (x(i, i) - x(j, j));
    const Complex disc = std::sqrt(half_diff * half_diff + x(i, j) * x(j, i));
    ev[out] = (half_sum + disc).real();
    ev[out + 1] = (half_sum - disc).real();
  };
  block(0, 3, 0);
  block(1, 2, 2);
  return detail::sorted_spectrum(ev);
}

/// Wootters concurrence of an X state.
inline double concurrence_spectral(const TwoQubitXState& rho) {
  return detail::wootters(concurrence_spectrum(rho));
}

/// -x log2 x - (1 - x) log2 (1 - x), with 0 log 0 = 0.
inline double binary_entropy(double x) {
  const auto term = [](double y) { return y <= 0.0 ? 0.0 : -y * std::log2(y); };
  return term(x) + term(1.0 - x);
}

inline double entanglement_of_formation(double c) {
  if (!(c >= -kStateTol && c <= 1.0 + kStateTol)) {
    std::ostringstream os;
    os << "concurrence " << c << " outside [0, 1]";
    throw Error(ErrorCode::OutOfRange, os.str());
  }
  c = std::clamp(c, 0.0, 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

}  // namespace phasecov
