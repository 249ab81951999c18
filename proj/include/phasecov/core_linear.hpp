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

// Two-level linear algebra: 2x2 complex matrices, the Pauli basis, and the
// Bloch-vector parameterisation of qubit states. Every state in the library
// is stored as a Bloch vector; matrices are derived on demand.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <sstream>

#include "phasecov/error.hpp"

namespace phasecov {

using Complex = std::complex<double>;

/// Tolerance on the anti-Hermitian part of an input matrix.
inline constexpr double kHermitianTol = 1e-10;
/// Tolerance for positivity, purity and similar exact state identities.
inline constexpr double kStateTol = 1e-12;

class ComplexMatrix2 {
 public:
  constexpr ComplexMatrix2() = default;
  constexpr ComplexMatrix2(Complex a00, Complex a01, Complex a10, Complex a11)
      : m_{a00, a01, a10, a11} {}

  constexpr Complex operator()(std::size_t r, std::size_t c) const {
    return m_[2 * r + c];
  }
  constexpr Complex& operator()(std::size_t r, std::size_t c) {
    return m_[2 * r + c];
  }

  static constexpr ComplexMatrix2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

  constexpr Complex trace() const { return m_[0] + m_[3]; }
  constexpr Complex determinant() const { return m_[0] * m_[3] - m_[1] * m_[2]; }

  constexpr ComplexMatrix2 adjoint() const {
    return {std::conj(m_[0]), std::conj(m_[2]), std::conj(m_[1]),
            std::conj(m_[3])};
  }

  /// Largest entry modulus of (this - other).
  double max_abs_diff(const ComplexMatrix2& other) const {
    double d = 0.0;
    for (std::size_t i = 0; i < 4; ++i) d = std::max(d, std::abs(m_[i] - other.m_[i]));
    return d;
  }

  friend constexpr ComplexMatrix2 operator+(const ComplexMatrix2& a,
                                            const ComplexMatrix2& b) {
    return {a.m_[0] + b.m_[0], a.m_[1] + b.m_[1], a.m_[2] + b.m_[2],
            a.m_[3] + b.m_[3]};
  }
  friend constexpr ComplexMatrix2 operator-(const ComplexMatrix2& a,
                                            const ComplexMatrix2& b) {
    return {a.m_[0] - b.m_[0], a.m_[1] - b.m_[1], a.m_[2] - b.m_[2],
            a.m_[3] - b.m_[3]};
  }
  friend constexpr ComplexMatrix2 operator*(Complex s, const ComplexMatrix2& a) {
    return {s * a.m_[0], s * a.m_[1], s * a.m_[2], s * a.m_[3]};
  }
  friend constexpr ComplexMatrix2 operator*(const ComplexMatrix2& a,
                                            const ComplexMatrix2& b) {
    return {a.m_[0] * b.m_[0] + a.m_[1] * b.m_[2],
            a.m_[0] * b.m_[1] + a.m_[1] * b.m_[3],
            a.m_[2] * b.m_[0] + a.m_[3] * b.m_[2],
            a.m_[2] * b.m_[1] + a.m_[3] * b.m_[3]};
  }

 private:
  std::array<Complex, 4> m_{};
};

namespace pauli {
inline constexpr ComplexMatrix2 identity{1.0, 0.0, 0.0, 1.0};
inline constexpr ComplexMatrix2 sigma1{0.0, 1.0, 1.0, 0.0};
inline constexpr ComplexMatrix2 sigma2{0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0};
inline constexpr ComplexMatrix2 sigma3{1.0, 0.0, 0.0, -1.0};

/// sigma_k for k in {1, 2, 3}.
constexpr const ComplexMatrix2& sigma(int k) {
  return k == 1 ? sigma1 : (k == 2 ? sigma2 : sigma3);
}
}  // namespace pauli

struct BlochVector {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;

  constexpr double operator[](int k) const { return k == 1 ? x1 : (k == 2 ? x2 : x3); }

  constexpr double dot(const BlochVector& o) const {
    return x1 * o.x1 + x2 * o.x2 + x3 * o.x3;
  }
  constexpr double norm_squared() const { return dot(*this); }
  double norm() const { return std::sqrt(norm_squared()); }

  bool is_pure(double tol = kStateTol) const {
    return std::abs(norm_squared() - 1.0) <= tol;
  }

  friend constexpr BlochVector operator+(const BlochVector& a, const BlochVector& b) {
    return {a.x1 + b.x1, a.x2 + b.x2, a.x3 + b.x3};
  }
  friend constexpr BlochVector operator-(const BlochVector& a, const BlochVector& b) {
    return {a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3};
  }
  friend constexpr BlochVector operator*(double s, const BlochVector& a) {
    return {s * a.x1, s * a.x2, s * a.x3};
  }
  friend constexpr bool operator==(const BlochVector&, const BlochVector&) = default;
};

/// Distance in the max norm, used for fixed-point and round-trip checks.
inline double max_abs_diff(const BlochVector& a, const BlochVector& b) {
  return std::max({std::abs(a.x1 - b.x1), std::abs(a.x2 - b.x2), std::abs(a.x3 - b.x3)});
}

/// m = scalar * I + sum_k vector_k * sigma_k
struct PauliComponents {
  double scalar = 0.0;
  BlochVector vector;
};

/// Expands a Hermitian matrix in the basis {I, sigma1, sigma2, sigma3}.
inline PauliComponents pauli_decompose(const ComplexMatrix2& m) {
  const double anti_hermitian = 0.5 * m.max_abs_diff(m.adjoint());
  if (anti_hermitian > kHermitianTol) {
    std::ostringstream os;
    os << "anti-Hermitian part " << anti_hermitian << " exceeds " << kHermitianTol;
    throw Error(ErrorCode::NonHermitian, os.str());
  }
  const auto half_trace = [&](const ComplexMatrix2& s) { return 0.5 * (s * m).trace().real(); };
  return {0.5 * m.trace().real(),
          {half_trace(pauli::sigma1), half_trace(pauli::sigma2), half_trace(pauli::sigma3)}};
}

/// A qubit density matrix, held as its Bloch vector. Construction validates
/// the norm bound, so every QubitState in circulation is a valid state.
class QubitState {
 public:
  /// Maximally mixed state.
  constexpr QubitState() = default;

  static QubitState from_bloch(const BlochVector& v) {
    const double n = v.norm();
    if (!(n <= 1.0 + kStateTol)) {
      std::ostringstream os;
      os << "Bloch norm " << n << " > 1";
      throw Error(ErrorCode::BlochNormExceeded, os.str());
    }
    return QubitState(v);
  }

  /// Accepts any Hermitian unit-trace positive matrix; the Bloch vector is
  /// twice the sigma components.
  static QubitState from_matrix(const ComplexMatrix2& m) {
    const auto [scalar, v] = pauli_decompose(m);
    if (std::abs(2.0 * scalar - 1.0) > kHermitianTol) {
      std::ostringstream os;
      os << "trace " << 2.0 * scalar << " != 1";
      throw Error(ErrorCode::OutOfRange, os.str());
    }
    return from_bloch(2.0 * v);
  }

  constexpr const BlochVector& bloch() const { return bloch_; }

  /// (I + sum_k x_k sigma_k) / 2
  constexpr ComplexMatrix2 matrix() const {
    return {0.5 * (1.0 + bloch_.x3), Complex(0.5 * bloch_.x1, -0.5 * bloch_.x2),
            Complex(0.5 * bloch_.x1, 0.5 * bloch_.x2), 0.5 * (1.0 - bloch_.x3)};
  }

  /// Eigenvalues (1 + |x|)/2 and (1 - |x|)/2, largest first.
  std::array<double, 2> eigenvalues() const {
    const double r = bloch_.norm();
    return {0.5 * (1.0 + r), 0.5 * (1.0 - r)};
  }

  constexpr double determinant() const { return 0.25 * (1.0 - bloch_.norm_squared()); }
  constexpr double purity() const { return 0.5 * (1.0 + bloch_.norm_squared()); }

 private:
  constexpr explicit QubitState(const BlochVector& v) : bloch_(v) {}
  BlochVector bloch_{};
};

inline QubitState bloch_to_state(const BlochVector& v) { return QubitState::from_bloch(v); }

/// Tr(a b).
inline double state_overlap(const QubitState& a, const QubitState& b) {
  return 0.5 * (1.0 + a.bloch().dot(b.bloch()));
}

/// Uhlmann fidelity of two qubit density matrices given as matrices:
/// Tr(ab) + 2 sqrt(det a det b), exact in dimension two.
inline double fidelity_qubit(const ComplexMatrix2& a, const ComplexMatrix2& b) {
  const double det_a = a.determinant().real();
  const double det_b = b.determinant().real();
  if (det_a < -kStateTol || det_b < -kStateTol) {
    std::ostringstream os;
    os << "determinants " << det_a << ", " << det_b;
    throw Error(ErrorCode::NegativeDeterminant, os.str());
  }
  const double overlap = (a * b).trace().real();
  return overlap + 2.0 * std::sqrt(std::max(0.0, det_a) * std::max(0.0, det_b));
}

inline double fidelity_qubit(const QubitState& a, const QubitState& b) {
  const double det_a = a.determinant();
  const double det_b = b.determinant();
  if (det_a < -kStateTol || det_b < -kStateTol) {
    throw Error(ErrorCode::NegativeDeterminant, "state outside the Bloch ball");
  }
  return state_overlap(a, b) + 2.0 * std::sqrt(std::max(0.0, det_a) * std::max(0.0, det_b));
}

}  // namespace phasecov
