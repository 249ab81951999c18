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

#include <cmath>
#include <numbers>
#include <random>

#include "catch_amalgamated.hpp"
#include "phasecov/channel.hpp"
#include "test_support.hpp"

using namespace phasecov;
using Catch::Matchers::WithinAbs;

namespace {
ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no phasecov::Error thrown");
  return ErrorCode::OutOfRange;
}
}  // namespace

TEST_CASE("validate_cp examples", "[channel]") {
  CHECK(validate_cp({1, 1, 0}).valid);

  const CpReport inside = validate_cp({0.4, 0, 0.25});
  CHECK(inside.valid);
  CHECK_THAT(inside.slack_a, WithinAbs(0.75, 1e-15));
  CHECK_THAT(inside.slack_b, WithinAbs(0.2975, 1e-15));

  const CpReport outside = validate_cp({0.5, 0, 0.25});
  CHECK_FALSE(outside.valid);
  CHECK(outside.slack_a > 0.0);
  CHECK_THAT(outside.slack_b, WithinAbs(1.0 - 1.0625, 1e-15));

  CHECK_FALSE(validate_cp({0, 0.6, 0.5}).valid);
  CHECK_FALSE(validate_cp({NAN, 0, 0}).valid);
  // Boundary inclusive, with tolerance.
  CHECK(validate_cp({std::exp(-1.0), std::exp(-2.0), 1.0 - std::exp(-2.0)}).valid);
  CHECK(validate_cp({0, 0.5, 0.5 + 5e-10}).valid);
  CHECK_FALSE(validate_cp({0, 0.5, 0.5 + 5e-9}).valid);
}

TEST_CASE("apply examples", "[channel]") {
  const QubitState rho = bloch_to_state({0.1, -0.2, 0.3});
  CHECK(apply(ChannelParams::identity(), rho).bloch() == rho.bloch());
  CHECK(apply({0.5, 0.5, 0.25}, bloch_to_state({1, 0, 0})).bloch() == BlochVector{0.5, 0, 0.25});
  CHECK(apply({0, 0, 0}, rho).bloch() == BlochVector{0, 0, 0});
  CHECK(code_of([] { apply({0.5, 0, 0.25}, QubitState{}); }) == ErrorCode::InvalidChannel);
}

TEST_CASE("apply agrees with the matrix form of the channel", "[channel][property]") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    const ChannelParams p = testing::random_cp(rng);
    const QubitState rho = bloch_to_state(testing::random_ball(rng, k % 2 == 0));
    const ComplexMatrix2 via_matrix = apply_linear(p, rho.matrix());
    CHECK(via_matrix.max_abs_diff(apply(p, rho).matrix()) <= 1e-12);
  }
}

TEST_CASE("apply preserves trace and positivity", "[channel][property]") {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 1000; ++k) {
    const ChannelParams p = testing::random_cp(rng);
    const QubitState out = apply(p, bloch_to_state(testing::random_ball(rng, true)));
    const ComplexMatrix2 m = apply_linear(p, out.matrix());
    CHECK(out.matrix().trace().real() == 1.0);
    CHECK(out.eigenvalues()[1] >= -1e-12);
    CHECK_THAT(m.trace().real(), WithinAbs(1.0, 1e-15));
  }
}

TEST_CASE("unitality criterion", "[channel][property]") {
  std::mt19937_64 rng(13);
  const QubitState mixed{};
  for (int k = 0; k < 200; ++k) {
    const ChannelParams p = testing::random_cp(rng);
    const bool preserved = apply(p, mixed).bloch().norm() <= 1e-12;
    CHECK(preserved == (p.lambda_star == 0.0));
    ChannelParams unital = p;
    unital.lambda_star = 0.0;
    CHECK(apply(unital, mixed).bloch().norm() == 0.0);
  }
}

TEST_CASE("invariant_state examples", "[channel]") {
  CHECK(invariant_state({0.3, 0.7, 0}).bloch() == BlochVector{0, 0, 0});

  const ChannelParams p{0.4, 0.5, 0.25};
  const QubitState fixed = invariant_state(p);
  CHECK(fixed.bloch() == BlochVector{0, 0, 0.5});
  CHECK(max_abs_diff(apply(p, fixed).bloch(), fixed.bloch()) <= 1e-12);
  // Oracle: iterate the channel from the maximally mixed state.
  QubitState it{};
  for (int k = 0; k < 200; ++k) it = apply(p, it);
  CHECK(max_abs_diff(it.bloch(), fixed.bloch()) <= 1e-12);

  CHECK(invariant_state({0, 0, 1}).bloch() == BlochVector{0, 0, 1});
  CHECK(code_of([] { invariant_state({1, 1, 0}); }) == ErrorCode::DegenerateFixedPoint);
  CHECK(code_of([] { invariant_state({0.9, 1, 0}); }) == ErrorCode::DegenerateFixedPoint);
}

TEST_CASE("invariant state is fixed for random channels", "[channel][property]") {
  std::mt19937_64 rng(14);
  for (int k = 0; k < 500; ++k) {
    const ChannelParams p = testing::random_cp(rng);
    const QubitState fixed = invariant_state(p);
    CHECK(max_abs_diff(apply(p, fixed).bloch(), fixed.bloch()) <= 1e-12);
  }
}

TEST_CASE("non_unitality examples", "[channel]") {
  CHECK(non_unitality({0.3, 0.7, 0}).value == 0.0);
  CHECK(non_unitality({0.4, 0.5, 0.5}).value == 1.0);
  CHECK(non_unitality({0.4, 0.5, 0.25}).value == 0.5);
  CHECK(non_unitality({0.1, -0.5, -0.25}).value == 0.5);
  CHECK(non_unitality({1, 1, 0}).value == 0.0);
  CHECK(non_unitality({-1, 1, 0}).value == 0.0);
}

TEST_CASE("mix_unital_nonunital examples", "[channel]") {
  CHECK(mix_unital_nonunital(0.4, 0.5, 0.0).lambda_star == 0.0);

  const double l1 = std::exp(-1.0);
  const double l3 = std::exp(-2.0);
  const ChannelParams m = mix_unital_nonunital(l1, l3, 0.7);
  CHECK_THAT(m.lambda_star, WithinAbs(0.7 * (1.0 - l3), 1e-15));
  CHECK_THAT(m.lambda_star, WithinAbs(0.605265, 5e-7));
  CHECK(m.lambda1 == l1);
  CHECK(m.lambda3 == l3);
  CHECK(mix_unital_nonunital(l1, l3, 0.7, Sign::Minus).lambda_star == -m.lambda_star);

  CHECK(code_of([] { mix_unital_nonunital(0.9, 0.0, 1.0); }) == ErrorCode::EndpointNotCP);
  CHECK(code_of([] { mix_unital_nonunital(0.9, 0.0, 0.1); }) == ErrorCode::EndpointNotCP);
  CHECK(code_of([] { mix_unital_nonunital(0.1, 0.5, 1.5); }) == ErrorCode::OutOfRange);
}

TEST_CASE("mixtures are convex combinations of the endpoints", "[channel][property]") {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 300; ++k) {
    const double l3 = u(rng);
    const double l1 = (2.0 * u(rng) - 1.0) * std::sqrt(l3);
    const double p = u(rng);
    const Sign sign = k % 2 ? Sign::Plus : Sign::Minus;
    const ChannelParams mixed = mix_unital_nonunital(l1, l3, p, sign);
    const ChannelParams unital = mix_unital_nonunital(l1, l3, 0.0, sign);
    const ChannelParams extreme = mix_unital_nonunital(l1, l3, 1.0, sign);
    CHECK(is_cp(mixed));
    CHECK_THAT(non_unitality(extreme).value, WithinAbs(1.0, 1e-15));
    CHECK_THAT(non_unitality(mixed).value, WithinAbs(p, 1e-15));

    const QubitState rho = bloch_to_state(testing::random_ball(rng, true));
    const ComplexMatrix2 lhs = apply(mixed, rho).matrix();
    const ComplexMatrix2 rhs = Complex(1.0 - p) * apply(unital, rho).matrix() +
                               Complex(p) * apply(extreme, rho).matrix();
    CHECK(lhs.max_abs_diff(rhs) <= 1e-12);
  }
}

TEST_CASE("check_covariance", "[channel][property]") {
  const QubitState x_plus = bloch_to_state({1, 0, 0});
  CHECK(check_covariance({0.4, 0.5, 0.25}, x_plus, 0.0) == 0.0);
  CHECK(check_covariance({0.4, 0.5, 0.25}, x_plus, std::numbers::pi / 3) < 1e-12);

  std::mt19937_64 rng(16);
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  for (int k = 0; k < 100; ++k) {
    const ChannelParams p = testing::random_cp(rng);
    const QubitState rho = bloch_to_state(testing::random_ball(rng, k % 2 == 0));
    CHECK(check_covariance(p, rho, 0.0) <= 1e-15);
    CHECK(check_covariance(p, rho, angle(rng)) < 1e-12);
  }
}
