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
#include <random>

#include "catch_amalgamated.hpp"
#include "phasecov/oracle.hpp"
#include "test_support.hpp"

using namespace phasecov;
using Catch::Matchers::WithinAbs;

namespace {

/// A coarser grid keeps the property loops quick; refinement restores accuracy.
const GridSpec kCoarse{801, 8, 40};

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected phasecov::Error");
  return ErrorCode::OutOfRange;
}

}  // namespace

TEST_CASE("grid validation", "[oracle]") {
  CHECK_NOTHROW(GridSpec{}.validate());
  CHECK(GridSpec{}.n_polar == 4001);
  CHECK(GridSpec{}.n_azimuth == 64);
  CHECK(GridSpec{}.refinement == 40);
  CHECK(code_of([] { GridSpec{1, 64, 40}.validate(); }) == ErrorCode::OutOfRange);
  CHECK(code_of([] { GridSpec{2, 0, 40}.validate(); }) == ErrorCode::OutOfRange);
  CHECK(code_of([] { GridSpec{2, 1, -1}.validate(); }) == ErrorCode::OutOfRange);
  CHECK_NOTHROW(GridSpec{2, 1, 0}.validate());
}

TEST_CASE("fidelity extrema examples", "[oracle]") {
  const FidelityExtrema id = brute_fidelity_extrema(ChannelParams::identity());
  CHECK_THAT(id.min.value, WithinAbs(1.0, 1e-15));
  CHECK_THAT(id.max.value, WithinAbs(1.0, 1e-15));

  const FidelityExtrema a = brute_fidelity_extrema({0, 0.5, 0.25});
  CHECK_THAT(a.min.value, WithinAbs(0.484375, 1e-8));
  CHECK(a.min.absolute_gap < 1e-8);
  CHECK(a.min.absolute_gap == std::abs(a.min.value - a.min.closed_form_value));

  const FidelityExtrema b = brute_fidelity_extrema({0.4, 0, 0.25});
  CHECK_THAT(b.max.value, WithinAbs(0.71953125, 1e-8));
  CHECK(b.max.absolute_gap < 1e-8);
  CHECK(code_of([] { brute_fidelity_extrema({0.5, 0, 0.25}); }) == ErrorCode::InvalidChannel);
}

TEST_CASE("output norm examples", "[oracle]") {
  const OracleReport purity = brute_output_purity({0.4, 0, 0.25});
  CHECK_THAT(purity.value, WithinAbs(0.61125, 1e-8));
  CHECK(purity.absolute_gap < 1e-8);

  const OracleReport two = brute_output_norm({0.4, 0, 0.25}, 2.0);
  CHECK_THAT(two.value, WithinAbs(std::sqrt(0.61125), 1e-8));
  CHECK(two.absolute_gap < 1e-8);

  const OracleReport inf = brute_output_norm({0.4, 0, 0.25}, kInfinityNorm);
  CHECK_THAT(inf.value, WithinAbs(0.735849528301415, 1e-8));
  CHECK(inf.absolute_gap < 1e-8);
  CHECK_THAT(std::abs(inf.value - nu_inf_paper({0.4, 0, 0.25})), WithinAbs(0.035849528301415, 1e-8));

  const OracleReport pure_fixed = brute_output_norm({0, 0.6, 0.4}, kInfinityNorm);
  CHECK_THAT(pure_fixed.value, WithinAbs(1.0, 1e-12));
  CHECK_THAT(nu_inf_paper({0, 0.6, 0.4}), WithinAbs(1.0, 1e-15));

  CHECK(code_of([] { brute_output_norm({0.4, 0, 0.25}, 0.5); }) == ErrorCode::InvalidExponent);
  CHECK(code_of([] { brute_output_norm({0.5, 0, 0.25}, 2.0); }) == ErrorCode::InvalidChannel);
}

TEST_CASE("double maximisation examples", "[oracle]") {
  CHECK_THAT(brute_inf_double_max({0.3, 0.7, 0}).value, WithinAbs(0.85, 1e-12));
  CHECK_THAT(brute_inf_double_max({0.4, 0, 0.25}).value, WithinAbs(0.735849528301415, 1e-8));
  CHECK_THAT(brute_inf_double_max({0, 0, 1}).value, WithinAbs(1.0, 1e-15));
}

TEST_CASE("general Schatten norms match the closed form", "[oracle][property]") {
  std::mt19937_64 rng(41);
  for (int k = 0; k < 100; ++k) {
    const ChannelParams p = testing::random_cp(rng);
    for (double exponent : {1.0, 1.5, 2.0, 3.0, kInfinityNorm}) {
      CHECK(brute_output_norm(p, exponent, kCoarse).absolute_gap < 1e-8);
    }
  }
}

TEST_CASE("double maximisation equals the infinity norm", "[oracle][property]") {
  std::mt19937_64 rng(42);
  for (int k = 0; k < 200; ++k) {
    const ChannelParams p = testing::random_cp(rng);
    CHECK_THAT(brute_inf_double_max(p, kCoarse).value,
               WithinAbs(brute_output_norm(p, kInfinityNorm, kCoarse).value, 1e-9));
  }
}

TEST_CASE("results do not depend on the worker count", "[oracle][property]") {
  std::mt19937_64 rng(43);
  for (int k = 0; k < 20; ++k) {
    const ChannelParams p = testing::random_cp(rng);
    const FidelityExtrema one = brute_fidelity_extrema(p, kCoarse, 1);
    const FidelityExtrema four = brute_fidelity_extrema(p, kCoarse, 4);
    const FidelityExtrema seven = brute_fidelity_extrema(p, kCoarse, 7);
    CHECK(one.min.value == four.min.value);
    CHECK(one.min.argument == four.min.argument);
    CHECK(one.max.value == seven.max.value);
    CHECK(one.max.argument == seven.max.argument);
    CHECK(brute_output_purity(p, kCoarse, 1).value == brute_output_purity(p, kCoarse, 3).value);
  }
  // Constant objective: every grid point ties, so the first one must win.
  const auto constant = [](const BlochVector&) { return 0.5; };
  const SearchResult a = sphere_search(constant, Goal::Maximize, {11, 4, 0}, 1);
  const SearchResult b = sphere_search(constant, Goal::Maximize, {11, 4, 0}, 5);
  CHECK(a.argument == b.argument);
  CHECK(a.argument.x3 == -1.0);
}

TEST_CASE("refinement never loses to the grid optimum", "[oracle][property]") {
  std::mt19937_64 rng(44);
  for (int k = 0; k < 100; ++k) {
    const ChannelParams p = testing::random_cp(rng);
    const auto f = objective::fidelity(p);
    for (const Goal g : {Goal::Minimize, Goal::Maximize}) {
      const SearchResult raw = sphere_search(f, g, {201, 4, 0}, 1);
      const SearchResult refined = sphere_search(f, g, {201, 4, 40}, 1);
      if (g == Goal::Minimize) {
        CHECK(refined.value <= raw.value);
      } else {
        CHECK(refined.value >= raw.value);
      }
    }
  }
}

TEST_CASE("oracle arguments match the closed-form critical points", "[oracle][property]") {
  std::mt19937_64 rng(45);
  int interior_fidelity = 0;
  int interior_purity = 0;
  for (int k = 0; k < 400; ++k) {
    const ChannelParams p = testing::random_cp(rng);
    const ClosedForm fmin = f_min_closed(p);
    // Skip near-degenerate critical points where the objective is almost flat.
    if (fmin.branch == Branch::Interior && p.lambda3 - p.lambda1 > 0.05) {
      ++interior_fidelity;
      const double x3 = -p.lambda_star / (2 * (p.lambda3 - p.lambda1));
      CHECK_THAT(brute_fidelity_extrema(p, kCoarse).min.argument.x3, WithinAbs(x3, 1e-6));
    }
    const ClosedForm nu2 = nu2_squared_closed(p);
    const double curvature = p.lambda1 * p.lambda1 - p.lambda3 * p.lambda3;
    if (nu2.branch == Branch::Interior && curvature > 0.05) {
      ++interior_purity;
      const double x3 = p.lambda3 * p.lambda_star / curvature;
      // The critical point is -l3 l*/(l3^2 - l1^2), written with a positive denominator.
      CHECK_THAT(brute_output_purity(p, kCoarse).argument.x3, WithinAbs(x3, 1e-6));
    }
  }
  CHECK(interior_fidelity > 10);
  CHECK(interior_purity > 10);
}

TEST_CASE("fixed point iteration", "[oracle]") {
  const OracleReport a = brute_fixed_point({0.4, 0.5, 0.25});
  CHECK_THAT(a.argument.x3, WithinAbs(0.5, 1e-13));
  CHECK(a.absolute_gap < 1e-13);

  const OracleReport unital = brute_fixed_point({0.3, 0.7, 0});
  CHECK(unital.argument == BlochVector{});
  CHECK(unital.iterations == 1);

  const OracleReport slow = brute_fixed_point({0.4, 0.99, 0.005});
  CHECK_THAT(slow.argument.x3, WithinAbs(0.5, 1e-11));
  CHECK(slow.iterations > 2000);
  CHECK(slow.iterations < 10000);

  CHECK(code_of([] { brute_fixed_point({0.5, 1.0, 0}); }) == ErrorCode::NoConvergence);
  CHECK(code_of([] { brute_fixed_point({0.0, -1.0, 0}); }) == ErrorCode::NoConvergence);
}

TEST_CASE("small audit passes", "[oracle]") {
  const AuditSummary s = run_audit(20, 42, kCoarse);
  CHECK(s.samples == 20);
  CHECK(s.passed());
  CHECK(s.nu_inf_paper_gap_agreeing_regime < 1e-6);
  const AuditSummary again = run_audit(20, 42, kCoarse, 1);
  CHECK(again.f_min_gap == s.f_min_gap);
  CHECK(again.nu_inf_paper_gap == s.nu_inf_paper_gap);
}
