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

// Reproducible random channel parameters. The generator is std::mt19937_64,
// whose output sequence is fixed by the C++ standard; doubles are formed
// from the top 53 bits so draws are identical on every platform.

#include <cmath>
#include <cstdint>
#include <random>
#include <utility>

#include "phasecov/channel.hpp"

namespace phasecov {

class ParamSampler {
 public:
  explicit ParamSampler(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  /// Rejection sampling from the box |l1|, |l3|, |l*| <= 1.
  ChannelParams cp_params() {
    for (;;) {
      const ChannelParams p{uniform(-1.0, 1.0), uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
      if (is_cp(p)) return p;
    }
  }

  /// (l1, l3) whose maximally non-unital endpoint is CP: l3 in [0, 1],
  /// |l1| <= sqrt(l3). Negative l3 forces l1 = 0 and is skipped.
  std::pair<double, double> mixable_eigenvalues() {
    const double l3 = unit();
    const double bound = std::sqrt(l3);
    return {uniform(-bound, bound), l3};
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace phasecov
