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

#include <stdexcept>
#include <string>
#include <string_view>

namespace phasecov {

enum class ErrorCode {
  NonHermitian,
  BlochNormExceeded,
  NegativeDeterminant,
  InvalidChannel,
  DegenerateFixedPoint,
  EndpointNotCP,
  NotPure,
  InvalidExponent,
  NotXState,
  OutOfRange,
  NoConvergence,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::BlochNormExceeded: return "BlochNormExceeded";
    case ErrorCode::NegativeDeterminant: return "NegativeDeterminant";
    case ErrorCode::InvalidChannel: return "InvalidChannel";
    case ErrorCode::DegenerateFixedPoint: return "DegenerateFixedPoint";
    case ErrorCode::EndpointNotCP: return "EndpointNotCP";
    case ErrorCode::NotPure: return "NotPure";
    case ErrorCode::InvalidExponent: return "InvalidExponent";
    case ErrorCode::NotXState: return "NotXState";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NoConvergence: return "NoConvergence";
  }
  return "Unknown";
}

/// Single exception type for every precondition failure in the library.
/// The code identifies the failed contract; the message carries details.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace phasecov
