// Copyright 2026 The noisescramble Authors

// Licensed under the Apache License, Version 2.0 (the License);
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

// http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an AS IS BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace noisescramble {

enum class ErrorCode {
    InvalidGate,
    InvalidRate,
    Shape,
    InvalidSize,
    Parse,
    InvalidState,
    DegenerateState,
    InvalidObservable,
    NumericalRank,
    Pole,
    InvalidDistribution,
    Fit,
    Domain,
    Resource,
    Config,
    Io,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidGate: return "invalid-gate";
    case ErrorCode::InvalidRate: return "invalid-rate";
    case ErrorCode::Shape: return "shape";
    case ErrorCode::InvalidSize: return "invalid-size";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::InvalidState: return "invalid-state";
    case ErrorCode::DegenerateState: return "degenerate-state";
    case ErrorCode::InvalidObservable: return "invalid-observable";
    case ErrorCode::NumericalRank: return "numerical-rank";
    case ErrorCode::Pole: return "pole";
    case ErrorCode::InvalidDistribution: return "invalid-distribution";
    case ErrorCode::Fit: return "fit";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::Resource: return "resource";
    case ErrorCode::Config: return "config";
    case ErrorCode::Io: return "io";
    }
    return "unknown";
}

/// Every failure raised by the library carries a machine-checkable code.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(std::string(to_string(code)) + " error: " +
                             message),
          code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &message) {
    throw Error(code, message);
}

} // namespace noisescramble
