// SPDX-License-Identifier: Apache-2.0
//
// modop - numerical time-frequency operator calculus
// Copyright (C) 2026 The modop authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace modop {

enum class ErrorCode {
    InvalidArgument,
    OffLattice,
    GridMismatch,
    ZeroWindow,
    WrongQuantization,
    DimensionUnsupported,
    TooLarge,
    UnsupportedExponent,
    TooManyModes,
    OrderTooHigh,
    ConfigError,
    FormatError,
};

inline std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::OffLattice: return "OffLattice";
        case ErrorCode::GridMismatch: return "GridMismatch";
        case ErrorCode::ZeroWindow: return "ZeroWindow";
        case ErrorCode::WrongQuantization: return "WrongQuantization";
        case ErrorCode::DimensionUnsupported: return "DimensionUnsupported";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::UnsupportedExponent: return "UnsupportedExponent";
        case ErrorCode::TooManyModes: return "TooManyModes";
        case ErrorCode::OrderTooHigh: return "OrderTooHigh";
        case ErrorCode::ConfigError: return "ConfigError";
        case ErrorCode::FormatError: return "FormatError";
    }
    return "Unknown";
}

// All library failures are reported through this one exception type; the
// code distinguishes the contract that was violated.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

}  // namespace modop
