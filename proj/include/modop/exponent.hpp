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

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "modop/error.hpp"

namespace modop {

/// A Lebesgue exponent p in [1, inf], stored as its reciprocal u = 1/p so
/// that p = inf is represented exactly by u = 0.
class ExponentValue {
  public:
    constexpr ExponentValue() noexcept = default;

    static ExponentValue from_reciprocal(double u) {
        if (!(u >= 0.0 && u <= 1.0)) {
            throw Error(ErrorCode::InvalidArgument, "exponent reciprocal must lie in [0,1], got " + std::to_string(u));
        }
        ExponentValue e;
        e.u_ = u;
        return e;
    }

    static ExponentValue from_p(double p) {
        if (std::isinf(p) && p > 0) return infinity();
        if (!(p >= 1.0)) throw Error(ErrorCode::InvalidArgument, "exponent p must be >= 1, got " + std::to_string(p));
        if (p == 1.0) return from_reciprocal(1.0);
        if (p == 2.0) return from_reciprocal(0.5);
        return from_reciprocal(1.0 / p);
    }

    static ExponentValue infinity() noexcept { return ExponentValue{}; }
    static ExponentValue one() noexcept {
        ExponentValue e;
        e.u_ = 1.0;
        return e;
    }
    static ExponentValue two() noexcept {
        ExponentValue e;
        e.u_ = 0.5;
        return e;
    }

    constexpr double reciprocal() const noexcept { return u_; }
    double p() const noexcept { return u_ == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / u_; }
    constexpr bool is_infinite() const noexcept { return u_ == 0.0; }
    constexpr bool is_one() const noexcept { return u_ == 1.0; }
    constexpr bool is_two() const noexcept { return u_ == 0.5; }

    /// p' with 1/p + 1/p' = 1.
    ExponentValue conjugate() const noexcept {
        ExponentValue e;
        e.u_ = 1.0 - u_;
        return e;
    }

    friend constexpr bool operator==(ExponentValue, ExponentValue) = default;

  private:
    double u_ = 0.0;
};

/// Parses "inf", "1", "4/3", "2.5" into an exponent.
inline ExponentValue parse_exponent(const std::string& text) {
    if (text == "inf" || text == "Inf" || text == "infinity") return ExponentValue::infinity();
    try {
        const auto slash = text.find('/');
        std::size_t used = 0;
        if (slash != std::string::npos) {
            const double num = std::stod(text.substr(0, slash), &used);
            if (used != slash) throw std::invalid_argument(text);
            const std::string den_text = text.substr(slash + 1);
            const double den = std::stod(den_text, &used);
            if (used != den_text.size()) throw std::invalid_argument(text);
            // 1/p = den/num keeps rationals such as 4/3 exact in reciprocal form.
            if (!(num > 0 && den > 0)) throw std::invalid_argument(text);
            return ExponentValue::from_reciprocal(den / num);
        }
        const double p = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return ExponentValue::from_p(p);
    } catch (const std::logic_error&) {
        throw Error(ErrorCode::InvalidArgument, "cannot parse exponent '" + text + "'");
    }
}

inline std::string format_exponent(ExponentValue e) {
    if (e.is_infinite()) return "inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", e.p());
    return buf;
}

}  // namespace modop
