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

// Index functions tau1, tau2 for Sobolev / Wiener-amalgam inclusions, the
// region partition of the (1/p, 1/q) square and the resulting embedding
// predicates. Everything is evaluated on reciprocals u = 1/p, v = 1/q.

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "modop/exponent.hpp"

namespace modop {

/// Tolerance used only to detect that a point lies on a shared boundary.
inline constexpr double region_tie_tolerance = 1e-14;

enum class RegionFamily { Star, Plain };

struct RegionLabel {
    RegionFamily family = RegionFamily::Star;
    int index = 1;               ///< primary region, 1..3
    std::vector<int> boundary;   ///< other regions that also contain the point

    /// "I*2" or, on a boundary, "I1|I3".
    std::string to_string() const {
        const char* stem = family == RegionFamily::Star ? "I*" : "I";
        std::string out = stem + std::to_string(index);
        for (int b : boundary) out += "|" + std::string(stem) + std::to_string(b);
        return out;
    }

    bool contains(int i) const { return i == index || std::find(boundary.begin(), boundary.end(), i) != boundary.end(); }
};

namespace detail {

inline bool geq_tie(double a, double b) { return a >= b - region_tie_tolerance; }
inline bool leq_tie(double a, double b) { return a <= b + region_tie_tolerance; }

inline std::array<bool, 3> star_membership(double u, double v) {
    const double up = 1.0 - u;
    return {geq_tie(std::min(up, 0.5), v), geq_tie(std::min(v, 0.5), up), geq_tie(std::min(up, v), 0.5)};
}

inline std::array<bool, 3> plain_membership(double u, double v) {
    const double up = 1.0 - u;
    return {leq_tie(std::max(up, 0.5), v), leq_tie(std::max(v, 0.5), up), leq_tie(std::max(up, v), 0.5)};
}

/// Branch values shared by both families: 0, u + v - 1, v - 1/2.
inline double branch_value(int index, double u, double v) {
    switch (index) {
        case 1: return 0.0;
        case 2: return u + v - 1.0;
        default: return v - 0.5;
    }
}

inline RegionLabel make_label(RegionFamily family, const std::array<bool, 3>& in) {
    RegionLabel label;
    label.family = family;
    label.index = 0;
    for (int i = 0; i < 3; ++i) {
        if (!in[static_cast<std::size_t>(i)]) continue;
        if (label.index == 0) {
            label.index = i + 1;
        } else {
            label.boundary.push_back(i + 1);
        }
    }
    return label;
}

}  // namespace detail

/// Star-region label of (1/p, 1/q).
inline RegionLabel region_star(ExponentValue p, ExponentValue q) {
    return detail::make_label(RegionFamily::Star, detail::star_membership(p.reciprocal(), q.reciprocal()));
}

/// Plain-region label of (1/p, 1/q).
inline RegionLabel region(ExponentValue p, ExponentValue q) {
    return detail::make_label(RegionFamily::Plain, detail::plain_membership(p.reciprocal(), q.reciprocal()));
}

/// tau1(p, q): 0 on I*1, 1/p + 1/q - 1 on I*2, 1/q - 1/2 on I*3.
inline double tau1(ExponentValue p, ExponentValue q) {
    return detail::branch_value(region_star(p, q).index, p.reciprocal(), q.reciprocal());
}

/// tau2(p, q): 0 on I1, 1/p + 1/q - 1 on I2, 1/q - 1/2 on I3.
inline double tau2(ExponentValue p, ExponentValue q) {
    return detail::branch_value(region(p, q).index, p.reciprocal(), q.reciprocal());
}

/// Branch formula `index` evaluated at (1/p, 1/q), regardless of region.
inline double tau_branch(int index, ExponentValue p, ExponentValue q) {
    return detail::branch_value(index, p.reciprocal(), q.reciprocal());
}

/// L^p_s into W^{p,q}. Inequalities are exact, with no tolerance.
inline bool embeds_sobolev_into_amalgam(ExponentValue p, ExponentValue q, double s, int n) {
    const double u = p.reciprocal();
    const double v = q.reciprocal();
    const double t = n * tau1(p, q);
    if (u < v && v > 0.5 && s > t) return true;
    if (u != 1.0 && std::max(u, 0.5) >= v && s >= t) return true;
    if (u == 1.0 && v == 0.0 && s >= t) return true;
    if (u == 1.0 && v != 0.0 && s > t) return true;
    return false;
}

/// W^{p,q} into L^p_s. The p = infinity, q != 1 case compares against
/// tau2(infinity, q).
inline bool embeds_amalgam_into_sobolev(ExponentValue p, ExponentValue q, double s, int n) {
    const double u = p.reciprocal();
    const double v = q.reciprocal();
    const double t = n * tau2(p, q);
    if (u > v && v < 0.5 && s < t) return true;
    if (u != 0.0 && std::min(u, 0.5) <= v && s <= t) return true;
    if (u == 0.0 && v == 1.0 && s <= t) return true;
    if (u == 0.0 && v != 1.0 && s < n * tau2(ExponentValue::infinity(), q)) return true;
    return false;
}

/// n |1/p - 1/2|.
inline double sharp_threshold(ExponentValue p, int n) { return n * std::abs(p.reciprocal() - 0.5); }

/// -n (1 - rho) |1/p - 1/2|, the critical Hormander order.
inline double hormander_order(ExponentValue p, double rho, int n) { return -n * (1.0 - rho) * std::abs(p.reciprocal() - 0.5); }

/// 2n |1/p - 1/2|, the loss obtained by routing through modulation spaces.
inline double modulation_route_threshold(ExponentValue p, int n) { return 2.0 * sharp_threshold(p, n); }

}  // namespace modop
