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

// Test symbols and finite-difference symbol-class seminorms.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "modop/error.hpp"
#include "modop/grid.hpp"
#include "modop/rng.hpp"
#include "modop/symbol.hpp"

namespace modop {

/// Half-width of the bump profile; bumps at integer centers are disjoint.
inline constexpr double bump_radius = 0.45;

/// exp(1 - 1/(1 - (t/r)^2)) on |t| < r, zero outside. Height 1 at t = 0.
inline double bump(double t, double r = bump_radius) {
    const double a = t / r;
    if (!(std::abs(a) < 1.0)) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - a * a));
}

/// sigma(xi) = sum_{|k| <= modes} exp(i theta_k) bump(xi - k), x-independent,
/// with theta_k = 2 pi U_k drawn from CounterRng(seed) in the order k = -modes..modes.
inline PhaseSpaceSymbol random_phase_multiplier(const UniformGrid& grid, int modes, std::uint64_t seed) {
    if (grid.dim() != 1) throw Error(ErrorCode::DimensionUnsupported, "random_phase_multiplier needs a 1-d grid");
    if (modes < 0) throw Error(ErrorCode::InvalidArgument, "number of modes must be non-negative");
    const double half_band = static_cast<double>(grid.n()) / (2.0 * grid.extent());
    if (!(modes + bump_radius < half_band)) {
        throw Error(ErrorCode::TooManyModes, std::to_string(modes) + " modes do not fit in the frequency band |xi| < " + format_double(half_band));
    }
    CounterRng rng(seed);
    std::vector<cd> phases;
    for (int k = -modes; k <= modes; ++k) phases.push_back(std::polar(1.0, two_pi * rng.uniform()));

    const UniformGrid dual = grid.dual();
    const std::size_t n = grid.n();
    std::vector<cd> row(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = dual.coord(i);
        const long long k = std::llround(xi);
        if (std::abs(k) <= modes) row[i] = phases[static_cast<std::size_t>(k + modes)] * bump(xi - static_cast<double>(k));
    }
    std::vector<cd> v(n * n);
    for (std::size_t j = 0; j < n; ++j) std::copy(row.begin(), row.end(), v.begin() + static_cast<std::ptrdiff_t>(j * n));
    return {grid, Quantization::KohnNirenberg, std::move(v)};
}

// ---------------------------------------------------------------------------

struct SeminormReport {
    std::vector<std::pair<int, int>> orders;  ///< (alpha, beta): x and xi derivative orders
    std::vector<double> values;
    int max_order = 0;

    double value(int alpha, int beta) const {
        for (std::size_t i = 0; i < orders.size(); ++i) {
            if (orders[i] == std::pair{alpha, beta}) return values[i];
        }
        throw Error(ErrorCode::InvalidArgument, "order not in report");
    }
};

inline constexpr int max_seminorm_order = 4;

namespace detail {

/// Central difference stencil for derivative order k (half-width, weights).
inline std::pair<int, std::vector<double>> central_stencil(int k) {
    switch (k) {
        case 0: return {0, {1.0}};
        case 1: return {1, {-0.5, 0.0, 0.5}};
        case 2: return {1, {1.0, -2.0, 1.0}};
        case 3: return {2, {-0.5, 1.0, 0.0, -1.0, 0.5}};
        default: return {2, {1.0, -4.0, 6.0, -4.0, 1.0}};
    }
}

}  // namespace detail

/// Sup over interior lattice points of |D_x^alpha D_xi^beta sigma| (1 + |xi|)^{-m + rho beta - delta alpha}
/// for alpha + beta <= max_order, with central differences of steps h and 1/L.
inline SeminormReport s_seminorms(const PhaseSpaceSymbol& sigma, double m, double rho, double delta, int max_order) {
    if (max_order > max_seminorm_order) {
        throw Error(ErrorCode::OrderTooHigh, "seminorm order " + std::to_string(max_order) + " exceeds " + std::to_string(max_seminorm_order));
    }
    if (max_order < 0) throw Error(ErrorCode::InvalidArgument, "seminorm order must be non-negative");
    const UniformGrid& g = sigma.grid();
    if (g.dim() != 1) throw Error(ErrorCode::DimensionUnsupported, "s_seminorms supports one space dimension only");
    const UniformGrid dual = g.dual();
    const int n = static_cast<int>(g.n());
    const double hx = g.spacing();
    const double hxi = dual.spacing();

    SeminormReport rep;
    rep.max_order = max_order;
    for (int total = 0; total <= max_order; ++total) {
        for (int alpha = total; alpha >= 0; --alpha) {
            const int beta = total - alpha;
            const auto [wa, ca] = detail::central_stencil(alpha);
            const auto [wb, cb] = detail::central_stencil(beta);
            const double scale = 1.0 / (std::pow(hx, alpha) * std::pow(hxi, beta));
            double sup = 0.0;
            for (int j = wa; j < n - wa; ++j) {
                for (int k = wb; k < n - wb; ++k) {
                    cd acc = 0.0;
                    for (int a = -wa; a <= wa; ++a) {
                        const double w1 = ca[static_cast<std::size_t>(a + wa)];
                        if (w1 == 0.0) continue;
                        for (int b = -wb; b <= wb; ++b) {
                            const double w2 = cb[static_cast<std::size_t>(b + wb)];
                            if (w2 != 0.0) acc += w1 * w2 * sigma.at(static_cast<std::size_t>(j + a), static_cast<std::size_t>(k + b));
                        }
                    }
                    const double weight = std::pow(1.0 + std::abs(dual.coord(static_cast<std::size_t>(k))), -m + rho * beta - delta * alpha);
                    sup = std::max(sup, std::abs(acc) * scale * weight);
                }
            }
            rep.orders.emplace_back(alpha, beta);
            rep.values.push_back(sup);
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------

struct NamedSymbol {
    std::string name;
    PhaseSpaceSymbol symbol;
};

/// Reference symbols, all Kohn-Nirenberg tagged:
///   constant          1                                  S^0_{1,0}
///   multiplication    1 + cos(2 pi x / L) / 2            S^0_{1,0}
///   translation       exp(-2 pi i a xi), a ~ L/8 on the grid    S^0_{0,0}
///   bessel            <xi>^{-1}                          S^{-1}_{1,0}
///   random_phase_M<k> random_phase_multiplier, k in {1, 2, 4} where it fits   S^0_{0,0}
///   bump              bump(x/2) bump(xi/2)               S^{-inf}
inline std::vector<NamedSymbol> standard_suite(const UniformGrid& grid, std::uint64_t seed = 1) {
    if (grid.dim() != 1) throw Error(ErrorCode::DimensionUnsupported, "standard_suite needs a 1-d grid");
    const double L = grid.extent();
    const double shift = std::round(L / 8.0 / grid.spacing()) * grid.spacing();
    const auto kn = Quantization::KohnNirenberg;
    std::vector<NamedSymbol> out;
    out.push_back({"constant", PhaseSpaceSymbol::sample1d(grid, kn, [](double, double) { return 1.0; })});
    out.push_back({"multiplication", PhaseSpaceSymbol::sample1d(grid, kn, [L](double x, double) { return 1.0 + 0.5 * std::cos(two_pi * x / L); })});
    out.push_back({"translation", PhaseSpaceSymbol::sample1d(grid, kn, [shift](double, double xi) { return std::polar(1.0, -two_pi * shift * xi); })});
    out.push_back({"bessel", PhaseSpaceSymbol::sample1d(grid, kn, [](double, double xi) { return 1.0 / std::sqrt(1.0 + xi * xi); })});
    const double half_band = static_cast<double>(grid.n()) / (2.0 * L);
    for (int m : {1, 2, 4}) {
        if (m + bump_radius < half_band) {
            out.push_back({"random_phase_M" + std::to_string(m), random_phase_multiplier(grid, m, derive_seed(seed, static_cast<std::uint64_t>(m)))});
        }
    }
    out.push_back({"bump", PhaseSpaceSymbol::sample1d(grid, kn, [](double x, double xi) { return bump(x / 2.0) * bump(xi / 2.0); })});
    return out;
}

}  // namespace modop
