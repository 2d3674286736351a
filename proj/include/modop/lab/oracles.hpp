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

// Reference computations used by the identity suite: direct lattice sums
// that avoid the FFT paths, and seeded smooth inputs.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "modop/grid.hpp"
#include "modop/rng.hpp"
#include "modop/symbol.hpp"

namespace modop::lab {

/// sigma(x, xi) = sum_r c_r exp(2 pi i w_r x) exp(-pi (xi - e_r)^2), with w_r
/// multiples of 1/L so that sigma is L-periodic in x.
struct ModeSymbol {
    std::vector<cd> c;
    std::vector<double> w, e;

    cd operator()(double x, double xi) const {
        cd v = 0.0;
        for (std::size_t r = 0; r < c.size(); ++r) v += c[r] * std::polar(std::exp(-std::numbers::pi * (xi - e[r]) * (xi - e[r])), two_pi * w[r] * x);
        return v;
    }

    ModeSymbol conj() const {
        ModeSymbol o;
        for (std::size_t r = 0; r < c.size(); ++r) {
            o.c.push_back(std::conj(c[r]));
            o.w.push_back(-w[r]);
            o.e.push_back(e[r]);
        }
        return o;
    }

    PhaseSpaceSymbol sample(const UniformGrid& g, Quantization q) const { return PhaseSpaceSymbol::sample1d(g, q, *this); }
};

/// Four modes with w_r in {0, +-1/L, +-2/L} and e_r in {0, +-1/2}.
inline ModeSymbol random_mode_symbol(double extent, std::uint64_t seed) {
    CounterRng rng(seed);
    ModeSymbol s;
    for (int r = 0; r < 4; ++r) {
        s.c.emplace_back(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        s.w.push_back(static_cast<double>(static_cast<int>(rng.next() % 5) - 2) / extent);
        s.e.push_back(0.5 * static_cast<double>(static_cast<int>(rng.next() % 3) - 1));
    }
    return s;
}

/// Sum of four Gaussian wave packets near the origin: centers in
/// [-L/8, L/8], widths in [0.5, 1.5], frequencies in [-2, 2].
inline SampledFunction random_bandlimited(const UniformGrid& g, std::uint64_t seed) {
    CounterRng rng(seed);
    struct Packet {
        cd amp;
        double center, width, freq;
    };
    std::vector<Packet> packets;
    const double reach = g.extent() / 8.0;
    for (int t = 0; t < 4; ++t) {
        Packet p;
        p.amp = std::polar(rng.uniform(0.2, 1.0), rng.uniform(0.0, two_pi));
        p.center = rng.uniform(-reach, reach);
        p.width = rng.uniform(0.5, 1.5);
        p.freq = rng.uniform(-2.0, 2.0);
        packets.push_back(p);
    }
    return sample1d(g, [&](double x) {
        cd v = 0.0;
        for (const auto& p : packets) {
            const double t = (x - p.center) / p.width;
            v += p.amp * std::polar(std::exp(-std::numbers::pi * t * t), two_pi * p.freq * x);
        }
        return v;
    });
}

/// Weyl operator by the direct lattice sum
///   (h/L) sum_m sum_k exp(2 pi i u_m xi_k) sigma(x_j - u_m/2, xi_k) f(x_j - u_m)
/// with u_m = x_m the centered lag and sigma evaluated at the exact midpoint.
/// Each mode's xi sum is done once, giving O(N^2) work per mode.
inline std::vector<cd> weyl_direct_sum(const ModeSymbol& sigma, const SampledFunction& f) {
    const UniformGrid& g = f.grid();
    const UniformGrid dual = g.dual();
    const std::size_t n = g.n();
    const std::size_t c = n / 2;
    const double scale = g.spacing() / g.extent();
    std::vector<cd> out(n, 0.0);
    for (std::size_t r = 0; r < sigma.c.size(); ++r) {
        // G_r(u_m) = sum_k exp(2 pi i u_m xi_k) exp(-pi (xi_k - e_r)^2)
        std::vector<cd> G(n, 0.0);
        for (std::size_t m = 0; m < n; ++m) {
            const double u = g.coord(m);
            for (std::size_t k = 0; k < n; ++k) {
                const double xi = dual.coord(k);
                G[m] += std::polar(std::exp(-std::numbers::pi * (xi - sigma.e[r]) * (xi - sigma.e[r])), two_pi * u * xi);
            }
        }
        for (std::size_t j = 0; j < n; ++j) {
            cd acc = 0.0;
            for (std::size_t m = 0; m < n; ++m) {
                const double mid = g.coord(j) - 0.5 * g.coord(m);
                acc += std::polar(1.0, two_pi * sigma.w[r] * mid) * G[m] * f[(j + n + c - m) % n];
            }
            out[j] += scale * sigma.c[r] * acc;
        }
    }
    return out;
}

/// U (sign +1) or U^{-1} (sign -1) by naive 2-d discrete Fourier sums, O(N^4).
inline std::vector<cd> u_transform_direct(const PhaseSpaceSymbol& s, int sign) {
    const UniformGrid& g = s.grid();
    const UniformGrid dual = g.dual();
    const std::size_t n = g.n();
    std::vector<cd> hat(n * n), out(n * n);
    for (std::size_t p = 0; p < n; ++p) {
        const double w = dual.coord(p);
        for (std::size_t m = 0; m < n; ++m) {
            const double u = g.coord(m);
            cd acc = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) acc += s.at(j, k) * std::polar(1.0, -two_pi * (w * g.coord(j) + u * dual.coord(k)));
            hat[p * n + m] = acc * std::polar(1.0, sign * std::numbers::pi * w * u);
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            cd acc = 0.0;
            for (std::size_t p = 0; p < n; ++p) {
                const double w = dual.coord(p);
                for (std::size_t m = 0; m < n; ++m) acc += hat[p * n + m] * std::polar(1.0, two_pi * (w * g.coord(j) + g.coord(m) * dual.coord(k)));
            }
            out[j * n + k] = acc / static_cast<double>(n * n);
        }
    }
    return out;
}

}  // namespace modop::lab
