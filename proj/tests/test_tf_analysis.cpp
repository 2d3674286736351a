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


#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "modop/tf_analysis.hpp"
#include "test_util.hpp"

using namespace modop;
using modop::testing::random_function;

namespace {

const UniformGrid grid256(1, 256, 16.0);
const auto P1 = ExponentValue::one();
const auto P2 = ExponentValue::two();
const auto PInf = ExponentValue::infinity();

// Direct O(N^3) evaluation of V_g f with explicit phases; independent of the
// FFT path.
double direct_stft_abs(const SampledFunction& f, const SampledFunction& g, std::size_t j, std::size_t k) {
    const auto& grid = f.grid();
    const double x = grid.coord(j);
    const double xi = grid.dual().coord(k);
    cd acc = 0.0;
    for (std::size_t i = 0; i < grid.n(); ++i) {
        const double y = grid.coord(i);
        double shifted = y - x;
        // periodic window argument in [-L/2, L/2)
        shifted -= grid.extent() * std::floor((shifted + 0.5 * grid.extent()) / grid.extent());
        const std::size_t gi = static_cast<std::size_t>(std::llround(shifted / grid.spacing())) + grid.n() / 2;
        acc += f[i] * std::conj(g[gi]) * std::polar(1.0, -two_pi * y * xi);
    }
    return std::abs(acc) * grid.spacing();
}

}  // namespace

TEST_CASE("ExponentValue encodes reciprocals", "[exponent]") {
    CHECK(PInf.is_infinite());
    CHECK(ExponentValue::from_p(4.0).reciprocal() == 0.25);
    CHECK(parse_exponent("4/3").reciprocal() == 0.75);
    CHECK(parse_exponent("inf").is_infinite());
    CHECK(ExponentValue::from_p(1.0).conjugate().is_infinite());
    CHECK(P2.conjugate() == P2);
    CHECK_THROWS_AS(ExponentValue::from_p(0.5), Error);
    CHECK_THROWS_AS(ExponentValue::from_reciprocal(1.5), Error);
    CHECK_THROWS_AS(parse_exponent("abc"), Error);
    CHECK(format_exponent(PInf) == "inf");
}

TEST_CASE("stft of the Gaussian window", "[stft]") {
    const auto g = gaussian_window(grid256);
    const auto V = stft(g, g);
    // V_g g(0, 0) = ||g||^2 = 1
    CHECK(std::abs(V.at(128, 128) - 1.0) <= 1e-10);

    // Frozen values from an mpmath quadrature of the defining integral.
    struct Point { double x, xi, value; };
    const Point frozen[] = {
        {0.5, 1.25, 0.058014149440597035087},
        {-1.5, 0.75, 0.012059956808061102621},
        {2.0, -2.5, 1.0175861482248278155e-7},
        {3.0, 3.0, 5.2554851760064485552e-13},
    };
    for (const auto& p : frozen) {
        const auto j = static_cast<std::size_t>(std::llround(p.x * 16)) + 128;
        const auto k = static_cast<std::size_t>(std::llround(p.xi * 16)) + 128;
        CHECK(std::abs(std::abs(V.at(j, k)) - p.value) <= 1e-6 * p.value);
    }

    // closed form |V_g g| = exp(-pi (x^2 + xi^2) / 2) on |x|, |xi| <= 3
    double worst = 0.0;
    for (std::size_t j = 0; j < 256; ++j) {
        const double x = grid256.coord(j);
        if (std::abs(x) > 3.0) continue;
        for (std::size_t k = 0; k < 256; ++k) {
            const double xi = grid256.dual().coord(k);
            if (std::abs(xi) > 3.0) continue;
            const double want = std::exp(-std::numbers::pi * (x * x + xi * xi) / 2);
            worst = std::max(worst, std::abs(std::abs(V.at(j, k)) - want) / want);
        }
    }
    CHECK(worst <= 1e-6);
}

TEST_CASE("stft matches direct summation and is translation covariant", "[stft]") {
    const UniformGrid g64(1, 64, 8.0);
    const auto f = random_function(g64, 5);
    const auto g = gaussian_window(g64);
    const auto V = stft(f, g);
    for (std::size_t j = 0; j < 64; j += 7) {
        for (std::size_t k = 0; k < 64; k += 5) CHECK(std::abs(std::abs(V.at(j, k)) - direct_stft_abs(f, g, j, k)) <= 1e-13);
    }
    const std::size_t shift = 6;
    const auto Vt = stft(translate(f, shift * g64.spacing()), g);
    for (std::size_t j = 0; j < 64; ++j) {
        for (std::size_t k = 0; k < 64; ++k) {
            CHECK(std::abs(std::abs(Vt.at((j + shift) % 64, k)) - std::abs(V.at(j, k))) <= 1e-13);
        }
    }
    // stride subsamples the x lattice
    const auto V4 = stft(f, g, 4);
    CHECK(V4.x_count() == 16);
    CHECK(V4.at(3, 10) == V.at(12, 10));
}

TEST_CASE("stft errors", "[stft]") {
    const auto f = random_function(grid256, 1);
    CHECK_THROWS_AS(stft(f, SampledFunction::zeros(grid256)), Error);
    CHECK_THROWS_AS(stft(f, gaussian_window(UniformGrid(1, 256, 8.0))), Error);
    try {
        stft(f, SampledFunction::zeros(grid256));
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::ZeroWindow);
    }
}

TEST_CASE("lp_norm", "[norms]") {
    std::vector<cd> cell(256);
    cell[40] = 1.0;
    const SampledFunction spike(grid256, cell);
    const double h = grid256.spacing();
    CHECK(lp_norm(spike, P1) == Catch::Approx(h));
    CHECK(lp_norm(spike, P2) == Catch::Approx(std::sqrt(h)));
    CHECK(lp_norm(spike, ExponentValue::from_p(4)) == Catch::Approx(std::pow(h, 0.25)));
    CHECK(lp_norm(spike, PInf) == 1.0);

    const auto unimodular = sample1d(grid256, [](double x) { return std::polar(1.0, 3.0 * x * x); });
    CHECK(std::abs(lp_norm(unimodular, PInf) - 1.0) <= 1e-15);

    const auto gauss = gaussian_window(grid256);
    CHECK(std::abs(lp_norm(gauss, P2) - 1.0) <= 1e-10);
}

TEST_CASE("sobolev_norm", "[norms]") {
    const auto f = random_function(grid256, 8);
    for (auto p : {P1, P2, PInf}) CHECK(sobolev_norm(f, p, 0.0) == lp_norm(f, p));

    const double xi = 7.0 / 16.0;
    const auto mode = modulate(sample1d(grid256, [](double) { return 1.0; }), xi);
    const double s = 1.5;
    for (auto p : {P1, P2, ExponentValue::from_p(3), PInf}) {
        CHECK(sobolev_norm(mode, p, s) == Catch::Approx(std::pow(1 + xi * xi, s / 2) * lp_norm(mode, p)).epsilon(1e-12));
    }

    // p = 2: monotone in s pointwise in frequency
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto r = random_function(grid256, seed);
        double prev = 0.0;
        for (double s2 : {-1.0, -0.5, 0.0, 0.5, 1.0, 2.0}) {
            const double v = sobolev_norm(r, P2, s2);
            CHECK(v >= prev);
            prev = v;
        }
    }
}

TEST_CASE("modulation_norm", "[norms]") {
    const auto g = gaussian_window(grid256);
    CHECK(modulation_norm(SampledFunction::zeros(grid256), P2, P1) == 0.0);
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const auto f = random_function(grid256, seed);
        const double l2 = lp_norm(f, P2);
        // STFT isometry with ||g||_2 = 1
        CHECK(std::abs(modulation_norm(f, P2, P2, {}, g) - l2) <= 1e-4 * l2);
        const auto V = stft(f, g);
        CHECK(modulation_norm(V, P1, PInf, Weight{0, 0}) == modulation_norm(V, P1, PInf));
        // homogeneity
        std::vector<cd> scaled(f.values().begin(), f.values().end());
        for (cd& v : scaled) v *= cd(0.0, -3.0);
        CHECK(modulation_norm(SampledFunction(grid256, scaled), P1, P2) ==
              Catch::Approx(3.0 * modulation_norm(f, P1, P2)).epsilon(1e-12));
        // weights > 1 increase the norm
        CHECK(modulation_norm(V, P2, P1, Weight{1.0, 0.5}) > modulation_norm(V, P2, P1));
    }
}

TEST_CASE("modulation isometry against direct double quadrature", "[norms]") {
    const UniformGrid g64(1, 64, 8.0);
    const auto f = random_function(g64, 77);
    const auto g = gaussian_window(g64);
    double acc = 0.0;
    for (std::size_t j = 0; j < 64; ++j) {
        for (std::size_t k = 0; k < 64; ++k) acc += std::pow(direct_stft_abs(f, g, j, k), 2);
    }
    const double oracle = std::sqrt(acc * g64.spacing() / g64.extent());
    CHECK(std::abs(modulation_norm(f, P2, P2, {}, g) - oracle) <= 1e-12 * oracle);
    CHECK(std::abs(oracle - lp_norm(f, P2)) <= 1e-4 * oracle);
}

TEST_CASE("amalgam_norm", "[norms]") {
    const auto g = gaussian_window(grid256);
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const auto f = random_function(grid256, seed);
        const double l2 = lp_norm(f, P2);
        CHECK(std::abs(amalgam_norm(f, P2, P2, 0.0, g) - l2) <= 1e-4 * l2);

        const auto A = amalgam_transform(f, g);
        for (auto [p, q] : {std::pair{P1, P2}, {P2, P1}, {PInf, P1}, {P1, PInf}}) {
            double prev = 0.0;
            for (double s : {0.0, 0.5, 1.0, 2.0}) {
                const double v = amalgam_norm(A, p, q, s);
                CHECK(v >= prev);
                prev = v;
            }
        }
    }
}

TEST_CASE("Fourier transform exchanges modulation and amalgam norms", "[norms]") {
    // |V_g f^(x, xi)| = |V_g f(-xi, x)| for the Gaussian window, so the M^{p,q}
    // norm of f^ is the amalgam norm of f with the two exponents exchanged
    // (inner frequency exponent p, outer space exponent q).
    const auto g = gaussian_window(grid256);
    for (auto [p, q] : {std::pair{P1, P2}, {P2, PInf}, {ExponentValue::from_p(4), P1}, {P2, P2}}) {
        for (std::uint64_t seed = 1; seed <= 4; ++seed) {
            const auto f = random_function(grid256, seed);
            const double m = modulation_norm(forward_ft(f), p, q, {}, g);
            const double w = amalgam_norm(f, q, p, 0.0, g);
            CHECK(std::abs(m / w - 1.0) <= 1e-9);
        }
    }
}

TEST_CASE("sjostrand_norm", "[sjostrand]") {
    const UniformGrid g(1, 64, 8.0);
    const auto one = PhaseSpaceSymbol::sample1d(g, Quantization::KohnNirenberg, [](double, double) { return 1.0; });
    // sup_z |V_Phi 1(z, zeta)| = |Phi^(zeta)|, whose L^1 norm is sqrt(2)
    CHECK(std::abs(sjostrand_norm(one) - std::sqrt(2.0)) <= 1e-4);

    // plane wave: same value
    const double w0x = 2.0 / 8.0, w0xi = 3.0 * g.spacing();
    const auto wave = PhaseSpaceSymbol::sample1d(g, Quantization::KohnNirenberg,
                                                 [&](double x, double xi) { return std::polar(1.0, two_pi * (x * w0x + xi * w0xi)); });
    CHECK(std::abs(sjostrand_norm(wave) - sjostrand_norm(one)) <= 1e-10);

    CHECK_THROWS_AS(sjostrand_norm(PhaseSpaceSymbol(UniformGrid(2, 4, 2.0), Quantization::KohnNirenberg, std::vector<cd>(256))), Error);
}

TEST_CASE("sjostrand_norm factorized path matches the full 4-d computation", "[sjostrand]") {
    const UniformGrid g(1, 16, 4.0);
    const auto bump = PhaseSpaceSymbol::sample1d(g, Quantization::KohnNirenberg, [](double x, double xi) {
        return std::exp(-x * x) * std::polar(1.0 + xi * xi, xi);
    });
    const auto window = default_phase_window(g);
    for (double s : {0.0, 1.0}) {
        const double fast = sjostrand_norm(bump, s, window);
        const double full = sjostrand_norm(bump, s, window, {.z_stride = 1, .allow_factorized = false});
        CHECK(std::abs(fast - full) <= 1e-10 * full);
    }
}

TEST_CASE("sjostrand_norm triangle inequality and weights", "[sjostrand]") {
    const UniformGrid g(1, 16, 4.0);
    CounterRng rng(3);
    std::vector<cd> a(256), b(256), c(256);
    for (std::size_t i = 0; i < 256; ++i) {
        a[i] = {rng.normal(), rng.normal()};
        b[i] = {rng.normal(), rng.normal()};
        c[i] = a[i] + b[i];
    }
    const PhaseSpaceSymbol sa(g, Quantization::KohnNirenberg, a), sb(g, Quantization::KohnNirenberg, b),
        sc(g, Quantization::KohnNirenberg, c);
    const double na = sjostrand_norm(sa), nb = sjostrand_norm(sb), nc = sjostrand_norm(sc);
    CHECK(nc <= na + nb + 1e-12);
    CHECK(sjostrand_norm(sa, 1.0) >= na);
}
