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
#include <sstream>

#include "modop/grid.hpp"
#include "modop/rng.hpp"
#include "test_util.hpp"

using namespace modop;
using modop::testing::max_abs_diff;
using modop::testing::random_function;
using modop::testing::rel_error;

namespace {

const UniformGrid default_grid(1, 256, 16.0);

SampledFunction unit_gaussian(const UniformGrid& g) {
    return sample1d(g, [](double x) { return std::exp(-std::numbers::pi * x * x); });
}

}  // namespace

TEST_CASE("UniformGrid invariants", "[grid]") {
    const UniformGrid g(1, 256, 16.0);
    CHECK(g.spacing() * 256 == 16.0);
    CHECK(g.coord(0) == -8.0);
    CHECK(g.coord(128) == 0.0);
    const auto d = g.dual();
    CHECK(d.spacing() == 1.0 / 16.0);
    CHECK(d.coord(0) == -8.0);  // -N/(2L)

    CHECK_THROWS_AS(UniformGrid(1, 48, 1.0), Error);
    CHECK_THROWS_AS(UniformGrid(3, 8, 1.0), Error);
    CHECK_THROWS_AS(UniformGrid(1, 8, -1.0), Error);
    CHECK_THROWS_AS(SampledFunction(g, std::vector<cd>(3)), Error);
}

TEST_CASE("forward_ft fixes the Gaussian", "[grid][ft]") {
    const auto f = unit_gaussian(default_grid);
    const auto F = forward_ft(f);
    const auto expected = unit_gaussian(default_grid.dual());
    CHECK(max_abs_diff(F.values(), expected.values()) <= 1e-10);
    CHECK(max_abs_diff(inverse_ft(expected).values(), f.values()) <= 1e-10);
}

TEST_CASE("forward_ft of a constant is L times a lattice delta", "[grid][ft]") {
    const auto one = sample1d(default_grid, [](double) { return 1.0; });
    const auto F = forward_ft(one);
    for (std::size_t k = 0; k < F.size(); ++k) {
        const double want = (k == 128) ? 16.0 : 0.0;
        CHECK(std::abs(F[k] - want) <= 1e-12);
    }
    std::vector<cd> delta(256);
    delta[128] = 16.0;
    const auto back = inverse_ft(SampledFunction(default_grid.dual(), delta));
    for (const cd& v : back.values()) CHECK(std::abs(v - 1.0) <= 1e-13);
}

TEST_CASE("forward_ft and inverse_ft are inverse; Parseval holds", "[grid][ft]") {
    for (std::size_t dim : {1u, 2u}) {
        const UniformGrid g(dim, dim == 1 ? 256 : 32, dim == 1 ? 16.0 : 4.0);
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            const auto f = random_function(g, seed);
            const auto F = forward_ft(f);
            CHECK(rel_error(inverse_ft(F).values(), f.values()) <= 1e-12);

            double space = 0.0, freq = 0.0;
            for (const cd& v : f.values()) space += std::norm(v);
            for (const cd& v : F.values()) freq += std::norm(v);
            space *= g.cell();
            freq *= g.dual().cell();
            CHECK(std::abs(space - freq) <= 1e-12 * space);
        }
    }
}

TEST_CASE("translation covariance of forward_ft", "[grid][ft]") {
    const auto f = unit_gaussian(default_grid);
    const double a = 37 * default_grid.spacing();
    const auto lhs = forward_ft(translate(f, a));
    const auto F = forward_ft(f);
    const auto dual = default_grid.dual();
    std::vector<cd> rhs(F.size());
    for (std::size_t k = 0; k < F.size(); ++k) rhs[k] = std::polar(1.0, -two_pi * a * dual.coord(k)) * F[k];
    CHECK(max_abs_diff(lhs.values(), rhs) <= 1e-12);
}

TEST_CASE("translate and modulate", "[grid]") {
    const auto f = random_function(default_grid, 11);
    CHECK(translate(f, 0.0).values().data() != nullptr);
    CHECK(max_abs_diff(translate(f, 0.0).values(), f.values()) == 0.0);
    CHECK(max_abs_diff(modulate(f, 0.0).values(), f.values()) == 0.0);

    const double a = 5 * default_grid.spacing();
    CHECK(max_abs_diff(translate(translate(f, a), -a).values(), f.values()) == 0.0);

    // T_a shifts samples: (T_a f)(x_j) = f(x_j - a)
    const auto t = translate(f, a);
    CHECK(t[100] == f[95]);
    CHECK(t[2] == f[256 + 2 - 5]);

    const double xi0 = 3.0 / 16.0;
    const auto m = modulate(f, xi0);
    double n0 = 0.0, n1 = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        n0 += std::norm(f[i]);
        n1 += std::norm(m[i]);
        CHECK(std::abs(std::abs(m[i]) - std::abs(f[i])) <= 1e-15 * (1.0 + std::abs(f[i])));
    }
    CHECK(std::abs(n0 - n1) <= 1e-13 * n0);

    // modulation by a lattice frequency shifts the spectrum by whole bins
    const auto Fm = forward_ft(m);
    const auto F = forward_ft(f);
    for (std::size_t k = 3; k < 256; ++k) CHECK(std::abs(Fm[k] - F[k - 3]) <= 1e-12);

    CHECK_THROWS_AS(translate(f, 0.5 * default_grid.spacing()), Error);
    CHECK_THROWS_AS(modulate(f, 0.01), Error);
    try {
        translate(f, 0.01);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::OffLattice);
    }
}

TEST_CASE("translate in two dimensions", "[grid]") {
    const UniformGrid g(2, 16, 4.0);
    const auto f = random_function(g, 3);
    const std::array<double, 2> a{2 * g.spacing(), -3 * g.spacing()};
    const auto t = translate(f, a);
    CHECK(t[5 * 16 + 7] == f[3 * 16 + 10]);
    const std::array<double, 2> back{-a[0], -a[1]};
    CHECK(max_abs_diff(translate(t, back).values(), f.values()) == 0.0);
}

TEST_CASE("bessel_potential is a diagonal Fourier multiplier", "[grid][bessel]") {
    const auto f = random_function(default_grid, 21);
    CHECK(max_abs_diff(bessel_potential(f, 0.0).values(), f.values()) == 0.0);
    CHECK(rel_error(bessel_potential(bessel_potential(f, 1.3), -1.3).values(), f.values()) <= 1e-12);

    // a pure lattice mode is scaled by <xi_k>^s
    const double xi = 5.0 / 16.0;
    const auto mode = modulate(sample1d(default_grid, [](double) { return 1.0; }), xi);
    const double s = 0.7;
    const auto out = bessel_potential(mode, s);
    const double factor = std::pow(1.0 + xi * xi, s / 2);
    std::vector<cd> want(mode.values().begin(), mode.values().end());
    for (cd& v : want) v *= factor;
    CHECK(max_abs_diff(out.values(), want) <= 1e-12);
}

TEST_CASE("SFN v1 round trip is bit exact", "[grid][io]") {
    for (std::size_t dim : {1u, 2u}) {
        const UniformGrid g(dim, 8, 0.1 * 3.0);
        const auto f = random_function(g, 99);
        std::stringstream ss;
        write_sfn(ss, f);
        const auto back = read_sfn(ss);
        CHECK(back.grid().same_as(g));
        CHECK(back.grid().extent() == g.extent());
        for (std::size_t i = 0; i < f.size(); ++i) CHECK(back[i] == f[i]);
    }
    std::stringstream bad("SFN 1\ndim=1 n=4 extent=1\n1 0\n2 0\n");
    CHECK_THROWS_AS(read_sfn(bad), Error);
    std::stringstream wrong("SFN 2\n");
    CHECK_THROWS_AS(read_sfn(wrong), Error);
}
