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
#include <numbers>

#include "modop/quantize.hpp"
#include "modop/symbolgen.hpp"
#include "modop/tf_analysis.hpp"
#include "test_util.hpp"

using namespace modop;

namespace {

constexpr double pi = std::numbers::pi;

auto code_is(ErrorCode c) {
    return Catch::Matchers::Predicate<Error>([c](const Error& e) { return e.code() == c; });
}

}  // namespace

TEST_CASE("Random phase multiplier", "[symbolgen]") {
    const UniformGrid g(1, 256, 8.0);
    const auto s0 = random_phase_multiplier(g, 0, 42);
    CounterRng rng(42);
    const cd phase = std::polar(1.0, two_pi * rng.uniform());
    const std::size_t c = g.n() / 2;
    CHECK(std::abs(s0.at(0, c) - phase) < 1e-15);
    CHECK(std::abs(s0.at(17, c) - phase) < 1e-15);
    CHECK(s0.at(0, c + 4) == cd(0.0));  // xi = 1/2 is outside the bump

    const auto a = random_phase_multiplier(g, 5, 7);
    const auto b = random_phase_multiplier(g, 5, 7);
    CHECK(std::equal(a.values().begin(), a.values().end(), b.values().begin()));
    CHECK_FALSE(std::equal(a.values().begin(), a.values().end(), random_phase_multiplier(g, 5, 8).values().begin()));

    CHECK_THROWS_MATCHES(random_phase_multiplier(g, 16, 1), Error, code_is(ErrorCode::TooManyModes));
    CHECK_NOTHROW(random_phase_multiplier(g, 15, 1));
}

TEST_CASE("Random phase multipliers have mode-independent bounds", "[symbolgen]") {
    const UniformGrid g(1, 1024, 8.0);
    std::vector<SeminormReport> reports;
    std::vector<double> sj;
    for (int m : {4, 8, 16, 32}) {
        const auto s = random_phase_multiplier(g, m, 3);
        double sup = 0.0;
        for (const cd& v : s.values()) sup = std::max(sup, std::abs(v));
        CHECK(sup == 1.0);
        reports.push_back(s_seminorms(s, 0.0, 0.0, 0.0, 2));
        sj.push_back(sjostrand_norm(s));
    }
    for (std::size_t i = 0; i < reports[0].values.size(); ++i) {
        double lo = 1e300, hi = 0.0;
        for (const auto& r : reports) {
            lo = std::min(lo, r.values[i]);
            hi = std::max(hi, r.values[i]);
        }
        CHECK(hi <= 1.01 * lo);
    }
    const double lo = *std::min_element(sj.begin(), sj.end());
    const double hi = *std::max_element(sj.begin(), sj.end());
    CHECK(hi <= 2.0 * lo);
}

TEST_CASE("Seminorms of closed-form symbols", "[symbolgen]") {
    const UniformGrid g(1, 256, 16.0);

    const auto one = PhaseSpaceSymbol::sample1d(g, Quantization::KohnNirenberg, [](double, double) { return 1.0; });
    const auto r1 = s_seminorms(one, 0.0, 0.0, 0.0, 4);
    CHECK(r1.values.size() == 15);
    CHECK(r1.value(0, 0) == 1.0);
    for (std::size_t i = 1; i < r1.values.size(); ++i) CHECK(r1.values[i] <= 1e-8);

    const double xi0 = 0.5;
    const auto wave = PhaseSpaceSymbol::sample1d(g, Quantization::KohnNirenberg, [&](double x, double) { return std::polar(1.0, 2 * pi * x * xi0); });
    const auto r2 = s_seminorms(wave, 0.0, 0.0, 0.0, 2);
    CHECK(r2.value(1, 0) == Catch::Approx(2 * pi * xi0).epsilon(0.01));
    CHECK(r2.value(2, 0) == Catch::Approx(std::pow(2 * pi * xi0, 2)).epsilon(0.01));

    // shifted Gaussian of width 2 against analytic derivatives on the same lattice
    const double cx = 0.3, cxi = -0.2, m = 0.5, rho = 0.5, delta = 0.25;
    auto dg = [](int k, double t) {
        const double a = pi / 2.0;
        const double gv = std::exp(-pi * t * t / 4.0);
        switch (k) {
            case 0: return gv;
            case 1: return -a * t * gv;
            default: return (a * a * t * t - a) * gv;
        }
    };
    const auto gauss = PhaseSpaceSymbol::sample1d(g, Quantization::KohnNirenberg, [&](double x, double xi) {
        return std::exp(-pi * ((x - cx) * (x - cx) + (xi - cxi) * (xi - cxi)) / 4.0);
    });
    const auto r3 = s_seminorms(gauss, m, rho, delta, 2);
    const UniformGrid dual = g.dual();
    for (std::size_t i = 0; i < r3.orders.size(); ++i) {
        const auto [alpha, beta] = r3.orders[i];
        double sup = 0.0;
        for (std::size_t j = 1; j + 1 < g.n(); ++j) {
            for (std::size_t k = 1; k + 1 < g.n(); ++k) {
                const double xi = dual.coord(k);
                const double w = std::pow(1.0 + std::abs(xi), -m + rho * beta - delta * alpha);
                sup = std::max(sup, std::abs(dg(alpha, g.coord(j) - cx) * dg(beta, xi - cxi)) * w);
            }
        }
        INFO("alpha=" << alpha << " beta=" << beta);
        CHECK(r3.values[i] == Catch::Approx(sup).epsilon(0.01));
    }

    CHECK_THROWS_MATCHES(s_seminorms(one, 0, 0, 0, 5), Error, code_is(ErrorCode::OrderTooHigh));
}

TEST_CASE("Standard suite", "[symbolgen]") {
    const UniformGrid g(1, 128, 8.0);
    const auto suite = standard_suite(g, 5);
    const auto again = standard_suite(g, 5);
    REQUIRE(suite.size() == again.size());
    for (std::size_t i = 0; i < suite.size(); ++i) {
        CHECK(suite[i].name == again[i].name);
        CHECK(std::equal(suite[i].symbol.values().begin(), suite[i].symbol.values().end(), again[i].symbol.values().begin()));
    }
    REQUIRE(suite.front().name == "constant");
    const auto f = modop::testing::random_function(g, 1);
    CHECK(modop::testing::max_abs_diff(kn_apply(suite.front().symbol, f).values(), f.values()) < 1e-12);

    const UniformGrid fine(1, 256, 8.0);
    const auto refined = standard_suite(fine, 5);
    REQUIRE(refined.size() == suite.size());
    for (std::size_t i = 0; i < suite.size(); ++i) {
        INFO(suite[i].name);
        const double coarse_norm = sjostrand_norm(suite[i].symbol);
        const double fine_norm = sjostrand_norm(refined[i].symbol);
        CHECK(std::isfinite(coarse_norm));
        CHECK(std::abs(fine_norm - coarse_norm) <= 0.1 * coarse_norm);
    }
}
