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

#include "modop/lab/config.hpp"
#include "modop/lab/experiments.hpp"
#include "modop/lab/records.hpp"

using namespace modop;
using namespace modop::lab;

namespace {

auto code_is(ErrorCode c) {
    return Catch::Matchers::Predicate<Error>([c](const Error& e) { return e.code() == c; });
}

const SweepRecord* find(const RunOutput& out, const std::string& method, double p, double q, double s) {
    for (const auto& r : out.records) {
        if (r.method == method && r.p == p && r.q == q && r.s == s) return &r;
    }
    return nullptr;
}

}  // namespace

TEST_CASE("minimal config parses with defaults") {
    const auto cfg = parse_config(R"({"experiments": ["identity"]})");
    CHECK(cfg.experiments == std::vector<std::string>{"identity"});
    CHECK(cfg.seed == 1);
    CHECK(cfg.num_functions == 50);
    CHECK(cfg.tol.weyl_oracle == 1e-8);
    CHECK(cfg.has_experiment("identity"));
    CHECK_FALSE(cfg.has_experiment("threshold"));
}

TEST_CASE("full config parses") {
    const auto cfg = parse_config(R"({
        "experiments": ["embedding", "threshold"],
        "grid": {"N": [64, 128], "L": 8},
        "p": [1, "4/3", "inf"], "q": [2], "s": [0, 0.5],
        "n_modes": [2, 4, 8, 16], "seeds": [3, 4], "seed": 9,
        "num_functions": 5, "restarts": 2,
        "tolerances": {"band": 4, "boyd": 1e-6}
    })");
    CHECK(cfg.grid_n == std::vector<std::size_t>{64, 128});
    CHECK(cfg.extent == 8.0);
    REQUIRE(cfg.p.size() == 3);
    CHECK(cfg.p[1].reciprocal() == Catch::Approx(0.75));
    CHECK(cfg.p[2].is_infinite());
    CHECK(cfg.tol.band == 4.0);
    CHECK(cfg.tol.boyd == 1e-6);
    CHECK(cfg.seeds == std::vector<std::uint64_t>{3, 4});
}

TEST_CASE("config errors name the offending key") {
    auto message_has = [](const std::string& text, const std::string& key) {
        try {
            parse_config(text);
        } catch (const Error& e) {
            return e.code() == ErrorCode::ConfigError && std::string(e.what()).find(key) != std::string::npos;
        }
        return false;
    };
    CHECK(message_has(R"({"experiments": ["identity"], "bogus": 1})", "bogus"));
    CHECK(message_has(R"({"experiments": ["identity"], "grid": {"M": 3}})", "grid.M"));
    CHECK(message_has(R"({"experiments": ["identity"], "tolerances": {"x": 3}})", "tolerances.x"));
    CHECK(message_has(R"({"experiments": []})", "experiments"));
    CHECK(message_has(R"({"experiments": ["nope"]})", "experiments"));
    CHECK(message_has(R"({})", "experiments"));
    CHECK(message_has(R"({"experiments": ["identity"], "grid": {"N": [100]}})", "grid.N"));
    CHECK(message_has(R"({"experiments": ["identity"], "grid": {"L": -1}})", "grid.L"));
    CHECK(message_has(R"({"experiments": ["identity"], "p": [0.5]})", "p"));
    CHECK(message_has(R"({"experiments": ["identity"], "s": []})", "s"));
    CHECK_THROWS_MATCHES(parse_config("{not json"), Error, code_is(ErrorCode::ConfigError));
    CHECK_THROWS_MATCHES(load_config("/nonexistent/modop.json"), Error, code_is(ErrorCode::ConfigError));
}

TEST_CASE("csv rows round trip") {
    SweepRecord a;
    a.experiment = "threshold";
    a.p = 4.0 / 3.0;
    a.s = 0.125;
    a.n = 1;
    a.N = 1024;
    a.n_modes = 8;
    a.seed = 18446744073709551615ull;
    a.value = 0.1 + 0.2;
    a.method = "boyd_p";
    a.flags = {"lower-bound", "endpoint-inconclusive"};
    SweepRecord b;
    b.experiment = "embedding";
    b.p = std::numeric_limits<double>::infinity();
    b.q = 1.0;
    b.value = std::numeric_limits<double>::infinity();
    b.method = "sobolev_into_amalgam";
    const std::string text = to_csv({a, b});
    CHECK(text.rfind(std::string(csv_header) + "\n", 0) == 0);
    std::istringstream in(text);
    const auto back = read_csv(in);
    REQUIRE(back.size() == 2);
    CHECK(back[0] == a);
    CHECK(back[1] == b);
    CHECK(back[0].has_flag("lower-bound"));
    CHECK(to_csv(back) == text);
}

TEST_CASE("malformed csv is rejected") {
    std::istringstream bad_header("a,b\n");
    CHECK_THROWS_MATCHES(read_csv(bad_header), Error, code_is(ErrorCode::FormatError));
    std::istringstream short_row(std::string(csv_header) + "\nidentity,1,2\n");
    CHECK_THROWS_MATCHES(read_csv(short_row), Error, code_is(ErrorCode::FormatError));
}

TEST_CASE("log-log slope fit") {
    const std::vector<double> x{4, 8, 16, 32};
    std::vector<double> y;
    for (double v : x) y.push_back(3.0 * std::pow(v, 0.25));
    const auto fit = fit_loglog(x, y);
    CHECK(fit.slope == Catch::Approx(0.25).margin(1e-12));
    CHECK(fit.stderr_ < 1e-12);
    std::vector<double> noisy{1.0, 1.1, 0.95, 1.05};
    CHECK(fit_loglog(x, noisy).stderr_ > 0.0);
    CHECK_THROWS_MATCHES(fit_loglog({1, 2, 3}, {1, 2, 3}), Error, code_is(ErrorCode::InvalidArgument));
}

TEST_CASE("identity suite passes at small resolution") {
    auto cfg = parse_config(R"({"experiments": ["identity"], "grid": {"N": [32, 64]}})");
    const auto out = run_experiment("identity", cfg, 1);
    REQUIRE(out.ok());
    REQUIRE_FALSE(out.records.empty());
    for (const auto& r : out.records) {
        INFO(r.method << " N=" << *r.N << " value=" << r.value);
        CHECK(r.has_flag("pass"));
    }
    bool saw_oracle = false;
    for (const auto& r : out.records) {
        if (r.method == "weyl_oracle") {
            saw_oracle = true;
            CHECK(r.value <= 1e-8);
        }
    }
    CHECK(saw_oracle);
}

TEST_CASE("experiments must be listed in the config") {
    auto cfg = parse_config(R"({"experiments": ["identity"]})");
    CHECK_THROWS_MATCHES(run_experiment("threshold", cfg, 1), Error, code_is(ErrorCode::ConfigError));
}

TEST_CASE("embedding sweep reproduces the L2 examples") {
    auto cfg = parse_config(R"({"experiments": ["embedding"], "grid": {"N": [128], "L": 16},
                                "p": [2], "q": [1, 2], "s": [0], "num_functions": 12})");
    const auto out = run_experiment("embedding", cfg, 1);
    REQUIRE(out.ok());
    const auto* same = find(out, "sobolev_into_amalgam", 2, 2, 0);
    REQUIRE(same != nullptr);
    CHECK(same->has_flag("predicted-bounded"));
    CHECK(same->value < 2.0);
    const auto* reverse = find(out, "amalgam_into_sobolev", 2, 1, 0);
    REQUIRE(reverse != nullptr);
    CHECK(reverse->has_flag("predicted-bounded"));
    CHECK(reverse->has_flag("pass"));
    const auto* forward = find(out, "sobolev_into_amalgam", 2, 1, 0);
    REQUIRE(forward != nullptr);
    CHECK(forward->has_flag("predicted-unbounded"));
    int suite_gain = 0;
    for (const auto& r : out.records) suite_gain += r.method.rfind("suite_gain_", 0) == 0;
    CHECK(suite_gain > 0);
}

TEST_CASE("threshold sweep needs four mode counts") {
    auto cfg = parse_config(R"({"experiments": ["threshold"], "grid": {"N": [64]}, "n_modes": [1, 2]})");
    CHECK_THROWS_MATCHES(run_experiment("threshold", cfg, 1), Error, code_is(ErrorCode::ConfigError));
    cfg = parse_config(R"({"experiments": ["threshold"], "grid": {"N": [64]}, "n_modes": [1, 2, 3, 4], "s": [-1]})");
    CHECK_THROWS_MATCHES(run_experiment("threshold", cfg, 1), Error, code_is(ErrorCode::ConfigError));
}

TEST_CASE("threshold sweep rows and flags") {
    auto cfg = parse_config(R"({"experiments": ["threshold"], "grid": {"N": [128], "L": 8},
                                "p": [1, 2, "inf"], "s": [0, 0.5], "n_modes": [1, 2, 3, 4], "seeds": [1]})");
    const auto out = run_experiment("threshold", cfg, 1);
    REQUIRE(out.ok());
    int slopes = 0;
    for (const auto& r : out.records) {
        if (r.method == "slope") ++slopes;
        if (r.p == 2.0 && r.method != "slope" && r.method != "slope_se") {
            CHECK(r.method == "power_2");
            CHECK(r.value == Catch::Approx(1.0).epsilon(1e-8));
        }
        if (r.p == 1.0 && r.s == 0.5) CHECK(r.has_flag("endpoint-inconclusive"));
        if (r.p == 1.0 && r.s == 0.0) CHECK_FALSE(r.has_flag("endpoint-inconclusive"));
    }
    CHECK(slopes == 6);
}

TEST_CASE("output is identical across job counts") {
    auto cfg = parse_config(R"({"experiments": ["identity", "threshold"], "grid": {"N": [32], "L": 2},
                                "p": [1, "4/3"], "s": [0.25], "n_modes": [1, 2, 3, 4], "seeds": [1, 2]})");
    for (const std::string name : {"identity", "threshold"}) {
        const auto a = run_experiment(name, cfg, 1);
        const auto b = run_experiment(name, cfg, 3);
        CHECK(to_csv(a.records) == to_csv(b.records));
    }
}
