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

// Strict JSON configuration for the experiment runners.
//
//   {
//     "experiments": ["threshold"],          required, nonempty
//     "grid": {"N": [1024], "L": 8},         N powers of two; L > 0
//     "p": [1, 2, "inf"], "q": [2],          numbers or strings ("inf", "4/3")
//     "s": [0, 0.5],
//     "n_modes": [4, 8, 16, 32],
//     "seeds": [1, 2],
//     "seed": 1,                             master seed for derived task seeds
//     "num_functions": 50,
//     "restarts": 8,
//     "tolerances": {"quantization": 1e-10, ...},
//     "output": "out.csv"
//   }
//
// Absent keys fall back to per-experiment defaults. Unknown keys are errors.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "modop/error.hpp"
#include "modop/exponent.hpp"

namespace modop::lab {

using nlohmann::json;

inline const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names{"identity", "embedding", "threshold"};
    return names;
}

/// Tolerances with their defaults; overridable under "tolerances".
struct Tolerances {
    double quantization = 1e-10;    ///< lattice quantization identities
    double roundtrip = 1e-12;       ///< u_transform round trip
    double weyl_oracle = 1e-8;      ///< Weyl apply against direct summation
    double kernel = 1e-10;          ///< kernel map round trip and identity kernel
    double kernel_pairing = 1e-8;   ///< rank-one kernel pairing
    double isometry = 1e-4;         ///< STFT isometries
    double exchange = 0.05;         ///< spread of the Fourier exchange ratio
    double band = 10.0;             ///< max/median ratio band for embeddings
    double power = 1e-10;           ///< power iteration
    double boyd = 1e-8;             ///< nonlinear power method
};

struct SweepConfig {
    std::vector<std::string> experiments;
    std::vector<std::size_t> grid_n;
    std::optional<double> extent;
    std::vector<ExponentValue> p, q;
    std::vector<double> s;
    std::vector<int> n_modes;
    std::vector<std::uint64_t> seeds;
    std::uint64_t seed = 1;
    int num_functions = 50;
    int restarts = 8;
    Tolerances tol;
    std::string output;

    bool has_experiment(const std::string& name) const {
        for (const auto& e : experiments) {
            if (e == name) return true;
        }
        return false;
    }
};

namespace detail {

[[noreturn]] inline void config_error(const std::string& key, const std::string& what) {
    throw Error(ErrorCode::ConfigError, "config key '" + key + "': " + what);
}

inline void check_keys(const json& obj, const std::vector<std::string>& allowed, const std::string& prefix) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (const auto& a : allowed) ok = ok || a == it.key();
        if (!ok) throw Error(ErrorCode::ConfigError, "unknown config key '" + prefix + it.key() + "'");
    }
}

inline const json& nonempty_array(const json& v, const std::string& key) {
    if (!v.is_array()) config_error(key, "expected a list");
    if (v.empty()) config_error(key, "list must not be empty");
    return v;
}

inline double number(const json& v, const std::string& key) {
    if (!v.is_number()) config_error(key, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) config_error(key, "expected a finite number");
    return d;
}

inline std::uint64_t unsigned_integer(const json& v, const std::string& key) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) config_error(key, "expected a non-negative integer");
    return v.get<std::uint64_t>();
}

inline int positive_int(const json& v, const std::string& key) {
    const auto u = unsigned_integer(v, key);
    if (u == 0 || u > 1000000) config_error(key, "expected a positive integer");
    return static_cast<int>(u);
}

inline ExponentValue exponent(const json& v, const std::string& key) {
    try {
        if (v.is_string()) return parse_exponent(v.get<std::string>());
        return ExponentValue::from_p(number(v, key));
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ConfigError) throw;
        config_error(key, e.what());
    }
}

}  // namespace detail

/// Parses and validates a configuration document.
inline SweepConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ConfigError, std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw Error(ErrorCode::ConfigError, "config must be a JSON object");
    detail::check_keys(doc, {"experiments", "grid", "p", "q", "s", "n_modes", "seeds", "seed", "num_functions", "restarts", "tolerances", "output"}, "");

    SweepConfig cfg;
    if (!doc.contains("experiments")) throw Error(ErrorCode::ConfigError, "config key 'experiments' is required");
    for (const auto& e : detail::nonempty_array(doc["experiments"], "experiments")) {
        if (!e.is_string()) detail::config_error("experiments", "expected experiment names");
        const auto name = e.get<std::string>();
        bool known = false;
        for (const auto& n : experiment_names()) known = known || n == name;
        if (!known) detail::config_error("experiments", "unknown experiment '" + name + "'");
        cfg.experiments.push_back(name);
    }

    if (doc.contains("grid")) {
        const json& g = doc["grid"];
        if (!g.is_object()) detail::config_error("grid", "expected an object");
        detail::check_keys(g, {"N", "L"}, "grid.");
        if (g.contains("N")) {
            for (const auto& v : detail::nonempty_array(g["N"], "grid.N")) {
                const auto n = detail::unsigned_integer(v, "grid.N");
                if (n < 4 || (n & (n - 1)) != 0 || n > (1u << 14)) detail::config_error("grid.N", "values must be powers of two in [4, 16384]");
                cfg.grid_n.push_back(static_cast<std::size_t>(n));
            }
        }
        if (g.contains("L")) {
            const double l = detail::number(g["L"], "grid.L");
            if (!(l > 0.0)) detail::config_error("grid.L", "must be positive");
            cfg.extent = l;
        }
    }
    for (const char* key : {"p", "q"}) {
        if (!doc.contains(key)) continue;
        auto& dst = std::string(key) == "p" ? cfg.p : cfg.q;
        for (const auto& v : detail::nonempty_array(doc[key], key)) dst.push_back(detail::exponent(v, key));
    }
    if (doc.contains("s")) {
        for (const auto& v : detail::nonempty_array(doc["s"], "s")) cfg.s.push_back(detail::number(v, "s"));
    }
    if (doc.contains("n_modes")) {
        for (const auto& v : detail::nonempty_array(doc["n_modes"], "n_modes")) {
            cfg.n_modes.push_back(static_cast<int>(detail::unsigned_integer(v, "n_modes")));
        }
    }
    if (doc.contains("seeds")) {
        for (const auto& v : detail::nonempty_array(doc["seeds"], "seeds")) cfg.seeds.push_back(detail::unsigned_integer(v, "seeds"));
    }
    if (doc.contains("seed")) cfg.seed = detail::unsigned_integer(doc["seed"], "seed");
    if (doc.contains("num_functions")) cfg.num_functions = detail::positive_int(doc["num_functions"], "num_functions");
    if (doc.contains("restarts")) cfg.restarts = static_cast<int>(detail::unsigned_integer(doc["restarts"], "restarts"));
    if (doc.contains("output")) {
        if (!doc["output"].is_string()) detail::config_error("output", "expected a path string");
        cfg.output = doc["output"].get<std::string>();
    }
    if (doc.contains("tolerances")) {
        const json& t = doc["tolerances"];
        if (!t.is_object()) detail::config_error("tolerances", "expected an object");
        const std::map<std::string, double*> slots{
            {"quantization", &cfg.tol.quantization}, {"roundtrip", &cfg.tol.roundtrip}, {"weyl_oracle", &cfg.tol.weyl_oracle},
            {"kernel", &cfg.tol.kernel},             {"kernel_pairing", &cfg.tol.kernel_pairing}, {"isometry", &cfg.tol.isometry},
            {"exchange", &cfg.tol.exchange},         {"band", &cfg.tol.band},               {"power", &cfg.tol.power},
            {"boyd", &cfg.tol.boyd}};
        for (auto it = t.begin(); it != t.end(); ++it) {
            const auto slot = slots.find(it.key());
            if (slot == slots.end()) throw Error(ErrorCode::ConfigError, "unknown config key 'tolerances." + it.key() + "'");
            const double v = detail::number(it.value(), "tolerances." + it.key());
            if (!(v > 0.0)) detail::config_error("tolerances." + it.key(), "must be positive");
            *slot->second = v;
        }
    }
    return cfg;
}

inline SweepConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ConfigError, "cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace modop::lab
