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

// Sweep records and their CSV form.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "modop/error.hpp"
#include "modop/grid.hpp"

namespace modop::lab {

inline constexpr const char* csv_header = "experiment,p,q,s,n,N,N_modes,seed,value,method,flags";

/// One CSV row. Exponents are stored as p itself (infinity allowed);
/// absent fields print as empty cells.
struct SweepRecord {
    std::string experiment;
    std::optional<double> p, q, s;
    std::optional<int> n;
    std::optional<std::size_t> N;
    std::optional<int> n_modes;
    std::optional<std::uint64_t> seed;
    double value = 0.0;
    std::string method;
    std::vector<std::string> flags;

    bool has_flag(const std::string& f) const {
        for (const auto& x : flags) {
            if (x == f) return true;
        }
        return false;
    }

    friend bool operator==(const SweepRecord&, const SweepRecord&) = default;
};

namespace detail {

inline std::string format_field(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    return format_double(v);
}

inline std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

inline double parse_field(const std::string& t) {
    if (t == "inf") return std::numeric_limits<double>::infinity();
    if (t == "-inf") return -std::numeric_limits<double>::infinity();
    if (t == "nan") return std::numeric_limits<double>::quiet_NaN();
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::logic_error&) {
        used = 0;
    }
    if (used != t.size() || t.empty()) throw Error(ErrorCode::FormatError, "CSV: bad number '" + t + "'");
    return v;
}

inline std::uint64_t parse_u64(const std::string& t) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(t, &used);
    } catch (const std::logic_error&) {
        used = 0;
    }
    if (used != t.size() || t.empty() || t[0] == '-') throw Error(ErrorCode::FormatError, "CSV: bad integer '" + t + "'");
    return v;
}

}  // namespace detail

inline std::string to_csv_line(const SweepRecord& r) {
    auto opt = [](const auto& o) -> std::string {
        if (!o) return "";
        if constexpr (std::is_floating_point_v<std::decay_t<decltype(*o)>>) {
            return detail::format_field(*o);
        } else {
            return std::to_string(*o);
        }
    };
    std::string flags;
    for (std::size_t i = 0; i < r.flags.size(); ++i) flags += (i ? ";" : "") + r.flags[i];
    std::string line = r.experiment;
    for (const std::string& f : {opt(r.p), opt(r.q), opt(r.s), opt(r.n), opt(r.N), opt(r.n_modes), opt(r.seed),
                                 detail::format_field(r.value), r.method, flags}) {
        line += ',';
        line += f;
    }
    return line;
}

inline void write_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
    os << csv_header << '\n';
    for (const auto& r : records) os << to_csv_line(r) << '\n';
}

inline std::string to_csv(const std::vector<SweepRecord>& records) {
    std::ostringstream os;
    write_csv(os, records);
    return os.str();
}

inline void emit_csv(const std::vector<SweepRecord>& records, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
    write_csv(out, records);
    if (!out) throw Error(ErrorCode::InvalidArgument, "write to '" + path + "' failed");
}

inline std::vector<SweepRecord> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != csv_header) throw Error(ErrorCode::FormatError, "CSV: missing or wrong header");
    std::vector<SweepRecord> out;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = detail::split(line, ',');
        if (f.size() != 11) throw Error(ErrorCode::FormatError, "CSV: expected 11 fields in '" + line + "'");
        SweepRecord r;
        r.experiment = f[0];
        if (!f[1].empty()) r.p = detail::parse_field(f[1]);
        if (!f[2].empty()) r.q = detail::parse_field(f[2]);
        if (!f[3].empty()) r.s = detail::parse_field(f[3]);
        if (!f[4].empty()) r.n = static_cast<int>(detail::parse_u64(f[4]));
        if (!f[5].empty()) r.N = static_cast<std::size_t>(detail::parse_u64(f[5]));
        if (!f[6].empty()) r.n_modes = static_cast<int>(detail::parse_u64(f[6]));
        if (!f[7].empty()) r.seed = detail::parse_u64(f[7]);
        r.value = detail::parse_field(f[8]);
        r.method = f[9];
        if (!f[10].empty()) r.flags = detail::split(f[10], ';');
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<SweepRecord> load_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
    return read_csv(in);
}

}  // namespace modop::lab
