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

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "modop/grid.hpp"

namespace modop {

enum class Quantization { KohnNirenberg, Weyl };

inline const char* to_string(Quantization q) { return q == Quantization::KohnNirenberg ? "kn" : "weyl"; }

/// Samples of a phase-space symbol sigma(x, xi) with x on a UniformGrid and
/// xi on its dual lattice. Storage is x-major: values[x_flat * N^d + xi_flat].
class PhaseSpaceSymbol {
  public:
    PhaseSpaceSymbol(UniformGrid grid, Quantization quant, std::vector<cd> values)
        : grid_(grid), quant_(quant), values_(std::move(values)) {
        const std::size_t m = grid_.size();
        if (values_.size() != m * m) {
            throw Error(ErrorCode::InvalidArgument, "symbol needs N^d x N^d = " + std::to_string(m * m) + " samples, got " +
                                                        std::to_string(values_.size()));
        }
        for (const cd& v : values_) {
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                throw Error(ErrorCode::InvalidArgument, "symbol has non-finite entries");
            }
        }
    }

    /// Samples fn(x, xi) where x and xi are spans of dim() coordinates.
    template <typename Fn>
    static PhaseSpaceSymbol sample(const UniformGrid& grid, Quantization quant, Fn&& fn) {
        const UniformGrid dual = grid.dual();
        const std::size_t m = grid.size();
        std::vector<cd> v(m * m);
        for (std::size_t i = 0; i < m; ++i) {
            const auto x = grid.point(i);
            for (std::size_t k = 0; k < m; ++k) {
                const auto xi = dual.point(k);
                v[i * m + k] = cd(fn(std::span<const double>(x.data(), grid.dim()), std::span<const double>(xi.data(), grid.dim())));
            }
        }
        return {grid, quant, std::move(v)};
    }

    /// One-dimensional convenience: fn(double x, double xi).
    template <typename Fn>
    static PhaseSpaceSymbol sample1d(const UniformGrid& grid, Quantization quant, Fn&& fn) {
        if (grid.dim() != 1) throw Error(ErrorCode::DimensionUnsupported, "sample1d needs a 1-d grid");
        return sample(grid, quant, [&](std::span<const double> x, std::span<const double> xi) { return fn(x[0], xi[0]); });
    }

    const UniformGrid& grid() const noexcept { return grid_; }
    UniformGrid dual() const { return grid_.dual(); }
    Quantization quantization() const noexcept { return quant_; }
    /// Points per phase-space half, N^d.
    std::size_t points() const noexcept { return grid_.size(); }
    std::span<const cd> values() const noexcept { return values_; }
    const cd& at(std::size_t x_flat, std::size_t xi_flat) const noexcept { return values_[x_flat * points() + xi_flat]; }

    /// Same samples, different interpretation.
    PhaseSpaceSymbol retagged(Quantization q) const { return {grid_, q, values_}; }

    std::vector<cd> take_values() && { return std::move(values_); }

  private:
    UniformGrid grid_;
    Quantization quant_;
    std::vector<cd> values_;
};

// ---------------------------------------------------------------------------
// PSS v1 text format:
//   PSS 1
//   dim=<d> n=<N> extent=<L> quant=<kn|weyl>
//   <re> <im>            (N^d * N^d lines, x-major, %.17g)

inline void write_pss(std::ostream& os, const PhaseSpaceSymbol& s) {
    const auto& g = s.grid();
    os << "PSS 1\n"
       << "dim=" << g.dim() << " n=" << g.n() << " extent=" << format_double(g.extent()) << " quant=" << to_string(s.quantization())
       << '\n';
    for (const cd& c : s.values()) os << format_double(c.real()) << ' ' << format_double(c.imag()) << '\n';
}

inline PhaseSpaceSymbol read_pss(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "PSS 1") throw Error(ErrorCode::FormatError, "PSS: first line must be 'PSS 1'");
    if (!std::getline(is, line)) throw Error(ErrorCode::FormatError, "PSS: missing grid line");
    const auto kv = detail::parse_header_line(line, "PSS");
    const UniformGrid g(detail::parse_count(kv.get("dim", "PSS"), "PSS"), detail::parse_count(kv.get("n", "PSS"), "PSS"),
                        detail::parse_number(kv.get("extent", "PSS"), "PSS"));
    const std::string& q = kv.get("quant", "PSS");
    Quantization quant;
    if (q == "kn") {
        quant = Quantization::KohnNirenberg;
    } else if (q == "weyl") {
        quant = Quantization::Weyl;
    } else {
        throw Error(ErrorCode::FormatError, "PSS: quant must be kn or weyl, got '" + q + "'");
    }
    return {g, quant, detail::read_complex_lines(is, g.size() * g.size(), "PSS")};
}

}  // namespace modop
