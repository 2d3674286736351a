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

// Periodic uniform grids and the Fourier transform
//
//     F f(xi) = integral f(x) exp(-2 pi i x.xi) dx
//
// discretized as a Riemann sum on [-L/2, L/2)^d with N points per axis.
// Frequencies live on the dual lattice {k/L : k = -N/2 .. N/2-1}, stored in
// natural (increasing) order. With x_j = (j - N/2) h and xi_k = (k - N/2)/L
// the phase x_j xi_k = (j - N/2)(k - N/2)/N, so every transform here reduces
// to a "centered" DFT which we evaluate with an FFT and two sign flips.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <istream>
#include <numbers>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "modop/error.hpp"

namespace modop {

using cd = std::complex<double>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// <v> = (1 + |v|^2)^{1/2}
inline double bracket(std::span<const double> v) noexcept {
    double s = 1.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}
inline double bracket(double v) noexcept { return std::sqrt(1.0 + v * v); }

/// <v>^s, exact for s = 0.
inline double bracket_pow(double v2, double s) noexcept {
    return s == 0.0 ? 1.0 : std::pow(1.0 + v2, 0.5 * s);
}

class UniformGrid {
  public:
    static constexpr std::size_t max_dim = 2;

    UniformGrid(std::size_t dim, std::size_t n, double extent) : dim_(dim), n_(n), extent_(extent) {
        if (dim < 1 || dim > max_dim) {
            throw Error(ErrorCode::DimensionUnsupported, "grid dimension must be 1 or 2, got " + std::to_string(dim));
        }
        if (n < 2 || (n & (n - 1)) != 0) {
            throw Error(ErrorCode::InvalidArgument, "points per axis must be a power of two >= 2, got " + std::to_string(n));
        }
        if (!(extent > 0.0) || !std::isfinite(extent)) {
            throw Error(ErrorCode::InvalidArgument, "grid extent must be positive and finite");
        }
    }

    std::size_t dim() const noexcept { return dim_; }
    std::size_t n() const noexcept { return n_; }
    double extent() const noexcept { return extent_; }
    double spacing() const noexcept { return extent_ / static_cast<double>(n_); }
    /// Total number of samples, N^d.
    std::size_t size() const noexcept { return dim_ == 1 ? n_ : n_ * n_; }
    /// Cell measure h^d.
    double cell() const noexcept { return std::pow(spacing(), static_cast<double>(dim_)); }

    /// Coordinate of index i along any axis: (i - N/2) h.
    double coord(std::size_t i) const noexcept {
        return (static_cast<double>(i) - static_cast<double>(n_ / 2)) * spacing();
    }

    /// Dual frequency lattice of this grid, itself a uniform grid with
    /// spacing 1/L and extent N/L.
    UniformGrid dual() const { return UniformGrid(dim_, n_, static_cast<double>(n_) / extent_); }

    /// Axis indices of flat index `flat` (row-major, axis 0 slowest).
    std::array<std::size_t, max_dim> unflatten(std::size_t flat) const noexcept {
        if (dim_ == 1) return {flat, 0};
        return {flat / n_, flat % n_};
    }

    /// Coordinates of flat index `flat`; only the first dim() entries are used.
    std::array<double, max_dim> point(std::size_t flat) const noexcept {
        const auto idx = unflatten(flat);
        return {coord(idx[0]), dim_ == 2 ? coord(idx[1]) : 0.0};
    }

    /// Same dimension and size, extents equal to 1e-12 relative.
    bool same_as(const UniformGrid& o) const noexcept {
        return dim_ == o.dim_ && n_ == o.n_ && std::abs(extent_ - o.extent_) <= 1e-12 * extent_;
    }

  private:
    std::size_t dim_;
    std::size_t n_;
    double extent_;
};

inline void require_same_grid(const UniformGrid& a, const UniformGrid& b, const char* where) {
    if (!a.same_as(b)) throw Error(ErrorCode::GridMismatch, std::string(where) + ": operands live on different grids");
}

/// Complex samples of a function on a UniformGrid, row-major over axes.
class SampledFunction {
  public:
    SampledFunction(UniformGrid grid, std::vector<cd> values) : grid_(grid), values_(std::move(values)) {
        if (values_.size() != grid_.size()) {
            throw Error(ErrorCode::InvalidArgument, "sample count " + std::to_string(values_.size()) +
                                                        " does not match grid size " + std::to_string(grid_.size()));
        }
        for (const cd& v : values_) {
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                throw Error(ErrorCode::InvalidArgument, "sampled function has non-finite entries");
            }
        }
    }

    static SampledFunction zeros(const UniformGrid& grid) { return {grid, std::vector<cd>(grid.size())}; }

    const UniformGrid& grid() const noexcept { return grid_; }
    std::span<const cd> values() const noexcept { return values_; }
    std::size_t size() const noexcept { return values_.size(); }
    const cd& operator[](std::size_t i) const noexcept { return values_[i]; }

    /// Moves the samples out; the function is left empty.
    std::vector<cd> take_values() && { return std::move(values_); }

  private:
    UniformGrid grid_;
    std::vector<cd> values_;
};

/// Samples `fn(x)` at every grid point; `fn` receives a span of dim() coordinates.
template <typename Fn>
SampledFunction sample(const UniformGrid& grid, Fn&& fn) {
    std::vector<cd> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto p = grid.point(i);
        v[i] = cd(fn(std::span<const double>(p.data(), grid.dim())));
    }
    return {grid, std::move(v)};
}

/// One-dimensional convenience: `fn(double x)`.
template <typename Fn>
SampledFunction sample1d(const UniformGrid& grid, Fn&& fn) {
    if (grid.dim() != 1) throw Error(ErrorCode::DimensionUnsupported, "sample1d needs a 1-d grid");
    std::vector<cd> v(grid.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = cd(fn(grid.coord(i)));
    return {grid, std::move(v)};
}

namespace detail {

/// exp(2 pi i m / n) for any integer m.
inline cd unit_root(long long m, long long n) {
    long long r = m % n;
    if (r < 0) r += n;
    if (r == 0) return {1.0, 0.0};
    if (2 * r == n) return {-1.0, 0.0};
    if (4 * r == n) return {0.0, 1.0};
    if (4 * r == 3 * n) return {0.0, -1.0};
    const double a = two_pi * static_cast<double>(r) / static_cast<double>(n);
    return {std::cos(a), std::sin(a)};
}

/// Table of exp(2 pi i m / n), m = 0..n-1.
inline std::vector<cd> root_table(std::size_t n) {
    std::vector<cd> t(n);
    for (std::size_t m = 0; m < n; ++m) t[m] = unit_root(static_cast<long long>(m), static_cast<long long>(n));
    return t;
}

/// Index of (i - n/2)(k - n/2) modulo `mod`.
inline std::size_t centered_product_mod(std::size_t i, std::size_t k, std::size_t n, std::size_t mod) {
    const long long c = static_cast<long long>(n / 2);
    long long r = ((static_cast<long long>(i) - c) * (static_cast<long long>(k) - c)) % static_cast<long long>(mod);
    if (r < 0) r += static_cast<long long>(mod);
    return static_cast<std::size_t>(r);
}

inline Eigen::FFT<double>& fft_engine() {
    thread_local Eigen::FFT<double> engine = [] {
        Eigen::FFT<double> e;
        e.SetFlag(Eigen::FFT<double>::Unscaled);
        return e;
    }();
    return engine;
}

/// In-place unnormalized centered DFT of a contiguous length-n buffer:
///   out_k = sum_j in_j exp(sign 2 pi i (j - n/2)(k - n/2) / n).
inline void centered_dft_1d(std::span<cd> buf, int sign) {
    const std::size_t n = buf.size();
    thread_local std::vector<cd> tmp;
    tmp.resize(n);
    for (std::size_t j = 1; j < n; j += 2) buf[j] = -buf[j];
    auto& fft = fft_engine();
    if (sign < 0) {
        fft.fwd(tmp.data(), buf.data(), static_cast<Eigen::Index>(n));
    } else {
        fft.inv(tmp.data(), buf.data(), static_cast<Eigen::Index>(n));
    }
    // exp(-+ pi i n/2) = (-1)^{n/2}
    const double c = ((n / 2) % 2 == 1) ? -1.0 : 1.0;
    for (std::size_t k = 0; k < n; ++k) buf[k] = ((k & 1) ? -c : c) * tmp[k];
}

/// Centered DFT along one axis of a row-major array of the given shape.
inline void centered_dft_axis(std::span<cd> data, std::span<const std::size_t> shape, std::size_t axis, int sign) {
    const std::size_t n = shape[axis];
    std::size_t inner = 1;
    for (std::size_t a = axis + 1; a < shape.size(); ++a) inner *= shape[a];
    std::size_t outer = 1;
    for (std::size_t a = 0; a < axis; ++a) outer *= shape[a];
    if (inner == 1) {
        for (std::size_t o = 0; o < outer; ++o) centered_dft_1d(data.subspan(o * n, n), sign);
        return;
    }
    std::vector<cd> line(n);
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t t = 0; t < inner; ++t) {
            const std::size_t base = o * n * inner + t;
            for (std::size_t j = 0; j < n; ++j) line[j] = data[base + j * inner];
            centered_dft_1d(line, sign);
            for (std::size_t j = 0; j < n; ++j) data[base + j * inner] = line[j];
        }
    }
}

/// Centered DFT over every axis of an array with `rank` axes of length n.
inline void centered_dft_all(std::span<cd> data, std::size_t n, std::size_t rank, int sign) {
    std::array<std::size_t, 4> shape{n, n, n, n};
    for (std::size_t a = 0; a < rank; ++a) centered_dft_axis(data, std::span<const std::size_t>(shape.data(), rank), a, sign);
}

/// Cyclic index shift by m along every axis: out[i] = in[i - m].
inline std::vector<cd> cyclic_shift(const UniformGrid& g, std::span<const cd> in, std::span<const long long> m) {
    const long long n = static_cast<long long>(g.n());
    auto wrap = [n](long long i) { return static_cast<std::size_t>(((i % n) + n) % n); };
    std::vector<cd> out(in.size());
    if (g.dim() == 1) {
        for (long long j = 0; j < n; ++j) out[static_cast<std::size_t>(j)] = in[wrap(j - m[0])];
    } else {
        for (long long j0 = 0; j0 < n; ++j0) {
            const std::size_t src0 = wrap(j0 - m[0]) * g.n();
            for (long long j1 = 0; j1 < n; ++j1) {
                out[static_cast<std::size_t>(j0 * n + j1)] = in[src0 + wrap(j1 - m[1])];
            }
        }
    }
    return out;
}

/// Nearest integer multiple of `step`, or OffLattice.
inline long long lattice_index(double value, double step, const char* what) {
    const double r = value / step;
    const double m = std::round(r);
    if (std::abs(r - m) > 1e-9 * std::max(1.0, std::abs(m))) {
        throw Error(ErrorCode::OffLattice, std::string(what) + " " + std::to_string(value) +
                                               " is not a multiple of the lattice step " + std::to_string(step));
    }
    return static_cast<long long>(m);
}

}  // namespace detail

/// h^d times the centered DFT with phase exp(-2 pi i x.xi); the result is
/// indexed by the dual lattice (its grid is grid().dual()).
inline SampledFunction forward_ft(const SampledFunction& f) {
    std::vector<cd> v(f.values().begin(), f.values().end());
    detail::centered_dft_all(v, f.grid().n(), f.grid().dim(), -1);
    const double scale = f.grid().cell();
    for (cd& c : v) c *= scale;
    return {f.grid().dual(), std::move(v)};
}

/// Inverse of forward_ft: (1/L)^d times the centered DFT with phase
/// exp(+2 pi i x.xi). (1/L is the spacing of the dual lattice F lives on.)
inline SampledFunction inverse_ft(const SampledFunction& F) {
    std::vector<cd> v(F.values().begin(), F.values().end());
    detail::centered_dft_all(v, F.grid().n(), F.grid().dim(), +1);
    const double scale = F.grid().cell();
    for (cd& c : v) c *= scale;
    return {F.grid().dual(), std::move(v)};
}

/// (T_a f)(t) = f(t - a); `a` must be a grid vector.
inline SampledFunction translate(const SampledFunction& f, std::span<const double> a) {
    const auto& g = f.grid();
    if (a.size() != g.dim()) throw Error(ErrorCode::InvalidArgument, "translation vector has wrong dimension");
    std::array<long long, UniformGrid::max_dim> m{};
    for (std::size_t i = 0; i < g.dim(); ++i) m[i] = detail::lattice_index(a[i], g.spacing(), "translation");
    return {g, detail::cyclic_shift(g, f.values(), std::span<const long long>(m.data(), g.dim()))};
}

inline SampledFunction translate(const SampledFunction& f, double a) { return translate(f, std::span<const double>(&a, 1)); }

/// (M_xi0 f)(x) = exp(2 pi i xi0.x) f(x); `xi0` must lie on the dual lattice.
inline SampledFunction modulate(const SampledFunction& f, std::span<const double> xi0) {
    const auto& g = f.grid();
    if (xi0.size() != g.dim()) throw Error(ErrorCode::InvalidArgument, "modulation frequency has wrong dimension");
    std::array<long long, UniformGrid::max_dim> k{};
    for (std::size_t i = 0; i < g.dim(); ++i) k[i] = detail::lattice_index(xi0[i], 1.0 / g.extent(), "modulation");
    const long long n = static_cast<long long>(g.n());
    const long long c = n / 2;
    std::vector<cd> v(f.values().begin(), f.values().end());
    for (std::size_t flat = 0; flat < v.size(); ++flat) {
        const auto idx = g.unflatten(flat);
        long long phase = 0;
        for (std::size_t a = 0; a < g.dim(); ++a) phase += k[a] * (static_cast<long long>(idx[a]) - c);
        v[flat] *= detail::unit_root(phase, n);
    }
    return {g, std::move(v)};
}

inline SampledFunction modulate(const SampledFunction& f, double xi0) { return modulate(f, std::span<const double>(&xi0, 1)); }

/// (m f^)^v for a multiplier m(xi) evaluated on the dual lattice; `m`
/// receives a span of dim() frequency coordinates.
template <typename Multiplier>
SampledFunction fourier_multiplier(const SampledFunction& f, Multiplier&& m) {
    std::vector<cd> v = forward_ft(f).take_values();
    const UniformGrid dual = f.grid().dual();
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto xi = dual.point(i);
        v[i] *= cd(m(std::span<const double>(xi.data(), dual.dim())));
    }
    return inverse_ft(SampledFunction(dual, std::move(v)));
}

/// Bessel potential <D>^s f = (<xi>^s f^)^v.
inline SampledFunction bessel_potential(const SampledFunction& f, double s) {
    if (s == 0.0) return f;
    return fourier_multiplier(f, [s](std::span<const double> xi) {
        double r2 = 0.0;
        for (double c : xi) r2 += c * c;
        return bracket_pow(r2, s);
    });
}

// ---------------------------------------------------------------------------
// SFN v1 text format:
//   SFN 1
//   dim=<d> n=<N> extent=<L>
//   <re> <im>            (N^d lines, row-major, %.17g)

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_sfn(std::ostream& os, const SampledFunction& f) {
    const auto& g = f.grid();
    os << "SFN 1\n" << "dim=" << g.dim() << " n=" << g.n() << " extent=" << format_double(g.extent()) << '\n';
    for (const cd& c : f.values()) os << format_double(c.real()) << ' ' << format_double(c.imag()) << '\n';
}

namespace detail {

struct KeyValues {
    std::vector<std::pair<std::string, std::string>> items;

    const std::string& get(const std::string& key, const char* format) const {
        for (const auto& [k, v] : items) {
            if (k == key) return v;
        }
        throw Error(ErrorCode::FormatError, std::string(format) + " header is missing '" + key + "'");
    }
};

inline KeyValues parse_header_line(const std::string& line, const char* format) {
    KeyValues kv;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw Error(ErrorCode::FormatError, std::string(format) + " header token '" + tok + "' is not key=value");
        kv.items.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
    }
    return kv;
}

inline double parse_number(const std::string& text, const char* format) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) {
        throw Error(ErrorCode::FormatError, std::string(format) + ": bad number '" + text + "'");
    }
    return v;
}

inline std::size_t parse_count(const std::string& text, const char* format) {
    const double v = parse_number(text, format);
    if (v < 0 || v != std::floor(v)) throw Error(ErrorCode::FormatError, std::string(format) + ": bad count '" + text + "'");
    return static_cast<std::size_t>(v);
}

inline std::vector<cd> read_complex_lines(std::istream& is, std::size_t count, const char* format) {
    std::vector<cd> v(count);
    std::string line;
    for (std::size_t i = 0; i < count; ++i) {
        if (!std::getline(is, line)) {
            throw Error(ErrorCode::FormatError, std::string(format) + ": expected " + std::to_string(count) +
                                                    " value lines, found " + std::to_string(i));
        }
        std::istringstream ls(line);
        std::string re, im, extra;
        if (!(ls >> re >> im) || (ls >> extra)) {
            throw Error(ErrorCode::FormatError, std::string(format) + ": value line " + std::to_string(i + 1) + " is not 're im'");
        }
        v[i] = {parse_number(re, format), parse_number(im, format)};
    }
    return v;
}

}  // namespace detail

inline SampledFunction read_sfn(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "SFN 1") throw Error(ErrorCode::FormatError, "SFN: first line must be 'SFN 1'");
    if (!std::getline(is, line)) throw Error(ErrorCode::FormatError, "SFN: missing grid line");
    const auto kv = detail::parse_header_line(line, "SFN");
    const UniformGrid g(detail::parse_count(kv.get("dim", "SFN"), "SFN"), detail::parse_count(kv.get("n", "SFN"), "SFN"),
                        detail::parse_number(kv.get("extent", "SFN"), "SFN"));
    return {g, detail::read_complex_lines(is, g.size(), "SFN")};
}

}  // namespace modop
