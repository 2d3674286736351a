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

// Kohn-Nirenberg and Weyl quantization of sampled symbols.
//
//   KN:    sigma(x,D) f(x) = integral exp(2 pi i x.xi) sigma(x,xi) f^(xi) dxi
//   Weyl:  L_sigma f(x)    = integral integral exp(2 pi i (x-y).xi) sigma((x+y)/2, xi) f(y) dy dxi
//
// The two are intertwined by U, the Fourier multiplier exp(pi i omega.u) on
// the symbol's own transform: a = U sigma is the KN symbol of L_sigma.

#include <cstddef>
#include <vector>

#include "modop/grid.hpp"
#include "modop/operator_matrix.hpp"
#include "modop/symbol.hpp"

namespace modop {

/// Integral kernel K(x, y) on grid x grid, x-major.
struct KernelRep {
    UniformGrid grid;
    std::vector<cd> values;

    const cd& at(std::size_t i, std::size_t j) const noexcept { return values[i * grid.size() + j]; }
};

enum class UDirection { ToKohnNirenberg, ToWeyl };

namespace detail {

inline void require_quantization(const PhaseSpaceSymbol& s, Quantization q, const char* where) {
    if (s.quantization() != q) {
        throw Error(ErrorCode::WrongQuantization, std::string(where) + " needs a " + to_string(q) + " symbol, got " +
                                                      to_string(s.quantization()));
    }
}

/// (i - N/2)(k - N/2) mod N for all i, k.
inline std::vector<std::size_t> phase_index_table(std::size_t n) {
    std::vector<std::size_t> t(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) t[i * n + k] = centered_product_mod(i, k, n, n);
    }
    return t;
}

}  // namespace detail

/// sigma(x,D) f at every grid point:
///   (1/L)^d sum_k exp(2 pi i x_j.xi_k) sigma(x_j, xi_k) f^(xi_k).
inline SampledFunction kn_apply(const PhaseSpaceSymbol& sigma, const SampledFunction& f) {
    detail::require_quantization(sigma, Quantization::KohnNirenberg, "kn_apply");
    require_same_grid(sigma.grid(), f.grid(), "kn_apply");
    const UniformGrid& g = f.grid();
    const std::size_t n = g.n();
    const std::size_t m = g.size();
    const auto F = forward_ft(f).take_values();
    const auto roots = detail::root_table(n);
    const auto phase = detail::phase_index_table(n);
    const double scale = 1.0 / std::pow(g.extent(), static_cast<double>(g.dim()));

    std::vector<cd> out(m);
    for (std::size_t x = 0; x < m; ++x) {
        const auto jx = g.unflatten(x);
        const cd* row = sigma.values().data() + x * m;
        cd acc = 0.0;
        if (g.dim() == 1) {
            const std::size_t* ph = phase.data() + jx[0] * n;
            for (std::size_t k = 0; k < n; ++k) acc += roots[ph[k]] * row[k] * F[k];
        } else {
            const std::size_t* ph0 = phase.data() + jx[0] * n;
            const std::size_t* ph1 = phase.data() + jx[1] * n;
            for (std::size_t k0 = 0; k0 < n; ++k0) {
                for (std::size_t k1 = 0; k1 < n; ++k1) {
                    const std::size_t k = k0 * n + k1;
                    acc += roots[(ph0[k0] + ph1[k1]) % n] * row[k] * F[k];
                }
            }
        }
        out[x] = scale * acc;
    }
    return {g, std::move(out)};
}

/// The intertwiner U (to KN) or U^{-1} (to Weyl): multiply the symbol's
/// 2d-dimensional transform by exp(+-pi i omega.u). The result is tagged
/// with the target quantization.
inline PhaseSpaceSymbol u_transform(const PhaseSpaceSymbol& sigma, UDirection dir) {
    const UniformGrid& g = sigma.grid();
    const std::size_t n = g.n();
    const std::size_t d = g.dim();
    const std::size_t rank = 2 * d;
    std::vector<cd> v(sigma.values().begin(), sigma.values().end());
    detail::centered_dft_all(v, n, rank, -1);

    // omega from the x axes (step 1/L), u from the xi axes (step h):
    // omega.u = sum_a (k_a - N/2)(m_a - N/2) / N.
    const long long two_n = 2 * static_cast<long long>(n);
    const long long sign = dir == UDirection::ToKohnNirenberg ? 1 : -1;
    std::vector<cd> factor(static_cast<std::size_t>(two_n));
    for (long long t = 0; t < two_n; ++t) factor[static_cast<std::size_t>(t)] = detail::unit_root(sign * t, two_n);
    const std::size_t m = g.size();
    for (std::size_t x = 0; x < m; ++x) {
        const auto kx = g.unflatten(x);
        for (std::size_t xi = 0; xi < m; ++xi) {
            const auto mu = g.unflatten(xi);
            std::size_t t = 0;
            for (std::size_t a = 0; a < d; ++a) t += detail::centered_product_mod(kx[a], mu[a], n, 2 * n);
            v[x * m + xi] *= factor[t % (2 * n)];
        }
    }

    detail::centered_dft_all(v, n, rank, +1);
    const double scale = 1.0 / static_cast<double>(m * m);
    for (cd& c : v) c *= scale;
    return {g, dir == UDirection::ToKohnNirenberg ? Quantization::KohnNirenberg : Quantization::Weyl, std::move(v)};
}

inline PhaseSpaceSymbol to_kohn_nirenberg(const PhaseSpaceSymbol& sigma) {
    return sigma.quantization() == Quantization::KohnNirenberg ? sigma : u_transform(sigma, UDirection::ToKohnNirenberg);
}

/// L_sigma f, evaluated as kn_apply(U sigma, f).
inline SampledFunction weyl_apply(const PhaseSpaceSymbol& sigma, const SampledFunction& f) {
    detail::require_quantization(sigma, Quantization::Weyl, "weyl_apply");
    require_same_grid(sigma.grid(), f.grid(), "weyl_apply");
    return kn_apply(u_transform(sigma, UDirection::ToKohnNirenberg), f);
}

/// Applies sigma with the quantization it is tagged with.
inline SampledFunction apply(const PhaseSpaceSymbol& sigma, const SampledFunction& f) {
    return sigma.quantization() == Quantization::KohnNirenberg ? kn_apply(sigma, f) : weyl_apply(sigma, f);
}

/// sigma(x, xi) <xi>^s, quantization tag preserved.
inline PhaseSpaceSymbol lift_symbol(const PhaseSpaceSymbol& sigma, double s) {
    if (s == 0.0) return sigma;
    const UniformGrid dual = sigma.dual();
    const std::size_t m = sigma.points();
    std::vector<double> w(m);
    for (std::size_t k = 0; k < m; ++k) {
        const auto xi = dual.point(k);
        double r2 = 0.0;
        for (std::size_t a = 0; a < dual.dim(); ++a) r2 += xi[a] * xi[a];
        w[k] = bracket_pow(r2, s);
    }
    std::vector<cd> v(sigma.values().begin(), sigma.values().end());
    for (std::size_t x = 0; x < m; ++x) {
        for (std::size_t k = 0; k < m; ++k) v[x * m + k] *= w[k];
    }
    return {sigma.grid(), sigma.quantization(), std::move(v)};
}

// ---------------------------------------------------------------------------
// Kernel <-> Weyl symbol: sigma = F_2 tau_s K with tau_s K(x, y) = K(x + y/2, x - y/2).
//
// On the lattice we write K(x', y') = k(x', x' - y'), an exact index
// relabelling, so that tau_s K(x, y) = k(x + y/2, y). The half-step shift in
// the first variable is done by trigonometric interpolation (a Fourier
// multiplier in x), which keeps the map an exact bijection.

namespace detail {

inline void require_kernel_grid(const KernelRep& K) {
    if (K.grid.dim() != 1) throw Error(ErrorCode::DimensionUnsupported, "kernel correspondence supports one dimension only");
    if (K.values.size() != K.grid.size() * K.grid.size()) throw Error(ErrorCode::GridMismatch, "kernel has wrong shape for its grid");
}

/// Shifts column m of an N x N x-major array by sign * y_m / 2 in x.
inline void half_shear(std::vector<cd>& k, std::size_t n, int sign) {
    const long long two_n = 2 * static_cast<long long>(n);
    std::vector<cd> col(n);
    for (std::size_t m = 0; m < n; ++m) {
        if (m == n / 2) continue;  // y = 0
        for (std::size_t j = 0; j < n; ++j) col[j] = k[j * n + m];
        centered_dft_1d(col, -1);
        for (std::size_t w = 0; w < n; ++w) {
            const long long t = static_cast<long long>(centered_product_mod(w, m, n, 2 * n));
            col[w] *= unit_root(sign * t, two_n);
        }
        centered_dft_1d(col, +1);
        for (std::size_t j = 0; j < n; ++j) k[j * n + m] = col[j] / static_cast<double>(n);
    }
}

}  // namespace detail

inline PhaseSpaceSymbol kernel_to_weyl(const KernelRep& K) {
    detail::require_kernel_grid(K);
    const std::size_t n = K.grid.n();
    const std::size_t c = n / 2;
    std::vector<cd> k(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t m = 0; m < n; ++m) k[j * n + m] = K.values[j * n + (j + n + c - m) % n];
    }
    detail::half_shear(k, n, +1);
    const double h = K.grid.spacing();
    for (std::size_t j = 0; j < n; ++j) {
        std::span<cd> row(k.data() + j * n, n);
        detail::centered_dft_1d(row, -1);
        for (cd& v : row) v *= h;
    }
    return {K.grid, Quantization::Weyl, std::move(k)};
}

/// Kernel of L_sigma; a KN-tagged symbol is first converted to Weyl form.
inline KernelRep weyl_to_kernel(const PhaseSpaceSymbol& sigma) {
    if (sigma.grid().dim() != 1) throw Error(ErrorCode::DimensionUnsupported, "kernel correspondence supports one dimension only");
    const PhaseSpaceSymbol weyl =
        sigma.quantization() == Quantization::Weyl ? sigma : u_transform(sigma, UDirection::ToWeyl);
    const std::size_t n = weyl.grid().n();
    const std::size_t c = n / 2;
    std::vector<cd> k(weyl.values().begin(), weyl.values().end());
    const double inv_l = 1.0 / weyl.grid().extent();
    for (std::size_t j = 0; j < n; ++j) {
        std::span<cd> row(k.data() + j * n, n);
        detail::centered_dft_1d(row, +1);
        for (cd& v : row) v *= inv_l;
    }
    detail::half_shear(k, n, -1);
    std::vector<cd> K(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t m = 0; m < n; ++m) K[j * n + (j + n + c - m) % n] = k[j * n + m];
    }
    return {weyl.grid(), std::move(K)};
}

// ---------------------------------------------------------------------------

inline constexpr std::size_t max_matrix_points = 1024;

/// Dense matrix A with (A f)_j = (quantized sigma applied to f)(x_j); both
/// measures are h. One space dimension, N <= 1024.
inline OperatorMatrix as_matrix(const PhaseSpaceSymbol& sigma) {
    const UniformGrid& g = sigma.grid();
    if (g.dim() != 1) throw Error(ErrorCode::DimensionUnsupported, "as_matrix supports one space dimension only");
    if (g.n() > max_matrix_points) {
        throw Error(ErrorCode::TooLarge, "as_matrix is limited to N <= " + std::to_string(max_matrix_points));
    }
    const PhaseSpaceSymbol a = to_kohn_nirenberg(sigma);
    const std::size_t n = g.n();
    const std::size_t c = n / 2;
    const double h = g.spacing();
    const double inv_l = 1.0 / g.extent();
    Eigen::MatrixXcd A(n, n);
    std::vector<cd> row(n);
    for (std::size_t j = 0; j < n; ++j) {
        // kernel k(x_j, u_m) = (1/L) sum_k a(x_j, xi_k) exp(2 pi i u_m xi_k); A_jl = h k(x_j, x_j - x_l)
        for (std::size_t k = 0; k < n; ++k) row[k] = a.at(j, k);
        detail::centered_dft_1d(row, +1);
        for (std::size_t l = 0; l < n; ++l) {
            A(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(l)) = h * inv_l * row[(j + n + c - l) % n];
        }
    }
    return {std::move(A), h, h};
}

/// Kernel values K(x_j, x_l) of a discretized operator, A / domain measure.
inline KernelRep kernel_of(const OperatorMatrix& A, const UniformGrid& grid) {
    const std::size_t n = grid.n();
    if (grid.dim() != 1 || static_cast<std::size_t>(A.rows()) != n || static_cast<std::size_t>(A.cols()) != n) {
        throw Error(ErrorCode::GridMismatch, "operator matrix does not match the grid");
    }
    std::vector<cd> v(n * n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t l = 0; l < n; ++l) v[j * n + l] = A.entries(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(l)) / A.domain_measure;
    }
    return {grid, std::move(v)};
}

}  // namespace modop
