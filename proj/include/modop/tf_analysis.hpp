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

// Short-time Fourier transform and the function-space norms built on it:
// L^p, Bessel-potential Sobolev L^p_s, modulation M^{p,q}_m, Wiener amalgam
// W^{p,q}_s, and the M^{inf,1} (Sjostrand) norm of phase-space symbols.
//
// All integrals are Riemann sums on the periodic lattice; an exponent of
// infinity replaces the sum by a max.

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>
#include <span>
#include <vector>

#include "modop/exponent.hpp"
#include "modop/grid.hpp"
#include "modop/symbol.hpp"

namespace modop {

/// nu_{s1,s2}(x, xi) = <x>^{s1} <xi>^{s2}
struct Weight {
    double s1 = 0.0;
    double s2 = 0.0;

    double operator()(std::span<const double> x, std::span<const double> xi) const noexcept {
        double x2 = 0.0, xi2 = 0.0;
        for (double c : x) x2 += c * c;
        for (double c : xi) xi2 += c * c;
        return bracket_pow(x2, s1) * bracket_pow(xi2, s2);
    }

    bool trivial() const noexcept { return s1 == 0.0 && s2 == 0.0; }
};

/// Values of a time-frequency transform on (x lattice) x (dual lattice).
/// The x lattice is every `stride`-th grid point, step a = h * stride; the
/// frequency lattice is the full dual lattice, step b = 1/L.
class TimeFrequencyArray {
  public:
    TimeFrequencyArray(UniformGrid grid, std::size_t stride, std::vector<cd> values)
        : grid_(grid), stride_(stride), values_(std::move(values)) {
        if (stride_ == 0 || grid_.n() % stride_ != 0) {
            throw Error(ErrorCode::InvalidArgument, "stride must divide the points per axis");
        }
        if (values_.size() != x_count() * xi_count()) throw Error(ErrorCode::InvalidArgument, "time-frequency array has wrong size");
    }

    const UniformGrid& grid() const noexcept { return grid_; }
    std::size_t stride() const noexcept { return stride_; }
    std::size_t x_per_axis() const noexcept { return grid_.n() / stride_; }
    std::size_t x_count() const noexcept { return grid_.dim() == 1 ? x_per_axis() : x_per_axis() * x_per_axis(); }
    std::size_t xi_count() const noexcept { return grid_.size(); }

    double a() const noexcept { return grid_.spacing() * static_cast<double>(stride_); }
    double b() const noexcept { return 1.0 / grid_.extent(); }
    double x_cell() const noexcept { return std::pow(a(), static_cast<double>(grid_.dim())); }
    double xi_cell() const noexcept { return std::pow(b(), static_cast<double>(grid_.dim())); }
    /// a^d b^d
    double cell() const noexcept { return x_cell() * xi_cell(); }

    std::array<double, UniformGrid::max_dim> x_point(std::size_t x_flat) const noexcept {
        const std::size_t m = x_per_axis();
        const std::size_t i0 = grid_.dim() == 1 ? x_flat : x_flat / m;
        const std::size_t i1 = grid_.dim() == 1 ? 0 : x_flat % m;
        return {grid_.coord(i0 * stride_), grid_.dim() == 2 ? grid_.coord(i1 * stride_) : 0.0};
    }
    std::array<double, UniformGrid::max_dim> xi_point(std::size_t xi_flat) const { return grid_.dual().point(xi_flat); }

    std::span<const cd> values() const noexcept { return values_; }
    const cd& at(std::size_t x_flat, std::size_t xi_flat) const noexcept { return values_[x_flat * xi_count() + xi_flat]; }

  private:
    UniformGrid grid_;
    std::size_t stride_;
    std::vector<cd> values_;
};

/// L^2-normalized Gaussian 2^{d/4} exp(-pi |t|^2).
inline SampledFunction gaussian_window(const UniformGrid& grid) {
    const double c = std::pow(2.0, 0.25 * static_cast<double>(grid.dim()));
    return sample(grid, [c](std::span<const double> t) {
        double r2 = 0.0;
        for (double v : t) r2 += v * v;
        return c * std::exp(-std::numbers::pi * r2);
    });
}

namespace detail {

inline void require_window(const SampledFunction& g) {
    for (const cd& v : g.values()) {
        if (v != cd{}) return;
    }
    throw Error(ErrorCode::ZeroWindow, "window is identically zero");
}

/// Shared kernel of stft and the amalgam transform: for each lattice point
/// y, the forward FT of f * W(T_y g) where W is conj or identity.
template <bool Conjugate>
TimeFrequencyArray windowed_transform(const SampledFunction& f, const SampledFunction& g, std::size_t stride) {
    require_same_grid(f.grid(), g.grid(), "time-frequency transform");
    require_window(g);
    const UniformGrid& grid = f.grid();
    if (stride == 0 || grid.n() % stride != 0) throw Error(ErrorCode::InvalidArgument, "stride must divide the points per axis");

    const std::size_t n = grid.n();
    const std::size_t m = n / stride;
    const std::size_t nx = grid.dim() == 1 ? m : m * m;
    const std::size_t nxi = grid.size();
    const double scale = grid.cell();
    std::vector<cd> out(nx * nxi);
    std::vector<cd> buf(nxi);
    auto fv = f.values();
    auto gv = g.values();
    for (std::size_t xf = 0; xf < nx; ++xf) {
        // (T_x g)(x_i) = g(x_i - x_j) = g at index (i - j + N/2) mod N
        const std::size_t j0 = (grid.dim() == 1 ? xf : xf / m) * stride;
        const std::size_t j1 = (grid.dim() == 1 ? 0 : xf % m) * stride;
        if (grid.dim() == 1) {
            for (std::size_t i = 0; i < n; ++i) {
                const cd w = gv[(i + n - j0 + n / 2) % n];
                buf[i] = fv[i] * (Conjugate ? std::conj(w) : w);
            }
        } else {
            for (std::size_t i0 = 0; i0 < n; ++i0) {
                const std::size_t r0 = (i0 + n - j0 + n / 2) % n;
                for (std::size_t i1 = 0; i1 < n; ++i1) {
                    const cd w = gv[r0 * n + (i1 + n - j1 + n / 2) % n];
                    buf[i0 * n + i1] = fv[i0 * n + i1] * (Conjugate ? std::conj(w) : w);
                }
            }
        }
        centered_dft_all(buf, n, grid.dim(), -1);
        cd* row = out.data() + xf * nxi;
        for (std::size_t k = 0; k < nxi; ++k) row[k] = scale * buf[k];
    }
    return {grid, stride, std::move(out)};
}

/// (cell * sum |v|^p)^{1/p}, or max |v| when p = inf, over pre-scaled terms.
class PowerMean {
  public:
    explicit PowerMean(ExponentValue e) : u_(e.reciprocal()), p_(u_ == 0.0 ? 0.0 : 1.0 / u_) {}

    void add(double magnitude) noexcept {
        if (u_ == 0.0) {
            acc_ = std::max(acc_, magnitude);
        } else if (u_ == 1.0) {
            acc_ += magnitude;
        } else if (u_ == 0.5) {
            acc_ += magnitude * magnitude;
        } else {
            acc_ += std::pow(magnitude, p_);
        }
    }

    double result(double cell) const noexcept {
        if (u_ == 0.0) return acc_;
        if (u_ == 1.0) return cell * acc_;
        if (u_ == 0.5) return std::sqrt(cell * acc_);
        return std::pow(cell * acc_, u_);
    }

  private:
    double u_;
    double p_;
    double acc_ = 0.0;
};

}  // namespace detail

/// V_g f(x, xi) = integral f(y) conj(g(y - x)) exp(-2 pi i y.xi) dy on the
/// lattice (every `stride`-th grid point) x (dual lattice).
inline TimeFrequencyArray stft(const SampledFunction& f, const SampledFunction& g, std::size_t stride = 1) {
    return detail::windowed_transform<true>(f, g, stride);
}

/// F(f . T_y g)(omega) for every grid point y; the integrand of the Wiener
/// amalgam norm. Note the window is not conjugated.
inline TimeFrequencyArray amalgam_transform(const SampledFunction& f, const SampledFunction& g) {
    return detail::windowed_transform<false>(f, g, 1);
}

inline double lp_norm(const SampledFunction& f, ExponentValue p) {
    detail::PowerMean acc(p);
    for (const cd& v : f.values()) acc.add(std::abs(v));
    return acc.result(f.grid().cell());
}

/// ||<D>^s f||_{L^p}, the Bessel-potential Sobolev norm with <xi>^s = (1+|xi|^2)^{s/2}.
inline double sobolev_norm(const SampledFunction& f, ExponentValue p, double s) {
    return lp_norm(bessel_potential(f, s), p);
}

/// Mixed norm of an STFT array: inner exponent p over x, outer q over xi.
inline double modulation_norm(const TimeFrequencyArray& V, ExponentValue p, ExponentValue q, const Weight& w = {}) {
    const std::size_t nx = V.x_count();
    const std::size_t nxi = V.xi_count();
    const std::size_t d = V.grid().dim();
    std::vector<double> wx(nx, 1.0), wxi(nxi, 1.0);
    if (!w.trivial()) {
        const Weight wxonly{w.s1, 0.0}, wxionly{0.0, w.s2};
        for (std::size_t i = 0; i < nx; ++i) {
            const auto x = V.x_point(i);
            wx[i] = wxonly(std::span<const double>(x.data(), d), {});
        }
        for (std::size_t k = 0; k < nxi; ++k) {
            const auto xi = V.xi_point(k);
            wxi[k] = wxionly({}, std::span<const double>(xi.data(), d));
        }
    }
    std::vector<detail::PowerMean> inner(nxi, detail::PowerMean(p));
    for (std::size_t i = 0; i < nx; ++i) {
        for (std::size_t k = 0; k < nxi; ++k) inner[k].add(std::abs(V.at(i, k)) * wx[i] * wxi[k]);
    }
    detail::PowerMean outer(q);
    for (std::size_t k = 0; k < nxi; ++k) outer.add(inner[k].result(V.x_cell()));
    return outer.result(V.xi_cell());
}

inline double modulation_norm(const SampledFunction& f, ExponentValue p, ExponentValue q, const Weight& w,
                              const SampledFunction& g) {
    return modulation_norm(stft(f, g), p, q, w);
}

inline double modulation_norm(const SampledFunction& f, ExponentValue p, ExponentValue q, const Weight& w = {}) {
    return modulation_norm(f, p, q, w, gaussian_window(f.grid()));
}

/// Mixed norm of an amalgam array: inner exponent q over omega with weight
/// <omega>^s, outer p over y.
inline double amalgam_norm(const TimeFrequencyArray& A, ExponentValue p, ExponentValue q, double s) {
    const std::size_t nxi = A.xi_count();
    const std::size_t d = A.grid().dim();
    std::vector<double> wom(nxi, 1.0);
    if (s != 0.0) {
        for (std::size_t k = 0; k < nxi; ++k) {
            const auto om = A.xi_point(k);
            double r2 = 0.0;
            for (std::size_t a = 0; a < d; ++a) r2 += om[a] * om[a];
            wom[k] = bracket_pow(r2, s);
        }
    }
    detail::PowerMean outer(p);
    for (std::size_t i = 0; i < A.x_count(); ++i) {
        detail::PowerMean inner(q);
        for (std::size_t k = 0; k < nxi; ++k) inner.add(std::abs(A.at(i, k)) * wom[k]);
        outer.add(inner.result(A.xi_cell()));
    }
    return outer.result(A.x_cell());
}

inline double amalgam_norm(const SampledFunction& f, ExponentValue p, ExponentValue q, double s, const SampledFunction& g) {
    return amalgam_norm(amalgam_transform(f, g), p, q, s);
}

inline double amalgam_norm(const SampledFunction& f, ExponentValue p, ExponentValue q, double s = 0.0) {
    return amalgam_norm(f, p, q, s, gaussian_window(f.grid()));
}

// ---------------------------------------------------------------------------
// Sjostrand norm

/// Separable window Phi(x, xi) = phi_x(x) phi_xi(xi) on the phase-space grid
/// (space grid x its dual lattice).
struct PhaseWindow {
    SampledFunction x_profile;
    SampledFunction xi_profile;
};

/// Gaussian 2^{1/2} exp(-pi (x^2 + xi^2)), the L^2-normalized window on R^2.
inline PhaseWindow default_phase_window(const UniformGrid& grid) {
    return {gaussian_window(grid), gaussian_window(grid.dual())};
}

struct SjostrandOptions {
    /// Sup over every `z_stride`-th point along both phase-space axes.
    std::size_t z_stride = 1;
    /// Use the exact product formula when the symbol factors as a(x) b(xi).
    bool allow_factorized = true;
};

namespace detail {

/// Returns (a, b) with sigma = a (x) b, or nothing if sigma is not rank one
/// to 1e-13 relative.
inline std::optional<std::pair<std::vector<cd>, std::vector<cd>>> rank_one_factors(const PhaseSpaceSymbol& sigma) {
    const std::size_t n = sigma.points();
    std::size_t j0 = 0, k0 = 0;
    double best = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            const double m = std::abs(sigma.at(j, k));
            if (m > best) {
                best = m;
                j0 = j;
                k0 = k;
            }
        }
    }
    std::vector<cd> a(n), b(n);
    if (best == 0.0) return std::make_pair(a, b);
    const cd pivot = sigma.at(j0, k0);
    const double tol = 1e-13 * best * best;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            if (std::abs(sigma.at(j, k) * pivot - sigma.at(j, k0) * sigma.at(j0, k)) > tol) return std::nullopt;
        }
    }
    for (std::size_t j = 0; j < n; ++j) a[j] = sigma.at(j, k0);
    for (std::size_t k = 0; k < n; ++k) b[k] = sigma.at(j0, k) / pivot;
    return std::make_pair(std::move(a), std::move(b));
}

}  // namespace detail

/// ||sigma||_{M^{inf,1}_{nu_{0,s} (x) 1}}: sup over z = (x, xi) of
/// |V_Phi sigma(z, zeta)| <xi>^s, then L^1 over zeta. One space dimension.
inline double sjostrand_norm(const PhaseSpaceSymbol& sigma, double s, const PhaseWindow& window, const SjostrandOptions& opt = {}) {
    const UniformGrid& grid = sigma.grid();
    if (grid.dim() != 1) throw Error(ErrorCode::DimensionUnsupported, "sjostrand_norm supports one space dimension only");
    require_same_grid(window.x_profile.grid(), grid, "sjostrand_norm window (x)");
    require_same_grid(window.xi_profile.grid(), grid.dual(), "sjostrand_norm window (xi)");
    detail::require_window(window.x_profile);
    detail::require_window(window.xi_profile);
    const std::size_t n = grid.n();
    const std::size_t stride = opt.z_stride;
    if (stride == 0 || n % stride != 0) throw Error(ErrorCode::InvalidArgument, "z_stride must divide N");
    const UniformGrid dual = grid.dual();

    if (opt.allow_factorized) {
        if (auto factors = detail::rank_one_factors(sigma)) {
            // V_Phi (a (x) b)(x, xi; z1, z2) = V_phix a(x, z1) V_phixi b(xi, z2)
            const auto Va = stft(SampledFunction(grid, std::move(factors->first)), window.x_profile, stride);
            const auto Vb = stft(SampledFunction(dual, std::move(factors->second)), window.xi_profile, stride);
            std::vector<double> A(n, 0.0), B(n, 0.0);
            for (std::size_t i = 0; i < Va.x_count(); ++i) {
                for (std::size_t k = 0; k < n; ++k) A[k] = std::max(A[k], std::abs(Va.at(i, k)));
            }
            for (std::size_t i = 0; i < Vb.x_count(); ++i) {
                const double w = bracket_pow(Vb.x_point(i)[0] * Vb.x_point(i)[0], s);
                for (std::size_t k = 0; k < n; ++k) B[k] = std::max(B[k], std::abs(Vb.at(i, k)) * w);
            }
            double sa = 0.0, sb = 0.0;
            for (double v : A) sa += v;
            for (double v : B) sb += v;
            return (sa / grid.extent()) * (sb * grid.spacing());
        }
    }

    // General path: one 2-d FFT per phase-space point z.
    const auto px = window.x_profile.values();
    const auto pxi = window.xi_profile.values();
    std::vector<double> sup(n * n, 0.0);
    std::vector<cd> buf(n * n);
    const double scale = 1.0 / static_cast<double>(n);  // h * (1/L)
    for (std::size_t jz = 0; jz < n; jz += stride) {
        for (std::size_t kz = 0; kz < n; kz += stride) {
            const double w = bracket_pow(dual.coord(kz) * dual.coord(kz), s);
            for (std::size_t i = 0; i < n; ++i) {
                const cd wx = std::conj(px[(i + n - jz + n / 2) % n]);
                for (std::size_t k = 0; k < n; ++k) {
                    buf[i * n + k] = sigma.at(i, k) * wx * std::conj(pxi[(k + n - kz + n / 2) % n]);
                }
            }
            detail::centered_dft_all(buf, n, 2, -1);
            for (std::size_t t = 0; t < n * n; ++t) sup[t] = std::max(sup[t], scale * std::abs(buf[t]) * w);
        }
    }
    double total = 0.0;
    for (double v : sup) total += v;
    return total * scale;  // zeta cell (1/L) * h
}

inline double sjostrand_norm(const PhaseSpaceSymbol& sigma, double s = 0.0) {
    return sjostrand_norm(sigma, s, default_phase_window(sigma.grid()));
}

}  // namespace modop
