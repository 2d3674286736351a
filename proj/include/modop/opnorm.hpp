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

// Operator norm estimation for discretized operators on weighted sequence
// spaces: ||x||_p = (mu sum |x_i|^p)^{1/p} with mu the cell measure.
//
//   p = 1, inf   exact max column / row sums
//   p = 2        power iteration on A*A
//   other p      nonlinear power method (dual-map iteration) with restarts

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "modop/error.hpp"
#include "modop/exponent.hpp"
#include "modop/operator_matrix.hpp"
#include "modop/quantize.hpp"
#include "modop/rng.hpp"
#include "modop/symbol.hpp"

namespace modop {

enum class NormMethod { Exact1, ExactInf, Power2, BoydP };

inline const char* to_string(NormMethod m) {
    switch (m) {
        case NormMethod::Exact1: return "exact_1";
        case NormMethod::ExactInf: return "exact_inf";
        case NormMethod::Power2: return "power_2";
        case NormMethod::BoydP: return "boyd_p";
    }
    return "?";
}

struct NormEstimate {
    double value = 0.0;
    NormMethod method = NormMethod::Exact1;
    int iterations = 0;
    double residual = 0.0;
    int restarts = 0;
    bool lower_bound_only = false;
};

inline constexpr int power_iteration_cap = 10000;
inline constexpr int boyd_iteration_cap = 1000;

namespace detail {

/// (codomain / domain)^{1/p}, the factor relating weighted and plain norms.
inline double measure_factor(const OperatorMatrix& A, double u) {
    return std::pow(A.codomain_measure / A.domain_measure, u);
}

inline double vec_pnorm(const Eigen::VectorXcd& x, double p) {
    if (std::isinf(p)) return x.cwiseAbs().maxCoeff();
    double s = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) s += std::pow(std::abs(x(i)), p);
    return std::pow(s, 1.0 / p);
}

/// |y|^{p-1} sign(y), normalized to unit p'-norm; sign(0) = 0.
inline Eigen::VectorXcd dual_map(const Eigen::VectorXcd& y, double p) {
    Eigen::VectorXcd z(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double a = std::abs(y(i));
        z(i) = a == 0.0 ? cd(0.0) : y(i) / a * std::pow(a, p - 1.0);
    }
    const double nz = vec_pnorm(z, p / (p - 1.0));
    if (nz > 0.0) z /= nz;
    return z;
}

inline Eigen::VectorXcd random_vector(Eigen::Index n, std::uint64_t seed) {
    CounterRng rng(seed);
    Eigen::VectorXcd x(n);
    for (Eigen::Index i = 0; i < n; ++i) x(i) = cd(rng.normal(), rng.normal());
    return x;
}

struct BoydRun {
    double value = 0.0;
    int iterations = 0;
    double change = 0.0;
};

inline BoydRun boyd_run(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& Ah, Eigen::VectorXcd x, double p, double tol) {
    const double pc = p / (p - 1.0);
    BoydRun r;
    const double nx = vec_pnorm(x, p);
    if (!(nx > 0.0)) return r;
    x /= nx;
    double prev = 0.0;
    for (int it = 1; it <= boyd_iteration_cap; ++it) {
        r.iterations = it;
        const Eigen::VectorXcd y = A * x;
        const double gamma = vec_pnorm(y, p);
        r.value = std::max(r.value, gamma);
        if (gamma == 0.0) break;
        const Eigen::VectorXcd z = Ah * dual_map(y, p);
        r.change = std::abs(gamma - prev) / gamma;
        if (it > 1 && r.change < tol) break;
        // stationary point of the dual-map iteration
        if (vec_pnorm(z, pc) <= (z.adjoint() * x)(0).real() * (1.0 + tol)) break;
        prev = gamma;
        x = dual_map(z, pc);
    }
    return r;
}

}  // namespace detail

/// Exact weighted norm for p = 1 (max column sum) or p = inf (max row sum).
inline NormEstimate exact_norm(const OperatorMatrix& A, ExponentValue p) {
    NormEstimate e;
    if (p.is_one()) {
        e.method = NormMethod::Exact1;
        e.value = A.entries.cwiseAbs().colwise().sum().maxCoeff() * detail::measure_factor(A, 1.0);
    } else if (p.is_infinite()) {
        e.method = NormMethod::ExactInf;
        e.value = A.entries.cwiseAbs().rowwise().sum().maxCoeff();
    } else {
        throw Error(ErrorCode::UnsupportedExponent, "exact_norm needs p = 1 or p = inf, got p = " + format_exponent(p));
    }
    return e;
}

/// Power iteration on A*A, stopping when the Rayleigh quotient has settled to
/// relative accuracy tol. Not converging within the cap leaves the best
/// estimate flagged lower_bound_only.
inline NormEstimate norm_2(const OperatorMatrix& A, double tol = 1e-10, std::uint64_t seed = 0) {
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "norm_2 tolerance must be positive");
    NormEstimate e;
    e.method = NormMethod::Power2;
    Eigen::VectorXcd x = detail::random_vector(A.cols(), seed);
    x.normalize();
    double rq = 0.0;
    double prev_change = 0.0;
    bool converged = false;
    Eigen::VectorXcd w;
    for (int it = 1; it <= power_iteration_cap; ++it) {
        e.iterations = it;
        const Eigen::VectorXcd y = A.entries * x;
        w = A.entries.adjoint() * y;
        const double next = y.squaredNorm();
        const double nw = w.norm();
        if (nw == 0.0) {
            rq = 0.0;
            converged = true;
            break;
        }
        // stop once the change and its geometric tail estimate are both below tol
        const double change = std::abs(next - rq);
        bool done = false;
        if (it > 2 && change < tol * next) {
            const double ratio = prev_change > 0.0 ? change / prev_change : 0.0;
            const double tail = ratio < 1.0 ? change * ratio / (1.0 - ratio) : std::numeric_limits<double>::infinity();
            done = tail < tol * next || change < 1e-3 * tol * next;
        }
        prev_change = change;
        rq = next;
        if (done) {
            converged = true;
            break;
        }
        x = w / nw;
    }
    e.residual = rq > 0.0 ? (w - rq * x).norm() / rq : 0.0;
    e.value = std::sqrt(rq) * detail::measure_factor(A, 0.5);
    e.lower_bound_only = !converged;
    return e;
}

/// Nonlinear power method for 1 < p < inf. Starts: all ones, the unit vector
/// of the largest column, and `restarts` seeded random vectors.
inline NormEstimate norm_p(const OperatorMatrix& A, ExponentValue p, int restarts = 8, double tol = 1e-8, std::uint64_t seed = 0) {
    if (p.is_one() || p.is_infinite()) {
        throw Error(ErrorCode::UnsupportedExponent, "norm_p needs 1 < p < inf; use exact_norm for p = " + format_exponent(p));
    }
    if (restarts < 0) throw Error(ErrorCode::InvalidArgument, "restarts must be non-negative");
    const double pv = p.p();
    const Eigen::MatrixXcd Ah = A.entries.adjoint();
    const Eigen::Index n = A.cols();

    Eigen::Index best_col = 0;
    double best_col_norm = -1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        const double c = detail::vec_pnorm(A.entries.col(j), pv);
        if (c > best_col_norm) {
            best_col_norm = c;
            best_col = j;
        }
    }

    NormEstimate e;
    e.method = NormMethod::BoydP;
    e.restarts = restarts;
    auto consider = [&](const Eigen::VectorXcd& x0) {
        const auto r = detail::boyd_run(A.entries, Ah, x0, pv, tol);
        e.iterations += r.iterations;
        if (r.value > e.value) {
            e.value = r.value;
            e.residual = r.change;
        }
    };
    consider(Eigen::VectorXcd::Ones(n));
    consider(Eigen::VectorXcd::Unit(n, best_col));
    for (int r = 0; r < restarts; ++r) consider(detail::random_vector(n, derive_seed(seed, static_cast<std::uint64_t>(r))));

    e.value *= detail::measure_factor(A, p.reciprocal());
    e.lower_bound_only = !p.is_two();
    return e;
}

/// Method selection for estimate_norm.
enum class NormChoice { Auto, Exact, Power, Boyd };

inline NormChoice parse_norm_choice(const std::string& s) {
    if (s == "auto") return NormChoice::Auto;
    if (s == "exact" || s == "exact_1" || s == "exact_inf") return NormChoice::Exact;
    if (s == "power" || s == "power_2") return NormChoice::Power;
    if (s == "boyd" || s == "boyd_p") return NormChoice::Boyd;
    throw Error(ErrorCode::InvalidArgument, "unknown norm method '" + s + "'");
}

struct NormOptions {
    NormChoice method = NormChoice::Auto;
    int restarts = 8;
    double tol = 0.0;  ///< 0 picks 1e-10 for power iteration, 1e-8 otherwise
    std::uint64_t seed = 0;
};

/// Exact for p in {1, inf}, power iteration for p = 2, dual-map iteration otherwise.
inline NormEstimate estimate_norm(const OperatorMatrix& A, ExponentValue p, const NormOptions& opt = {}) {
    NormChoice m = opt.method;
    if (m == NormChoice::Auto) {
        m = (p.is_one() || p.is_infinite()) ? NormChoice::Exact : p.is_two() ? NormChoice::Power : NormChoice::Boyd;
    }
    switch (m) {
        case NormChoice::Exact: return exact_norm(A, p);
        case NormChoice::Power:
            if (!p.is_two()) throw Error(ErrorCode::UnsupportedExponent, "power iteration needs p = 2");
            return norm_2(A, opt.tol > 0 ? opt.tol : 1e-10, opt.seed);
        default: return norm_p(A, p, opt.restarts, opt.tol > 0 ? opt.tol : 1e-8, opt.seed);
    }
}

/// ||sigma(x,D)||_{L^p_s -> L^p}, computed as the L^p norm of sigma(x,D) <D>^{-s}.
/// The composition is formed on the Kohn-Nirenberg symbol, where it is the
/// pointwise product with <xi>^{-s}.
inline NormEstimate sobolev_opnorm(const PhaseSpaceSymbol& sigma, ExponentValue p, double s, const NormOptions& opt = {}) {
    const PhaseSpaceSymbol a = lift_symbol(to_kohn_nirenberg(sigma), -s);
    return estimate_norm(as_matrix(a), p, opt);
}

}  // namespace modop
