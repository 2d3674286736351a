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

// Experiment runners: the identity/consistency suite, the Sobolev-amalgam
// embedding sweep and the L^p threshold sweep.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "modop/grid.hpp"
#include "modop/lab/config.hpp"
#include "modop/lab/oracles.hpp"
#include "modop/lab/parallel.hpp"
#include "modop/lab/records.hpp"
#include "modop/opnorm.hpp"
#include "modop/quantize.hpp"
#include "modop/regions.hpp"
#include "modop/symbolgen.hpp"
#include "modop/tf_analysis.hpp"

namespace modop::lab {

struct RunOutput {
    std::vector<SweepRecord> records;
    std::vector<std::string> errors;  ///< one message per failed task

    bool ok() const { return errors.empty(); }
};

namespace detail {

inline double rel_err(std::span<const cd> got, std::span<const cd> want) {
    double diff = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < want.size(); ++i) {
        diff = std::max(diff, std::abs(got[i] - want[i]));
        scale = std::max(scale, std::abs(want[i]));
    }
    return diff / (scale > 0.0 ? scale : 1.0);
}

inline double rel_err(const Eigen::MatrixXcd& got, const Eigen::MatrixXcd& want) {
    const double scale = want.cwiseAbs().maxCoeff();
    return (got - want).cwiseAbs().maxCoeff() / (scale > 0.0 ? scale : 1.0);
}

inline double p_field(ExponentValue e) { return e.p(); }

inline void add_error(RunOutput& out, const std::string& experiment, const std::string& what) {
    SweepRecord r;
    r.experiment = experiment;
    r.value = std::numeric_limits<double>::quiet_NaN();
    r.method = "error";
    r.flags = {"error"};
    out.records.push_back(r);
    out.errors.push_back(experiment + ": " + what);
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline double band(const std::vector<double>& v) {
    const double med = median(v);
    return *std::max_element(v.begin(), v.end()) / med;
}

inline PhaseSpaceSymbol random_symbol(const UniformGrid& g, Quantization q, std::uint64_t seed) {
    CounterRng rng(seed);
    std::vector<cd> v(g.size() * g.size());
    for (cd& c : v) c = cd(rng.normal(), rng.normal());
    return {g, q, std::move(v)};
}

inline std::vector<cd> to_vector(const Eigen::VectorXcd& v) { return {v.data(), v.data() + v.size()}; }

inline Eigen::VectorXcd to_eigen(const SampledFunction& f) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(f.size()));
    for (std::size_t i = 0; i < f.size(); ++i) v(static_cast<Eigen::Index>(i)) = f[i];
    return v;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Identity suite

struct IdentityCheck {
    using Fn = std::function<double(const UniformGrid&, std::uint64_t)>;

    IdentityCheck(std::string name_, double tol_, Fn run_, std::optional<double> p_ = {}, std::optional<double> q_ = {})
        : name(std::move(name_)), tol(tol_), run(std::move(run_)), p(p_), q(q_) {}

    std::string name;
    double tol;
    Fn run;
    std::optional<double> p, q;
};

/// The lattice identities run at one resolution; some are skipped on grids
/// where they would be too large (dense matrices above 1024 points, the
/// O(N^4) naive transform above 64).
inline std::vector<IdentityCheck> identity_checks(const Tolerances& t, std::size_t n) {
    using detail::rel_err;
    const auto kn = Quantization::KohnNirenberg;
    const auto weyl = Quantization::Weyl;
    std::vector<IdentityCheck> c;
    auto fn = [](const UniformGrid& g, std::uint64_t seed, std::uint64_t k) { return random_bandlimited(g, derive_seed(seed, k)); };

    c.push_back({"kn_identity", t.quantization, [=](const UniformGrid& g, std::uint64_t seed) {
                     const auto f = fn(g, seed, 1);
                     return rel_err(kn_apply(PhaseSpaceSymbol::sample1d(g, kn, [](double, double) { return 1.0; }), f).values(), f.values());
                 }});
    c.push_back({"kn_multiplication", t.quantization, [=](const UniformGrid& g, std::uint64_t seed) {
                     const double L = g.extent();
                     auto m = [L](double x) { return cd(1.0 + 0.5 * std::cos(two_pi * x / L), 0.25 * std::sin(2.0 * two_pi * x / L)); };
                     const auto f = fn(g, seed, 2);
                     std::vector<cd> want(g.size());
                     for (std::size_t j = 0; j < g.size(); ++j) want[j] = m(g.coord(j)) * f[j];
                     return rel_err(kn_apply(PhaseSpaceSymbol::sample1d(g, kn, [&](double x, double) { return m(x); }), f).values(), want);
                 }});
    c.push_back({"kn_translation", t.quantization, [=](const UniformGrid& g, std::uint64_t seed) {
                     const double a = std::round(g.extent() / 8.0 / g.spacing()) * g.spacing();
                     const auto f = fn(g, seed, 3);
                     const auto s = PhaseSpaceSymbol::sample1d(g, kn, [a](double, double xi) { return std::polar(1.0, -two_pi * a * xi); });
                     return rel_err(kn_apply(s, f).values(), translate(f, a).values());
                 }});
    c.push_back({"kn_bessel", t.quantization, [=](const UniformGrid& g, std::uint64_t seed) {
                     const auto f = fn(g, seed, 4);
                     const auto s = PhaseSpaceSymbol::sample1d(g, kn, [](double, double xi) { return bracket_pow(xi * xi, 1.5); });
                     return rel_err(kn_apply(s, f).values(), bessel_potential(f, 1.5).values());
                 }});
    c.push_back({"lift_bessel", t.quantization, [=](const UniformGrid& g, std::uint64_t seed) {
                     const auto f = fn(g, seed, 5);
                     const auto s = detail::random_symbol(g, kn, derive_seed(seed, 105));
                     return rel_err(kn_apply(lift_symbol(s, 0.75), f).values(), kn_apply(s, bessel_potential(f, 0.75)).values());
                 }});
    c.push_back({"weyl_identity", t.quantization, [=](const UniformGrid& g, std::uint64_t seed) {
                     const auto f = fn(g, seed, 6);
                     return rel_err(weyl_apply(PhaseSpaceSymbol::sample1d(g, weyl, [](double, double) { return 1.0; }), f).values(), f.values());
                 }});
    c.push_back({"weyl_x_independent", t.quantization, [=](const UniformGrid& g, std::uint64_t seed) {
                     const auto f = fn(g, seed, 7);
                     const auto s = PhaseSpaceSymbol::sample1d(g, weyl, [](double, double xi) { return 1.0 / (1.0 + xi * xi); });
                     return rel_err(weyl_apply(s, f).values(), kn_apply(s.retagged(kn), f).values());
                 }});
    c.push_back({"weyl_oracle", t.weyl_oracle, [=](const UniformGrid& g, std::uint64_t seed) {
                     const auto f = fn(g, seed, 8);
                     const auto ms = random_mode_symbol(g.extent(), derive_seed(seed, 108));
                     return rel_err(weyl_apply(ms.sample(g, weyl), f).values(), weyl_direct_sum(ms, f));
                 }});
    c.push_back({"u_roundtrip", t.roundtrip, [=](const UniformGrid& g, std::uint64_t seed) {
                     const auto s = detail::random_symbol(g, weyl, derive_seed(seed, 109));
                     const auto back = u_transform(u_transform(s, UDirection::ToKohnNirenberg), UDirection::ToWeyl);
                     return rel_err(back.values(), s.values());
                 }});
    if (n <= 64) {
        c.push_back({"u_direct_sum", t.quantization, [=](const UniformGrid& g, std::uint64_t) {
                         const auto s = PhaseSpaceSymbol::sample1d(g, weyl, [](double x, double xi) {
                             return std::exp(-std::numbers::pi * ((x - 0.3) * (x - 0.3) + (xi + 0.2) * (xi + 0.2)));
                         });
                         const auto a = u_transform(s, UDirection::ToKohnNirenberg);
                         return std::max(rel_err(a.values(), u_transform_direct(s, +1)),
                                         rel_err(u_transform(a, UDirection::ToWeyl).values(), u_transform_direct(a, -1)));
                     }});
    }
    if (n <= max_matrix_points) {
        c.push_back({"as_matrix_matvec", t.quantization, [=](const UniformGrid& g, std::uint64_t seed) {
                         const auto f = fn(g, seed, 11);
                         const auto s = detail::random_symbol(g, kn, derive_seed(seed, 111));
                         const Eigen::VectorXcd Af = as_matrix(s).entries * detail::to_eigen(f);
                         return rel_err(detail::to_vector(Af), kn_apply(s, f).values());
                     }});
        c.push_back({"as_matrix_intertwining", t.quantization, [=](const UniformGrid& g, std::uint64_t seed) {
                         const auto s = random_mode_symbol(g.extent(), derive_seed(seed, 112)).sample(g, weyl);
                         return rel_err(as_matrix(s).entries, as_matrix(u_transform(s, UDirection::ToKohnNirenberg)).entries);
                     }});
        c.push_back({"weyl_adjoint", t.quantization, [=](const UniformGrid& g, std::uint64_t seed) {
                         const auto ms = random_mode_symbol(g.extent(), derive_seed(seed, 113));
                         const Eigen::MatrixXcd A = as_matrix(ms.sample(g, weyl)).entries;
                         return rel_err(as_matrix(ms.conj().sample(g, weyl)).entries, A.adjoint());
                     }});
    }
    c.push_back({"kernel_roundtrip", t.kernel, [=](const UniformGrid& g, std::uint64_t seed) {
                     const auto s = detail::random_symbol(g, weyl, derive_seed(seed, 114));
                     const KernelRep K{g, std::vector<cd>(s.values().begin(), s.values().end())};
                     return rel_err(weyl_to_kernel(kernel_to_weyl(K)).values, K.values);
                 }});
    c.push_back({"kernel_identity", t.kernel, [=](const UniformGrid& g, std::uint64_t) {
                     const std::size_t m = g.n();
                     KernelRep K{g, std::vector<cd>(m * m)};
                     for (std::size_t j = 0; j < m; ++j) K.values[j * m + j] = 1.0 / g.spacing();
                     const std::vector<cd> one(m * m, cd(1.0));
                     return rel_err(kernel_to_weyl(K).values(), one);
                 }});
    c.push_back({"kernel_pairing", t.kernel_pairing, [=](const UniformGrid& g, std::uint64_t seed) {
                     // single narrow packets keep the kernel away from the periodic lag wrap at L/2
                     auto packet = [&g](std::uint64_t k) {
                         CounterRng rng(k);
                         const double c = rng.uniform(-g.extent() / 16.0, g.extent() / 16.0);
                         const double w = rng.uniform(0.4, 0.6), fr = rng.uniform(-2.0, 2.0);
                         return sample1d(g, [=](double x) { return std::polar(std::exp(-std::numbers::pi * (x - c) * (x - c) / (w * w)), two_pi * fr * x); });
                     };
                     const auto f = packet(derive_seed(seed, 16)), h = packet(derive_seed(seed, 116));
                     const std::size_t m = g.n();
                     KernelRep K{g, std::vector<cd>(m * m)};
                     for (std::size_t j = 0; j < m; ++j)
                         for (std::size_t l = 0; l < m; ++l) K.values[j * m + l] = h[j] * std::conj(f[l]);
                     const auto Lf = weyl_apply(kernel_to_weyl(K), f);
                     cd lhs = 0.0, rhs = 0.0;
                     const double dx = g.spacing();
                     for (std::size_t j = 0; j < m; ++j) lhs += dx * Lf[j] * std::conj(h[j]);
                     for (std::size_t j = 0; j < m; ++j)
                         for (std::size_t l = 0; l < m; ++l) rhs += dx * dx * K.values[j * m + l] * f[l] * std::conj(h[j]);
                     return std::abs(lhs - rhs) / std::abs(rhs);
                 }});
    c.push_back({"fourier_roundtrip", t.roundtrip, [=](const UniformGrid& g, std::uint64_t seed) {
                     const auto f = fn(g, seed, 17);
                     return rel_err(inverse_ft(forward_ft(f)).values(), f.values());
                 }});
    c.push_back({"parseval", t.roundtrip, [=](const UniformGrid& g, std::uint64_t seed) {
                     const auto f = fn(g, seed, 18);
                     const double a = lp_norm(f, ExponentValue::two());
                     return std::abs(lp_norm(forward_ft(f), ExponentValue::two()) - a) / a;
                 }});
    c.push_back({"stft_isometry", t.isometry,
                 [=](const UniformGrid& g, std::uint64_t seed) {
                     const auto f = fn(g, seed, 19);
                     const double a = lp_norm(f, ExponentValue::two());
                     return std::abs(modulation_norm(f, ExponentValue::two(), ExponentValue::two()) - a) / a;
                 },
                 2.0, 2.0});
    c.push_back({"amalgam_isometry", t.isometry,
                 [=](const UniformGrid& g, std::uint64_t seed) {
                     const auto f = fn(g, seed, 20);
                     const double a = lp_norm(f, ExponentValue::two());
                     return std::abs(amalgam_norm(f, ExponentValue::two(), ExponentValue::two(), 0.0) - a) / a;
                 },
                 2.0, 2.0});
    // ||f^||_{M^{p,q}} against ||f||_{W} with inner frequency exponent p and outer
    // space exponent q; the value is the spread max/min - 1 of the ratio
    c.push_back({"fourier_exchange", t.exchange, [=](const UniformGrid& g, std::uint64_t seed) {
                     const auto win = gaussian_window(g);
                     const std::pair<ExponentValue, ExponentValue> pairs[] = {
                         {ExponentValue::one(), ExponentValue::two()},
                         {ExponentValue::two(), ExponentValue::infinity()},
                         {ExponentValue::from_p(4.0), ExponentValue::one()}};
                     double spread = 0.0;
                     for (const auto& [p, q] : pairs) {
                         double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
                         for (std::uint64_t k = 0; k < 5; ++k) {
                             const auto f = fn(g, seed, 200 + k);
                             const double r = modulation_norm(forward_ft(f), p, q) / amalgam_norm(f, q, p, 0.0, win);
                             lo = std::min(lo, r);
                             hi = std::max(hi, r);
                         }
                         spread = std::max(spread, hi / lo - 1.0);
                     }
                     return spread;
                 }});
    return c;
}

inline double identity_extent(const SweepConfig& cfg, std::size_t n) {
    return cfg.extent ? *cfg.extent : std::sqrt(static_cast<double>(n));
}

inline RunOutput run_identity_suite(const SweepConfig& cfg, unsigned jobs) {
    const std::vector<std::size_t> ns = cfg.grid_n.empty() ? std::vector<std::size_t>{64, 256} : cfg.grid_n;
    const std::vector<std::uint64_t> seeds = cfg.seeds.empty() ? std::vector<std::uint64_t>{1} : cfg.seeds;

    struct Task {
        std::size_t n;
        std::uint64_t seed;
        IdentityCheck check;
    };
    std::vector<Task> tasks;
    for (std::size_t n : ns) {
        for (std::uint64_t seed : seeds) {
            for (auto& c : identity_checks(cfg.tol, n)) tasks.push_back({n, seed, std::move(c)});
        }
    }
    const auto results = run_tasks<double>(tasks.size(), jobs, [&](std::size_t i) {
        const Task& t = tasks[i];
        const UniformGrid g(1, t.n, identity_extent(cfg, t.n));
        return t.check.run(g, derive_seed(cfg.seed, t.seed));
    });

    RunOutput out;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const Task& t = tasks[i];
        SweepRecord r;
        r.experiment = "identity";
        r.p = t.check.p;
        r.q = t.check.q;
        r.n = 1;
        r.N = t.n;
        r.seed = t.seed;
        r.method = t.check.name;
        if (results[i].failed) {
            r.value = std::numeric_limits<double>::quiet_NaN();
            r.flags = {"error"};
            out.errors.push_back("identity " + t.check.name + " N=" + std::to_string(t.n) + ": " + results[i].error);
        } else {
            r.value = results[i].value;
            r.flags = {std::isfinite(r.value) && r.value <= t.check.tol ? "pass" : "fail"};
        }
        out.records.push_back(std::move(r));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Embedding sweep

inline RunOutput run_embedding_sweep(const SweepConfig& cfg, unsigned jobs) {
    const std::vector<std::size_t> ns = cfg.grid_n.empty() ? std::vector<std::size_t>{256} : cfg.grid_n;
    const double L = cfg.extent.value_or(16.0);
    const std::vector<ExponentValue> ps = cfg.p.empty()
        ? std::vector<ExponentValue>{ExponentValue::one(), ExponentValue::two(), ExponentValue::infinity()} : cfg.p;
    const std::vector<ExponentValue> qs = cfg.q.empty() ? ps : cfg.q;
    const std::vector<double> ss = cfg.s.empty() ? std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0} : cfg.s;
    const std::size_t nf = static_cast<std::size_t>(cfg.num_functions);
    const std::size_t np = ps.size(), nq = qs.size(), ns_ = ss.size();

    RunOutput out;
    for (std::size_t n : ns) {
        const UniformGrid g(1, n, L);
        const auto suite = standard_suite(g, cfg.seed);
        const auto window = gaussian_window(g);

        struct PerFunction {
            std::vector<double> into_amalgam, into_sobolev;  // [p][q][s]
            std::vector<double> suite_gain;                   // [symbol][p][q]
        };
        const auto results = run_tasks<PerFunction>(nf, jobs, [&](std::size_t i) {
            const auto f = random_bandlimited(g, derive_seed(cfg.seed, i));
            const auto A = amalgam_transform(f, window);
            std::vector<double> am(np * nq), sob(np * ns_);
            for (std::size_t a = 0; a < np; ++a)
                for (std::size_t b = 0; b < nq; ++b) am[a * nq + b] = amalgam_norm(A, ps[a], qs[b], 0.0);
            for (std::size_t c = 0; c < ns_; ++c) {
                const auto Bf = bessel_potential(f, ss[c]);
                for (std::size_t a = 0; a < np; ++a) sob[a * ns_ + c] = lp_norm(Bf, ps[a]);
            }
            PerFunction r;
            for (std::size_t a = 0; a < np; ++a) {
                for (std::size_t b = 0; b < nq; ++b) {
                    for (std::size_t c = 0; c < ns_; ++c) {
                        r.into_amalgam.push_back(am[a * nq + b] / sob[a * ns_ + c]);
                        r.into_sobolev.push_back(sob[a * ns_ + c] / am[a * nq + b]);
                    }
                }
            }
            for (const auto& sym : suite) {
                const auto T = amalgam_transform(kn_apply(sym.symbol, f), window);
                for (std::size_t a = 0; a < np; ++a)
                    for (std::size_t b = 0; b < nq; ++b) r.suite_gain.push_back(amalgam_norm(T, ps[a], qs[b], 0.0) / am[a * nq + b]);
            }
            return r;
        });

        bool any_failed = false;
        for (const auto& r : results) {
            if (r.failed) {
                detail::add_error(out, "embedding", r.error);
                any_failed = true;
            }
        }
        if (any_failed) continue;

        auto column = [&](auto member, std::size_t idx) {
            std::vector<double> v;
            for (const auto& r : results) v.push_back((r.value.*member)[idx]);
            return v;
        };
        auto row = [&](double p, std::optional<double> q, std::optional<double> s, const std::string& method, double value) {
            SweepRecord r;
            r.experiment = "embedding";
            r.p = p;
            r.q = q;
            r.s = s;
            r.n = 1;
            r.N = n;
            r.seed = cfg.seed;
            r.value = value;
            r.method = method;
            return r;
        };
        for (std::size_t a = 0; a < np; ++a) {
            for (std::size_t b = 0; b < nq; ++b) {
                for (std::size_t c = 0; c < ns_; ++c) {
                    const std::size_t idx = (a * nq + b) * ns_ + c;
                    const struct {
                        const char* name;
                        std::vector<double> PerFunction::*member;
                        bool predicted;
                    } dirs[] = {{"sobolev_into_amalgam", &PerFunction::into_amalgam, embeds_sobolev_into_amalgam(ps[a], qs[b], ss[c], 1)},
                                {"amalgam_into_sobolev", &PerFunction::into_sobolev, embeds_amalgam_into_sobolev(ps[a], qs[b], ss[c], 1)}};
                    for (const auto& d : dirs) {
                        const auto v = column(d.member, idx);
                        auto r = row(ps[a].p(), qs[b].p(), ss[c], d.name, detail::band(v));
                        r.flags.push_back(d.predicted ? "predicted-bounded" : "predicted-unbounded");
                        if (d.predicted) r.flags.push_back(r.value < cfg.tol.band ? "pass" : "fail");
                        out.records.push_back(r);
                        out.records.push_back(row(ps[a].p(), qs[b].p(), ss[c], std::string(d.name) + "_median", detail::median(v)));
                    }
                }
            }
        }
        for (std::size_t k = 0; k < suite.size(); ++k) {
            for (std::size_t a = 0; a < np; ++a) {
                for (std::size_t b = 0; b < nq; ++b) {
                    const auto v = column(&PerFunction::suite_gain, (k * np + a) * nq + b);
                    auto r = row(ps[a].p(), qs[b].p(), 0.0, "suite_gain_" + suite[k].name, detail::band(v));
                    r.flags.push_back(r.value < cfg.tol.band ? "pass" : "fail");
                    out.records.push_back(r);
                }
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Threshold sweep

struct SlopeFit {
    double slope = 0.0;
    double stderr_ = 0.0;
};

/// Least squares fit of log(y) against log(x); needs at least 4 points.
inline SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 4) throw Error(ErrorCode::InvalidArgument, "slope fit needs at least 4 points");
    const std::size_t n = x.size();
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / static_cast<double>(n);
    const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    SlopeFit f;
    f.slope = sxy / sxx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - my - f.slope * (lx[i] - mx);
        ssr += r * r;
    }
    f.stderr_ = std::sqrt(ssr / static_cast<double>(n - 2) / sxx);
    return f;
}

inline bool endpoint_inconclusive(ExponentValue p, double s, int n) {
    return (p.is_one() || p.is_infinite()) && s == sharp_threshold(p, n);
}

inline RunOutput run_threshold_sweep(const SweepConfig& cfg, unsigned jobs) {
    const std::vector<std::size_t> ns = cfg.grid_n.empty() ? std::vector<std::size_t>{1024} : cfg.grid_n;
    const double L = cfg.extent.value_or(8.0);
    const std::vector<ExponentValue> ps = cfg.p.empty()
        ? std::vector<ExponentValue>{ExponentValue::one(), ExponentValue::two(), ExponentValue::infinity()} : cfg.p;
    std::vector<double> ss = cfg.s;
    if (ss.empty()) {
        for (int i = 0; i <= 8; ++i) ss.push_back(0.125 * i);
    }
    const std::vector<int> modes = cfg.n_modes.empty() ? std::vector<int>{4, 8, 16, 32} : cfg.n_modes;
    const std::vector<std::uint64_t> seeds = cfg.seeds.empty() ? std::vector<std::uint64_t>{1, 2} : cfg.seeds;
    for (double s : ss) {
        if (!(s >= 0.0)) throw Error(ErrorCode::ConfigError, "config key 's': threshold sweeps need s >= 0");
    }
    if (modes.size() < 4) throw Error(ErrorCode::ConfigError, "config key 'n_modes': the slope fit needs at least 4 values");

    NormOptions opt;
    opt.restarts = cfg.restarts;

    struct Task {
        std::size_t n;
        int modes;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    for (std::size_t n : ns)
        for (int m : modes)
            for (std::uint64_t seed : seeds) tasks.push_back({n, m, seed});

    // values[p][s] for each task
    const auto results = run_tasks<std::vector<NormEstimate>>(tasks.size(), jobs, [&](std::size_t i) {
        const Task& t = tasks[i];
        const UniformGrid g(1, t.n, L);
        const auto sigma = random_phase_multiplier(g, t.modes, derive_seed(derive_seed(cfg.seed, t.seed), static_cast<std::uint64_t>(t.modes)));
        std::vector<NormEstimate> est(ps.size() * ss.size());
        for (std::size_t c = 0; c < ss.size(); ++c) {
            const OperatorMatrix A = as_matrix(lift_symbol(sigma, -ss[c]));
            for (std::size_t a = 0; a < ps.size(); ++a) {
                NormOptions o = opt;
                o.tol = ps[a].is_two() ? cfg.tol.power : cfg.tol.boyd;
                o.seed = derive_seed(cfg.seed, i);
                est[a * ss.size() + c] = estimate_norm(A, ps[a], o);
            }
        }
        return est;
    });

    RunOutput out;
    bool any_failed = false;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        if (results[i].failed) {
            detail::add_error(out, "threshold", "N_modes=" + std::to_string(tasks[i].modes) + ": " + results[i].error);
            any_failed = true;
        }
    }
    if (any_failed) return out;

    auto flags_for = [](ExponentValue p, double s, bool lower) {
        std::vector<std::string> f;
        if (endpoint_inconclusive(p, s, 1)) f.push_back("endpoint-inconclusive");
        if (lower) f.push_back("lower-bound");
        return f;
    };

    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const Task& t = tasks[i];
        for (std::size_t a = 0; a < ps.size(); ++a) {
            for (std::size_t c = 0; c < ss.size(); ++c) {
                const NormEstimate& e = results[i].value[a * ss.size() + c];
                SweepRecord r;
                r.experiment = "threshold";
                r.p = ps[a].p();
                r.s = ss[c];
                r.n = 1;
                r.N = t.n;
                r.n_modes = t.modes;
                r.seed = t.seed;
                r.value = e.value;
                r.method = to_string(e.method);
                r.flags = flags_for(ps[a], ss[c], e.lower_bound_only);
                out.records.push_back(std::move(r));
            }
        }
    }

    for (std::size_t n : ns) {
        for (std::size_t a = 0; a < ps.size(); ++a) {
            for (std::size_t c = 0; c < ss.size(); ++c) {
                std::vector<double> xs, ys;
                bool lower = false;
                for (int m : modes) {
                    double sum = 0.0;
                    int count = 0;
                    for (std::size_t i = 0; i < tasks.size(); ++i) {
                        if (tasks[i].n != n || tasks[i].modes != m) continue;
                        const NormEstimate& e = results[i].value[a * ss.size() + c];
                        sum += e.value;
                        lower = lower || e.lower_bound_only;
                        ++count;
                    }
                    xs.push_back(static_cast<double>(m));
                    ys.push_back(sum / count);
                }
                const SlopeFit fit = fit_loglog(xs, ys);
                for (const auto& [name, value] : {std::pair{"slope", fit.slope}, std::pair{"slope_se", fit.stderr_}}) {
                    SweepRecord r;
                    r.experiment = "threshold";
                    r.p = ps[a].p();
                    r.s = ss[c];
                    r.n = 1;
                    r.N = n;
                    r.value = value;
                    r.method = name;
                    r.flags = flags_for(ps[a], ss[c], lower);
                    out.records.push_back(std::move(r));
                }
            }
        }
    }
    return out;
}

/// Runs the named experiment, which must be listed in the config.
inline RunOutput run_experiment(const std::string& name, const SweepConfig& cfg, unsigned jobs) {
    if (!cfg.has_experiment(name)) throw Error(ErrorCode::ConfigError, "experiment '" + name + "' is not listed under 'experiments'");
    if (name == "identity") return run_identity_suite(cfg, jobs);
    if (name == "embedding") return run_embedding_sweep(cfg, jobs);
    if (name == "threshold") return run_threshold_sweep(cfg, jobs);
    throw Error(ErrorCode::ConfigError, "unknown experiment '" + name + "'");
}

}  // namespace modop::lab
