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


// modop command line: experiment sweeps, region arithmetic, operator norms,
// symbol generation and classification.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "modop/exponent.hpp"
#include "modop/lab/config.hpp"
#include "modop/lab/experiments.hpp"
#include "modop/lab/parallel.hpp"
#include "modop/lab/records.hpp"
#include "modop/opnorm.hpp"
#include "modop/regions.hpp"
#include "modop/symbol.hpp"
#include "modop/symbolgen.hpp"
#include "modop/tf_analysis.hpp"

namespace {

using namespace modop;

/// Shortest decimal that reads back to the same double.
std::string shortest(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

PhaseSpaceSymbol load_symbol(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open symbol file '" + path + "'");
    return read_pss(in);
}

struct ExperimentArgs {
    std::string config, out;
    std::optional<std::uint64_t> seed;
    unsigned jobs = 0;
};

int run_experiment_command(const std::string& name, const ExperimentArgs& a) {
    auto cfg = lab::load_config(a.config);
    if (a.seed) cfg.seed = *a.seed;
    const unsigned jobs = a.jobs ? a.jobs : lab::default_jobs();
    const auto out = lab::run_experiment(name, cfg, jobs);
    const std::string path = a.out.empty() ? cfg.output : a.out;
    if (path.empty() || path == "-") {
        lab::write_csv(std::cout, out.records);
    } else {
        lab::emit_csv(out.records, path);
    }
    for (const auto& e : out.errors) std::cerr << "modop: task failed: " << e << '\n';
    return out.ok() ? 0 : 1;
}

struct RegionArgs {
    std::string p, q;
    double s = 0.0;
    int n = 1;
};

int run_regions(const RegionArgs& a) {
    const ExponentValue p = parse_exponent(a.p), q = parse_exponent(a.q);
    std::cout << "p,q,s,n,tau1,tau2,region_star,region,sobolev_into_amalgam,amalgam_into_sobolev,sharp_threshold\n"
              << format_exponent(p) << ',' << format_exponent(q) << ',' << shortest(a.s) << ',' << a.n << ','
              << shortest(tau1(p, q)) << ',' << shortest(tau2(p, q)) << ',' << region_star(p, q).to_string() << ','
              << region(p, q).to_string() << ',' << yes_no(embeds_sobolev_into_amalgam(p, q, a.s, a.n)) << ','
              << yes_no(embeds_amalgam_into_sobolev(p, q, a.s, a.n)) << ',' << shortest(sharp_threshold(p, a.n)) << '\n';
    return 0;
}

struct OpnormArgs {
    std::string symbol, p, method = "auto";
    double s = 0.0;
    std::uint64_t seed = 0;
    int restarts = 8;
};

int run_opnorm(const OpnormArgs& a) {
    NormOptions opt;
    opt.method = parse_norm_choice(a.method);
    opt.seed = a.seed;
    opt.restarts = a.restarts;
    const auto e = sobolev_opnorm(load_symbol(a.symbol), parse_exponent(a.p), a.s, opt);
    std::cout << "value,method,iterations,residual,lower_bound_only\n"
              << format_double(e.value) << ',' << to_string(e.method) << ',' << e.iterations << ','
              << format_double(e.residual) << ',' << yes_no(e.lower_bound_only) << '\n';
    return 0;
}

struct GenArgs {
    std::string family = "random_phase", out, quant = "kn";
    std::size_t n = 256;
    double extent = 8.0;
    int modes = 4;
    std::uint64_t seed = 1;
};

int run_gen(const GenArgs& a) {
    const UniformGrid g(1, a.n, a.extent);
    std::optional<PhaseSpaceSymbol> sigma;
    if (a.family == "random_phase") {
        sigma = random_phase_multiplier(g, a.modes, a.seed);
    } else {
        for (auto& s : standard_suite(g, a.seed)) {
            if (s.name == a.family) sigma = std::move(s.symbol);
        }
    }
    if (!sigma) throw Error(ErrorCode::InvalidArgument, "unknown symbol family '" + a.family + "'");
    // every generated family is x-independent or a pure multiplication, so both tags give the same operator
    if (a.quant == "weyl") {
        sigma = sigma->retagged(Quantization::Weyl);
    } else if (a.quant != "kn") {
        throw Error(ErrorCode::InvalidArgument, "quantization must be kn or weyl");
    }
    if (a.out.empty() || a.out == "-") {
        write_pss(std::cout, *sigma);
    } else {
        std::ofstream os(a.out);
        if (!os) throw Error(ErrorCode::InvalidArgument, "cannot write '" + a.out + "'");
        write_pss(os, *sigma);
    }
    return 0;
}

struct ClassifyArgs {
    std::string symbol;
    double m = 0.0, rho = 0.0, delta = 0.0, s = 0.0;
    int order = 2;
};

int run_classify(const ClassifyArgs& a) {
    const auto sigma = load_symbol(a.symbol);
    const auto report = s_seminorms(sigma, a.m, a.rho, a.delta, a.order);
    std::cout << "quantity,alpha,beta,value\n";
    for (std::size_t i = 0; i < report.orders.size(); ++i) {
        std::cout << "seminorm," << report.orders[i].first << ',' << report.orders[i].second << ','
                  << format_double(report.values[i]) << '\n';
    }
    std::cout << "max_order,,," << report.max_order << '\n';
    std::cout << "sjostrand,,," << format_double(sjostrand_norm(sigma, a.s)) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"modop: time-frequency operator calculus lab"};
    app.require_subcommand(1);
    int status = 0;

    ExperimentArgs ex;
    for (const std::string name : {"identity", "embedding", "threshold"}) {
        auto* sub = app.add_subcommand(name, "run the " + name + " experiment and write CSV");
        sub->add_option("--config", ex.config, "JSON config file")->required();
        sub->add_option("--out", ex.out, "output CSV path ('-' for stdout)");
        sub->add_option("--seed", ex.seed, "master seed, overrides the config");
        sub->add_option("--jobs", ex.jobs, "worker threads (default: MODOP_JOBS or hardware concurrency)");
        sub->callback([&, name] { status = run_experiment_command(name, ex); });
    }

    RegionArgs rg;
    auto* regions = app.add_subcommand("regions", "embedding index functions and verdicts for one (p, q, s, n)");
    regions->add_option("--p", rg.p)->required();
    regions->add_option("--q", rg.q)->required();
    regions->add_option("--s", rg.s)->required();
    regions->add_option("--n", rg.n)->check(CLI::PositiveNumber);
    regions->callback([&] { status = run_regions(rg); });

    OpnormArgs on;
    auto* opnorm = app.add_subcommand("opnorm", "L^p -> L^p norm of sigma(x, D) <D>^-s");
    opnorm->add_option("--symbol", on.symbol, "PSS file")->required();
    opnorm->add_option("--p", on.p)->required();
    opnorm->add_option("--s", on.s)->required();
    opnorm->add_option("--method", on.method, "auto, exact, power or boyd");
    opnorm->add_option("--seed", on.seed);
    opnorm->add_option("--restarts", on.restarts)->check(CLI::NonNegativeNumber);
    opnorm->callback([&] { status = run_opnorm(on); });

    GenArgs gn;
    auto* gen = app.add_subcommand("gen", "write a generated symbol as PSS");
    gen->add_option("--family", gn.family, "random_phase or a standard suite name");
    gen->add_option("--N", gn.n, "grid points")->check(CLI::PositiveNumber);
    gen->add_option("--L", gn.extent, "grid extent")->check(CLI::PositiveNumber);
    gen->add_option("--modes", gn.modes, "random_phase modes");
    gen->add_option("--seed", gn.seed);
    gen->add_option("--quant", gn.quant, "kn or weyl");
    gen->add_option("--out", gn.out, "output path ('-' for stdout)");
    gen->callback([&] { status = run_gen(gn); });

    ClassifyArgs cl;
    auto* classify = app.add_subcommand("classify", "S^m_{rho,delta} seminorms and Sjostrand norm of a PSS symbol");
    classify->add_option("--symbol", cl.symbol, "PSS file")->required();
    classify->add_option("--m", cl.m);
    classify->add_option("--rho", cl.rho);
    classify->add_option("--delta", cl.delta);
    classify->add_option("--order", cl.order)->check(CLI::NonNegativeNumber);
    classify->add_option("--s", cl.s, "Sjostrand weight order");
    classify->callback([&] { status = run_classify(cl); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const Error& e) {
        std::cerr << "modop: " << e.what() << '\n';
        return 2;
    }
    return status;
}
