// Copyright 2026 The qfiopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


/**
 * @file
 * Command-line front end: `qfi`, `sweep`, `optimize` and `verify`.
 *
 * Exit codes: 0 success, 1 verification failure, 2 usage or validation
 * error. A TOML file given with --config supplies defaults; keys go in a
 * section named after the subcommand and flags on the command line win.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qfiopt/channel.hpp"
#include "qfiopt/closedform.hpp"
#include "qfiopt/errors.hpp"
#include "qfiopt/optimize.hpp"
#include "qfiopt/sweep.hpp"
#include "qfiopt/verify.hpp"

#ifndef QFIOPT_VERSION
#define QFIOPT_VERSION "1.0.0"
#endif

namespace qfiopt::cli {

inline constexpr int exit_ok = 0;
inline constexpr int exit_verify_failed = 1;
inline constexpr int exit_usage = 2;

struct NoiseFlags {
    std::string preset;
    std::optional<double> param;
    std::optional<double> mu;
    std::optional<double> mu1;
    std::optional<double> mu2;
    std::optional<double> omega_t;
};

inline void add_noise_flags(CLI::App* cmd, NoiseFlags& f) {
    cmd->add_option("--preset", f.preset,
                    "noiseless, depolarizing, phase-flip, amplitude-damping, gad or custom");
    cmd->add_option("--param", f.param, "preset noise factor (alpha, mu2 or mu1)");
    cmd->add_option("--mu", f.mu, "gad mixing in [-1, 1] (default 1); custom mu (default 0)");
    cmd->add_option("--mu1", f.mu1, "custom: population factor in [0, 1]");
    cmd->add_option("--mu2", f.mu2, "custom: coherence factor in [0, 1]");
    cmd->add_option("--omega-t", f.omega_t, "custom: precession angle (default 0)");
}

/// Turns the noise flags into a NoiseSpec. With `swept`, --param may be
/// omitted because the sweep supplies it.
inline NoiseSpec resolve_noise(const NoiseFlags& f, bool swept = false) {
    NoiseSpec spec;
    std::string name = f.preset;
    if (name.empty()) {
        if (!f.mu1 && !f.mu2) {
            throw RangeError("--preset is required");
        }
        name = "custom";
    }
    const std::optional<PresetKind> kind = parse_preset(name);
    if (!kind) {
        throw RangeError("unknown preset '" + name +
                         "'; expected noiseless, depolarizing, phase-flip, "
                         "amplitude-damping, gad or custom");
    }
    spec.preset = *kind;
    if (spec.preset == PresetKind::custom) {
        if (!f.mu1 || !f.mu2) {
            throw RangeError("the custom preset needs --mu1 and --mu2");
        }
        if (f.param) {
            throw RangeError("--param does not apply to the custom preset");
        }
        spec.mu = f.mu.value_or(0.0);
        spec.mu1 = *f.mu1;
        spec.mu2 = *f.mu2;
        spec.omega_t = f.omega_t.value_or(0.0);
        spec.build();
        return spec;
    }
    if (f.mu1 || f.mu2 || f.omega_t) {
        throw RangeError("--mu1, --mu2 and --omega-t apply to the custom preset only");
    }
    if (f.mu && spec.preset != PresetKind::gad) {
        throw RangeError("--mu applies to the gad and custom presets only");
    }
    spec.mu = f.mu.value_or(1.0);
    if (spec.preset != PresetKind::noiseless) {
        if (!f.param && !swept) {
            throw RangeError("preset '" + name + "' needs --param");
        }
        spec.param = f.param.value_or(spec.param);
    }
    if (!swept || f.param) {
        spec.build();
    }
    return spec;
}

inline std::string describe_noise(const NoiseSpec& s, bool swept = false) {
    std::ostringstream o;
    o << "preset=" << preset_name(s.preset);
    if (s.preset == PresetKind::custom) {
        o << " mu=" << format_real(s.mu) << " mu1=" << format_real(s.mu1)
          << " mu2=" << format_real(s.mu2) << " omega_t=" << format_real(s.omega_t);
    } else if (s.preset != PresetKind::noiseless) {
        o << " param=" << (swept ? std::string("swept") : format_real(s.param));
        if (s.preset == PresetKind::gad) {
            o << " mu=" << format_real(s.mu);
        }
    }
    return o.str();
}

/// "opt" or a real in [0, 1].
inline KappaPolicy parse_kappa(const std::string& text) {
    if (text == "opt") {
        return KappaPolicy::optimal_per_n();
    }
    std::size_t used = 0;
    double k = 0.0;
    try {
        k = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || used == 0) {
        throw RangeError("--kappa expects a number in [0, 1] or 'opt', got '" + text + "'");
    }
    if (!(k >= 0.0 && k <= 1.0)) {
        throw RangeError("--kappa must lie in [0, 1], got " + text);
    }
    return KappaPolicy::fixed(k);
}

inline std::string describe_kappa(const KappaPolicy& k) {
    return k.optimal ? std::string("opt") : format_real(k.kappa);
}

/// Runs `body` against `fallback` or, when `path` is set, a file opened there.
inline void with_output(const std::string& path, std::ostream& fallback,
                        const std::function<void(std::ostream&)>& body) {
    if (path.empty()) {
        body(fallback);
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    body(file);
    file.flush();
    if (!file) {
        throw IoError("failed writing '" + path + "'");
    }
}

inline std::string version_line() { return std::string("qfiopt ") + QFIOPT_VERSION; }

/// Moves --config (in either spelling) in front of the subcommand so it is
/// seen by the top-level parser wherever the user put it.
inline std::vector<std::string> hoist_config(std::vector<std::string> args) {
    std::vector<std::string> front;
    std::vector<std::string> rest;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            front.push_back(args[i]);
            front.push_back(args[i + 1]);
            ++i;
        } else if (args[i].rfind("--config=", 0) == 0) {
            front.push_back(args[i]);
        } else {
            rest.push_back(args[i]);
        }
    }
    front.insert(front.end(), rest.begin(), rest.end());
    return front;
}

namespace detail {

struct QfiCmd {
    NoiseFlags noise;
    long n = 1;
    std::optional<long> n_active;
    std::string kappa = "0.5";
    std::optional<double> time;
    std::string out;
};

struct SweepCmd {
    NoiseFlags noise;
    std::string var = "param";
    double start = 0.0;
    double stop = 1.0;
    long steps = 101;
    std::string spacing = "linear";
    std::vector<double> series;
    std::vector<std::string> columns{"qfi", "qfi_separable"};
    std::string kappa = "0.5";
    long n = 1;
    std::optional<long> n_active;
    bool inactive = false;
    long n_max = 1000;
    unsigned threads = 0;
    std::string out;
};

struct OptimizeCmd {
    NoiseFlags noise;
    std::string kappa = "opt";
    long n_max = default_n_max;
    long total = 1000;
    bool inactive = false;
    std::string out;
};

struct VerifyCmd {
    long trials = 200;
    long n_max = 8;
    std::uint64_t seed = 42;
    bool inactive = false;
    std::string derivative = "analytic";
    double step = 1e-6;
    unsigned threads = 0;
    std::string out;
};

inline int run_qfi(const QfiCmd& c, std::ostream& out) {
    const NoiseSpec spec = resolve_noise(c.noise);
    const NoiseParams noise = spec.build();
    const long n_active = c.n_active.value_or(c.n);
    make_probe(c.n, n_active, 0.5);
    const KappaPolicy policy = parse_kappa(c.kappa);
    const QfiEvaluator eval(noise);
    const double kappa = policy.optimal ? eval.kappa_opt(c.n, n_active) : policy.kappa;
    const ProbeConfig probe = make_probe(c.n, n_active, kappa);
    const QfiResult r = qfi(noise, probe);
    std::optional<double> freq;
    if (c.time) {
        freq = qfi_frequency(noise, probe, *c.time);
    }
    with_output(c.out, out, [&](std::ostream& o) {
        o << "# " << version_line() << '\n';
        o << "# qfi " << describe_noise(spec) << " n=" << c.n << " n_active=" << n_active
          << " kappa=" << describe_kappa(policy) << '\n';
        o << "preset,param,mu,mu1,mu2,omega_t,n,n_active,kappa,qfi,qfi_separable,beta0,beta1";
        if (freq) {
            o << ",qfi_frequency";
        }
        o << '\n';
        o << preset_name(spec.preset) << ','
          << (spec.preset == PresetKind::custom || spec.preset == PresetKind::noiseless
                  ? std::string("nan")
                  : format_real(spec.param))
          << ',' << format_real(noise.mu()) << ',' << format_real(noise.mu1()) << ','
          << format_real(noise.mu2()) << ',' << format_real(noise.omega_t()) << ',' << c.n << ','
          << n_active << ',' << format_real(kappa) << ',' << format_real(r.value) << ','
          << format_real(static_cast<double>(n_active) * noise.mu2() * noise.mu2()) << ','
          << format_real(r.betas.beta0) << ',' << format_real(r.betas.beta1);
        if (freq) {
            o << ',' << format_real(*freq);
        }
        o << '\n';
    });
    return exit_ok;
}

inline int run_sweep(const SweepCmd& c, std::ostream& out) {
    SweepSpec spec;
    if (c.var == "param") {
        spec.var = SweepVar::param;
    } else if (c.var == "n") {
        spec.var = SweepVar::n;
    } else {
        throw RangeError("--var must be 'param' or 'n'");
    }
    spec.noise = resolve_noise(c.noise, spec.var == SweepVar::param || !c.series.empty());
    if (c.spacing == "linear") {
        spec.spacing = Spacing::linear;
    } else if (c.spacing == "log") {
        spec.spacing = Spacing::log;
    } else {
        throw RangeError("--spacing must be 'linear' or 'log'");
    }
    spec.start = c.start;
    spec.stop = c.stop;
    spec.steps = c.steps;
    spec.series = c.series;
    spec.kappa = parse_kappa(c.kappa);
    spec.n = c.n;
    spec.n_active = c.n_active.value_or(0);
    spec.inactive = c.inactive;
    spec.n_max = c.n_max;
    spec.columns.clear();
    for (const std::string& name : c.columns) {
        const std::optional<Column> col = parse_column(name);
        if (!col) {
            throw RangeError("unknown column '" + name + "'");
        }
        spec.columns.push_back(*col);
    }
    if (spec.var == SweepVar::param) {
        make_probe(spec.n, spec.n_active == 0 ? spec.n : spec.n_active, 0.5);
    }

    std::ostringstream flags;
    flags << "sweep " << describe_noise(spec.noise, spec.var == SweepVar::param || !c.series.empty())
          << " var=" << c.var
          << " start=" << format_real(c.start) << " stop=" << format_real(c.stop)
          << " steps=" << c.steps << " spacing=" << c.spacing << " series=";
    for (std::size_t i = 0; i < c.series.size(); ++i) {
        flags << (i ? ";" : "") << format_real(c.series[i]);
    }
    flags << " kappa=" << describe_kappa(spec.kappa) << " n=" << c.n
          << " n_active=" << (c.n_active ? std::to_string(*c.n_active) : std::string("all"))
          << " inactive=" << (c.inactive ? "true" : "false") << " n_max=" << c.n_max;

    // Render fully before touching the output so a failed sweep leaves no
    // partial file behind.
    std::ostringstream buffer;
    write_sweep(spec, buffer, {version_line(), flags.str()}, c.threads);
    with_output(c.out, out, [&](std::ostream& o) { o << buffer.str(); });
    return exit_ok;
}

inline int run_optimize(const OptimizeCmd& c, std::ostream& out, std::ostream& err) {
    const NoiseSpec spec = resolve_noise(c.noise);
    const NoiseParams noise = spec.build();
    const KappaPolicy policy = parse_kappa(c.kappa);
    const OptimalSetting best = optimize_n(noise, policy, c.n_max, c.inactive);
    const BlockReport blocks = block_strategy(noise, c.total, c.n_max);
    const double mu2_sq = noise.mu2() * noise.mu2();
    std::optional<double> analytic;
    try {
        analytic = n_opt_analytic(noise);
    } catch (const DomainError&) {
    }
    const double gain = partial_vs_maximal_entanglement(noise, c.n_max);

    char line[128];
    auto row = [&](const char* key, const std::string& value) {
        std::snprintf(line, sizeof line, "%-24s %s\n", key, value.c_str());
        out << line;
    };
    out << version_line() << '\n';
    row("noise", describe_noise(spec));
    row("kappa policy", describe_kappa(policy));
    row("inactive qubit", c.inactive ? "yes" : "no");
    row("n_max", std::to_string(c.n_max));
    row("N_opt", std::to_string(best.n_opt));
    row("N_total", std::to_string(best.n_total));
    row("kappa_opt", format_real(best.kappa_opt));
    row("F_max", format_real(best.fq_max));
    row("ratio vs separable", format_real(best.ratio_vs_separable));
    row("F_max / N_opt", format_real(best.fq_per_qubit));
    row("separable per qubit", format_real(mu2_sq));
    row("F_max / N_opt^2", format_real(best.fq_over_n_sq));
    row("N_opt (small noise)", analytic ? format_real(*analytic) : std::string("n/a"));
    row("kappa_opt vs 1/2 gain", format_real(gain));
    row("block budget", std::to_string(c.total));
    row("block size", std::to_string(blocks.block_size));
    row("blocks", std::to_string(blocks.n_blocks));
    row("leftover separable", std::to_string(blocks.leftover));
    row("block total F", format_real(blocks.total_qfi));
    row("block vs separable", format_real(blocks.vs_separable_ratio));
    if (best.cap_warning) {
        out << "warning: N_opt sits on the --n-max cap; the optimum may lie beyond it\n";
        err << "warning: N_opt reached --n-max = " << c.n_max << '\n';
    }
    if (!c.out.empty()) {
        with_output(c.out, out, [&](std::ostream& o) {
            o << "# " << version_line() << '\n';
            o << "# optimize " << describe_noise(spec) << " kappa=" << describe_kappa(policy)
              << " n_max=" << c.n_max << " total=" << c.total
              << " inactive=" << (c.inactive ? "true" : "false") << '\n';
            o << "n_opt,n_total,kappa_opt,fq_max,ratio,per_qubit,per_qubit_separable,"
                 "fq_over_n_sq,n_opt_analytic,partial_vs_maximal,block_size,n_blocks,leftover,"
                 "block_total_qfi,block_ratio,cap_warning\n";
            o << best.n_opt << ',' << best.n_total << ',' << format_real(best.kappa_opt) << ','
              << format_real(best.fq_max) << ',' << format_real(best.ratio_vs_separable) << ','
              << format_real(best.fq_per_qubit) << ',' << format_real(mu2_sq) << ','
              << format_real(best.fq_over_n_sq) << ','
              << (analytic ? format_real(*analytic) : std::string("nan")) << ','
              << format_real(gain) << ',' << blocks.block_size << ',' << blocks.n_blocks << ','
              << blocks.leftover << ',' << format_real(blocks.total_qfi) << ','
              << format_real(blocks.vs_separable_ratio) << ',' << (best.cap_warning ? 1 : 0)
              << '\n';
        });
    }
    return exit_ok;
}

inline int run_verify(const VerifyCmd& c, std::ostream& out) {
    VerifyOptions opts;
    opts.trials = c.trials;
    opts.n_max = c.n_max;
    opts.seed = c.seed;
    opts.inactive = c.inactive;
    opts.workers = c.threads;
    if (c.derivative == "analytic") {
        opts.derivative = oracle::DerivativeMode::analytic();
    } else if (c.derivative == "fd") {
        if (!(c.step > 0.0)) {
            throw RangeError("--step must be positive");
        }
        opts.derivative = oracle::DerivativeMode::finite_difference(c.step);
    } else {
        throw RangeError("--derivative must be 'analytic' or 'fd'");
    }
    const VerificationReport report = run_verification(opts);

    out << version_line() << '\n';
    out << "trials " << c.trials << " n_max " << c.n_max << " seed " << c.seed
        << " inactive " << (c.inactive ? "yes" : "no") << " derivative " << c.derivative
        << '\n';
    out << "extended-precision trials " << report.extended_trials << '\n';
    out << "worst trial " << report.worst_trial << '\n';
    out << "max relative deviation " << format_real(report.max_rel_deviation) << '\n';
    out << (report.passed() ? "PASS" : "FAIL") << " (tolerance "
        << format_real(verify_tolerance) << ")\n";

    if (!c.out.empty()) {
        with_output(c.out, out, [&](std::ostream& o) {
            o << "# " << version_line() << '\n';
            o << "# verify trials=" << c.trials << " n_max=" << c.n_max << " seed=" << c.seed
              << " inactive=" << (c.inactive ? "true" : "false")
              << " derivative=" << c.derivative << " step=" << format_real(c.step) << '\n';
            o << "trial,mu,mu1,mu2,omega_t,n,n_active,kappa,theta_n,phi_n,xi,closed_form,"
                 "oracle,rel_deviation,extended_precision\n";
            for (std::size_t i = 0; i < report.trials.size(); ++i) {
                const TrialRecord& t = report.trials[i];
                o << i << ',' << format_real(t.noise.mu()) << ',' << format_real(t.noise.mu1())
                  << ',' << format_real(t.noise.mu2()) << ',' << format_real(t.noise.omega_t())
                  << ',' << t.probe.n_total << ',' << t.probe.n_active << ','
                  << format_real(t.probe.kappa) << ',' << format_real(t.axis.theta_n) << ','
                  << format_real(t.axis.phi_n) << ',' << format_real(t.xi) << ','
                  << format_real(t.closed_form) << ',' << format_real(t.oracle_value) << ','
                  << format_real(t.rel_deviation) << ',' << (t.extended_precision ? 1 : 0)
                  << '\n';
            }
        });
    }
    return report.passed() ? exit_ok : exit_verify_failed;
}

} // namespace detail

/// Entry point; `args` excludes the program name.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantum Fisher information of entangled probes under phase-covariant noise",
                 "qfiopt"};
    app.set_version_flag("--version", version_line());
    app.set_config("--config", "", "TOML file with one section per subcommand");
    app.require_subcommand(1);
    app.allow_config_extras(CLI::config_extras_mode::error);

    detail::QfiCmd qc;
    CLI::App* qfi_cmd = app.add_subcommand("qfi", "QFI of one probe configuration, as CSV");
    add_noise_flags(qfi_cmd, qc.noise);
    qfi_cmd->add_option("--n", qc.n, "total probe qubits")->capture_default_str();
    qfi_cmd->add_option("--n-active", qc.n_active, "qubits exposed to phase and noise");
    qfi_cmd->add_option("--kappa", qc.kappa, "Schmidt weight in [0, 1] or 'opt'")
        ->capture_default_str();
    qfi_cmd->add_option("--time", qc.time, "interaction time; adds a frequency-QFI column");
    qfi_cmd->add_option("--out", qc.out, "write the CSV here instead of stdout");

    detail::SweepCmd sc;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "CSV over a grid of noise or probe size");
    add_noise_flags(sweep_cmd, sc.noise);
    sweep_cmd->add_option("--var", sc.var, "swept variable: param or n")->capture_default_str();
    sweep_cmd->add_option("--start", sc.start)->capture_default_str();
    sweep_cmd->add_option("--stop", sc.stop)->capture_default_str();
    sweep_cmd->add_option("--steps", sc.steps, "grid points (param sweeps)")
        ->capture_default_str();
    sweep_cmd->add_option("--spacing", sc.spacing, "linear or log")->capture_default_str();
    sweep_cmd->add_option("--series", sc.series, "noise parameter values for an n sweep");
    sweep_cmd->add_option("--columns", sc.columns, "output columns")->capture_default_str();
    sweep_cmd->add_option("--kappa", sc.kappa, "Schmidt weight in [0, 1] or 'opt'")
        ->capture_default_str();
    sweep_cmd->add_option("--n", sc.n, "total probe qubits (param sweeps)")
        ->capture_default_str();
    sweep_cmd->add_option("--n-active", sc.n_active, "active qubits (param sweeps)");
    sweep_cmd->add_flag("--inactive", sc.inactive,
                        "optimisation columns carry one extra inactive qubit");
    sweep_cmd->add_option("--n-max", sc.n_max, "size cap for optimisation columns")
        ->capture_default_str();
    sweep_cmd->add_option("--threads", sc.threads, "worker threads, 0 = all cores")
        ->capture_default_str();
    sweep_cmd->add_option("--out", sc.out, "write the CSV here instead of stdout");

    detail::OptimizeCmd oc;
    CLI::App* opt_cmd = app.add_subcommand("optimize", "optimal probe size and entanglement");
    add_noise_flags(opt_cmd, oc.noise);
    opt_cmd->add_option("--kappa", oc.kappa, "'opt' or a fixed Schmidt weight")
        ->capture_default_str();
    opt_cmd->add_option("--n-max", oc.n_max, "largest probe size scanned")->capture_default_str();
    opt_cmd->add_option("--total", oc.total, "qubit budget for the block strategy")
        ->capture_default_str();
    opt_cmd->add_flag("--inactive", oc.inactive, "add one inactive qubit to every candidate");
    opt_cmd->add_option("--out", oc.out, "also write a one-row CSV here");

    detail::VerifyCmd vc;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "cross-check the closed form against the dense oracle");
    verify_cmd->add_option("--trials", vc.trials)->capture_default_str();
    verify_cmd->add_option("--n-max", vc.n_max, "largest probe size drawn")
        ->capture_default_str();
    verify_cmd->add_option("--seed", vc.seed, "mt19937_64 seed")->capture_default_str();
    verify_cmd->add_flag("--inactive", vc.inactive, "draw probes with inactive qubits");
    verify_cmd->add_option("--derivative", vc.derivative, "analytic or fd")
        ->capture_default_str();
    verify_cmd->add_option("--step", vc.step, "finite-difference step")->capture_default_str();
    verify_cmd->add_option("--threads", vc.threads, "worker threads, 0 = all cores")
        ->capture_default_str();
    verify_cmd->add_option("--out", vc.out, "write per-trial CSV here");

    args = hoist_config(std::move(args));
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (qfi_cmd->parsed()) {
            return detail::run_qfi(qc, out);
        }
        if (sweep_cmd->parsed()) {
            return detail::run_sweep(sc, out);
        }
        if (opt_cmd->parsed()) {
            return detail::run_optimize(oc, out, err);
        }
        return detail::run_verify(vc, out);
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
    } catch (const std::length_error& e) {
        err << "error: " << e.what() << '\n';
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
    }
    return exit_usage;
}

} // namespace qfiopt::cli
