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
 * Parameter sweeps rendered as CSV. A sweep walks either the noise
 * parameter of a preset or the probe size, and evaluates a list of named
 * columns at every grid point. Rows are computed in parallel and emitted in
 * grid order, so output is byte-stable.
 */

#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qfiopt/channel.hpp"
#include "qfiopt/closedform.hpp"
#include "qfiopt/detail/parallel.hpp"
#include "qfiopt/errors.hpp"
#include "qfiopt/optimize.hpp"

namespace qfiopt {

/// 12 significant digits, printf %g style; NaN prints as "nan".
inline std::string format_real(double x) {
    if (std::isnan(x)) {
        return "nan";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

/// A preset plus the values needed to instantiate it.
struct NoiseSpec {
    PresetKind preset = PresetKind::noiseless;
    double param = 1.0;
    double mu = 1.0; ///< gad temperature mixing; custom mu
    double mu1 = 1.0;
    double mu2 = 1.0;
    double omega_t = 0.0;

    NoiseParams build() const { return build(param); }

    NoiseParams build(double swept_param) const {
        if (preset == PresetKind::custom) {
            return make_noise(mu, mu1, mu2, omega_t);
        }
        return make_preset(preset, swept_param, mu);
    }
};

enum class SweepVar { param, n };
enum class Spacing { linear, log };

enum class Column {
    qfi,                 ///< at (n, n_active, kappa)
    qfi_full,            ///< at (n, n, kappa)
    qfi_separable,       ///< n_active mu2^2
    log_qfi,             ///< natural log of qfi
    kappa_opt,           ///< optimal kappa at (n, n_active)
    n_opt,               ///< optimal size under the kappa policy
    kappa_at_opt,        ///< kappa used at n_opt
    fq_max,              ///< QFI at n_opt
    ratio,               ///< fq_max / (n_opt mu2^2)
    per_qubit,           ///< fq_max / n_opt
    per_qubit_separable, ///< mu2^2
    fq_over_n_sq,        ///< fq_max / n_opt^2
    partial_vs_maximal,  ///< fq_max(kappa_opt) / fq_max(kappa = 1/2)
    n_opt_analytic,      ///< small-noise estimate of n_opt; nan off its domain
};

inline constexpr Column all_columns[] = {
    Column::qfi,
    Column::qfi_full,
    Column::qfi_separable,
    Column::log_qfi,
    Column::kappa_opt,
    Column::n_opt,
    Column::kappa_at_opt,
    Column::fq_max,
    Column::ratio,
    Column::per_qubit,
    Column::per_qubit_separable,
    Column::fq_over_n_sq,
    Column::partial_vs_maximal,
    Column::n_opt_analytic,
};

inline std::string_view column_name(Column c) {
    switch (c) {
    case Column::qfi: return "qfi";
    case Column::qfi_full: return "qfi_full";
    case Column::qfi_separable: return "qfi_separable";
    case Column::log_qfi: return "log_qfi";
    case Column::kappa_opt: return "kappa_opt";
    case Column::n_opt: return "n_opt";
    case Column::kappa_at_opt: return "kappa_at_opt";
    case Column::fq_max: return "fq_max";
    case Column::ratio: return "ratio";
    case Column::per_qubit: return "per_qubit";
    case Column::per_qubit_separable: return "per_qubit_separable";
    case Column::fq_over_n_sq: return "fq_over_n_sq";
    case Column::partial_vs_maximal: return "partial_vs_maximal";
    case Column::n_opt_analytic: return "n_opt_analytic";
    }
    return "unknown";
}

inline std::optional<Column> parse_column(std::string_view name) {
    for (Column c : all_columns) {
        if (column_name(c) == name) {
            return c;
        }
    }
    return std::nullopt;
}

struct SweepSpec {
    NoiseSpec noise;
    SweepVar var = SweepVar::param;
    double start = 0.0;
    double stop = 1.0;
    long steps = 101;
    Spacing spacing = Spacing::linear;
    std::vector<double> series; ///< extra values of the noise parameter (var = n)
    KappaPolicy kappa = KappaPolicy::fixed(0.5);
    long n = 1;
    long n_active = 0; ///< 0 means all n qubits
    bool inactive = false; ///< optimisation columns carry one inactive qubit
    long n_max = 1000;
    std::vector<Column> columns{Column::qfi, Column::qfi_separable};
};

/// Validates the sweep settings and returns the grid points.
inline std::vector<double> sweep_grid(const SweepSpec& spec) {
    if (spec.columns.empty()) {
        throw RangeError("sweep needs at least one column");
    }
    if (spec.n_max < 1) {
        throw RangeError("n_max must be >= 1");
    }
    if (spec.var == SweepVar::n) {
        const double lo = std::round(spec.start);
        const double hi = std::round(spec.stop);
        if (lo != spec.start || hi != spec.stop || lo < 1 || !(lo < hi)) {
            throw RangeError("an n sweep needs integer start >= 1 and stop > start");
        }
        std::vector<double> grid;
        for (double x = lo; x <= hi; x += 1.0) {
            grid.push_back(x);
        }
        return grid;
    }
    if (spec.noise.preset == PresetKind::custom || spec.noise.preset == PresetKind::noiseless) {
        throw RangeError("the preset has no parameter to sweep; sweep n instead");
    }
    if (spec.steps < 2) {
        throw RangeError("sweep needs steps >= 2");
    }
    if (!(spec.start < spec.stop)) {
        throw RangeError("sweep needs start < stop");
    }
    if (spec.spacing == Spacing::log && !(spec.start > 0.0)) {
        throw RangeError("log spacing needs start > 0");
    }
    std::vector<double> grid(static_cast<std::size_t>(spec.steps));
    const double last = static_cast<double>(spec.steps - 1);
    for (long i = 0; i < spec.steps; ++i) {
        const double t = static_cast<double>(i) / last;
        grid[static_cast<std::size_t>(i)] =
            spec.spacing == Spacing::linear
                ? spec.start + (spec.stop - spec.start) * t
                : std::exp(std::log(spec.start) + (std::log(spec.stop) - std::log(spec.start)) * t);
    }
    grid.back() = spec.stop;
    // Surface range errors before any work is scheduled.
    spec.noise.build(grid.front());
    spec.noise.build(grid.back());
    return grid;
}

namespace detail {

/// Evaluates the requested columns for one (noise, n, n_active) point.
inline std::vector<double> sweep_row(const SweepSpec& spec, const NoiseParams& noise, long n,
                                     long n_active) {
    const QfiEvaluator eval(noise);
    const double mu2_sq = noise.mu2() * noise.mu2();
    auto kappa_at = [&](long total, long active) {
        return spec.kappa.optimal ? eval.kappa_opt(total, active) : spec.kappa.kappa;
    };
    std::optional<OptimalSetting> best;
    auto optimum = [&]() -> const OptimalSetting& {
        if (!best) {
            best = optimize_n(noise, spec.kappa, spec.n_max, spec.inactive);
        }
        return *best;
    };
    std::vector<double> row;
    row.reserve(spec.columns.size());
    for (Column c : spec.columns) {
        switch (c) {
        case Column::qfi:
            row.push_back(eval.qfi(n, n_active, kappa_at(n, n_active)).value);
            break;
        case Column::qfi_full:
            row.push_back(eval.qfi(n, n, kappa_at(n, n)).value);
            break;
        case Column::qfi_separable:
            row.push_back(static_cast<double>(n_active) * mu2_sq);
            break;
        case Column::log_qfi:
            row.push_back(eval.qfi(n, n_active, kappa_at(n, n_active)).log_value);
            break;
        case Column::kappa_opt:
            row.push_back(eval.kappa_opt(n, n_active));
            break;
        case Column::n_opt:
            row.push_back(static_cast<double>(optimum().n_opt));
            break;
        case Column::kappa_at_opt:
            row.push_back(optimum().kappa_opt);
            break;
        case Column::fq_max:
            row.push_back(optimum().fq_max);
            break;
        case Column::ratio:
            row.push_back(optimum().ratio_vs_separable);
            break;
        case Column::per_qubit:
            row.push_back(optimum().fq_per_qubit);
            break;
        case Column::per_qubit_separable:
            row.push_back(mu2_sq);
            break;
        case Column::fq_over_n_sq:
            row.push_back(optimum().fq_over_n_sq);
            break;
        case Column::partial_vs_maximal:
            row.push_back(partial_vs_maximal_entanglement(noise, spec.n_max));
            break;
        case Column::n_opt_analytic:
            try {
                row.push_back(qfiopt::n_opt_analytic(noise));
            } catch (const DomainError&) {
                row.push_back(std::nan(""));
            }
            break;
        }
    }
    return row;
}

} // namespace detail

/**
 * Writes the sweep as CSV: the `preamble` lines (each prefixed with "# "),
 * a header row, then one row per grid point. A param sweep has leading
 * column `param`; an n sweep has `param,n` and one block of rows per
 * series value (the noise param itself when `series` is empty).
 */
inline void write_sweep(const SweepSpec& spec, std::ostream& out,
                        const std::vector<std::string>& preamble = {}, unsigned workers = 0) {
    const std::vector<double> grid = sweep_grid(spec);

    struct Point {
        double param;
        long n;
    };
    std::vector<Point> points;
    if (spec.var == SweepVar::param) {
        for (double x : grid) {
            points.push_back({x, spec.n});
        }
    } else {
        std::vector<double> series = spec.series;
        if (series.empty()) {
            series.push_back(spec.noise.param);
        }
        for (double p : series) {
            spec.noise.build(p);
            for (double x : grid) {
                points.push_back({p, static_cast<long>(x)});
            }
        }
    }
    if (spec.var == SweepVar::param) {
        make_probe(spec.n, spec.n_active == 0 ? spec.n : spec.n_active, 0.5);
    }

    std::vector<std::string> lines(points.size());
    detail::parallel_for(
        points.size(),
        [&](std::size_t i) {
            const Point& pt = points[i];
            const long n_active =
                spec.var == SweepVar::n ? pt.n : (spec.n_active == 0 ? pt.n : spec.n_active);
            const NoiseParams noise = spec.noise.build(pt.param);
            std::string line = format_real(pt.param);
            if (spec.var == SweepVar::n) {
                line += ',';
                line += std::to_string(pt.n);
            }
            for (double v : detail::sweep_row(spec, noise, pt.n, n_active)) {
                line += ',';
                line += format_real(v);
            }
            lines[i] = std::move(line);
        },
        workers);

    for (const std::string& p : preamble) {
        out << "# " << p << '\n';
    }
    out << "param";
    if (spec.var == SweepVar::n) {
        out << ",n";
    }
    for (Column c : spec.columns) {
        out << ',' << column_name(c);
    }
    out << '\n';
    for (const std::string& line : lines) {
        out << line << '\n';
    }
}

} // namespace qfiopt
