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
 * Optimal probe size and entanglement degree, comparisons against the
 * separable baseline, block grouping, and threshold location on one-parameter
 * noise families.
 */

#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <vector>

#include "qfiopt/channel.hpp"
#include "qfiopt/closedform.hpp"
#include "qfiopt/errors.hpp"
#include "qfiopt/logdomain.hpp"

namespace qfiopt {

struct KappaPolicy {
    bool optimal = true;
    double kappa = 0.5; ///< used when !optimal

    static KappaPolicy fixed(double k) { return KappaPolicy{false, k}; }
    static KappaPolicy optimal_per_n() { return KappaPolicy{true, 0.5}; }
};

inline constexpr long default_n_max = 100000;

struct OptimalSetting {
    long n_opt = 1;   ///< optimal number of active qubits
    long n_total = 1; ///< n_opt, or n_opt + 1 with one inactive qubit
    double kappa_opt = 0.5;
    double fq_max = 0.0;
    double log_fq_max = logdomain::neg_inf;
    double ratio_vs_separable = 0.0; ///< fq_max / (n_opt mu2^2); NaN if mu2 = 0
    double fq_per_qubit = 0.0;       ///< fq_max / n_opt
    double fq_over_n_sq = 0.0;       ///< fq_max / n_opt^2
    bool cap_warning = false;        ///< argmax sits on n_max; the optimum may lie beyond
};

/**
 * Exhaustive scan of the number of active qubits over 1..n_max. With
 * `inactive_qubit` each candidate carries one extra inactive qubit
 * (n_total = n + 1). Ties go to the smallest size.
 */
inline OptimalSetting optimize_n(const NoiseParams& noise, KappaPolicy policy,
                                 long n_max = default_n_max, bool inactive_qubit = false) {
    if (n_max < 1) {
        throw RangeError("n_max must be >= 1");
    }
    if (!policy.optimal && !(policy.kappa >= 0.0 && policy.kappa <= 1.0)) {
        throw RangeError("fixed kappa must lie in [0, 1]");
    }
    const QfiEvaluator eval(noise);
    OptimalSetting best;
    bool have = false;
    for (long n = 1; n <= n_max; ++n) {
        const long n_total = inactive_qubit ? n + 1 : n;
        const BetaPair b = eval.betas(n_total, n);
        const double kappa = policy.optimal ? QfiEvaluator::kappa_opt_from_betas(b) : policy.kappa;
        const QfiResult r = eval.qfi_from_betas(b, n, kappa);
        if (!have || r.log_value > best.log_fq_max) {
            have = true;
            best.n_opt = n;
            best.n_total = n_total;
            best.kappa_opt = kappa;
            best.fq_max = r.value;
            best.log_fq_max = r.log_value;
        }
    }
    const double n = static_cast<double>(best.n_opt);
    const double mu2_sq = noise.mu2() * noise.mu2();
    best.ratio_vs_separable =
        mu2_sq > 0.0 ? best.fq_max / (n * mu2_sq) : std::numeric_limits<double>::quiet_NaN();
    best.fq_per_qubit = best.fq_max / n;
    best.fq_over_n_sq = best.fq_max / (n * n);
    best.cap_warning = best.n_opt == n_max;
    return best;
}

struct ComparisonReport {
    double ratio;
    double per_qubit_entangled;
    double per_qubit_separable;
};

inline ComparisonReport compare_separable(const NoiseParams& noise, const OptimalSetting& setting) {
    const double mu2_sq = noise.mu2() * noise.mu2();
    if (mu2_sq == 0.0) {
        throw DegenerateError("separable baseline vanishes (mu2 = 0)");
    }
    const double n = static_cast<double>(setting.n_opt);
    return ComparisonReport{
        .ratio = setting.fq_max / (n * mu2_sq),
        .per_qubit_entangled = setting.fq_max / n,
        .per_qubit_separable = mu2_sq,
    };
}

/// Gain of optimising kappa over fixing it at 1/2, each at its own optimal
/// size. Returns 1 when the QFI vanishes identically (mu2 = 0).
inline double partial_vs_maximal_entanglement(const NoiseParams& noise,
                                              long n_max = default_n_max) {
    const OptimalSetting opt = optimize_n(noise, KappaPolicy::optimal_per_n(), n_max);
    const OptimalSetting half = optimize_n(noise, KappaPolicy::fixed(0.5), n_max);
    if (half.log_fq_max == logdomain::neg_inf) {
        return 1.0;
    }
    return std::exp(opt.log_fq_max - half.log_fq_max);
}

struct BlockReport {
    long block_size = 1;
    long n_blocks = 0;
    long leftover = 0; ///< qubits prepared separably in |+'>
    double total_qfi = 0.0;
    double vs_separable_ratio = 1.0;
};

/**
 * Splits a budget of qubits into independent blocks of the optimal size
 * (optimal kappa per size); leftovers are prepared in |+'>. QFI is additive
 * over the independent parts. The ratio is reported as 1 when both the
 * grouped and the separable strategies give zero (mu2 = 0).
 */
inline BlockReport block_strategy(const NoiseParams& noise, long total_qubits,
                                  long n_max = default_n_max) {
    if (total_qubits < 1) {
        throw RangeError("total_qubits must be >= 1");
    }
    const OptimalSetting opt = optimize_n(noise, KappaPolicy::optimal_per_n(), n_max);
    BlockReport out;
    out.block_size = opt.n_opt;
    out.n_blocks = total_qubits / opt.n_opt;
    out.leftover = total_qubits - out.n_blocks * opt.n_opt;
    const double mu2_sq = noise.mu2() * noise.mu2();
    out.total_qfi = static_cast<double>(out.n_blocks) * opt.fq_max +
                    static_cast<double>(out.leftover) * mu2_sq;
    const double separable = static_cast<double>(total_qubits) * mu2_sq;
    out.vs_separable_ratio = separable > 0.0 ? out.total_qfi / separable : 1.0;
    return out;
}

// ---------------------------------------------------------------------------
// Thresholds

enum class ThresholdPredicate {
    n_opt_gt_1,               ///< optimal size (optimal kappa) exceeds one qubit
    ratio_gt_1,               ///< F_max / (N_opt mu2^2) > 1
    inactive_beats_full,      ///< N-1 active of N beats all N active, at fixed N
    inactive_beats_separable, ///< N-1 active of N beats (N-1) mu2^2, at fixed N
};

struct ThresholdOptions {
    long n_max = 10000;      ///< scan cap for the optimisation-based predicates
    long probe_size = 3;     ///< N for the inactive-qubit predicates
    int scan_points = 200;   ///< coarse grid before bisection
    double tolerance = 1e-4; ///< absolute, on the noise parameter
};

/// Maps the swept noise parameter to a channel.
using NoiseFamily = std::function<NoiseParams(double)>;

inline NoiseFamily family(PresetKind kind, double mu = 1.0) {
    return [kind, mu](double param) { return make_preset(kind, param, mu); };
}

/// Margin on ratio comparisons; N_opt = 1 gives a ratio of 1 up to rounding.
inline constexpr double ratio_margin = 1e-12;

inline bool evaluate_predicate(const NoiseParams& noise, ThresholdPredicate predicate,
                               const ThresholdOptions& opts = {}) {
    switch (predicate) {
    case ThresholdPredicate::n_opt_gt_1:
        return optimize_n(noise, KappaPolicy::optimal_per_n(), opts.n_max).n_opt > 1;
    case ThresholdPredicate::ratio_gt_1: {
        const OptimalSetting s = optimize_n(noise, KappaPolicy::optimal_per_n(), opts.n_max);
        return s.ratio_vs_separable > 1.0 + ratio_margin;
    }
    case ThresholdPredicate::inactive_beats_full:
    case ThresholdPredicate::inactive_beats_separable: {
        const long n = opts.probe_size;
        if (n < 2) {
            throw RangeError("inactive-qubit predicates need probe_size >= 2");
        }
        const QfiEvaluator eval(noise);
        const double reduced = eval.qfi(n, n - 1, eval.kappa_opt(n, n - 1)).value;
        const double rival = predicate == ThresholdPredicate::inactive_beats_full
                                 ? eval.qfi(n, n, eval.kappa_opt(n, n)).value
                                 : qfi_separable(noise, n - 1);
        return reduced > rival * (1.0 + ratio_margin);
    }
    }
    return false;
}

/**
 * Locates the point above which the predicate keeps the value it has at the
 * upper end of the bracket. Several of these predicates are sawtooth-shaped
 * in the noise parameter (N_opt jumps), so a coarse grid is scanned first
 * and the last change of value is then bisected to `tolerance`.
 */
inline double find_threshold(const NoiseFamily& noise_family, ThresholdPredicate predicate,
                             double lo, double hi, const ThresholdOptions& opts = {}) {
    if (!(lo < hi)) {
        throw BracketError("threshold bracket needs lo < hi");
    }
    auto pred = [&](double x) { return evaluate_predicate(noise_family(x), predicate, opts); };
    const bool settled = pred(hi);
    if (pred(lo) == settled) {
        std::ostringstream msg;
        msg << "predicate has the same value at both ends of [" << lo << ", " << hi << "]";
        throw BracketError(msg.str());
    }
    const int points = std::max(opts.scan_points, 2);
    double left = lo;
    double right = hi;
    for (int i = points - 1; i >= 1; --i) {
        const double x = lo + (hi - lo) * static_cast<double>(i) / points;
        if (pred(x) != settled) {
            left = x;
            break;
        }
        right = x;
    }
    while (right - left > opts.tolerance) {
        const double mid = 0.5 * (left + right);
        if (pred(mid) == settled) {
            right = mid;
        } else {
            left = mid;
        }
    }
    return 0.5 * (left + right);
}

} // namespace qfiopt
