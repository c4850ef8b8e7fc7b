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
 * Cross-check of the closed form against the dense oracle over seeded random
 * configurations.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <vector>

#include "qfiopt/closedform.hpp"
#include "qfiopt/detail/parallel.hpp"
#include "qfiopt/errors.hpp"
#include "qfiopt/oracle.hpp"
#include "qfiopt/random.hpp"

namespace qfiopt {

/// Acceptance bound on |oracle - closed form| / max(closed form, 1e-30).
inline constexpr double verify_tolerance = 1e-9;

struct VerifyOptions {
    long trials = 200;
    long n_max = 8;
    std::uint64_t seed = 42;
    bool inactive = false;
    oracle::DerivativeMode derivative = oracle::DerivativeMode::analytic();
    unsigned workers = 0; ///< 0 picks the hardware concurrency
};

struct TrialRecord {
    NoiseParams noise;
    ProbeConfig probe;
    oracle::Axis axis;
    double xi;
    double closed_form;
    double oracle_value;
    double rel_deviation;
    bool extended_precision;
};

struct VerificationReport {
    std::vector<TrialRecord> trials;
    double max_rel_deviation = 0.0;
    long worst_trial = -1;
    long extended_trials = 0;

    bool passed() const { return max_rel_deviation < verify_tolerance; }
};

inline double relative_deviation(double value, double reference) {
    return std::abs(value - reference) / std::max(reference, 1e-30);
}

inline VerificationReport run_verification(const VerifyOptions& opts) {
    if (opts.n_max < (opts.inactive ? 2 : 1) || opts.n_max > oracle::max_qubits) {
        std::ostringstream msg;
        msg << "verify n-max must lie in [" << (opts.inactive ? 2 : 1) << ", "
            << oracle::max_qubits << "], got " << opts.n_max;
        throw SizeError(msg.str());
    }
    if (opts.trials < 1) {
        throw RangeError("verify needs at least one trial");
    }
    // Draw every configuration first so results do not depend on scheduling.
    ConfigSampler sampler(opts.seed);
    VerificationReport report;
    report.trials.reserve(static_cast<std::size_t>(opts.trials));
    for (long t = 0; t < opts.trials; ++t) {
        const NoiseParams noise = sampler.noise();
        const ProbeConfig probe = sampler.probe(opts.n_max, opts.inactive);
        const oracle::Axis axis = sampler.axis();
        const double xi = sampler.uniform(0.0, 2.0 * std::numbers::pi);
        report.trials.push_back(TrialRecord{noise, probe, axis, xi, 0.0, 0.0, 0.0, false});
    }
    detail::parallel_for(
        report.trials.size(),
        [&](std::size_t i) {
            TrialRecord& rec = report.trials[i];
            rec.closed_form = qfi(rec.noise, rec.probe).value;
            const oracle::QfiOracleResult brute =
                oracle::qfi_bruteforce(rec.noise, rec.probe, rec.axis, rec.xi, opts.derivative);
            rec.oracle_value = brute.value;
            rec.rel_deviation = relative_deviation(brute.value, rec.closed_form);
            rec.extended_precision = brute.extended_precision;
        },
        opts.workers);
    for (std::size_t i = 0; i < report.trials.size(); ++i) {
        const TrialRecord& rec = report.trials[i];
        report.extended_trials += rec.extended_precision ? 1 : 0;
        if (report.worst_trial < 0 || rec.rel_deviation > report.max_rel_deviation) {
            report.max_rel_deviation = rec.rel_deviation;
            report.worst_trial = static_cast<long>(i);
        }
    }
    return report;
}

} // namespace qfiopt
