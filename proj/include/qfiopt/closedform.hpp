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
 * Closed-form quantum Fisher information of the probe
 * sqrt(1-kappa)|0'>^N + sqrt(kappa)|1'>^N when N1 of its N qubits undergo
 * the phase rotation and the noise:
 *
 *   F = 4 (1-kappa) kappa N1^2 mu2^(2 N1) / ((1-kappa) beta0 + kappa beta1)
 *
 *   beta0 = ((1+a0)/2)^N1 + ((1-a0)/2)^N1 [N == N1]
 *   beta1 = ((1+a1)/2)^N1 + ((1-a1)/2)^N1 [N == N1]
 *
 * Everything is evaluated in the log domain.
 */

#pragma once

#include <cmath>
#include <numbers>
#include <sstream>

#include "qfiopt/channel.hpp"
#include "qfiopt/errors.hpp"
#include "qfiopt/logdomain.hpp"

namespace qfiopt {

struct ProbeConfig {
    long n_total = 1;
    long n_active = 1;
    double kappa = 0.5;
};

/// Validated probe: 1 <= n_active <= n_total, kappa in [0, 1].
inline ProbeConfig make_probe(long n_total, long n_active, double kappa) {
    if (n_active < 1 || n_active > n_total) {
        std::ostringstream msg;
        msg << "probe needs 1 <= n_active <= n_total, got n_active = " << n_active
            << ", n_total = " << n_total;
        throw RangeError(msg.str());
    }
    if (!(kappa >= 0.0 && kappa <= 1.0)) {
        std::ostringstream msg;
        msg << "kappa must lie in [0, 1], got " << kappa;
        throw RangeError(msg.str());
    }
    return ProbeConfig{n_total, n_active, kappa};
}

/// All qubits active.
inline ProbeConfig make_probe(long n, double kappa) { return make_probe(n, n, kappa); }

struct BetaPair {
    double beta0;
    double beta1;
    double log_beta0;
    double log_beta1;
};

struct QfiResult {
    double value;     ///< F_q, may underflow to 0 for huge probes
    double log_value; ///< ln F_q, -inf only when F_q vanishes identically
    BetaPair betas;
};

/**
 * Closed-form evaluator bound to one noise configuration. The per-qubit
 * logarithms are computed once so that scans over the probe size cost a
 * handful of transcendental calls per point.
 */
class QfiEvaluator {
  public:
    explicit QfiEvaluator(const NoiseParams& noise)
        : noise_(noise), log_mu2_(logdomain::safe_log(noise.mu2())) {
        const ChannelCoeffs k = coeffs(noise);
        log_plus0_ = logdomain::log_half_one_plus(k.alpha0);
        log_minus0_ = logdomain::log_half_one_minus(k.alpha0);
        log_plus1_ = logdomain::log_half_one_plus(k.alpha1);
        log_minus1_ = logdomain::log_half_one_minus(k.alpha1);
    }

    const NoiseParams& noise() const { return noise_; }

    BetaPair betas(long n_total, long n_active) const {
        using namespace logdomain;
        const double n1 = static_cast<double>(n_active);
        const bool all_active = n_total == n_active;
        const double lb0 =
            all_active ? log_add_exp(scaled_log(n1, log_plus0_), scaled_log(n1, log_minus0_))
                       : scaled_log(n1, log_plus0_);
        const double lb1 =
            all_active ? log_add_exp(scaled_log(n1, log_plus1_), scaled_log(n1, log_minus1_))
                       : scaled_log(n1, log_plus1_);
        return BetaPair{exp_or_zero(lb0), exp_or_zero(lb1), lb0, lb1};
    }

    QfiResult qfi(long n_total, long n_active, double kappa) const {
        return qfi_from_betas(betas(n_total, n_active), n_active, kappa);
    }

    /// F for precomputed betas of the same (n_total, n_active).
    QfiResult qfi_from_betas(const BetaPair& b, long n_active, double kappa) const {
        using namespace logdomain;
        const double log_kappa = safe_log(kappa);
        const double log_one_minus_kappa = kappa < 1.0 ? std::log1p(-kappa) : neg_inf;
        const double n1 = static_cast<double>(n_active);
        const double log_num = std::log(4.0) + log_one_minus_kappa + log_kappa +
                               2.0 * std::log(n1) + scaled_log(2.0 * n1, log_mu2_);
        // Numerator first: a vanishing numerator wins over any denominator.
        if (log_num == neg_inf) {
            return QfiResult{0.0, neg_inf, b};
        }
        const double log_den =
            log_add_exp(log_one_minus_kappa + b.log_beta0, log_kappa + b.log_beta1);
        const double log_value = log_num - log_den;
        return QfiResult{exp_or_zero(log_value), log_value, b};
    }

    /// Maximiser of F over kappa at fixed sizes: 1 / (1 + sqrt(beta1 / beta0)).
    double kappa_opt(long n_total, long n_active) const {
        return kappa_opt_from_betas(betas(n_total, n_active));
    }

    static double kappa_opt_from_betas(const BetaPair& b) {
        if (b.log_beta0 == logdomain::neg_inf && b.log_beta1 == logdomain::neg_inf) {
            throw DomainError("kappa_opt undefined when beta0 = beta1 = 0");
        }
        if (b.log_beta1 == logdomain::neg_inf) {
            return 1.0;
        }
        return 1.0 / (1.0 + std::exp(0.5 * (b.log_beta1 - b.log_beta0)));
    }

  private:
    NoiseParams noise_;
    double log_mu2_;
    double log_plus0_ = 0.0;
    double log_minus0_ = 0.0;
    double log_plus1_ = 0.0;
    double log_minus1_ = 0.0;
};

inline BetaPair betas(const NoiseParams& noise, const ProbeConfig& probe) {
    return QfiEvaluator(noise).betas(probe.n_total, probe.n_active);
}

inline QfiResult qfi(const NoiseParams& noise, const ProbeConfig& probe) {
    const ProbeConfig p = make_probe(probe.n_total, probe.n_active, probe.kappa);
    return QfiEvaluator(noise).qfi(p.n_total, p.n_active, p.kappa);
}

/// Optimal separable probe |+'>^N: N mu2^2.
inline double qfi_separable(const NoiseParams& noise, long n) {
    if (n < 1) {
        throw RangeError("separable baseline needs n >= 1");
    }
    return static_cast<double>(n) * noise.mu2() * noise.mu2();
}

/**
 * Large-N form of F keeping only the leading term of the denominator.
 * For mu0 > 0 that term is (1-kappa)((1+a0)/2)^N, giving
 * 4 kappa N^2 (2 mu2^2 / (1 + mu1 + mu0))^N; for unital noise beta0 = beta1
 * and the prefactor stays 4 (1-kappa) kappa. Only the mu0 >= 0 branch is
 * provided: for mu0 < 0 map mu -> -mu and kappa -> 1 - kappa first.
 */
inline double qfi_asymptotic(const NoiseParams& noise, double kappa, long n) {
    if (noise.mu0() < 0.0) {
        throw DomainError("qfi_asymptotic needs mu0 >= 0; apply mu -> -mu, kappa -> 1-kappa");
    }
    if (n < 1 || !(kappa >= 0.0 && kappa <= 1.0)) {
        throw RangeError("qfi_asymptotic needs n >= 1 and kappa in [0, 1]");
    }
    using namespace logdomain;
    const double nd = static_cast<double>(n);
    double log_prefactor = std::log(4.0) + safe_log(kappa);
    if (noise.is_unital()) {
        log_prefactor += kappa < 1.0 ? std::log1p(-kappa) : neg_inf;
    }
    const double log_ratio = std::log(2.0) + 2.0 * safe_log(noise.mu2()) -
                             std::log(1.0 + noise.mu1() + noise.mu0());
    return exp_or_zero(log_prefactor + 2.0 * std::log(nd) + scaled_log(nd, log_ratio));
}

/// Real-valued maximiser of the asymptotic form: 2 / ln((1+mu1+mu0) / (2 mu2^2)).
/// Meaningful when the optimum is large.
inline double n_opt_analytic(const NoiseParams& noise) {
    if (noise.mu0() < 0.0) {
        throw DomainError("n_opt_analytic needs mu0 >= 0");
    }
    const double top = 1.0 + noise.mu1() + noise.mu0();
    const double bottom = 2.0 * noise.mu2() * noise.mu2();
    if (bottom >= top) {
        throw DomainError("no finite optimal size: 2 mu2^2 >= 1 + mu1 + mu0");
    }
    return 2.0 / (std::log(top) - logdomain::safe_log(bottom));
}

inline double kappa_opt(const NoiseParams& noise, long n_total, long n_active) {
    make_probe(n_total, n_active, 0.5);
    return QfiEvaluator(noise).kappa_opt(n_total, n_active);
}

/// Frequency estimation over an interaction time T: F(nu) = T^2 F(xi).
inline double qfi_frequency(const NoiseParams& noise, const ProbeConfig& probe,
                            double interaction_time) {
    if (!(interaction_time > 0.0) || !std::isfinite(interaction_time)) {
        throw RangeError("interaction time must be positive");
    }
    return interaction_time * interaction_time * qfi(noise, probe).value;
}

} // namespace qfiopt
