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
 * Phase-covariant single-qubit noise: a channel commuting with rotations
 * about a fixed axis n, parameterised by (mu, mu1, mu2, omega_t).
 *
 * In the operator basis {I, s'_x, s'_y, s'_z} adapted to the axis:
 *
 *   N(I)               = I + mu0 s'_z,          mu0 = mu (1 - mu1)
 *   N(s'_z)            = mu1 s'_z
 *   N(s'_x +- i s'_y)  = mu2 e^{-+ i omega_t} (s'_x +- i s'_y)
 *
 * Equivalently, on the primed projectors and coherences,
 *
 *   N(|0'><0'|) = (1+a0)/2 |0'><0'| + (1-a0)/2 |1'><1'|
 *   N(|1'><1'|) = (1-a1)/2 |0'><0'| + (1+a1)/2 |1'><1'|
 *   N(|0'><1'|) = a2 |0'><1'|,   N(|1'><0'|) = conj(a2) |1'><0'|
 *
 * with a0 = mu1 + mu0, a1 = mu1 - mu0, a2 = mu2 e^{-i omega_t}.
 */

#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "qfiopt/errors.hpp"

namespace qfiopt {

using Complex = std::complex<double>;

/// Slack on mu2^2 <= mu1 so boundary presets (amplitude damping) pass.
inline constexpr double cp_slack = 1e-12;

/// Immutable noise description. mu0 is always derived from mu and mu1.
class NoiseParams {
  public:
    /// Validates the box ranges only; complete positivity is not checked.
    static NoiseParams from_box(double mu, double mu1, double mu2, double omega_t) {
        auto check = [](bool ok, const char* what, double v) {
            if (!ok) {
                std::ostringstream msg;
                msg << what << " out of range: " << v;
                throw RangeError(msg.str());
            }
        };
        check(std::isfinite(mu) && mu >= -1.0 && mu <= 1.0, "mu must lie in [-1, 1];", mu);
        check(std::isfinite(mu1) && mu1 >= 0.0 && mu1 <= 1.0, "mu1 must lie in [0, 1];", mu1);
        check(std::isfinite(mu2) && mu2 >= 0.0 && mu2 <= 1.0, "mu2 must lie in [0, 1];", mu2);
        check(std::isfinite(omega_t), "omega_t must be finite;", omega_t);
        return NoiseParams(mu, mu1, mu2, omega_t);
    }

    double mu() const { return mu_; }
    double mu1() const { return mu1_; }
    double mu2() const { return mu2_; }
    double omega_t() const { return omega_t_; }
    double mu0() const { return mu_ * (1.0 - mu1_); }

    bool is_unital() const { return mu0() == 0.0; }

    friend bool operator==(const NoiseParams&, const NoiseParams&) = default;

  private:
    NoiseParams(double mu, double mu1, double mu2, double omega_t)
        : mu_(mu), mu1_(mu1), mu2_(mu2), omega_t_(omega_t) {}

    double mu_;
    double mu1_;
    double mu2_;
    double omega_t_;
};

/// Validated constructor: box ranges plus mu2^2 <= mu1 (+ cp_slack).
inline NoiseParams make_noise(double mu, double mu1, double mu2, double omega_t = 0.0) {
    NoiseParams p = NoiseParams::from_box(mu, mu1, mu2, omega_t);
    if (mu2 * mu2 > mu1 + cp_slack) {
        std::ostringstream msg;
        msg << "complete positivity requires mu2^2 <= mu1, got mu2^2 = " << mu2 * mu2
            << " > mu1 = " << mu1;
        throw CpError(msg.str());
    }
    return p;
}

// ---------------------------------------------------------------------------
// Presets

enum class PresetKind { noiseless, depolarizing, phase_flip, amplitude_damping, gad, custom };

inline std::string_view preset_name(PresetKind kind) {
    switch (kind) {
    case PresetKind::noiseless: return "noiseless";
    case PresetKind::depolarizing: return "depolarizing";
    case PresetKind::phase_flip: return "phase-flip";
    case PresetKind::amplitude_damping: return "amplitude-damping";
    case PresetKind::gad: return "gad";
    case PresetKind::custom: return "custom";
    }
    return "unknown";
}

inline std::optional<PresetKind> parse_preset(std::string_view name) {
    for (auto kind : {PresetKind::noiseless, PresetKind::depolarizing, PresetKind::phase_flip,
                      PresetKind::amplitude_damping, PresetKind::gad, PresetKind::custom}) {
        if (preset_name(kind) == name) {
            return kind;
        }
    }
    return std::nullopt;
}

namespace presets {

inline NoiseParams noiseless() { return make_noise(0.0, 1.0, 1.0, 0.0); }

/// Isotropic contraction: a0 = a1 = a2 = alpha.
inline NoiseParams depolarizing(double alpha) { return make_noise(0.0, alpha, alpha, 0.0); }

inline NoiseParams phase_flip(double mu2) { return make_noise(0.0, 1.0, mu2, 0.0); }

/// Relaxation towards |0'>; saturates mu2^2 = mu1.
inline NoiseParams amplitude_damping(double mu1) {
    return make_noise(1.0, mu1, std::sqrt(mu1), 0.0);
}

/// Thermal-bath damping with equilibrium bias mu.
inline NoiseParams generalized_amplitude_damping(double mu1, double mu) {
    return make_noise(mu, mu1, std::sqrt(mu1), 0.0);
}

} // namespace presets

/**
 * Builds a single-parameter preset. `param` is alpha, mu2 or mu1 depending
 * on the family; `mu` is only read by `gad`. `custom` cannot be built here
 * since it needs all four parameters.
 */
inline NoiseParams make_preset(PresetKind kind, double param, double mu = 1.0) {
    if (kind != PresetKind::noiseless && kind != PresetKind::custom &&
        !(param >= 0.0 && param <= 1.0)) {
        std::ostringstream msg;
        msg << preset_name(kind) << " parameter must lie in [0, 1], got " << param;
        throw RangeError(msg.str());
    }
    switch (kind) {
    case PresetKind::noiseless: return presets::noiseless();
    case PresetKind::depolarizing: return presets::depolarizing(param);
    case PresetKind::phase_flip: return presets::phase_flip(param);
    case PresetKind::amplitude_damping: return presets::amplitude_damping(param);
    case PresetKind::gad: return presets::generalized_amplitude_damping(param, mu);
    case PresetKind::custom: break;
    }
    throw RangeError("custom noise needs explicit mu, mu1, mu2, omega_t");
}

// ---------------------------------------------------------------------------
// Derived representations

struct ChannelCoeffs {
    double alpha0;
    double alpha1;
    Complex alpha2;
};

inline ChannelCoeffs coeffs(const NoiseParams& noise) {
    const double mu0 = noise.mu0();
    return ChannelCoeffs{
        .alpha0 = noise.mu1() + mu0,
        .alpha1 = noise.mu1() - mu0,
        .alpha2 = std::polar(noise.mu2(), -noise.omega_t()),
    };
}

/// Bloch-vector map r -> A r + c in the axis-adapted frame {n_perp, n x n_perp, n}.
struct BlochAffine {
    Eigen::Matrix3d matrix_a;
    Eigen::Vector3d vector_c;
};

inline BlochAffine bloch_affine(const NoiseParams& noise) {
    const double c = noise.mu2() * std::cos(noise.omega_t());
    const double s = noise.mu2() * std::sin(noise.omega_t());
    BlochAffine out;
    out.matrix_a << c, -s, 0.0, //
        s, c, 0.0,              //
        0.0, 0.0, noise.mu1();
    out.vector_c << 0.0, 0.0, noise.mu0();
    return out;
}

/**
 * Applies the channel to a 2x2 operator written in the primed basis
 * {|0'>, |1'>}. This is the single source of truth for the channel action;
 * the dense oracle conjugates it into the computational basis.
 */
template <class Scalar>
Eigen::Matrix<Scalar, 2, 2> apply_primed(const ChannelCoeffs& k,
                                         const Eigen::Matrix<Scalar, 2, 2>& x) {
    using Real = typename Eigen::NumTraits<Scalar>::Real;
    using std::conj;
    const Real half(0.5);
    const Real a0(k.alpha0);
    const Real a1(k.alpha1);
    const Scalar a2(Real(k.alpha2.real()), Real(k.alpha2.imag()));
    Eigen::Matrix<Scalar, 2, 2> y;
    y(0, 0) = half * (1 + a0) * x(0, 0) + half * (1 - a1) * x(1, 1);
    y(1, 1) = half * (1 - a0) * x(0, 0) + half * (1 + a1) * x(1, 1);
    y(0, 1) = a2 * x(0, 1);
    y(1, 0) = conj(a2) * x(1, 0);
    return y;
}

inline Eigen::Matrix2cd apply_primed(const ChannelCoeffs& k, const Eigen::Matrix2cd& x) {
    return apply_primed<Complex>(k, x);
}

struct ChoiReport {
    double min_eigenvalue;
    bool is_cp;
};

/**
 * Diagnostic CP check through the Choi matrix sum_ij |i><j| (x) N(|i><j|),
 * built in the primed basis (the spectrum is basis independent). Works on
 * NoiseParams::from_box values, which may violate mu2^2 <= mu1.
 */
inline ChoiReport validate_choi(const NoiseParams& noise) {
    const ChannelCoeffs k = coeffs(noise);
    Eigen::Matrix4cd choi = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            Eigen::Matrix2cd unit = Eigen::Matrix2cd::Zero();
            unit(i, j) = 1.0;
            choi.block<2, 2>(2 * i, 2 * j) = apply_primed(k, unit);
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(choi, Eigen::EigenvaluesOnly);
    const double min_eig = solver.eigenvalues().minCoeff();
    return ChoiReport{.min_eigenvalue = min_eig, .is_cp = min_eig >= -1e-10};
}

} // namespace qfiopt
