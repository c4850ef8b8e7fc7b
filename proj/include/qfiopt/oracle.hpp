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
 * Brute-force verification path. Builds the full 2^N x 2^N noisy state and
 * its phase derivative, diagonalises it, and evaluates
 *
 *   F = 2 sum_{j,k} |<l_j| d rho |l_k>|^2 / (l_j + l_k)
 *
 * over pairs with l_j + l_k above a small tolerance. Nothing here uses the
 * closed-form eigenstructure; only the single-qubit channel definition is
 * shared with the rest of the library.
 *
 * Every stage is templated on the complex scalar. The default pipeline runs
 * in double precision; its absolute error floor sits near 1e-30, so results
 * smaller than extended_threshold are recomputed with 128-bit floats.
 *
 * Qubit q of an N-qubit register is bit (N - 1 - q) of the basis index, so
 * qubit 0 is the leftmost tensor factor. The first n_active qubits are the
 * ones exposed to the rotation and the noise.
 */

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <sstream>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "qfiopt/axis.hpp"
#include "qfiopt/channel.hpp"
#include "qfiopt/closedform.hpp"
#include "qfiopt/detail/quad.hpp"
#include "qfiopt/errors.hpp"

namespace qfiopt::oracle {

/// Dense matrices above this size take too long to diagonalise.
inline constexpr int max_qubits = 12;

/// Eigenvalue pairs with l_j + l_k <= this are dropped from the sum.
inline constexpr double pair_tolerance = 1e-12;

/// Double-precision results below this are recomputed in 128-bit floats.
inline constexpr double extended_threshold = 1e-18;

namespace detail {

template <class C>
using MatX = Eigen::Matrix<C, Eigen::Dynamic, Eigen::Dynamic>;
template <class C>
using VecX = Eigen::Matrix<C, Eigen::Dynamic, 1>;
template <class C>
using Mat4 = Eigen::Matrix<C, 4, 4>;

} // namespace detail

struct StateVector {
    int n_qubits = 0;
    Eigen::VectorXcd amplitudes;
};

struct DensityMatrix {
    int n_qubits = 0;
    Eigen::MatrixXcd entries;

    Eigen::Index dim() const { return entries.rows(); }

    static DensityMatrix pure(const StateVector& psi) {
        return DensityMatrix{psi.n_qubits, psi.amplitudes * psi.amplitudes.adjoint()};
    }
};

struct QfiOracleResult {
    double value = 0.0;
    std::vector<double> spectrum;
    std::size_t excluded_pairs = 0;
    bool extended_precision = false;
};

/// Arithmetic used by qfi_bruteforce.
enum class Precision { adaptive, standard, extended };

namespace detail {

inline void check_size(long n_qubits) {
    if (n_qubits < 1 || n_qubits > max_qubits) {
        std::ostringstream msg;
        msg << "oracle supports 1.." << max_qubits << " qubits, got " << n_qubits;
        throw SizeError(msg.str());
    }
}

inline void check_active(int n_active, int n_qubits) {
    if (n_active < 0 || n_active > n_qubits) {
        throw RangeError("n_active must lie in [0, n_qubits]");
    }
}

inline Eigen::Index bit_of(int n_qubits, int qubit) {
    return Eigen::Index{1} << (n_qubits - 1 - qubit);
}

/// psi <- (1 (x) ... (x) gate_q (x) ... (x) 1) psi
template <class C>
void apply_single_qubit(VecX<C>& psi, int n_qubits, int qubit, const Mat2<C>& gate) {
    const Eigen::Index mask = bit_of(n_qubits, qubit);
    for (Eigen::Index i = 0; i < psi.size(); ++i) {
        if (i & mask) {
            continue;
        }
        const C a0 = psi(i);
        const C a1 = psi(i | mask);
        psi(i) = gate(0, 0) * a0 + gate(0, 1) * a1;
        psi(i | mask) = gate(1, 0) * a0 + gate(1, 1) * a1;
    }
}

template <class C>
VecX<C> primed_basis_state(int n_qubits, const Mat2<C>& v, Eigen::Index pattern) {
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    VecX<C> amp(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        C a(1);
        for (int q = 0; q < n_qubits; ++q) {
            const Eigen::Index mask = bit_of(n_qubits, q);
            a *= v((i & mask) ? 1 : 0, (pattern & mask) ? 1 : 0);
        }
        amp(i) = a;
    }
    return amp;
}

template <class C>
VecX<C> probe_state(int n_total, double kappa, const Mat2<C>& v) {
    using R = RealOf<C>;
    using std::sqrt;
    const Eigen::Index all_ones = (Eigen::Index{1} << n_total) - 1;
    const R w0 = sqrt(1 - R(kappa));
    const R w1 = sqrt(R(kappa));
    return C(w0) * primed_basis_state(n_total, v, 0) +
           C(w1) * primed_basis_state(n_total, v, all_ones);
}

template <class C>
Mat2<C> phase_unitary(double xi, const Mat2<C>& g) {
    using R = RealOf<C>;
    using std::cos;
    using std::sin;
    const R half = R(xi) / 2;
    return C(cos(half)) * Mat2<C>::Identity() - C(R(0), sin(half)) * g;
}

template <class C>
void apply_phase_unitary(VecX<C>& psi, int n_qubits, double xi, const Mat2<C>& g, int n_active) {
    const Mat2<C> u = phase_unitary(xi, g);
    for (int q = 0; q < n_active; ++q) {
        apply_single_qubit(psi, n_qubits, q, u);
    }
}

template <class C>
Mat4<C> channel_superoperator(const NoiseParams& noise, const Mat2<C>& v) {
    const ChannelCoeffs k = coeffs(noise);
    const Mat2<C> vh = v.adjoint();
    Mat4<C> s;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            Mat2<C> unit = Mat2<C>::Zero();
            unit(a, b) = C(1);
            const Mat2<C> primed = vh * unit * v;
            const Mat2<C> out = v * apply_primed<C>(k, primed) * vh;
            s(0, 2 * a + b) = out(0, 0);
            s(1, 2 * a + b) = out(0, 1);
            s(2, 2 * a + b) = out(1, 0);
            s(3, 2 * a + b) = out(1, 1);
        }
    }
    return s;
}

template <class C>
void apply_channel(MatX<C>& m, int n_qubits, const Mat4<C>& s, int n_active) {
    const Eigen::Index dim = m.rows();
    Eigen::Matrix<C, 4, 1> x;
    for (int q = 0; q < n_active; ++q) {
        const Eigen::Index mask = bit_of(n_qubits, q);
        for (Eigen::Index r = 0; r < dim; ++r) {
            if (r & mask) {
                continue;
            }
            for (Eigen::Index c = 0; c < dim; ++c) {
                if (c & mask) {
                    continue;
                }
                x(0) = m(r, c);
                x(1) = m(r, c | mask);
                x(2) = m(r | mask, c);
                x(3) = m(r | mask, c | mask);
                const Eigen::Matrix<C, 4, 1> y = s * x;
                m(r, c) = y(0);
                m(r, c | mask) = y(1);
                m(r | mask, c) = y(2);
                m(r | mask, c | mask) = y(3);
            }
        }
    }
}

template <class C>
QfiOracleResult qfi_eq1(const MatX<C>& rho, const MatX<C>& drho) {
    using R = RealOf<C>;
    Eigen::SelfAdjointEigenSolver<MatX<C>> solver(rho);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("eigendecomposition of rho did not converge");
    }
    const auto& lambda = solver.eigenvalues();
    const MatX<C>& vecs = solver.eigenvectors();
    const MatX<C> projected = vecs.adjoint() * drho * vecs;

    QfiOracleResult out;
    out.spectrum.reserve(static_cast<std::size_t>(lambda.size()));
    for (Eigen::Index j = 0; j < lambda.size(); ++j) {
        out.spectrum.push_back(static_cast<double>(lambda(j)));
    }
    const R tol(pair_tolerance);
    R sum(0);
    for (Eigen::Index j = 0; j < lambda.size(); ++j) {
        for (Eigen::Index k = 0; k < lambda.size(); ++k) {
            const R denom = lambda(j) + lambda(k);
            if (denom <= tol) {
                ++out.excluded_pairs;
                continue;
            }
            const C& p = projected(j, k);
            sum += (p.real() * p.real() + p.imag() * p.imag()) / denom;
        }
    }
    out.value = static_cast<double>(2 * sum);
    return out;
}

/// Everything the pipeline needs, rendered in scalar type C.
template <class C>
struct Setup {
    int n = 0;
    int n1 = 0;
    double kappa = 0.0;
    Mat2<C> v;
    Mat2<C> g;
    Mat4<C> s;

    Setup(const NoiseParams& noise, const ProbeConfig& probe, const Axis& axis)
        : n(static_cast<int>(probe.n_total)), n1(static_cast<int>(probe.n_active)),
          kappa(probe.kappa), v(axis_basis<C>(axis.theta_n, axis.phi_n)),
          g(axis_generator<C>(axis.theta_n, axis.phi_n)), s(channel_superoperator(noise, v)) {}

    VecX<C> rotated_probe(double xi) const {
        VecX<C> psi = probe_state(n, kappa, v);
        apply_phase_unitary(psi, n, xi, g, n1);
        return psi;
    }

    MatX<C> noisy_state(double xi) const {
        const VecX<C> psi = rotated_probe(xi);
        MatX<C> rho = psi * psi.adjoint();
        apply_channel(rho, n, s, n1);
        return rho;
    }

    /// d psi = -(i/2) G psi with G the sum of n.sigma over active qubits;
    /// d(|psi><psi|) then goes through the linear channel.
    MatX<C> analytic_derivative(double xi) const {
        using R = RealOf<C>;
        const VecX<C> psi = rotated_probe(xi);
        VecX<C> g_psi = VecX<C>::Zero(psi.size());
        for (int q = 0; q < n1; ++q) {
            VecX<C> term = psi;
            apply_single_qubit(term, n, q, g);
            g_psi += term;
        }
        const VecX<C> d_psi = C(R(0), R(-0.5)) * g_psi;
        MatX<C> d_rho = d_psi * psi.adjoint() + psi * d_psi.adjoint();
        apply_channel(d_rho, n, s, n1);
        return d_rho;
    }

    MatX<C> central_difference(double xi, double h) const {
        using R = RealOf<C>;
        return (noisy_state(xi + h) - noisy_state(xi - h)) / C(2 * R(h));
    }
};

template <class C>
Eigen::MatrixXcd to_double(const MatX<C>& m) {
    Eigen::MatrixXcd out(m.rows(), m.cols());
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        for (Eigen::Index r = 0; r < m.rows(); ++r) {
            out(r, c) = Complex(static_cast<double>(m(r, c).real()),
                                static_cast<double>(m(r, c).imag()));
        }
    }
    return out;
}

} // namespace detail

/// Tensor product of |0'> / |1'> selected by the bits of `pattern`
/// (qubit 0 is the most significant bit).
inline StateVector primed_basis_state(int n_qubits, const Axis& axis, Eigen::Index pattern) {
    detail::check_size(n_qubits);
    return StateVector{n_qubits, detail::primed_basis_state(n_qubits, axis.basis(), pattern)};
}

/// sqrt(1-kappa) |0'>^N + sqrt(kappa) |1'>^N
inline StateVector probe_state(int n_total, double kappa, const Axis& axis) {
    detail::check_size(n_total);
    if (!(kappa >= 0.0 && kappa <= 1.0)) {
        throw RangeError("kappa must lie in [0, 1]");
    }
    return StateVector{n_total, detail::probe_state(n_total, kappa, axis.basis())};
}

/// exp(-i xi/2 n.sigma) on each of the first n_active qubits.
inline StateVector apply_phase_unitary(StateVector state, double xi, const Axis& axis,
                                       int n_active) {
    detail::check_active(n_active, state.n_qubits);
    detail::apply_phase_unitary(state.amplitudes, state.n_qubits, xi, axis.generator(), n_active);
    return state;
}

/**
 * Single-qubit channel as a 4x4 matrix acting on (x00, x01, x10, x11) in the
 * computational basis. Column (2a + b) is the image of |a><b|, obtained by
 * rotating |a><b| into the primed basis, applying the primed-basis action
 * and rotating back.
 */
inline Eigen::Matrix4cd channel_superoperator(const NoiseParams& noise, const Axis& axis) {
    return detail::channel_superoperator(noise, axis.basis());
}

/// N^{(x) n_active} (x) I^{(x) rest}, applied qubit by qubit.
/// Also valid on non-Hermitian operators such as d rho.
inline DensityMatrix apply_channel(DensityMatrix rho, const NoiseParams& noise, const Axis& axis,
                                   int n_active) {
    detail::check_active(n_active, rho.n_qubits);
    detail::apply_channel(rho.entries, rho.n_qubits, channel_superoperator(noise, axis),
                          n_active);
    return rho;
}

/// QFI of rho for the derivative drho, via full Hermitian eigendecomposition.
inline QfiOracleResult qfi_eq1(const DensityMatrix& rho, const Eigen::MatrixXcd& drho) {
    return detail::qfi_eq1<Complex>(rho.entries, drho);
}

struct DerivativeMode {
    enum class Kind { analytic, finite_difference };
    Kind kind = Kind::analytic;
    double step = 1e-6;

    static DerivativeMode analytic() { return {}; }
    static DerivativeMode finite_difference(double h = 1e-6) {
        return {Kind::finite_difference, h};
    }
};

/// Noisy probe state rho_xi for the given configuration.
inline DensityMatrix noisy_state(const NoiseParams& noise, const ProbeConfig& probe,
                                 const Axis& axis, double xi) {
    detail::check_size(probe.n_total);
    const ProbeConfig p = make_probe(probe.n_total, probe.n_active, probe.kappa);
    const detail::Setup<Complex> setup(noise, p, axis);
    return DensityMatrix{setup.n, setup.noisy_state(xi)};
}

/**
 * d rho_xi / d xi. The analytic mode differentiates the pure state through
 * its generator and pushes d(|psi><psi|) through the channel. The
 * finite-difference mode uses a central difference of two full pipelines.
 */
inline Eigen::MatrixXcd noisy_state_derivative(const NoiseParams& noise, const ProbeConfig& probe,
                                               const Axis& axis, double xi,
                                               DerivativeMode mode) {
    detail::check_size(probe.n_total);
    const ProbeConfig p = make_probe(probe.n_total, probe.n_active, probe.kappa);
    const detail::Setup<Complex> setup(noise, p, axis);
    if (mode.kind == DerivativeMode::Kind::finite_difference) {
        return setup.central_difference(xi, mode.step);
    }
    return setup.analytic_derivative(xi);
}

namespace detail {

template <class C>
QfiOracleResult bruteforce(const NoiseParams& noise, const ProbeConfig& probe, const Axis& axis,
                           double xi, DerivativeMode mode) {
    const Setup<C> setup(noise, probe, axis);
    const MatX<C> rho = setup.noisy_state(xi);
    const MatX<C> drho = mode.kind == DerivativeMode::Kind::finite_difference
                             ? setup.central_difference(xi, mode.step)
                             : setup.analytic_derivative(xi);
    return qfi_eq1<C>(rho, drho);
}

} // namespace detail

/**
 * Full pipeline: probe, rotation, channel, derivative, QFI. In adaptive
 * mode a double-precision result below extended_threshold is recomputed in
 * 128-bit arithmetic (slow: ~20 s for 8 qubits).
 */
inline QfiOracleResult qfi_bruteforce(const NoiseParams& noise, const ProbeConfig& probe,
                                      const Axis& axis, double xi,
                                      DerivativeMode mode = DerivativeMode::analytic(),
                                      Precision precision = Precision::adaptive) {
    detail::check_size(probe.n_total);
    const ProbeConfig p = make_probe(probe.n_total, probe.n_active, probe.kappa);
    if (precision != Precision::extended) {
        QfiOracleResult out = detail::bruteforce<Complex>(noise, p, axis, xi, mode);
        if (precision == Precision::standard || out.value >= extended_threshold) {
            return out;
        }
    }
    QfiOracleResult out = detail::bruteforce<qfiopt::detail::quad_complex>(noise, p, axis, xi, mode);
    out.extended_precision = true;
    return out;
}

// ---------------------------------------------------------------------------
// Single-qubit Bloch helpers

inline Eigen::Matrix2cd density_from_bloch(const Eigen::Vector3d& r) {
    Eigen::Matrix2cd rho;
    rho << Complex(1.0 + r.z(), 0.0), Complex(r.x(), -r.y()), //
        Complex(r.x(), r.y()), Complex(1.0 - r.z(), 0.0);
    return 0.5 * rho;
}

inline Eigen::Vector3d bloch_vector(const Eigen::Matrix2cd& rho) {
    return {2.0 * rho(1, 0).real(), 2.0 * rho(1, 0).imag(), (rho(0, 0) - rho(1, 1)).real()};
}

/// Orthonormal frame {n_perp, n x n_perp, n} in which bloch_affine() is expressed;
/// n_perp is the Bloch vector of (|0'> + |1'>) / sqrt(2).
inline Eigen::Matrix3d adapted_frame(const Axis& axis) {
    const Eigen::Vector2cd plus = (axis.ket0() + axis.ket1()) / std::sqrt(2.0);
    const Eigen::Vector3d n_perp = bloch_vector(plus * plus.adjoint());
    const Eigen::Vector3d n = axis.unit();
    Eigen::Matrix3d frame;
    frame.col(0) = n_perp;
    frame.col(1) = n.cross(n_perp);
    frame.col(2) = n;
    return frame;
}

} // namespace qfiopt::oracle
