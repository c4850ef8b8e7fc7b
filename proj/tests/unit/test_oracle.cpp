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


#include <cmath>
#include <complex>
#include <numbers>

#include "catch_amalgamated.hpp"

#include "qfiopt/closedform.hpp"
#include "qfiopt/oracle.hpp"
#include "qfiopt/random.hpp"
#include "qfiopt/verify.hpp"

using namespace qfiopt;
using namespace qfiopt::oracle;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

constexpr double pi = std::numbers::pi;

/// exp(-i xi/2 n.sigma) from the closed rotation formula.
Eigen::Matrix2cd rotation(const Axis& axis, double xi) {
    return std::cos(xi / 2) * Eigen::Matrix2cd::Identity() -
           Complex(0, 1) * std::sin(xi / 2) * axis.generator();
}

Eigen::Matrix2cd random_qubit_state(ConfigSampler& s) {
    Eigen::Vector3d r(s.uniform(-1, 1), s.uniform(-1, 1), s.uniform(-1, 1));
    if (r.norm() > 1.0) {
        r /= r.norm() * 1.0001;
    }
    return density_from_bloch(r);
}

} // namespace

TEST_CASE("probe state on the z axis", "[oracle]") {
    const Axis z{0.0, 0.0};
    const StateVector psi = probe_state(3, 0.5, z);
    REQUIRE(psi.amplitudes.size() == 8);
    CHECK_THAT(std::abs(psi.amplitudes(0)), WithinAbs(std::sqrt(0.5), 1e-15));
    CHECK_THAT(std::abs(psi.amplitudes(7)), WithinAbs(std::sqrt(0.5), 1e-15));
    for (int i = 1; i < 7; ++i) {
        CHECK(std::abs(psi.amplitudes(i)) < 1e-15);
    }
    const StateVector all_zero = probe_state(2, 0.0, z);
    CHECK_THAT(std::abs(all_zero.amplitudes(0)), WithinAbs(1.0, 1e-15));
    CHECK_THROWS_AS(probe_state(2, 1.5, z), RangeError);
    CHECK_THROWS_AS(probe_state(13, 0.5, z), SizeError);
}

TEST_CASE("probe state is a primed GHZ superposition on any axis", "[oracle]") {
    ConfigSampler s(5);
    for (int t = 0; t < 20; ++t) {
        const Axis axis = s.axis();
        const double kappa = s.uniform();
        const int n = static_cast<int>(s.integer(1, 6));
        const StateVector psi = probe_state(n, kappa, axis);
        CHECK_THAT(psi.amplitudes.norm(), WithinAbs(1.0, 1e-13));
        const Eigen::Index all_ones = (Eigen::Index{1} << n) - 1;
        const Complex c0 = primed_basis_state(n, axis, 0).amplitudes.dot(psi.amplitudes);
        const Complex c1 = primed_basis_state(n, axis, all_ones).amplitudes.dot(psi.amplitudes);
        CHECK_THAT(std::norm(c0), WithinAbs(1.0 - kappa, 1e-13));
        CHECK_THAT(std::norm(c1), WithinAbs(kappa, 1e-13));
    }
}

TEST_CASE("primed kets carry Bloch vectors +n and -n", "[oracle]") {
    ConfigSampler s(6);
    for (int t = 0; t < 20; ++t) {
        const Axis axis = s.axis();
        const Eigen::Vector3d n = axis.unit();
        const Eigen::Vector2cd k0 = axis.ket0();
        const Eigen::Vector2cd k1 = axis.ket1();
        CHECK((bloch_vector(k0 * k0.adjoint()) - n).norm() < 1e-14);
        CHECK((bloch_vector(k1 * k1.adjoint()) + n).norm() < 1e-14);
    }
}

TEST_CASE("phase rotation", "[oracle]") {
    ConfigSampler s(7);
    const Axis axis = s.axis();
    const StateVector psi = probe_state(3, 0.3, axis);
    SECTION("full turn flips the sign per active qubit") {
        for (int active = 0; active <= 3; ++active) {
            const StateVector out = apply_phase_unitary(psi, 2 * pi, axis, active);
            const double sign = active % 2 == 0 ? 1.0 : -1.0;
            CHECK((out.amplitudes - sign * psi.amplitudes).norm() < 1e-13);
        }
    }
    SECTION("primed kets pick up opposite phases") {
        const double xi = 0.73;
        const StateVector out = apply_phase_unitary(psi, xi, axis, 3);
        const Complex c0 = primed_basis_state(3, axis, 0).amplitudes.dot(out.amplitudes);
        const Complex c1 = primed_basis_state(3, axis, 7).amplitudes.dot(out.amplitudes);
        CHECK_THAT(std::arg(c1 / c0), WithinAbs(3 * xi, 1e-13));
    }
    SECTION("matches the single-qubit rotation matrix") {
        const StateVector one = probe_state(1, 0.3, axis);
        const StateVector out = apply_phase_unitary(one, 1.1, axis, 1);
        CHECK((out.amplitudes - rotation(axis, 1.1) * one.amplitudes).norm() < 1e-14);
    }
    CHECK_THROWS_AS(apply_phase_unitary(psi, 0.1, axis, 4), RangeError);
}

TEST_CASE("channel examples", "[oracle][channel]") {
    const Axis z{0.0, 0.0};
    SECTION("noiseless is the identity") {
        CHECK((channel_superoperator(presets::noiseless(), z) - Eigen::Matrix4cd::Identity())
                  .norm() < 1e-15);
    }
    SECTION("full amplitude damping towards |0'>") {
        ConfigSampler s(8);
        const Axis axis = s.axis();
        DensityMatrix rho{1, random_qubit_state(s)};
        const DensityMatrix out = apply_channel(rho, presets::amplitude_damping(0.0), axis, 1);
        const Eigen::Vector2cd k0 = axis.ket0();
        CHECK((out.entries - k0 * k0.adjoint()).norm() < 1e-14);
    }
    SECTION("completely depolarizing") {
        DensityMatrix rho{1, density_from_bloch({0.3, -0.2, 0.5})};
        const DensityMatrix out = apply_channel(rho, presets::depolarizing(0.0), z, 1);
        CHECK((out.entries - 0.5 * Eigen::Matrix2cd::Identity()).norm() < 1e-15);
    }
}

TEST_CASE("channel agrees with the Bloch affine map", "[oracle][channel][property]") {
    ConfigSampler s(9);
    for (int t = 0; t < 100; ++t) {
        const NoiseParams noise = s.noise();
        const Axis axis = s.axis();
        const Eigen::Matrix2cd rho = random_qubit_state(s);
        const DensityMatrix out = apply_channel(DensityMatrix{1, rho}, noise, axis, 1);
        const Eigen::Matrix3d frame = adapted_frame(axis);
        const BlochAffine map = bloch_affine(noise);
        const Eigen::Vector3d expected =
            frame * (map.matrix_a * (frame.transpose() * bloch_vector(rho)) + map.vector_c);
        CHECK((bloch_vector(out.entries) - expected).norm() < 1e-13);
        CHECK(std::abs(out.entries.trace() - Complex(1.0)) < 1e-14);
    }
}

TEST_CASE("channel commutes with rotations about the axis", "[oracle][channel][property]") {
    ConfigSampler s(10);
    for (int t = 0; t < 50; ++t) {
        const NoiseParams noise = s.noise();
        const Axis axis = s.axis();
        const Eigen::Matrix2cd u = rotation(axis, s.uniform(0, 2 * pi));
        const Eigen::Matrix2cd rho = random_qubit_state(s);
        const Eigen::Matrix2cd a =
            apply_channel(DensityMatrix{1, u * rho * u.adjoint()}, noise, axis, 1).entries;
        const Eigen::Matrix2cd b = apply_channel(DensityMatrix{1, rho}, noise, axis, 1).entries;
        CHECK((a - u * b * u.adjoint()).norm() < 1e-13);
    }
}

TEST_CASE("multi-qubit channel preserves trace and Hermiticity", "[oracle][channel]") {
    ConfigSampler s(11);
    for (int t = 0; t < 20; ++t) {
        const NoiseParams noise = s.noise();
        const ProbeConfig probe = s.probe(5);
        const DensityMatrix rho = noisy_state(noise, probe, s.axis(), s.uniform(0, 2 * pi));
        CHECK(std::abs(rho.entries.trace() - Complex(1.0)) < 1e-13);
        CHECK((rho.entries - rho.entries.adjoint()).norm() < 1e-14);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.entries);
        CHECK(solver.eigenvalues().minCoeff() > -1e-13);
    }
}

TEST_CASE("single-qubit QFI equals the squared in-plane Bloch length", "[oracle][qfi]") {
    ConfigSampler s(12);
    for (int t = 0; t < 50; ++t) {
        const Axis axis = s.axis();
        const Eigen::Matrix2cd rho = random_qubit_state(s);
        const Eigen::Matrix2cd g = 0.5 * axis.generator();
        const Eigen::Matrix2cd drho = Complex(0, -1) * (g * rho - rho * g);
        const Eigen::Vector3d r = bloch_vector(rho);
        const Eigen::Vector3d n = axis.unit();
        const double in_plane = (r - r.dot(n) * n).squaredNorm();
        CHECK_THAT(qfi_eq1(DensityMatrix{1, rho}, drho).value, WithinAbs(in_plane, 1e-12));
    }
}

TEST_CASE("single qubit in |+'> gives mu2 squared", "[oracle][qfi]") {
    ConfigSampler s(13);
    for (int t = 0; t < 20; ++t) {
        const NoiseParams noise = s.noise();
        const double v = qfi_bruteforce(noise, make_probe(1, 0.5), s.axis(), 0.4).value;
        CHECK_THAT(v, WithinAbs(noise.mu2() * noise.mu2(), 1e-12));
    }
}

TEST_CASE("pure-state QFI without noise", "[oracle][qfi]") {
    const Axis axis{1.0, 2.0};
    CHECK_THAT(qfi_bruteforce(presets::noiseless(), make_probe(3, 0.5), axis, 0.0).value,
               WithinRel(9.0, 1e-12));
    for (double kappa : {0.1, 0.3, 0.8}) {
        const double expected = 4 * kappa * (1 - kappa) * 16;
        CHECK_THAT(qfi_bruteforce(presets::noiseless(), make_probe(4, kappa), axis, 1.3).value,
                   WithinRel(expected, 1e-12));
    }
    // inactive qubits of a noiseless probe still contribute nothing
    CHECK_THAT(qfi_bruteforce(presets::noiseless(), make_probe(4, 2, 0.5), axis, 0.2).value,
               WithinRel(4.0, 1e-12));
}

TEST_CASE("finite differences track the analytic derivative", "[oracle][qfi]") {
    ConfigSampler s(14);
    for (int t = 0; t < 15; ++t) {
        const NoiseParams noise = s.noise();
        const ProbeConfig probe = s.probe(5);
        const Axis axis = s.axis();
        const double xi = s.uniform(0, 2 * pi);
        const double exact = qfi_bruteforce(noise, probe, axis, xi).value;
        if (exact < 1e-6) {
            continue; // absolute finite-difference error dominates
        }
        const double fd = qfi_bruteforce(noise, probe, axis, xi,
                                         DerivativeMode::finite_difference(1e-5))
                              .value;
        CHECK_THAT(fd, WithinRel(exact, 1e-6));
    }
}

TEST_CASE("QFI does not depend on the phase, axis or dephasing angle", "[oracle][qfi]") {
    const NoiseParams base = make_noise(0.4, 0.7, 0.6, 0.0);
    const NoiseParams turned = make_noise(0.4, 0.7, 0.6, 2.1);
    const ProbeConfig probe = make_probe(4, 3, 0.35);
    const double ref = qfi_bruteforce(base, probe, Axis{0.0, 0.0}, 0.0).value;
    ConfigSampler s(15);
    for (int t = 0; t < 6; ++t) {
        const Axis axis = s.axis();
        const double xi = s.uniform(0, 2 * pi);
        CHECK_THAT(qfi_bruteforce(base, probe, axis, xi).value, WithinRel(ref, 1e-10));
        CHECK_THAT(qfi_bruteforce(turned, probe, axis, xi).value, WithinRel(ref, 1e-10));
    }
}

TEST_CASE("spectrum of the noisy probe", "[oracle][qfi]") {
    ConfigSampler s(16);
    for (int t = 0; t < 10; ++t) {
        const NoiseParams noise = s.noise();
        const ProbeConfig probe = s.probe(6);
        const QfiOracleResult r = qfi_bruteforce(noise, probe, s.axis(), 0.5,
                                                 DerivativeMode::analytic(), Precision::standard);
        REQUIRE(r.spectrum.size() == (std::size_t{1} << probe.n_total));
        double total = 0.0;
        for (double lambda : r.spectrum) {
            CHECK(lambda > -1e-13);
            total += lambda;
        }
        CHECK_THAT(total, WithinAbs(1.0, 1e-12));
    }
}

TEST_CASE("brute force matches the closed form on random configurations", "[oracle][qfi]") {
    ConfigSampler s(17);
    for (int t = 0; t < 30; ++t) {
        const NoiseParams noise = s.noise();
        const ProbeConfig probe = s.probe(6);
        const double cf = qfi(noise, probe).value;
        const double bf = qfi_bruteforce(noise, probe, s.axis(), s.uniform(0, 2 * pi)).value;
        CHECK(relative_deviation(bf, cf) < verify_tolerance);
    }
}

TEST_CASE("extended precision agrees with double on well-scaled inputs", "[oracle][qfi]") {
    const NoiseParams noise = make_noise(-0.3, 0.6, 0.5, 0.8);
    const ProbeConfig probe = make_probe(3, 2, 0.4);
    const Axis axis{0.7, 4.0};
    const QfiOracleResult lo = qfi_bruteforce(noise, probe, axis, 0.3,
                                              DerivativeMode::analytic(), Precision::standard);
    const QfiOracleResult hi = qfi_bruteforce(noise, probe, axis, 0.3,
                                              DerivativeMode::analytic(), Precision::extended);
    CHECK_FALSE(lo.extended_precision);
    CHECK(hi.extended_precision);
    CHECK_THAT(hi.value, WithinRel(lo.value, 1e-12));
    CHECK_THAT(hi.value, WithinRel(qfi(noise, probe).value, 1e-12));
}

TEST_CASE("size limits", "[oracle]") {
    CHECK_THROWS_AS(qfi_bruteforce(presets::noiseless(), make_probe(13, 0.5), Axis{}, 0.0),
                    SizeError);
    CHECK_THROWS_AS(primed_basis_state(0, Axis{}, 0), SizeError);
}

TEST_CASE("verification run", "[oracle][verify]") {
    VerifyOptions opts;
    opts.trials = 25;
    opts.n_max = 5;
    opts.seed = 3;
    const VerificationReport report = run_verification(opts);
    CHECK(report.trials.size() == 25);
    CHECK(report.passed());
    CHECK(report.worst_trial >= 0);

    opts.inactive = true;
    CHECK(run_verification(opts).passed());

    opts.n_max = 13;
    CHECK_THROWS_AS(run_verification(opts), SizeError);
}
