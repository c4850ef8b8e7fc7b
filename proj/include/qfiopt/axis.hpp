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


// Rotation axis of the phase and its primed basis |0'>, |1'>.

#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include <Eigen/Dense>

#include "qfiopt/channel.hpp"
#include "qfiopt/errors.hpp"

namespace qfiopt::oracle {

namespace detail {

template <class C>
using RealOf = typename Eigen::NumTraits<C>::Real;
template <class C>
using Mat2 = Eigen::Matrix<C, 2, 2>;

/// Columns |0'>, |1'> for the axis (theta, phi).
template <class C>
Mat2<C> axis_basis(double theta, double phi) {
    using R = RealOf<C>;
    using std::cos;
    using std::sin;
    const R half = R(theta) / 2;
    const C phase(cos(R(phi)), sin(R(phi)));
    Mat2<C> v;
    v(0, 0) = C(cos(half));
    v(1, 0) = phase * C(sin(half));
    v(0, 1) = C(sin(half));
    v(1, 1) = -phase * C(cos(half));
    return v;
}

/// n . sigma in the computational basis.
template <class C>
Mat2<C> axis_generator(double theta, double phi) {
    using R = RealOf<C>;
    using std::cos;
    using std::sin;
    const R t(theta);
    const R p(phi);
    const R nx = sin(t) * cos(p);
    const R ny = sin(t) * sin(p);
    const R nz = cos(t);
    Mat2<C> g;
    g(0, 0) = C(nz);
    g(0, 1) = C(nx, -ny);
    g(1, 0) = C(nx, ny);
    g(1, 1) = C(-nz);
    return g;
}

} // namespace detail

/// Rotation axis n = (sin t cos p, sin t sin p, cos t).
struct Axis {
    double theta_n = 0.0;
    double phi_n = 0.0;

    Eigen::Vector3d unit() const {
        return {std::sin(theta_n) * std::cos(phi_n), std::sin(theta_n) * std::sin(phi_n),
                std::cos(theta_n)};
    }

    /// |0'>, Bloch vector +n.
    Eigen::Vector2cd ket0() const { return basis().col(0); }

    /// |1'>, Bloch vector -n.
    Eigen::Vector2cd ket1() const { return basis().col(1); }

    /// Columns |0'>, |1'>.
    Eigen::Matrix2cd basis() const { return detail::axis_basis<Complex>(theta_n, phi_n); }

    /// n . sigma in the computational basis.
    Eigen::Matrix2cd generator() const {
        return detail::axis_generator<Complex>(theta_n, phi_n);
    }
};

inline Axis make_axis(double theta_n, double phi_n) {
    if (!(theta_n >= 0.0 && theta_n <= std::numbers::pi) ||
        !(phi_n >= 0.0 && phi_n < 2.0 * std::numbers::pi)) {
        throw RangeError("axis needs theta_n in [0, pi] and phi_n in [0, 2 pi)");
    }
    return Axis{theta_n, phi_n};
}

} // namespace qfiopt::oracle
