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


// Eigen traits for the 128-bit float and complex types from
// Boost.Multiprecision. The traits shipped with older Boost releases lack
// members that Eigen 3.4 requires, so both types are specialised in full.

#pragma once

#include <limits>

#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/float128.hpp>

#include <Eigen/Core>

namespace qfiopt::detail {

using quad_real = boost::multiprecision::float128;
using quad_complex = boost::multiprecision::complex128;

template <class Self, bool Complex>
struct QuadTraitsBase {
    using Real = quad_real;
    using NonInteger = Self;
    using Literal = double;
    using Nested = Self;
    enum {
        IsComplex = Complex,
        IsInteger = 0,
        IsSigned = 1,
        RequireInitialization = 1,
        ReadCost = 1,
        AddCost = Complex ? 8 : 4,
        MulCost = Complex ? 32 : 8,
    };
    static Real epsilon() { return std::numeric_limits<Real>::epsilon(); }
    static Real dummy_precision() { return 1000 * epsilon(); }
    static Real highest() { return (std::numeric_limits<Real>::max)(); }
    static Real lowest() { return -(std::numeric_limits<Real>::max)(); }
    static Real infinity() { return std::numeric_limits<Real>::infinity(); }
    static Real quiet_NaN() { return std::numeric_limits<Real>::quiet_NaN(); }
    static int digits10() { return std::numeric_limits<Real>::digits10; }
    static int digits() { return std::numeric_limits<Real>::digits; }
};

} // namespace qfiopt::detail

namespace Eigen {

template <>
struct NumTraits<qfiopt::detail::quad_real>
    : qfiopt::detail::QuadTraitsBase<qfiopt::detail::quad_real, false> {};

template <>
struct NumTraits<qfiopt::detail::quad_complex>
    : qfiopt::detail::QuadTraitsBase<qfiopt::detail::quad_complex, true> {};

template <typename BinaryOp>
struct ScalarBinaryOpTraits<qfiopt::detail::quad_complex, qfiopt::detail::quad_real, BinaryOp> {
    using ReturnType = qfiopt::detail::quad_complex;
};

template <typename BinaryOp>
struct ScalarBinaryOpTraits<qfiopt::detail::quad_real, qfiopt::detail::quad_complex, BinaryOp> {
    using ReturnType = qfiopt::detail::quad_complex;
};

} // namespace Eigen
