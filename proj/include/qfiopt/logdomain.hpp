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
 * Log-domain helpers. Powers x^n are carried as n*ln(x) with ln(0) = -inf,
 * and sums of such terms are combined with log-sum-exp, so probe sizes up
 * to ~1e6 never overflow or underflow.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>

namespace qfiopt::logdomain {

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

/// ln(a + b) given ln(a) and ln(b). Symmetric in its arguments.
inline double log_add_exp(double log_a, double log_b) {
    const double hi = std::max(log_a, log_b);
    const double lo = std::min(log_a, log_b);
    if (hi == neg_inf) {
        return neg_inf;
    }
    return hi + std::log1p(std::exp(lo - hi));
}

/// ln(x), mapping x == 0 to -inf. x must be >= 0.
inline double safe_log(double x) { return x > 0.0 ? std::log(x) : neg_inf; }

/// ln((1 + a) / 2) for a in [-1, 1]; accurate near a = 1.
inline double log_half_one_plus(double a) {
    const double x = 0.5 * (a - 1.0);
    return x <= -1.0 ? neg_inf : std::log1p(x);
}

/// ln((1 - a) / 2) for a in [-1, 1]; accurate near a = -1.
inline double log_half_one_minus(double a) {
    const double x = -0.5 * (a + 1.0);
    return x <= -1.0 ? neg_inf : std::log1p(x);
}

/// n * log_x with 0 * (-inf) treated as 0 (x^0 = 1 even for x = 0).
inline double scaled_log(double n, double log_x) {
    return n == 0.0 ? 0.0 : n * log_x;
}

/// exp() that maps -inf to exactly 0.
inline double exp_or_zero(double log_x) {
    return log_x == neg_inf ? 0.0 : std::exp(log_x);
}

} // namespace qfiopt::logdomain
