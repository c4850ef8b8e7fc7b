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
 * Reproducible random configurations. All draws come from std::mt19937_64
 * (whose output sequence is fixed by the standard) and are turned into
 * doubles from the top 53 bits, so a seed yields the same configurations on
 * every platform; the std:: distributions are deliberately not used.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "qfiopt/axis.hpp"
#include "qfiopt/channel.hpp"
#include "qfiopt/closedform.hpp"

namespace qfiopt {

class ConfigSampler {
  public:
    explicit ConfigSampler(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Uniform integer on [lo, hi].
    long integer(long lo, long hi) {
        const long span = hi - lo + 1;
        const long k = static_cast<long>(uniform() * static_cast<double>(span));
        return lo + std::min(k, span - 1);
    }

    /// mu in [-1, 1], mu1 in [0, 1], mu2 in [0, sqrt(mu1)], omega_t in [0, 2 pi).
    NoiseParams noise() {
        const double mu = uniform(-1.0, 1.0);
        const double mu1 = uniform();
        const double mu2 = std::sqrt(mu1) * uniform();
        const double omega_t = uniform(0.0, 2.0 * std::numbers::pi);
        return make_noise(mu, mu1, mu2, omega_t);
    }

    /// Unital member of the family (mu = 0).
    NoiseParams unital_noise() {
        const double mu1 = uniform();
        const double mu2 = std::sqrt(mu1) * uniform();
        return make_noise(0.0, mu1, mu2, uniform(0.0, 2.0 * std::numbers::pi));
    }

    /// N in [1, n_max] and N1 in [1, N]; with `inactive`, N >= 2 and N1 < N.
    ProbeConfig probe(long n_max, bool inactive = false) {
        const long n = integer(inactive ? 2 : 1, n_max);
        const long n1 = integer(1, inactive ? n - 1 : n);
        return make_probe(n, n1, uniform());
    }

    oracle::Axis axis() {
        // Uniform on the sphere.
        const double cos_theta = uniform(-1.0, 1.0);
        return oracle::Axis{std::acos(cos_theta), uniform(0.0, 2.0 * std::numbers::pi)};
    }

  private:
    std::mt19937_64 engine_;
};

} // namespace qfiopt
