// SPDX-License-Identifier: Apache-2.0
//
// modop - numerical time-frequency operator calculus
// Copyright (C) 2026 The modop authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#pragma once

// Shared helpers for the unit and acceptance suites.

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

#include "modop/grid.hpp"
#include "modop/rng.hpp"

namespace modop::testing {

inline double max_abs_diff(std::span<const cd> a, std::span<const cd> b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

inline double max_abs(std::span<const cd> a) {
    double m = 0.0;
    for (const cd& v : a) m = std::max(m, std::abs(v));
    return m;
}

/// Max-norm relative error.
inline double rel_error(std::span<const cd> got, std::span<const cd> want) {
    const double scale = max_abs(want);
    return max_abs_diff(got, want) / (scale > 0 ? scale : 1.0);
}

/// Gaussian-enveloped random function, negligible at the domain boundary.
inline SampledFunction random_function(const UniformGrid& g, std::uint64_t seed) {
    CounterRng rng(seed);
    const int terms = 4;
    std::vector<double> amp, freq, phase;
    for (int t = 0; t < terms; ++t) {
        amp.push_back(rng.uniform(0.2, 1.0));
        freq.push_back(rng.uniform(-2.0, 2.0));
        phase.push_back(rng.uniform(0.0, two_pi));
    }
    const double width = 0.12 * g.extent();
    return sample(g, [&](std::span<const double> x) {
        double r2 = 0.0, lin = 0.0;
        for (double c : x) {
            r2 += c * c;
            lin += c;
        }
        cd v = 0.0;
        for (int t = 0; t < terms; ++t) v += amp[t] * std::polar(1.0, two_pi * freq[t] * lin + phase[t]);
        return v * std::exp(-std::numbers::pi * r2 / (width * width));
    });
}

}  // namespace modop::testing
