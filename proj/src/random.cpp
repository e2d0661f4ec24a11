// SPDX-License-Identifier: Apache-2.0
//
// eed - optimum end-to-end distortion analysis for wideband MIMO channels
// Copyright (C) 2026 The eed authors
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

#include "eed/numerics.hpp"

#include <cmath>
#include <numbers>

namespace eed::numerics
{
    namespace
    {
        // Uniform on (0, 1] from the top 53 bits.
        double uniform_open_closed(Rng &rng)
        {
            return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
        }
    } // namespace

    std::pair<double, double> standard_normal_pair(Rng &rng)
    {
        const double u1 = uniform_open_closed(rng);
        const double u2 = uniform_open_closed(rng);
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double angle = 2.0 * std::numbers::pi * u2;
        return {r * std::cos(angle), r * std::sin(angle)};
    }

    void fill_complex_gaussian(Rng &rng, ComplexMatrix &m)
    {
        constexpr double scale = 0.70710678118654752440; // sqrt(1/2)
        for (auto &z : m.entries())
        {
            const auto [re, im] = standard_normal_pair(rng);
            z = cdouble(scale * re, scale * im);
        }
    }

    ComplexMatrix sample_complex_gaussian(Rng &rng, std::size_t rows, std::size_t cols)
    {
        ComplexMatrix m(rows, cols);
        fill_complex_gaussian(rng, m);
        return m;
    }

} // namespace eed::numerics
