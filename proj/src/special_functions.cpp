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

#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace eed::numerics
{
    LogValue LogValue::from_double(double x)
    {
        if (!std::isfinite(x))
            throw std::domain_error("LogValue: non-finite input");
        if (x == 0.0)
            return zero();
        return {x > 0.0 ? 1 : -1, std::log(std::fabs(x))};
    }

    double LogValue::to_double() const
    {
        if (sign == 0)
            return 0.0;
        return sign * std::exp(ln_magnitude);
    }

    bool LogValue::fits_double() const
    {
        if (sign == 0)
            return true;
        const double v = std::exp(ln_magnitude);
        return std::isfinite(v) && v >= std::numeric_limits<double>::min();
    }

    LogValue LogValue::pow(double exponent) const
    {
        if (sign == 0)
        {
            if (exponent > 0.0)
                return zero();
            if (exponent == 0.0)
                return one();
            throw std::domain_error("LogValue::pow: zero raised to a negative power");
        }
        int out_sign = 1;
        if (sign < 0)
        {
            if (std::trunc(exponent) != exponent)
                throw std::domain_error("LogValue::pow: negative base with non-integer exponent");
            out_sign = std::fmod(std::fabs(exponent), 2.0) == 1.0 ? -1 : 1;
        }
        return {out_sign, ln_magnitude * exponent};
    }

    LogValue &LogValue::operator*=(const LogValue &rhs)
    {
        sign *= rhs.sign;
        ln_magnitude = sign == 0 ? 0.0 : ln_magnitude + rhs.ln_magnitude;
        return *this;
    }

    LogValue &LogValue::operator/=(const LogValue &rhs)
    {
        if (rhs.sign == 0)
            throw std::domain_error("LogValue: division by zero");
        sign *= rhs.sign;
        ln_magnitude = sign == 0 ? 0.0 : ln_magnitude - rhs.ln_magnitude;
        return *this;
    }

    namespace
    {
        constexpr double lanczos_g = 7.0;
        constexpr std::array<double, 9> lanczos_coeff = {
            0.99999999999980993, 676.5203681218851, -1259.1392167224028,
            771.32342877765313, -176.61502916214059, 12.507343278686905,
            -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    } // namespace

    double ln_gamma(double x)
    {
        if (!(x > 0.0) || !std::isfinite(x))
            throw std::domain_error("ln_gamma: argument must be positive and finite, got " + std::to_string(x));

        if (x < 0.5) // Gamma(x) Gamma(1-x) = pi / sin(pi x)
            return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - ln_gamma(1.0 - x);

        const double z = x - 1.0;
        double series = lanczos_coeff[0];
        for (std::size_t i = 1; i < lanczos_coeff.size(); ++i)
            series += lanczos_coeff[i] / (z + static_cast<double>(i));
        const double t = z + lanczos_g + 0.5;
        return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(series);
    }

    double pochhammer(double a, int n)
    {
        if (n < 0)
            throw std::domain_error("pochhammer: negative length");
        double p = 1.0;
        for (int k = 0; k < n; ++k)
        {
            const double factor = a + k;
            if (factor == 0.0)
                throw std::domain_error("pochhammer: factor a+" + std::to_string(k) + " is zero");
            p *= factor;
        }
        return p;
    }

    double harmonic(int n)
    {
        if (n < 0)
            throw std::domain_error("harmonic: negative order");
        double h = 0.0;
        for (int k = n; k >= 1; --k) // small terms first
            h += 1.0 / k;
        return h;
    }

} // namespace eed::numerics
