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

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace eed::numerics;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    ComplexMatrix random_unitary(Rng &rng, std::size_t n)
    {
        // Gram-Schmidt on a complex Gaussian matrix
        ComplexMatrix q = sample_complex_gaussian(rng, n, n);
        for (std::size_t j = 0; j < n; ++j)
        {
            for (std::size_t k = 0; k < j; ++k)
            {
                cdouble dot = 0.0;
                for (std::size_t i = 0; i < n; ++i)
                    dot += std::conj(q(i, k)) * q(i, j);
                for (std::size_t i = 0; i < n; ++i)
                    q(i, j) -= dot * q(i, k);
            }
            double norm = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                norm += std::norm(q(i, j));
            norm = std::sqrt(norm);
            for (std::size_t i = 0; i < n; ++i)
                q(i, j) /= norm;
        }
        return q;
    }

    double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b)
    {
        double d = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                d = std::max(d, std::abs(a(i, j) - b(i, j)));
        return d;
    }
} // namespace

TEST_CASE("LogValue arithmetic", "[numerics]")
{
    const auto a = LogValue::from_double(-3.0);
    const auto b = LogValue::from_double(0.5);
    CHECK_THAT((a * b).to_double(), WithinRel(-1.5, 1e-15));
    CHECK_THAT((a / b).to_double(), WithinRel(-6.0, 1e-15));
    CHECK((a * LogValue::zero()).is_zero());
    CHECK(LogValue::from_double(0.0).is_zero());
    CHECK_THROWS_AS(a / LogValue::zero(), std::domain_error);

    // far outside the double range and back
    auto big = LogValue::from_ln(5e5);
    CHECK_FALSE(big.fits_double());
    big *= LogValue::from_ln(-5e5 + std::log(7.0));
    CHECK_THAT(big.to_double(), WithinRel(7.0, 1e-9));

    CHECK_THAT(LogValue::from_double(4.0).pow(2.5).to_double(), WithinRel(32.0, 1e-14));
    CHECK_THAT(LogValue::from_double(-2.0).pow(3).to_double(), WithinRel(-8.0, 1e-14));
    CHECK_THROWS_AS(LogValue::from_double(-2.0).pow(0.5), std::domain_error);
}

TEST_CASE("ln_gamma examples", "[numerics]")
{
    CHECK_THAT(ln_gamma(1.0), WithinAbs(0.0, 1e-14));
    CHECK_THAT(ln_gamma(5.0), WithinAbs(std::log(24.0), 1e-13));
    CHECK_THAT(ln_gamma(0.5), WithinAbs(0.5 * std::log(std::numbers::pi), 1e-13));
    CHECK_THROWS_AS(ln_gamma(0.0), std::domain_error);
    CHECK_THROWS_AS(ln_gamma(-1.5), std::domain_error);
}

TEST_CASE("ln_gamma against the C library on [0.1, 200]", "[numerics]")
{
    for (double x = 0.1; x <= 200.0; x *= 1.07)
    {
        // long double lgamma as an independent reference
        const double ref = static_cast<double>(std::lgammal(static_cast<long double>(x)));
        INFO("x = " << x);
        CHECK_THAT(ln_gamma(x), WithinAbs(ref, 1e-12 * std::max(1.0, std::abs(ref) / 100.0)));
    }
}

TEST_CASE("ln_gamma recurrence", "[numerics][property]")
{
    for (double x : {0.5, 1.5, 2.5, 7.3})
        CHECK_THAT(std::exp(ln_gamma(x + 1.0)), WithinRel(x * std::exp(ln_gamma(x)), 1e-10));
}

TEST_CASE("pochhammer examples", "[numerics]")
{
    CHECK(pochhammer(-3.7, 0) == 1.0);
    CHECK(pochhammer(3.0, 2) == 12.0);
    CHECK(pochhammer(0.5, 1) == 0.5);
    CHECK_THAT(pochhammer(-2.5, 3), WithinRel(-2.5 * -1.5 * -0.5, 1e-15));
    CHECK_THROWS_AS(pochhammer(-2.0, 3), std::domain_error);
    CHECK_THROWS_AS(pochhammer(1.0, -1), std::domain_error);
}

TEST_CASE("pochhammer splits over consecutive ranges", "[numerics][property]")
{
    Rng rng(7);
    std::uniform_real_distribution<double> ua(-6.0, 6.0);
    std::uniform_int_distribution<int> un(0, 8);
    for (int trial = 0; trial < 200; ++trial)
    {
        const double a = ua(rng) + 0.123;
        const int m = un(rng), n = un(rng);
        CHECK_THAT(pochhammer(a, m + n), WithinRel(pochhammer(a, m) * pochhammer(a + m, n), 1e-12));
    }
}

TEST_CASE("harmonic numbers", "[numerics]")
{
    CHECK(harmonic(0) == 0.0);
    CHECK(harmonic(1) == 1.0);
    CHECK_THAT(harmonic(3), WithinRel(11.0 / 6.0, 1e-15));
    CHECK_THROWS_AS(harmonic(-1), std::domain_error);
}

TEST_CASE("hermitian_eigenvalues examples", "[numerics]")
{
    auto ev = hermitian_eigenvalues(ComplexMatrix::identity(3));
    for (double v : ev)
        CHECK_THAT(v, WithinAbs(1.0, 1e-14));

    ComplexMatrix m(2, 2, {1.0, 0.5, 0.5, 1.0});
    ev = hermitian_eigenvalues(m);
    CHECK_THAT(ev[0], WithinAbs(0.5, 1e-14));
    CHECK_THAT(ev[1], WithinAbs(1.5, 1e-14));

    const double d[] = {5.0, 7.0, 2.0};
    ev = hermitian_eigenvalues(ComplexMatrix::diagonal(d));
    CHECK(ev == std::vector<double>{2.0, 5.0, 7.0});

    CHECK_THROWS_AS(hermitian_eigenvalues(ComplexMatrix(2, 3)), std::domain_error);
    ComplexMatrix skew(2, 2, {1.0, cdouble(0.0, 1.0), cdouble(0.0, 1.0), 1.0});
    CHECK_THROWS_AS(hermitian_eigenvalues(skew), std::domain_error);
}

TEST_CASE("eigenvalues of Q D Q^H recover D", "[numerics][property]")
{
    Rng rng(11);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (std::size_t n = 1; n <= 8; ++n)
        for (int trial = 0; trial < 5; ++trial)
        {
            std::vector<double> d(n);
            for (auto &x : d)
                x = u(rng);
            const auto q = random_unitary(rng, n);
            const auto a = q * ComplexMatrix::diagonal(d) * q.adjoint();
            // symmetrize rounding noise
            const auto h = 0.5 * (a + a.adjoint());
            const auto eig = hermitian_eigen(h);
            std::sort(d.begin(), d.end());
            for (std::size_t i = 0; i < n; ++i)
                CHECK_THAT(eig.values[i], WithinAbs(d[i], 1e-8));
            // A V = V diag(lambda), V unitary
            const auto av = h * eig.vectors;
            const auto vl = eig.vectors * ComplexMatrix::diagonal(eig.values);
            CHECK(max_abs_diff(av, vl) < 1e-10 * std::max(1.0, h.frobenius_norm()));
            CHECK(max_abs_diff(eig.vectors.adjoint() * eig.vectors, ComplexMatrix::identity(n)) < 1e-12);
        }
}

TEST_CASE("logdet_hermitian_pd examples", "[numerics]")
{
    CHECK(logdet_hermitian_pd(ComplexMatrix::identity(4)) == 0.0);
    const double d[] = {2.0, 3.0};
    CHECK_THAT(logdet_hermitian_pd(ComplexMatrix::diagonal(d)), WithinRel(std::log(6.0), 1e-14));

    // rank-one update: det(I + c v v^H) = 1 + c for unit v
    Rng rng(3);
    for (std::size_t n : {1u, 2u, 5u, 8u})
    {
        auto v = sample_complex_gaussian(rng, n, 1);
        const double norm = v.frobenius_norm();
        for (auto &x : v.entries())
            x /= norm;
        const auto m = ComplexMatrix::identity(n) + 3.0 * (v * v.adjoint());
        CHECK_THAT(logdet_hermitian_pd(m), WithinRel(std::log(4.0), 1e-12));
    }

    const double bad[] = {1.0, -1.0};
    CHECK_THROWS_AS(logdet_hermitian_pd(ComplexMatrix::diagonal(bad)), std::domain_error);
}

TEST_CASE("logdet equals the sum of log eigenvalues", "[numerics][property]")
{
    Rng rng(5);
    for (std::size_t n = 1; n <= 8; ++n)
    {
        const auto g = sample_complex_gaussian(rng, n, n + 2);
        const auto a = ComplexMatrix::identity(n) + g * g.adjoint();
        double sum = 0.0;
        for (double v : hermitian_eigenvalues(a))
            sum += std::log(v);
        CHECK_THAT(logdet_hermitian_pd(a), WithinAbs(sum, 1e-8));
        auto copy = a;
        CHECK(logdet_hermitian_pd_inplace(copy) == logdet_hermitian_pd(a));
    }
}

TEST_CASE("matrix_sqrt_psd", "[numerics]")
{
    CHECK(max_abs_diff(matrix_sqrt_psd(ComplexMatrix::identity(3)), ComplexMatrix::identity(3)) < 1e-14);

    const double d[] = {4.0, 9.0}, r[] = {2.0, 3.0};
    CHECK(max_abs_diff(matrix_sqrt_psd(ComplexMatrix::diagonal(d)), ComplexMatrix::diagonal(r)) < 1e-13);

    ComplexMatrix m(2, 2, {1.0, 0.5, 0.5, 1.0});
    const auto s = matrix_sqrt_psd(m);
    CHECK(max_abs_diff(s * s.adjoint(), m) < 1e-10);

    // singular but PSD
    ComplexMatrix ones(2, 2, {1.0, 1.0, 1.0, 1.0});
    const auto so = matrix_sqrt_psd(ones);
    CHECK(max_abs_diff(so * so.adjoint(), ones) < 1e-10);

    const double neg[] = {1.0, -1e-6};
    CHECK_THROWS_AS(matrix_sqrt_psd(ComplexMatrix::diagonal(neg)), std::domain_error);
}

TEST_CASE("complex Gaussian sampling", "[numerics]")
{
    Rng rng(2024);
    const int n = 1000000;
    double power = 0.0, re = 0.0, im = 0.0, re2 = 0.0;
    ComplexMatrix h(1, 1);
    for (int i = 0; i < n; ++i)
    {
        fill_complex_gaussian(rng, h);
        power += std::norm(h(0, 0));
        re += h(0, 0).real();
        im += h(0, 0).imag();
        re2 += h(0, 0).real() * h(0, 0).real();
    }
    CHECK_THAT(power / n, WithinAbs(1.0, 0.01));
    CHECK_THAT(re / n, WithinAbs(0.0, 0.01));
    CHECK_THAT(im / n, WithinAbs(0.0, 0.01));
    CHECK_THAT(re2 / n, WithinAbs(0.5, 0.01));

    Rng a(99), b(99);
    const auto ma = sample_complex_gaussian(a, 4, 2);
    const auto mb = sample_complex_gaussian(b, 4, 2);
    CHECK(std::equal(ma.entries().begin(), ma.entries().end(), mb.entries().begin()));
}
