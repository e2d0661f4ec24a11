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

#include "eed/asymptotic.hpp"

#include <catch_amalgamated.hpp>

#include <boost/math/quadrature/exp_sinh.hpp>

#include <cmath>
#include <numbers>
#include <random>

using namespace eed;
using namespace eed::asymptotic;
using channel::SystemConfig;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    long double lg(long double x) { return std::lgammal(x); }

    // kappa functions written out termwise in long double
    long double kappa_l_oracle(long double b, int t, int m, int n)
    {
        if (t == 0)
            return 0.0L;
        long double v = lg(n - m + 1) + lg(b - n + m - 1) - lg(b);
        for (int k = 2; k <= t; ++k)
            v += lg(k) + lg(n - m + k) + lg(b - n + m - 2 * k + 2) + lg(b - n + m - 2 * k + 1) - lg(b - k + 1) -
                 lg(b - n + m - k + 1);
        return v;
    }

    long double kappa_h_oracle(long double b, int t, int m, int n)
    {
        long double v = 0.0L;
        for (int k = 1; k <= t; ++k)
            v += lg(k) + lg(n - m - b + k);
        return v;
    }

    long double denom_oracle(int n_min, int n_max)
    {
        long double v = 0.0L;
        for (int k = 1; k <= n_min; ++k)
            v += lg(n_max - k + 1) + lg(n_min - k + 1);
        return v;
    }

    // E det(I + c W)^{-b} for an uncorrelated complex Wishart W with m = n_min, n = n_max, by the
    // Andreief identity: det[int x^{i+j+dn} e^{-x} (1+cx)^{-b}] / det[Gamma(i+j+dn+1)].
    double wishart_expectation(int m, int n, double c, double b)
    {
        boost::math::quadrature::exp_sinh<double> q;
        const int dn = n - m;
        std::vector<long double> num(m * m), den(m * m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
            {
                const int k = i + j + dn;
                num[i * m + j] = q.integrate([&](double x) {
                    return std::exp(k * std::log(x) - x - b * std::log1p(c * x));
                });
                den[i * m + j] = std::tgammal(k + 1);
            }
        auto det = [m](std::vector<long double> a) {
            long double d = 1.0L;
            for (int p = 0; p < m; ++p)
            {
                int piv = p;
                for (int r = p + 1; r < m; ++r)
                    if (std::fabs(a[r * m + p]) > std::fabs(a[piv * m + p]))
                        piv = r;
                if (piv != p)
                {
                    for (int cc = 0; cc < m; ++cc)
                        std::swap(a[p * m + cc], a[piv * m + cc]);
                    d = -d;
                }
                d *= a[p * m + p];
                for (int r = p + 1; r < m; ++r)
                {
                    const long double f = a[r * m + p] / a[p * m + p];
                    for (int cc = p; cc < m; ++cc)
                        a[r * m + cc] -= f * a[p * m + cc];
                }
            }
            return d;
        };
        return static_cast<double>(det(num) / det(den));
    }

    double uncorrelated_ratio(int nt, int nr, double eta, double rho)
    {
        const SystemConfig c(nt, nr, 1, eta);
        const double exact = wishart_expectation(std::min(nt, nr), std::max(nt, nr), rho / nt, c.beta());
        return exact / extend_to_L(c).evaluate(rho);
    }
} // namespace

TEST_CASE("kappa examples", "[asymptotic]")
{
    CHECK(kappa_l(7.3, 0, 2, 4).to_double() == 1.0);
    CHECK_THAT(kappa_l(10.0, 1, 2, 4).to_double(), WithinRel(1.0 / 252.0, 1e-12));
    CHECK_THAT(kappa_l(10.0, 2, 2, 4).to_double(),
               WithinRel(static_cast<double>(std::exp(kappa_l_oracle(10.0L, 2, 2, 4))), 1e-12));
    // termwise: 1/252 * Gamma(2)Gamma(4) Gamma(6)Gamma(5) / (Gamma(9)Gamma(7))
    CHECK_THAT(kappa_l(10.0, 2, 2, 4).to_double(), WithinRel(1.0 / 252.0 * 6.0 * 120.0 * 24.0 / (40320.0 * 720.0), 1e-12));

    CHECK(kappa_h(1.9, 0, 2, 4).to_double() == 1.0);
    CHECK_THAT(kappa_h(0.5, 1, 1, 1).to_double(), WithinRel(std::sqrt(std::numbers::pi), 1e-12));
    CHECK_THAT(kappa_h(2.5, 2, 2, 4).to_double(), WithinRel(std::numbers::pi / 2.0, 1e-12));

    CHECK_THROWS_AS(kappa_h(3.0, 2, 2, 4), std::domain_error);
    CHECK_THROWS_AS(kappa_l(3.0, 1, 2, 4), std::domain_error);
    CHECK_THROWS_WITH(kappa_l(5.0, 2, 2, 4), Catch::Matchers::ContainsSubstring("Gamma(beta-n+m-2k+1)"));
}

TEST_CASE("kappa against long double oracles", "[asymptotic]")
{
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial)
    {
        const int m = 1 + trial % 6, n = m + trial % 3;
        const int t = trial % (m + 1);
        const double bl = n - m + 2 * t + 0.05 + 20.0 * u(rng); // keeps kappa_l arguments positive
        const double bh = (n - m + 1) * u(rng) * 0.999 + 1e-3;
        CHECK_THAT(kappa_l(bl, t, m, n).ln_magnitude, WithinAbs(static_cast<double>(kappa_l_oracle(bl, t, m, n)), 1e-10));
        CHECK_THAT(kappa_h(bh, t, m, n).ln_magnitude, WithinAbs(static_cast<double>(kappa_h_oracle(bh, t, m, n)), 1e-10));
    }
}

TEST_CASE("distortion_exponent_1 examples", "[asymptotic]")
{
    CHECK(distortion_exponent_1(4, 2, 0.2) == 8.0);
    CHECK(distortion_exponent_1(4, 2, 0.8) == 5.0);
    CHECK(distortion_exponent_1(1, 1, 1e9) == 2.0 / 1e9);
    CHECK(distortion_exponent_1(1, 1, 0.5) == 1.0);
}

TEST_CASE("distortion_factor_1 examples", "[asymptotic]")
{
    const auto siso = distortion_factor_1(SystemConfig(1, 1, 1, 4.0));
    CHECK_THAT(siso.mu.to_double(), WithinRel(std::sqrt(std::numbers::pi), 1e-12));
    CHECK(siso.log_rho_power == 0);

    const double ones[] = {1.0, 1.0};
    const auto low = distortion_factor_1(SystemConfig(4, 2, 1, 0.2), ones);
    const long double expect = 8.0L * std::log(4.0L) + kappa_l_oracle(10.0L, 2, 2, 4) - denom_oracle(2, 4);
    CHECK_THAT(low.mu.ln_magnitude, WithinAbs(static_cast<double>(expect), 1e-11));
    CHECK(low.log_rho_power == 0);

    // moderate, odd parity: beta = 10/3, s = 1
    const auto mod = distortion_factor_1(SystemConfig(4, 2, 3, 0.2));
    const long double b = 10.0L / 3.0L;
    const long double mexp =
        (3.0L + b) * std::log(4.0L) + kappa_l_oracle(b, 1, 2, 4) + kappa_h_oracle(b - 2, 1, 2, 4) - denom_oracle(2, 4);
    CHECK_THAT(mod.mu.ln_magnitude, WithinAbs(static_cast<double>(mexp), 1e-11));
    CHECK(mod.log_rho_power == 0);

    // moderate, even parity: beta = 5, s = 2 carries ln rho
    const auto even = distortion_factor_1(SystemConfig(4, 2, 2, 0.2));
    CHECK(even.log_rho_power == 1);
    const long double eexp = 8.0L * std::log(4.0L) + kappa_l_oracle(5.0L, 1, 2, 4) - denom_oracle(2, 4);
    CHECK_THAT(even.mu.ln_magnitude, WithinAbs(static_cast<double>(eexp), 1e-11));

    // ps scales linearly
    const auto scaled = distortion_factor_1(SystemConfig(4, 2, 3, 0.2, 3.0));
    CHECK_THAT(scaled.mu.ln_magnitude - mod.mu.ln_magnitude, WithinAbs(std::log(3.0), 1e-13));
}

TEST_CASE("asymptotes match exact Wishart expectations", "[asymptotic]")
{
    // high regime, beta = 2.5
    CHECK_THAT(uncorrelated_ratio(4, 2, 0.8, 1e8), WithinAbs(1.0, 2e-3));
    // high regime, square, beta = 0.5
    CHECK_THAT(uncorrelated_ratio(2, 2, 4.0, 1e10), WithinAbs(1.0, 2e-3));
    // low regime, beta = 10
    CHECK_THAT(uncorrelated_ratio(4, 2, 0.2, 1e6), WithinAbs(1.0, 2e-3));
    // low regime with nt < nr (the N_t^Delta factor differs), beta = 8
    CHECK_THAT(uncorrelated_ratio(2, 3, 0.25, 1e6), WithinAbs(1.0, 2e-3));
    // moderate regime, odd parity, beta = 3.5 and beta = 4
    CHECK_THAT(uncorrelated_ratio(4, 2, 4.0 / 7.0, 1e10), WithinAbs(1.0, 5e-3));
    CHECK_THAT(uncorrelated_ratio(4, 2, 0.5, 1e10), WithinAbs(1.0, 5e-3));
    // moderate, even parity: the ln rho factor leaves a 1/ln rho correction, so (1 - ratio) ln rho
    // must settle to a constant
    const double r1 = uncorrelated_ratio(4, 2, 0.4, 1e12), r2 = uncorrelated_ratio(4, 2, 0.4, 1e20);
    CHECK(std::abs(r2 - 1.0) < std::abs(r1 - 1.0));
    CHECK_THAT((1.0 - r2) * std::log(1e20), WithinRel((1.0 - r1) * std::log(1e12), 1e-3));
}

TEST_CASE("lower moderate boundary at the transit point", "[asymptotic]")
{
    // (4,2) with 2/eta = 6: L* = 2 lands on beta = dn + 1 = 3, classified Moderate with s = 1 (ln rho branch)
    const SystemConfig c(4, 2, 2, 1.0 / 3.0);
    REQUIRE(channel::transit_point(c) == 2);
    const auto a = extend_to_L(c);
    CHECK(std::isfinite(a.mu_ln()));
    CHECK(a.log_rho_power == 2);
    CHECK_THAT(a.delta, WithinRel(12.0, 1e-15));
    // single-subchannel factor at beta = 3 against the exact expectation
    const double r1 = uncorrelated_ratio(4, 2, 2.0 / 3.0, 1e12), r2 = uncorrelated_ratio(4, 2, 2.0 / 3.0, 1e20);
    CHECK(std::abs(r2 - 1.0) < std::abs(r1 - 1.0));
    CHECK_THAT((1.0 - r2) * std::log(1e20), WithinRel((1.0 - r1) * std::log(1e12), 1e-2));
}

TEST_CASE("v3_determinant", "[asymptotic]")
{
    const double one[] = {0.7};
    // beta - dn - 1 = 1.5 > 0, so min{0, .} = 0 and v = 1
    CHECK_THAT(v3_determinant(one, 3.5, 2).to_double(), WithinRel(1.0, 1e-15));

    // beta = 4, dn = 2: exponents min{j-1, 2-j} = {0, 0}, identical columns
    const double s2[] = {0.5, 1.5};
    CHECK(v3_determinant(s2, 4.0, 2).is_zero());

    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.05, 0.95);
    for (int trial = 0; trial < 50; ++trial)
    {
        const double a = u(rng);
        const double sig[] = {a, 2.0 - a};
        const double beta = 3.0 + 2.0 * u(rng);
        const int dn = 2;
        auto v = [&](int i, int j) { return std::pow(sig[i], -std::min(j - 1.0, beta - dn - j)); };
        const double cof = v(0, 1) * v(1, 2) - v(0, 2) * v(1, 1);
        const auto got = v3_determinant(sig, beta, dn);
        CHECK_THAT(got.is_zero() ? 0.0 : got.to_double(), WithinAbs(cof, 1e-12 * std::max(1.0, std::abs(cof))));
    }

    const double bad[] = {1.0, 1.0 + 1e-10};
    CHECK_THROWS_AS(v3_determinant(bad, 3.5, 2), numerics::DegenerateSpectrumError);
}

TEST_CASE("correlated moderate factor tends to the uncorrelated one", "[asymptotic]")
{
    for (double eta : {4.0 / 7.0, 0.5, 0.6, 0.45})
    {
        const SystemConfig c(4, 2, 1, eta);
        const double unc = distortion_factor_1(c).mu.ln_magnitude;
        double prev = 1.0;
        for (double eps : {1e-2, 1e-3, 1e-4})
        {
            const double sig[] = {1.0 - eps, 1.0 + eps};
            const double gap = std::abs(std::expm1(distortion_factor_1(c, sig).mu.ln_magnitude - unc));
            INFO("eta=" << eta << " eps=" << eps);
            CHECK(gap < prev);
            CHECK(gap < 20.0 * eps);
            prev = gap;
        }
    }
    // 3x3 correlated block: (4,3), dn = 1, beta = 3.5 gives s = 1
    const SystemConfig c3(4, 3, 1, 2.0 / 3.5);
    const double unc3 = distortion_factor_1(c3).mu.ln_magnitude;
    const double sig3[] = {1.0 - 1e-3, 1.0, 1.0 + 1e-3};
    CHECK(std::abs(std::expm1(distortion_factor_1(c3, sig3).mu.ln_magnitude - unc3)) < 0.02);
}

TEST_CASE("correlated moderate factor needs a distinct spectrum", "[asymptotic]")
{
    const double flat[] = {1.0 - 1e-10, 1.0 + 1e-10};
    CHECK_THROWS_AS(distortion_factor_1(SystemConfig(4, 2, 1, 4.0 / 7.0), flat), numerics::DegenerateSpectrumError);
    CHECK_THROWS_AS(extend_to_L(SystemConfig(4, 2, 1, 4.0 / 7.0), channel::ExplicitEigenvalues{{1.0 - 1e-10, 1.0 + 1e-10}}),
                    numerics::DegenerateSpectrumError);
    // high and low regimes accept any positive spectrum
    CHECK_NOTHROW(extend_to_L(SystemConfig(4, 2, 1, 0.2), channel::ExplicitEigenvalues{{1.0 - 1e-10, 1.0 + 1e-10}}));
}

TEST_CASE("identity eigenvalues reproduce the uncorrelated factor", "[asymptotic][property]")
{
    for (double eta : {0.2, 0.25, 0.4, 0.5, 0.8, 2.0 / 3.5, 4.0})
        for (int l : {1, 2, 3, 5})
        {
            const SystemConfig c(4, 2, l, eta);
            const double ones[] = {1.0, 1.0};
            const auto a = extend_to_L(c);
            const auto b = extend_to_L(c, ones);
            const auto d = extend_to_L(c, channel::Identity{});
            CHECK_THAT(b.mu_ln(), WithinAbs(a.mu_ln(), 1e-10 * std::max(1.0, std::abs(a.mu_ln()))));
            CHECK(d.mu_ln() == a.mu_ln());
            CHECK(b.log_rho_power == a.log_rho_power);
        }
}

TEST_CASE("extend_to_L examples", "[asymptotic]")
{
    const double expect[] = {8, 16, 19, 20, 20};
    for (int l = 1; l <= 5; ++l)
        CHECK(extend_to_L(SystemConfig(4, 2, l, 0.2)).delta == expect[l - 1]);

    const SystemConfig one(4, 2, 1, 0.37, 2.0);
    const auto e = extend_to_L(one);
    const auto f = distortion_factor_1(one);
    CHECK(e.mu_ln() == f.mu.ln_magnitude);
    CHECK(e.delta == distortion_exponent_1(4, 2, 0.37));

    // high regime, uncorrelated: ps nt^{2 n_min/eta} prod_k [Gamma(dn-beta+k)/Gamma(dn+k)]^L
    for (int l = 4; l <= 12; ++l)
    {
        const double ps = 1.3;
        const SystemConfig c(4, 2, l, 0.2, ps);
        const long double beta = 10.0L / l;
        long double ln = std::log(static_cast<long double>(ps)) + 20.0L * std::log(4.0L);
        for (int k = 1; k <= 2; ++k)
            ln += l * (lg(2 - beta + k) - lg(2 + k));
        CHECK_THAT(extend_to_L(c).mu_ln(), WithinAbs(static_cast<double>(ln), 1e-10));
    }

    // even parity at L = 2: (ln rho)^2
    const auto ev = extend_to_L(SystemConfig(4, 2, 2, 0.2));
    CHECK(ev.log_rho_power == 2);
    const double rho = 1e3;
    CHECK_THAT(ev.evaluate(rho), WithinRel(std::exp(ev.mu_ln()) * std::pow(std::log(rho), 2) * std::pow(rho, -16.0), 1e-12));
}

TEST_CASE("regime-specific exponent closed forms", "[asymptotic][property]")
{
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> ant(1, 8), div(1, 64), num(1, 2000);
    int counts[3] = {0, 0, 0};
    int guard = 0;
    while ((counts[0] < 50 || counts[1] < 50 || counts[2] < 50) && ++guard < 1000000)
    {
        const int nt = ant(rng), nr = ant(rng), l = div(rng);
        // 2/eta on a coarse dyadic grid so every partial sum is exact
        const double two_eta = num(rng) / 8.0;
        const double eta = 2.0 / two_eta;
        if (2.0 / eta != two_eta)
            continue;
        const SystemConfig c(nt, nr, l, eta);
        const auto r = channel::classify_regime(c);
        const int idx = static_cast<int>(r.kind);
        if (counts[idx] >= 50)
            continue;
        ++counts[idx];
        const double delta = extend_to_L(c).delta;
        const int n_min = c.n_min(), dn = c.dn();
        switch (r.kind)
        {
        case channel::RegimeKind::Low:
            CHECK(delta == static_cast<double>(l) * nt * nr);
            break;
        case channel::RegimeKind::High:
            CHECK(delta == n_min * two_eta);
            break;
        case channel::RegimeKind::Moderate:
            CHECK(delta == static_cast<double>(l) * r.s * (r.s + dn) + (n_min - r.s) * two_eta);
            break;
        }
    }
    CHECK(counts[0] == 50);
    CHECK(counts[1] == 50);
    CHECK(counts[2] == 50);
}

TEST_CASE("exponent grows with L and saturates at the transit point", "[asymptotic][property]")
{
    for (int nt = 1; nt <= 6; ++nt)
        for (int nr = 1; nr <= 6; ++nr)
            for (double eta : {0.05, 0.1, 0.2, 0.3, 0.5, 1.0, 2.5})
            {
                const SystemConfig base(nt, nr, 1, eta);
                const int ls = channel::transit_point(base);
                double prev = 0.0;
                for (int l = 1; l <= ls + 10; ++l)
                {
                    const double d = distortion_exponent(base.with_l(l));
                    CHECK(d >= prev);
                    if (l > ls)
                        CHECK(d == prev);
                    prev = d;
                }
                double saturated = 0.0;
                for (int k = 0; k < base.n_min(); ++k)
                    saturated += base.two_over_eta();
                CHECK(distortion_exponent(base.with_l(ls)) == saturated);
            }
}

TEST_CASE("high-regime factor decreases in L", "[asymptotic][property]")
{
    for (auto [nt, nr, eta] : {std::tuple{4, 2, 0.2}, std::tuple{2, 2, 0.5}, std::tuple{3, 5, 0.15}, std::tuple{1, 1, 0.1}})
    {
        const SystemConfig base(nt, nr, 1, eta);
        const int ls = channel::transit_point(base);
        double prev = std::numeric_limits<double>::infinity();
        for (int l = ls; l <= ls + 20; ++l)
        {
            const SystemConfig c = base.with_l(l);
            if (channel::classify_regime(c).kind != channel::RegimeKind::High)
                continue;
            const double mu = extend_to_L(c).mu_ln();
            CHECK(mu < prev);
            prev = mu;
        }
    }
}

TEST_CASE("finite-L asymptote stays above the infinite-L limit", "[asymptotic][property]")
{
    for (auto [nt, nr, eta] : {std::tuple{4, 2, 0.2}, std::tuple{2, 2, 0.5}, std::tuple{4, 4, 0.3}})
    {
        const SystemConfig base(nt, nr, 1, eta);
        const auto inf = infinite_l_asymptotic(base);
        for (int l = 1; l <= 16; ++l)
        {
            const auto a = extend_to_L(base.with_l(l));
            for (double rho : {1e2, 1e3, 1e4, 1e6})
            {
                INFO("nt=" << nt << " nr=" << nr << " L=" << l << " rho=" << rho);
                CHECK(a.ln_evaluate(rho) > inf.ln_evaluate(rho));
            }
        }
    }
}

TEST_CASE("lemma1_limit", "[asymptotic]")
{
    CHECK_THAT(lemma1_limit(1, 2.0), WithinRel(std::exp(2.0 * numerics::euler_gamma), 1e-14));
    CHECK_THAT(lemma1_limit(1, 2.0), WithinRel(3.1722, 1e-4));
    CHECK_THAT(lemma1_limit(2, 1.0), WithinRel(std::exp(numerics::euler_gamma - 1.0), 1e-14));
    CHECK_THAT(lemma1_limit(2, 1.0), WithinRel(0.65522, 1e-4));
    for (int n = 1; n <= 6; ++n)
        for (double a : {0.5, 2.0, 3.7})
            CHECK_THAT(lemma1_limit(n, a) * lemma1_limit(n, -a), WithinRel(1.0, 1e-14));
}

TEST_CASE("infinite_l_asymptotic", "[asymptotic]")
{
    const auto siso = infinite_l_asymptotic(SystemConfig(1, 1, 1, 0.5, 2.0));
    CHECK(siso.delta == 4.0);
    CHECK(siso.log_rho_power == 0);
    CHECK_THAT(siso.mu_ln(), WithinAbs(std::log(2.0) + 4.0 * numerics::euler_gamma, 1e-13));

    const auto m = infinite_l_asymptotic(SystemConfig(4, 2, 1, 0.2));
    CHECK(m.delta == 20.0);
    CHECK_THAT(m.mu_ln(), WithinAbs(20.0 * std::log(4.0) + 20.0 * numerics::euler_gamma - 10.0 * (1.5 + 11.0 / 6.0), 1e-12));

    // approached by the finite-L factor: ln(mu_L / mu_inf) = c/L + O(1/L^2), so one Richardson
    // step from L = 512 and 1024 lands on the limit
    const double at512 = extend_to_L(SystemConfig(4, 2, 512, 0.2)).mu_ln() - m.mu_ln();
    const double at1024 = extend_to_L(SystemConfig(4, 2, 1024, 0.2)).mu_ln() - m.mu_ln();
    CHECK(at1024 > 0.0);
    CHECK(at1024 < at512);
    CHECK_THAT(2.0 * at1024 - at512, WithinAbs(0.0, 1e-4));

    const auto cor = infinite_l_asymptotic(SystemConfig(4, 2, 1, 0.2), channel::Exponential{0.7});
    CHECK(cor.mu_ln() > m.mu_ln());
}

TEST_CASE("phi", "[asymptotic]")
{
    const SystemConfig c(4, 2, 1, 0.2);
    CHECK_THAT(phi(c, 1000000), WithinAbs(1.0, 1e-4));
    CHECK(phi(c, 1000000) < 1.0);
    // Gamma is not monotone below its minimum near 1.46, so phi dips from L = 4 to 5 before rising
    CHECK(phi(c, 5) < phi(c, 4));
    double prev = 0.0;
    for (int l = 4; l <= 64; ++l)
    {
        const double p = phi(c, l);
        CHECK(p < 1.0);
        if (l > 5)
            CHECK(p > prev);
        prev = p;
        // mu_L = ps nt^{2 n_min/eta} phi^L
        CHECK_THAT(extend_to_L(c.with_l(l)).mu_ln(), WithinAbs(20.0 * std::log(4.0) + l * std::log(p), 1e-9));
    }
    CHECK_THROWS_AS(phi(c, 3), std::domain_error);

    // with correlation
    const auto sig = channel::build_correlation(channel::Exponential{0.6}, 2).eigenvalues;
    for (int l = 4; l <= 8; ++l)
        CHECK_THAT(extend_to_L(c.with_l(l), sig).mu_ln(), WithinAbs(20.0 * std::log(4.0) + l * std::log(phi(c, l, sig)), 1e-9));
}

TEST_CASE("AsymptoticEED evaluation", "[asymptotic]")
{
    const auto a = extend_to_L(SystemConfig(4, 2, 1, 0.2));
    CHECK_THAT(a.evaluate(100.0), WithinRel(std::exp(a.mu_ln()) * 1e-16, 1e-12));
    // strictly decreasing above e
    double prev = a.evaluate(std::exp(1.0));
    for (double rho = 3.0; rho < 1e5; rho *= 1.5)
    {
        CHECK(a.evaluate(rho) < prev);
        prev = a.evaluate(rho);
    }
    CHECK(a.evaluate(1e300) == 0.0);
    CHECK(std::isfinite(a.ln_evaluate(1e300)));
    CHECK_THROWS_AS(a.evaluate(-1.0), std::domain_error);
}

TEST_CASE("high-regime correlated asymptote against sampling", "[asymptotic]")
{
    // beta = 1 keeps the per-draw variance finite at every SNR, so a modest sample suffices
    // (this is a cheap inline sampler independent of the montecarlo module)
    for (auto [nt, nr] : {std::pair{4, 2}, std::pair{2, 4}})
    {
        const SystemConfig c(nt, nr, 1, 2.0);
        const auto corr = channel::build_correlation(channel::Exponential{0.6}, 2);
        const auto root = numerics::matrix_sqrt_psd(corr.matrix);
        const double rho = 1e4;
        numerics::Rng rng(2718);
        double sum = 0.0, sum2 = 0.0;
        const int n = 200000;
        for (int i = 0; i < n; ++i)
        {
            const auto w = numerics::sample_complex_gaussian(rng, nr, nt);
            const auto h = nr <= nt ? root * w : w * root;
            const auto g = nr <= nt ? h * h.adjoint() : h.adjoint() * h;
            const double v = std::exp(-numerics::logdet_hermitian_pd(numerics::ComplexMatrix::identity(2) + (rho / nt) * g));
            sum += v;
            sum2 += v * v;
        }
        const double mean = sum / n, se = std::sqrt((sum2 / n - mean * mean) / n);
        const double asy = extend_to_L(c, corr.eigenvalues).evaluate(rho);
        INFO("nt=" << nt << " nr=" << nr << " mc=" << mean << " se=" << se << " asy=" << asy);
        CHECK(std::abs(mean - asy) < 4.0 * se + 0.01 * asy);
    }
}
