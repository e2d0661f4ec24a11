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

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

namespace eed::asymptotic
{
    using channel::RegimeKind;
    using numerics::ln_gamma;

    namespace
    {
        constexpr double parity_tolerance = 1e-9;
        constexpr double coincidence_tolerance = 1e-9;
        constexpr double distinct_gap = 1e-8;

        // Multiplies (power = +1) or divides (power = -1) v by Gamma(arg).
        void apply_gamma(LogValue &v, double arg, int power, const char *who, const char *factor, int k)
        {
            if (!(arg > 0.0))
            {
                std::ostringstream msg;
                msg << who << ": gamma pole, factor " << factor << " has argument " << arg;
                if (k > 0)
                    msg << " at k=" << k;
                throw std::domain_error(msg.str());
            }
            v.ln_magnitude += power * ln_gamma(arg);
        }

        void check_kappa_args(const char *who, int t, int m, int n)
        {
            if (t < 0 || m < 1 || n < m)
                throw std::domain_error(std::string(who) + ": need t >= 0 and n >= m >= 1");
        }

        std::vector<double> resolve_sigma(std::span<const double> sigma, int n_min)
        {
            if (sigma.empty())
                return std::vector<double>(n_min, 1.0);
            if (static_cast<int>(sigma.size()) != n_min)
                throw std::invalid_argument("expected " + std::to_string(n_min) + " correlation eigenvalues");
            for (double s : sigma)
                if (!(s > 0.0) || !std::isfinite(s))
                    throw std::invalid_argument("correlation eigenvalues must be positive");
            return {sigma.begin(), sigma.end()};
        }

        bool all_ones(const std::vector<double> &sigma)
        {
            return std::all_of(sigma.begin(), sigma.end(), [](double s) { return s == 1.0; });
        }

        void require_distinct(std::span<const double> sigma)
        {
            for (std::size_t i = 1; i < sigma.size(); ++i)
                if (!(sigma[i] - sigma[i - 1] >= distinct_gap))
                    throw numerics::DegenerateSpectrumError(
                        "correlated moderate-regime factor needs strictly ascending eigenvalues with gaps >= 1e-8");
        }

        // prod_k sigma_k^{-power}
        LogValue sigma_power(const std::vector<double> &sigma, double power)
        {
            double ln = 0.0;
            for (double s : sigma)
                ln -= power * std::log(s);
            return LogValue::from_ln(ln);
        }

        // Determinant of a row-major n x n real matrix by LU with partial pivoting.
        LogValue determinant(std::vector<double> a, std::size_t n)
        {
            LogValue det = LogValue::one();
            for (std::size_t k = 0; k < n; ++k)
            {
                std::size_t piv = k;
                for (std::size_t i = k + 1; i < n; ++i)
                    if (std::fabs(a[i * n + k]) > std::fabs(a[piv * n + k]))
                        piv = i;
                if (a[piv * n + k] == 0.0)
                    return LogValue::zero();
                if (piv != k)
                {
                    for (std::size_t j = 0; j < n; ++j)
                        std::swap(a[k * n + j], a[piv * n + j]);
                    det.sign = -det.sign;
                }
                const double p = a[k * n + k];
                det *= p;
                for (std::size_t i = k + 1; i < n; ++i)
                {
                    const double f = a[i * n + k] / p;
                    for (std::size_t j = k + 1; j < n; ++j)
                        a[i * n + j] -= f * a[k * n + j];
                }
            }
            return det;
        }

        std::vector<double> v3_exponents(std::size_t n, double beta, int dn)
        {
            std::vector<double> a(n);
            for (std::size_t j = 1; j <= n; ++j)
                a[j - 1] = -std::min(static_cast<double>(j) - 1.0, beta - dn - static_cast<double>(j));
            return a;
        }

        // In the moderate regime, beta + 1 - dn within tolerance of an even integer 2q selects the
        // ln(rho) branch with s = q; beta is snapped onto dn + 2q - 1.
        struct ModerateBranch
        {
            double beta;
            int s;
            bool log_branch;
        };

        ModerateBranch moderate_branch(double beta, int s, int dn, int n_min)
        {
            const double x = beta + 1.0 - dn;
            const double q = std::round(x / 2.0);
            if (std::fabs(x - 2.0 * q) <= parity_tolerance)
            {
                const int qs = std::clamp(static_cast<int>(q), 1, n_min);
                return {dn + 2.0 * qs - 1.0, qs, true};
            }
            return {beta, s, false};
        }

        LogValue nt_power(int nt, double exponent)
        {
            return LogValue::from_ln(exponent * std::log(static_cast<double>(nt)));
        }

        LogValue factorial_denominator(int n_min, int n_max)
        {
            LogValue d = LogValue::one();
            for (int k = 1; k <= n_min; ++k)
            {
                apply_gamma(d, n_max - k + 1.0, 1, "distortion_factor_1", "Gamma(Nmax-k+1)", k);
                apply_gamma(d, n_min - k + 1.0, 1, "distortion_factor_1", "Gamma(Nmin-k+1)", k);
            }
            return d;
        }
    } // namespace

    double AsymptoticEED::ln_evaluate(double rho) const
    {
        if (!(rho > 0.0))
            throw std::domain_error("AsymptoticEED: rho must be positive");
        const double ln_rho = std::log(rho);
        double v = mu.ln_magnitude - delta * ln_rho;
        if (log_rho_power > 0)
        {
            if (!(ln_rho > 0.0))
                throw std::domain_error("AsymptoticEED: the ln(rho) factor needs rho > 1");
            v += log_rho_power * std::log(ln_rho);
        }
        return v;
    }

    double AsymptoticEED::evaluate(double rho) const
    {
        if (mu.is_zero())
            return 0.0;
        if (log_rho_power > 0 && !(rho > 1.0))
        {
            if (!(rho > 0.0))
                throw std::domain_error("AsymptoticEED: rho must be positive");
            return mu.sign * std::pow(std::log(rho), log_rho_power) * std::exp(mu.ln_magnitude - delta * std::log(rho));
        }
        return mu.sign * std::exp(ln_evaluate(rho));
    }

    LogValue kappa_l(double beta, int t, int m, int n)
    {
        constexpr const char *who = "kappa_l";
        check_kappa_args(who, t, m, n);
        LogValue v = LogValue::one();
        if (t == 0)
            return v;
        const double b = beta - n + m;
        apply_gamma(v, n - m + 1.0, 1, who, "Gamma(n-m+1)", 0);
        apply_gamma(v, b - 1.0, 1, who, "Gamma(beta-n+m-1)", 0);
        apply_gamma(v, beta, -1, who, "Gamma(beta)", 0);
        for (int k = 2; k <= t; ++k)
        {
            apply_gamma(v, k, 1, who, "Gamma(k)", k);
            apply_gamma(v, n - m + static_cast<double>(k), 1, who, "Gamma(n-m+k)", k);
            apply_gamma(v, b - 2.0 * k + 2.0, 1, who, "Gamma(beta-n+m-2k+2)", k);
            apply_gamma(v, b - 2.0 * k + 1.0, 1, who, "Gamma(beta-n+m-2k+1)", k);
            apply_gamma(v, beta - k + 1.0, -1, who, "Gamma(beta-k+1)", k);
            apply_gamma(v, b - k + 1.0, -1, who, "Gamma(beta-n+m-k+1)", k);
        }
        return v;
    }

    LogValue kappa_h(double beta, int t, int m, int n)
    {
        constexpr const char *who = "kappa_h";
        check_kappa_args(who, t, m, n);
        LogValue v = LogValue::one();
        for (int k = 1; k <= t; ++k)
        {
            apply_gamma(v, k, 1, who, "Gamma(k)", k);
            apply_gamma(v, n - m - beta + k, 1, who, "Gamma(n-m-beta+k)", k);
        }
        return v;
    }

    double distortion_exponent_1(int nt, int nr, double eta_eff)
    {
        const SystemConfig cfg(nt, nr, 1, eta_eff);
        return distortion_exponent(cfg);
    }

    double distortion_exponent(const SystemConfig &config)
    {
        const double two_eta = config.two_over_eta();
        double delta = 0.0;
        for (int k = 1; k <= config.n_min(); ++k)
            delta += std::min(two_eta, static_cast<double>(config.l()) * (2 * k - 1 + config.dn()));
        return delta;
    }

    LogValue v3_determinant(std::span<const double> sigma, double beta, int dn)
    {
        require_distinct(sigma);
        const std::size_t n = sigma.size();
        const auto a = v3_exponents(n, beta, dn);
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                if (std::fabs(a[p] - a[q]) <= coincidence_tolerance)
                    return LogValue::zero();

        std::vector<double> m(n * n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                m[i * n + j] = std::pow(sigma[i], a[j]);
        return determinant(std::move(m), n);
    }

    LogValue correlation_multiplier(std::span<const double> sigma, double beta, int dn, int s)
    {
        require_distinct(sigma);
        const int n = static_cast<int>(sigma.size());
        if (s < 0 || s > n)
            throw std::domain_error("correlation_multiplier: s out of range");

        const auto a = v3_exponents(n, beta, dn);
        std::vector<int> partner(n, -1);
        int n_confluent = 0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q)
                if (partner[q] < 0 && std::fabs(a[p] - a[q]) <= coincidence_tolerance)
                {
                    partner[q] = p;
                    ++n_confluent;
                }

        LogValue numerator;
        if (n_confluent == 0)
            numerator = v3_determinant(sigma, beta, dn);
        else
        {
            std::vector<double> m(n * n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    m[i * n + j] = partner[j] < 0 ? std::pow(sigma[i], a[j])
                                                  : std::pow(sigma[i], a[partner[j]]) * std::log(sigma[i]);
            numerator = determinant(std::move(m), n);
        }
        if (s * (s - 1) / 2 % 2 == 1)
            numerator.sign = -numerator.sign;

        LogValue denominator = sigma_power(std::vector<double>(sigma.begin(), sigma.end()), -(dn + 1.0));
        for (int q = 1; q < n; ++q)
            for (int p = 0; p < q; ++p)
                denominator *= sigma[q] - sigma[p];

        LogValue poch = LogValue::one();
        int n_dropped = 0;
        for (int k = 1; k <= n - s; ++k)
        {
            poch *= numerics::pochhammer(k, s);
            if (n_confluent == 0)
                poch /= numerics::pochhammer(dn - beta + s + k, s);
            else
                for (int i = 0; i < s; ++i) // factors of (dn - beta + s + k)_s, each a_{s+k} - a_{i+1}
                {
                    const double f = dn - beta + s + k + i;
                    if (std::fabs(f) <= coincidence_tolerance)
                        ++n_dropped;
                    else
                        poch /= f;
                }
        }
        if (n_dropped != n_confluent)
            throw std::domain_error("correlation_multiplier: inconsistent coincident exponents");

        return numerator / denominator * poch;
    }

    DistortionFactor distortion_factor_1(const SystemConfig &config, std::span<const double> sigma_in)
    {
        const auto regime = channel::classify_regime(config);
        const int n_min = config.n_min(), n_max = config.n_max(), dn = config.dn();
        const auto sigma = resolve_sigma(sigma_in, n_min);
        const LogValue denom = factorial_denominator(n_min, n_max);

        double beta = regime.beta;
        DistortionFactor out;
        LogValue mu = LogValue::from_double(config.ps());
        switch (regime.kind)
        {
        case RegimeKind::High:
            mu *= nt_power(config.nt(), n_min * beta);
            mu *= kappa_h(beta, n_min, n_min, n_max);
            mu *= sigma_power(sigma, beta);
            mu /= denom;
            break;
        case RegimeKind::Low:
            mu *= nt_power(config.nt(), n_min * dn + n_min * n_min);
            mu *= kappa_l(beta, n_min, n_min, n_max);
            mu *= sigma_power(sigma, n_max);
            mu /= denom;
            break;
        case RegimeKind::Moderate:
        {
            const auto branch = moderate_branch(beta, regime.s, dn, n_min);
            beta = branch.beta;
            const int s = branch.s;
            const double delta1 = s * (s + dn) + (n_min - s) * beta;
            try
            {
                mu *= nt_power(config.nt(), delta1);
                mu *= kappa_l(beta, branch.log_branch ? s - 1 : s, n_min, n_max);
                mu *= kappa_h(beta - 2.0 * s, n_min - s, n_min, n_max);
            }
            catch (const std::domain_error &e)
            {
                std::ostringstream msg;
                msg << "moderate regime at beta=" << beta;
                if (beta == dn + 1.0)
                    msg << " (lower boundary |nt-nr|+1)";
                else if (beta == config.nt() + config.nr() - 1.0)
                    msg << " (upper boundary nt+nr-1)";
                msg << ": " << e.what();
                throw std::domain_error(msg.str());
            }
            mu /= denom;
            if (!all_ones(sigma))
                mu *= correlation_multiplier(sigma, beta, dn, s);
            out.log_rho_power = branch.log_branch ? 1 : 0;
            break;
        }
        }
        if (mu.sign <= 0)
            throw std::domain_error("distortion_factor_1: factor is not positive for this spectrum");
        out.mu = mu;
        return out;
    }

    AsymptoticEED extend_to_L(const SystemConfig &config, std::span<const double> sigma)
    {
        const auto f = distortion_factor_1(config, sigma);
        const int l = config.l();
        AsymptoticEED out;
        out.delta = distortion_exponent(config);
        out.mu = LogValue::from_double(config.ps()).pow(1.0 - l) * f.mu.pow(l);
        out.log_rho_power = f.log_rho_power * l;
        return out;
    }

    AsymptoticEED extend_to_L(const SystemConfig &config, const CorrelationSpec &corr)
    {
        const auto regime = channel::classify_regime(config);
        const bool distinct = regime.kind == RegimeKind::Moderate && !channel::is_identity(corr);
        const auto c = channel::build_correlation(corr, config.n_min(), distinct);
        return extend_to_L(config, c.eigenvalues);
    }

    double lemma1_limit(int n, double a)
    {
        if (n < 1)
            throw std::domain_error("lemma1_limit: n must be positive");
        return std::exp(a * numerics::euler_gamma + a / n - a * numerics::harmonic(n));
    }

    AsymptoticEED infinite_l_asymptotic(const SystemConfig &config, std::span<const double> sigma_in)
    {
        const int n_min = config.n_min(), dn = config.dn();
        const auto sigma = resolve_sigma(sigma_in, n_min);
        const double two_eta = config.two_over_eta();

        double harmonic_sum = 0.0;
        for (int k = 1; k <= n_min; ++k)
            harmonic_sum += numerics::harmonic(dn + k - 1);

        AsymptoticEED out;
        out.delta = n_min * two_eta;
        out.mu = LogValue::from_double(config.ps());
        out.mu *= nt_power(config.nt(), n_min * two_eta);
        out.mu *= LogValue::from_ln(two_eta * n_min * numerics::euler_gamma - two_eta * harmonic_sum);
        out.mu *= sigma_power(sigma, two_eta);
        return out;
    }

    AsymptoticEED infinite_l_asymptotic(const SystemConfig &config, const CorrelationSpec &corr)
    {
        return infinite_l_asymptotic(config, channel::build_correlation(corr, config.n_min()).eigenvalues);
    }

    double phi(const SystemConfig &config, int l, std::span<const double> sigma_in)
    {
        // L may exceed the SystemConfig range here (limit checks), so the regime test is inlined
        if (l < 1 || !(config.two_over_eta() < static_cast<double>(l) * (config.dn() + 1)))
            throw std::domain_error("phi: needs the high SCBR regime at L=" + std::to_string(l));
        const double beta = config.two_over_eta() / l;
        const auto sigma = resolve_sigma(sigma_in, config.n_min());
        LogValue v = sigma_power(sigma, beta);
        for (int k = 1; k <= config.n_min(); ++k)
        {
            apply_gamma(v, config.dn() - beta + k, 1, "phi", "Gamma(dn-beta+k)", k);
            apply_gamma(v, config.dn() + static_cast<double>(k), -1, "phi", "Gamma(dn+k)", k);
        }
        return v.to_double();
    }

} // namespace eed::asymptotic
