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

#pragma once

#include "eed/channel.hpp"
#include "eed/numerics.hpp"

#include <span>
#include <vector>

// High-SNR closed forms for the optimum expected end-to-end distortion (EED).
//
// The expected distortion at diversity L behaves as mu * (ln rho)^p * rho^{-delta}. Everything here is
// evaluated from beta = 2/(L eta): the single-subchannel factor mu*_1 depends on the link only through
// beta, and the L-subchannel result follows from ED_L(eta) = ps^{1-L} ED_1(L eta)^L.

namespace eed::asymptotic
{
    using channel::CorrelationSpec;
    using channel::SystemConfig;
    using numerics::LogValue;

    /// mu * (ln rho)^log_rho_power * rho^{-delta}.
    struct AsymptoticEED
    {
        LogValue mu;
        int log_rho_power = 0;
        double delta = 0.0;

        [[nodiscard]] double mu_ln() const { return mu.ln_magnitude; }

        /// ln of the evaluated value. Requires ln rho > 0 when log_rho_power > 0.
        [[nodiscard]] double ln_evaluate(double rho) const;

        /// Linear value; may overflow to inf or underflow to 0 for extreme rho.
        [[nodiscard]] double evaluate(double rho) const;
    };

    /// Low-SCBR gamma product (three branches t > 1, t = 1, t = 0), in log domain.
    /// Throws std::domain_error naming the factor whose gamma argument is not positive.
    LogValue kappa_l(double beta, int t, int m, int n);

    /// High-SCBR gamma product prod_{k=1}^t Gamma(k) Gamma(n - m - beta + k), in log domain.
    LogValue kappa_h(double beta, int t, int m, int n);

    /// Delta*_1 = sum_{k=1}^{n_min} min{2/eta_eff, 2k-1+|nt-nr|}. Does not depend on correlation.
    double distortion_exponent_1(int nt, int nr, double eta_eff);

    /// Exponent at diversity L, sum_k min{2/eta, L (2k-1+|nt-nr|)}; equal to L Delta*_1(L eta) but
    /// exact for integer-valued 2/eta.
    double distortion_exponent(const SystemConfig &config);

    struct DistortionFactor
    {
        LogValue mu;
        int log_rho_power = 0;
    };

    /// Single-subchannel distortion factor mu*_1 at beta = config.beta(), P_s included.
    ///
    /// For mu*_1(eta_eff) pass a config with l = 1 and eta = eta_eff; passing the original config gives
    /// mu*_1(L eta). sigma holds the n_min ascending correlation eigenvalues (empty = uncorrelated).
    /// An all-ones sigma takes the uncorrelated path. In the moderate regime a non-identity sigma needs
    /// distinct eigenvalues (numerics::DegenerateSpectrumError otherwise).
    DistortionFactor distortion_factor_1(const SystemConfig &config, std::span<const double> sigma = {});

    /// det V3 with v_ij = sigma_i^{-min{j-1, beta-dn-j}}. Columns whose exponents coincide make the
    /// determinant exactly zero. Throws numerics::DegenerateSpectrumError if sigma is not strictly
    /// ascending with gaps of at least 1e-8.
    LogValue v3_determinant(std::span<const double> sigma, double beta, int dn);

    /// Correlation multiplier mu*_1,cor / mu*_1,unc in the moderate regime:
    ///   (-1)^{s(s-1)/2} |V3| / (prod sigma_k^{dn+1} prod_{m<n}(sigma_n - sigma_m))
    ///     * prod_{k=1}^{n_min-s} (k)_s / (dn - beta + s + k)_s.
    /// When beta makes a column of V3 coincide with another, |V3| and one factor of the denominator
    /// vanish together; the removable singularity is evaluated as its limit (the coinciding column is
    /// replaced by its exponent derivative sigma^a ln sigma, and the zero factor is dropped).
    LogValue correlation_multiplier(std::span<const double> sigma, double beta, int dn, int s);

    /// mu_L = ps^{1-L} mu*_1(L eta)^L with exponent L Delta*_1(L eta). In the moderate log branch the
    /// ln rho factor is raised to the L-th power with the rest of mu*_1, so log_rho_power = L.
    AsymptoticEED extend_to_L(const SystemConfig &config, std::span<const double> sigma = {});
    AsymptoticEED extend_to_L(const SystemConfig &config, const CorrelationSpec &corr);

    /// lim_{L->inf} [Gamma(n - a/L) / Gamma(n)]^L = exp(a gamma + a/n - a H_n).
    double lemma1_limit(int n, double a);

    /// Infinite-diversity limit: delta = 2 n_min / eta and
    /// mu = ps nt^{2 n_min/eta} exp(2 gamma n_min/eta - (2/eta) sum_k H_{dn+k-1}) prod sigma_k^{-2/eta}.
    AsymptoticEED infinite_l_asymptotic(const SystemConfig &config, std::span<const double> sigma = {});
    AsymptoticEED infinite_l_asymptotic(const SystemConfig &config, const CorrelationSpec &corr);

    /// phi(L) = prod_k sigma_k^{-2/(L eta)} Gamma(dn - 2/(L eta) + k) / Gamma(dn + k), so that in the
    /// high regime mu_L = ps nt^{2 n_min/eta} phi(L)^L. Needs the high regime at L (else std::domain_error).
    double phi(const SystemConfig &config, int l, std::span<const double> sigma = {});

} // namespace eed::asymptotic
