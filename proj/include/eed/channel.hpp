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

#include "eed/numerics.hpp"

#include <string_view>
#include <variant>
#include <vector>

namespace eed::channel
{
    inline constexpr int max_antennas = 8;
    inline constexpr int max_diversity = 1024;

    /// Link parameters of the wideband MIMO system: antenna counts, frequency diversity order L,
    /// source-to-channel bandwidth ratio (SCBR) eta = W_s / W_c and source power P_s.
    /// The SNR rho is passed per call. Construction validates all ranges and throws std::invalid_argument.
    class SystemConfig
    {
    public:
        SystemConfig(int nt, int nr, int l, double eta, double ps = 1.0);

        [[nodiscard]] int nt() const { return nt_; }
        [[nodiscard]] int nr() const { return nr_; }
        [[nodiscard]] int l() const { return l_; }
        [[nodiscard]] double eta() const { return eta_; }
        [[nodiscard]] double ps() const { return ps_; }

        [[nodiscard]] int n_min() const { return nt_ < nr_ ? nt_ : nr_; }
        [[nodiscard]] int n_max() const { return nt_ < nr_ ? nr_ : nt_; }
        [[nodiscard]] int dn() const { return n_max() - n_min(); }

        /// 2 / eta, the quantity every regime boundary is compared against (scaled by L).
        [[nodiscard]] double two_over_eta() const { return 2.0 / eta_; }

        /// beta = 2 / (L eta).
        [[nodiscard]] double beta() const { return two_over_eta() / l_; }

        [[nodiscard]] SystemConfig with_l(int l) const { return {nt_, nr_, l, eta_, ps_}; }
        [[nodiscard]] SystemConfig with_eta(double eta) const { return {nt_, nr_, l_, eta, ps_}; }

    private:
        int nt_;
        int nr_;
        int l_;
        double eta_;
        double ps_;
    };

    // ---------------------------------------------------------------------
    // Spatial correlation

    struct Identity
    {
    };

    /// Sigma_ij = r^|i-j| with r in (0, 1).
    struct Exponential
    {
        double r;
    };

    /// Spectrum given directly; strictly ascending, positive, summing to the dimension.
    struct ExplicitEigenvalues
    {
        std::vector<double> sigma;
    };

    using CorrelationSpec = std::variant<Identity, Exponential, ExplicitEigenvalues>;

    struct Correlation
    {
        numerics::ComplexMatrix matrix;   // unit diagonal
        std::vector<double> eigenvalues;  // ascending
    };

    /// Builds the n_min x n_min correlation matrix and its spectrum.
    ///
    /// For explicit eigenvalues a real unit-diagonal matrix with that spectrum is constructed by
    /// successive plane rotations of diag(sigma). With require_distinct set, a spectrum whose smallest
    /// gap is below 1e-8 raises numerics::DegenerateSpectrumError. Invalid specs raise std::invalid_argument.
    Correlation build_correlation(const CorrelationSpec &spec, int dim, bool require_distinct = false);

    [[nodiscard]] bool is_identity(const CorrelationSpec &spec);

    // ---------------------------------------------------------------------
    // SCBR regimes

    enum class RegimeKind
    {
        Low,
        Moderate,
        High
    };

    std::string_view to_string(RegimeKind kind);

    /// Regime of beta = 2/(L eta): Low above nt+nr-1, High below |nt-nr|+1, Moderate on the closed
    /// interval in between. s is only meaningful for Moderate (and is 0 otherwise).
    struct Regime
    {
        RegimeKind kind;
        double beta;
        int s = 0;
    };

    /// Comparisons are made as 2/eta against L times the integer boundaries, so integer-valued
    /// boundary hits are exact.
    Regime classify_regime(const SystemConfig &config);

    /// Smallest L with 2/(L eta) <= |nt-nr|+1, i.e. ceil(2 / (eta (|nt-nr|+1))). config.l() is ignored.
    int transit_point(const SystemConfig &config);

} // namespace eed::channel
