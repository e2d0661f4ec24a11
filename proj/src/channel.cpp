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

#include "eed/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace eed::channel
{
    using numerics::ComplexMatrix;

    SystemConfig::SystemConfig(int nt, int nr, int l, double eta, double ps)
        : nt_(nt), nr_(nr), l_(l), eta_(eta), ps_(ps)
    {
        if (nt < 1 || nt > max_antennas || nr < 1 || nr > max_antennas)
            throw std::invalid_argument("SystemConfig: antenna counts must lie in [1, " + std::to_string(max_antennas) + "]");
        if (l < 1 || l > max_diversity)
            throw std::invalid_argument("SystemConfig: diversity order L must lie in [1, " + std::to_string(max_diversity) + "]");
        if (!(eta > 0.0) || !std::isfinite(eta))
            throw std::invalid_argument("SystemConfig: eta must be positive and finite");
        if (!(ps > 0.0) || !std::isfinite(ps))
            throw std::invalid_argument("SystemConfig: ps must be positive and finite");
    }

    namespace
    {
        constexpr double distinct_gap = 1e-8;

        ComplexMatrix exponential_matrix(double r, int dim)
        {
            ComplexMatrix m(dim, dim);
            for (int i = 0; i < dim; ++i)
                for (int j = 0; j < dim; ++j)
                    m(i, j) = std::pow(r, std::abs(i - j));
            return m;
        }

        // Rotates diag(sigma) in coordinate planes until every diagonal entry is one. Each rotation
        // pairs an entry below one with an entry above one and fixes the former, so at most dim-1
        // rotations are needed; the trace (= dim) keeps a partner available.
        ComplexMatrix unit_diagonal_with_spectrum(const std::vector<double> &sigma)
        {
            const std::size_t n = sigma.size();
            std::vector<double> a(n * n, 0.0);
            auto at = [&](std::size_t i, std::size_t j) -> double & { return a[i * n + j]; };
            for (std::size_t i = 0; i < n; ++i)
                at(i, i) = sigma[i];

            constexpr double tol = 1e-14;
            for (std::size_t step = 0; step < n; ++step)
            {
                std::size_t lo = n, hi = n;
                for (std::size_t k = 0; k < n; ++k)
                {
                    if (at(k, k) < 1.0 - tol && (lo == n || at(k, k) < at(lo, lo)))
                        lo = k;
                    if (at(k, k) > 1.0 + tol && (hi == n || at(k, k) > at(hi, hi)))
                        hi = k;
                }
                if (lo == n || hi == n)
                    break;

                const double aii = at(lo, lo), ajj = at(hi, hi), aij = at(lo, hi);
                const double disc = aij * aij - (aii - 1.0) * (ajj - 1.0);
                const double t = (aij + std::sqrt(disc)) / (ajj - 1.0);
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t k = 0; k < n; ++k)
                {
                    const double aki = at(k, lo), akj = at(k, hi);
                    at(k, lo) = c * aki - s * akj;
                    at(k, hi) = s * aki + c * akj;
                }
                for (std::size_t k = 0; k < n; ++k)
                {
                    const double aik = at(lo, k), ajk = at(hi, k);
                    at(lo, k) = c * aik - s * ajk;
                    at(hi, k) = s * aik + c * ajk;
                }
                at(lo, lo) = 1.0;
            }

            ComplexMatrix m(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j)
                    m(i, j) = i == j ? 1.0 : 0.5 * (at(i, j) + at(j, i));
            return m;
        }

        void check_distinct(const std::vector<double> &ev)
        {
            for (std::size_t i = 1; i < ev.size(); ++i)
                if (ev[i] - ev[i - 1] < distinct_gap)
                    throw numerics::DegenerateSpectrumError(
                        "correlation spectrum has eigenvalues closer than 1e-8; the correlated moderate-regime factor needs distinct eigenvalues");
        }
    } // namespace

    bool is_identity(const CorrelationSpec &spec)
    {
        return std::holds_alternative<Identity>(spec);
    }

    Correlation build_correlation(const CorrelationSpec &spec, int dim, bool require_distinct)
    {
        if (dim < 1)
            throw std::invalid_argument("build_correlation: dimension must be positive");

        Correlation out;
        if (std::holds_alternative<Identity>(spec))
        {
            out.matrix = ComplexMatrix::identity(dim);
            out.eigenvalues.assign(dim, 1.0);
        }
        else if (const auto *ex = std::get_if<Exponential>(&spec))
        {
            if (!(ex->r > 0.0 && ex->r < 1.0))
                throw std::invalid_argument("build_correlation: exponential correlation needs r in (0, 1)");
            out.matrix = exponential_matrix(ex->r, dim);
            out.eigenvalues = numerics::hermitian_eigenvalues(out.matrix);
        }
        else
        {
            const auto &sigma = std::get<ExplicitEigenvalues>(spec).sigma;
            if (static_cast<int>(sigma.size()) != dim)
                throw std::invalid_argument("build_correlation: expected " + std::to_string(dim) + " eigenvalues, got " +
                                            std::to_string(sigma.size()));
            for (std::size_t i = 0; i < sigma.size(); ++i)
            {
                if (!(sigma[i] > 0.0) || !std::isfinite(sigma[i]))
                    throw std::invalid_argument("build_correlation: eigenvalues must be positive");
                if (i > 0 && !(sigma[i] > sigma[i - 1]))
                    throw std::invalid_argument("build_correlation: eigenvalues must be strictly ascending");
            }
            const double sum = std::accumulate(sigma.begin(), sigma.end(), 0.0);
            if (std::fabs(sum - dim) > 1e-9 * dim)
                throw std::invalid_argument("build_correlation: eigenvalues must sum to the dimension (unit diagonal)");
            out.eigenvalues = sigma;
            for (auto &s : out.eigenvalues)
                s *= dim / sum;
            out.matrix = unit_diagonal_with_spectrum(out.eigenvalues);
        }

        if (require_distinct)
            check_distinct(out.eigenvalues);
        return out;
    }

    std::string_view to_string(RegimeKind kind)
    {
        switch (kind)
        {
        case RegimeKind::Low:
            return "low";
        case RegimeKind::Moderate:
            return "moderate";
        case RegimeKind::High:
            return "high";
        }
        return "unknown";
    }

    Regime classify_regime(const SystemConfig &config)
    {
        const double two_eta = config.two_over_eta();
        const double l = config.l();
        const int dn = config.dn();

        Regime r{RegimeKind::Moderate, config.beta(), 0};
        if (two_eta > l * (config.nt() + config.nr() - 1))
            r.kind = RegimeKind::Low;
        else if (two_eta < l * (dn + 1))
            r.kind = RegimeKind::High;
        else
        {
            // s = floor((beta + 1 - dn) / 2), counted as the number of k with 2k-1+dn <= beta.
            for (int k = 1; k <= config.n_min(); ++k)
                if (l * (2 * k - 1 + dn) <= two_eta)
                    r.s = k;
        }
        return r;
    }

    int transit_point(const SystemConfig &config)
    {
        const double x = std::ceil(config.two_over_eta() / (config.dn() + 1));
        if (x > std::numeric_limits<int>::max())
            throw std::domain_error("transit_point: L* exceeds the integer range");
        return std::max(1, static_cast<int>(x));
    }

} // namespace eed::channel
