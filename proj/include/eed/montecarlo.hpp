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

#include <cstdint>
#include <span>
#include <vector>

namespace eed::mc
{
    using channel::CorrelationSpec;
    using channel::SystemConfig;
    using numerics::ComplexMatrix;

    struct MCEstimate
    {
        double mean = 0.0;
        double std_error = 0.0;
        std::uint64_t n_samples = 0;

        [[nodiscard]] double relative_error() const { return mean != 0.0 ? std_error / mean : 0.0; }
    };

    /// Seed and partitioning of a Monte Carlo run.
    ///
    /// The draws are split into n_streams independent generators; stream i is seeded with
    /// seed ^ splitmix64(i). Every stream takes ceil(n_samples / n_streams) draws, so the effective
    /// sample count is rounded up to a multiple of n_streams. Results depend on (seed, n_samples,
    /// n_streams) only; n_threads (0 = EED_THREADS or the logical CPU count) changes wall time, not output.
    struct SampleSpec
    {
        std::uint64_t seed = 1;
        std::uint64_t n_samples = 100000;
        std::uint32_t n_streams = 8;
        unsigned n_threads = 0;

        [[nodiscard]] std::uint64_t per_stream() const;
        [[nodiscard]] std::uint64_t total() const { return per_stream() * n_streams; }
    };

    std::uint64_t splitmix64(std::uint64_t x);
    std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

    /// Worker count for a spec: n_threads if set, else EED_THREADS if it parses as a positive
    /// integer, else std::thread::hardware_concurrency().
    unsigned worker_threads(const SampleSpec &spec);

    /// Streaming (count, mean, M2) moments with pairwise merging.
    class Accumulator
    {
    public:
        void push(double x)
        {
            ++n_;
            const double delta = x - mean_;
            mean_ += delta / static_cast<double>(n_);
            m2_ += delta * (x - mean_);
        }

        void merge(const Accumulator &other);

        [[nodiscard]] std::uint64_t count() const { return n_; }
        [[nodiscard]] double mean() const { return mean_; }
        [[nodiscard]] double m2() const { return m2_; }
        [[nodiscard]] double variance() const; // unbiased, 0 for fewer than two samples
        [[nodiscard]] double std_error() const;

        [[nodiscard]] MCEstimate estimate() const { return {mean_, std_error(), n_}; }

    private:
        std::uint64_t n_ = 0;
        double mean_ = 0.0;
        double m2_ = 0.0;
    };

    /// Left fold of Accumulator::merge in the given order. Throws std::domain_error on an empty list.
    Accumulator merge_accumulators(std::span<const Accumulator> parts);
    MCEstimate merge_estimates(std::span<const Accumulator> parts);

    // ---------------------------------------------------------------------

    /// Draws H = Sigma^{1/2} H_w (or H_w Sigma^{1/2} when nt < nr) with H_w i.i.d. CN(0,1), where
    /// Sigma is the n_min x n_min correlation matrix, and evaluates ln det(I + rho/nt H H^H) on the
    /// n_min-sized Gram matrix.
    class ChannelSampler
    {
    public:
        ChannelSampler(const SystemConfig &config, const CorrelationSpec &corr);

        const ComplexMatrix &draw(numerics::Rng &rng);
        double logdet(const ComplexMatrix &h, double rho);
        double draw_logdet(numerics::Rng &rng, double rho) { return logdet(draw(rng), rho); }

    private:
        int nt_;
        int nr_;
        bool colored_;
        ComplexMatrix root_;
        ComplexMatrix white_;
        ComplexMatrix h_;
        ComplexMatrix gram_;
    };

    /// Per-draw functional of ln det(I + rho/nt H H^H).
    struct Statistic
    {
        enum class Kind
        {
            DetPower, // exp(-exponent * lndet) = det^{-exponent}, clamped to the smallest normal double
            Log2Det   // log2 det
        };
        Kind kind;
        double exponent = 0.0;

        static Statistic det_power(double exponent) { return {Kind::DetPower, exponent}; }
        static Statistic log2_det() { return {Kind::Log2Det, 0.0}; }
    };

    /// Runs all streams and returns one merged accumulator per statistic. All statistics see the
    /// same channel draws.
    std::vector<Accumulator> accumulate(const SystemConfig &config, const CorrelationSpec &corr, double rho,
                                        const SampleSpec &spec, std::span<const Statistic> stats);

    /// D* = ps prod_l det(I + rho/nt H_l H_l^H)^{-2/(L eta)} for one realization of the L subchannels.
    double instant_distortion(std::span<const ComplexMatrix> h_list, const SystemConfig &config, double rho);

    /// ps^{1-L} ed1^L. Used to lift a single-subchannel expectation to diversity order L.
    double diversity_composition(double ed1, double ps, int l);

    /// Expected distortion at diversity L from the inner mean m of det^{-2/(L eta)}:
    /// mean = ps^{1-L} (ps m)^L, std_error = ps L m^{L-1} se(m) (first-order delta method; it
    /// understates the error once L se(m)/m exceeds about 0.1).
    MCEstimate eed_from_inner(const Accumulator &inner, double ps, int l);

    MCEstimate estimate_eed(const SystemConfig &config, const CorrelationSpec &corr, double rho, const SampleSpec &spec);

    /// estimate_eed for several diversity orders on one shared set of draws (config.l() is ignored).
    std::vector<MCEstimate> estimate_eed_multi(const SystemConfig &config, const CorrelationSpec &corr, double rho,
                                               const SampleSpec &spec, std::span<const int> l_values);

    /// E log2 det(I + rho/nt H H^H), in bits per two-dimensional channel use (no 2 W_c factor).
    MCEstimate estimate_ergodic_capacity(const SystemConfig &config, const CorrelationSpec &corr, double rho,
                                         const SampleSpec &spec);

    /// ps 2^{-(2/eta) c} from a capacity estimate c, with delta-method error (2/eta) ln2 value se(c).
    MCEstimate infinite_l_bound_from_capacity(const SystemConfig &config, const MCEstimate &capacity);

    MCEstimate infinite_l_bound_mc(const SystemConfig &config, const CorrelationSpec &corr, double rho,
                                   const SampleSpec &spec);

} // namespace eed::mc
