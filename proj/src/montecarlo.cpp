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

#include "eed/montecarlo.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <numbers>
#include <string_view>
#include <thread>

namespace eed::mc
{
    std::uint64_t SampleSpec::per_stream() const
    {
        if (n_streams == 0)
            throw std::invalid_argument("SampleSpec: n_streams must be positive");
        if (n_samples == 0)
            throw std::invalid_argument("SampleSpec: n_samples must be positive");
        return (n_samples + n_streams - 1) / n_streams;
    }

    std::uint64_t splitmix64(std::uint64_t x)
    {
        std::uint64_t z = x + 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream)
    {
        return seed ^ splitmix64(stream);
    }

    unsigned worker_threads(const SampleSpec &spec)
    {
        if (spec.n_threads > 0)
            return spec.n_threads;
        if (const char *env = std::getenv("EED_THREADS"))
        {
            const std::string_view s(env);
            unsigned v = 0;
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec == std::errc() && ptr == s.data() + s.size() && v > 0)
                return v;
        }
        return std::max(1u, std::thread::hardware_concurrency());
    }

    // ---------------------------------------------------------------------

    void Accumulator::merge(const Accumulator &other)
    {
        if (other.n_ == 0)
            return;
        if (n_ == 0)
        {
            *this = other;
            return;
        }
        const double na = static_cast<double>(n_);
        const double nb = static_cast<double>(other.n_);
        const double n = na + nb;
        const double delta = other.mean_ - mean_;
        mean_ += delta * (nb / n);
        m2_ += other.m2_ + delta * delta * (na * nb / n);
        n_ += other.n_;
    }

    double Accumulator::variance() const
    {
        return n_ < 2 ? 0.0 : m2_ / static_cast<double>(n_ - 1);
    }

    double Accumulator::std_error() const
    {
        return n_ < 2 ? 0.0 : std::sqrt(variance() / static_cast<double>(n_));
    }

    Accumulator merge_accumulators(std::span<const Accumulator> parts)
    {
        if (parts.empty())
            throw std::domain_error("merge_estimates: no accumulators to merge");
        Accumulator out = parts.front();
        for (std::size_t i = 1; i < parts.size(); ++i)
            out.merge(parts[i]);
        return out;
    }

    MCEstimate merge_estimates(std::span<const Accumulator> parts)
    {
        return merge_accumulators(parts).estimate();
    }

    // ---------------------------------------------------------------------

    ChannelSampler::ChannelSampler(const SystemConfig &config, const CorrelationSpec &corr)
        : nt_(config.nt()), nr_(config.nr()), colored_(!channel::is_identity(corr)),
          white_(config.nr(), config.nt()), h_(config.nr(), config.nt()),
          gram_(config.n_min(), config.n_min())
    {
        if (colored_)
            root_ = numerics::matrix_sqrt_psd(channel::build_correlation(corr, config.n_min()).matrix);
    }

    const ComplexMatrix &ChannelSampler::draw(numerics::Rng &rng)
    {
        if (!colored_)
        {
            numerics::fill_complex_gaussian(rng, h_);
            return h_;
        }
        numerics::fill_complex_gaussian(rng, white_);
        for (int i = 0; i < nr_; ++i)
            for (int j = 0; j < nt_; ++j)
            {
                numerics::cdouble x = 0.0;
                if (nr_ <= nt_) // Sigma^{1/2} H_w, Sigma is nr x nr
                    for (int k = 0; k < nr_; ++k)
                        x += root_(i, k) * white_(k, j);
                else // H_w Sigma^{1/2}, Sigma is nt x nt
                    for (int k = 0; k < nt_; ++k)
                        x += white_(i, k) * root_(k, j);
                h_(i, j) = x;
            }
        return h_;
    }

    double ChannelSampler::logdet(const ComplexMatrix &h, double rho)
    {
        const double scale = rho / nt_;
        const std::size_t n = gram_.rows();
        // det(I + c H H^H) = det(I + c H^H H); factor the smaller of the two.
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j <= i; ++j)
            {
                numerics::cdouble x = 0.0;
                if (nr_ <= nt_)
                    for (int k = 0; k < nt_; ++k)
                        x += h(i, k) * std::conj(h(j, k));
                else
                    for (int k = 0; k < nr_; ++k)
                        x += std::conj(h(k, i)) * h(k, j);
                gram_(i, j) = scale * x + (i == j ? 1.0 : 0.0);
            }
        return numerics::logdet_hermitian_pd_inplace(gram_);
    }

    // ---------------------------------------------------------------------

    namespace
    {
        void push_statistics(std::span<const Statistic> stats, std::span<Accumulator> acc, double lndet)
        {
            for (std::size_t s = 0; s < stats.size(); ++s)
            {
                double v;
                if (stats[s].kind == Statistic::Kind::DetPower)
                    v = std::max(std::exp(-stats[s].exponent * lndet), std::numeric_limits<double>::min());
                else
                    v = lndet * std::numbers::log2e;
                acc[s].push(v);
            }
        }

        void check_rho(double rho)
        {
            if (!(rho >= 0.0) || !std::isfinite(rho))
                throw std::domain_error("rho must be a finite non-negative number");
        }
    } // namespace

    std::vector<Accumulator> accumulate(const SystemConfig &config, const CorrelationSpec &corr, double rho,
                                        const SampleSpec &spec, std::span<const Statistic> stats)
    {
        check_rho(rho);
        const std::uint64_t per_stream = spec.per_stream();
        const std::size_t n_streams = spec.n_streams;
        const ChannelSampler prototype(config, corr);

        std::vector<std::vector<Accumulator>> partial(n_streams, std::vector<Accumulator>(stats.size()));
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mutex;

        auto worker = [&]
        {
            try
            {
                for (std::size_t i = next++; i < n_streams; i = next++)
                {
                    ChannelSampler sampler = prototype;
                    numerics::Rng rng(stream_seed(spec.seed, i));
                    for (std::uint64_t d = 0; d < per_stream; ++d)
                        push_statistics(stats, partial[i], sampler.draw_logdet(rng, rho));
                }
            }
            catch (...)
            {
                std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
            }
        };

        const unsigned n_workers = std::min<unsigned>(worker_threads(spec), static_cast<unsigned>(n_streams));
        if (n_workers <= 1)
            worker();
        else
        {
            std::vector<std::jthread> pool;
            pool.reserve(n_workers);
            for (unsigned t = 0; t < n_workers; ++t)
                pool.emplace_back(worker);
        }
        if (failure)
            std::rethrow_exception(failure);

        // Fixed merge order keeps results independent of thread scheduling.
        std::vector<Accumulator> out(stats.size());
        for (std::size_t i = 0; i < n_streams; ++i)
            for (std::size_t s = 0; s < stats.size(); ++s)
                out[s].merge(partial[i][s]);
        return out;
    }

    double instant_distortion(std::span<const ComplexMatrix> h_list, const SystemConfig &config, double rho)
    {
        check_rho(rho);
        if (static_cast<int>(h_list.size()) != config.l())
            throw std::domain_error("instant_distortion: expected " + std::to_string(config.l()) + " subchannel matrices");
        const double c = rho / config.nt();
        double lndet_sum = 0.0;
        for (const auto &h : h_list)
        {
            if (static_cast<int>(h.rows()) != config.nr() || static_cast<int>(h.cols()) != config.nt())
                throw std::domain_error("instant_distortion: subchannel matrix must be nr x nt");
            const ComplexMatrix m = ComplexMatrix::identity(h.rows()) + c * (h * h.adjoint());
            lndet_sum += numerics::logdet_hermitian_pd(m);
        }
        return config.ps() * std::exp(-config.beta() * lndet_sum);
    }

    double diversity_composition(double ed1, double ps, int l)
    {
        return std::pow(ps, 1 - l) * std::pow(ed1, l);
    }

    MCEstimate eed_from_inner(const Accumulator &inner, double ps, int l)
    {
        const double m = inner.mean();
        MCEstimate e;
        e.mean = diversity_composition(ps * m, ps, l);
        e.std_error = ps * l * std::pow(m, l - 1) * inner.std_error();
        e.n_samples = inner.count();
        return e;
    }

    std::vector<MCEstimate> estimate_eed_multi(const SystemConfig &config, const CorrelationSpec &corr, double rho,
                                               const SampleSpec &spec, std::span<const int> l_values)
    {
        check_rho(rho);
        std::vector<MCEstimate> out;
        out.reserve(l_values.size());
        if (rho == 0.0) // every determinant is 1
        {
            for (std::size_t i = 0; i < l_values.size(); ++i)
                out.push_back({config.ps(), 0.0, spec.total()});
            return out;
        }
        std::vector<Statistic> stats;
        for (int l : l_values)
            stats.push_back(Statistic::det_power(config.with_l(l).beta()));
        const auto acc = accumulate(config, corr, rho, spec, stats);
        for (std::size_t i = 0; i < l_values.size(); ++i)
            out.push_back(eed_from_inner(acc[i], config.ps(), l_values[i]));
        return out;
    }

    MCEstimate estimate_eed(const SystemConfig &config, const CorrelationSpec &corr, double rho, const SampleSpec &spec)
    {
        const int l = config.l();
        return estimate_eed_multi(config, corr, rho, spec, std::span<const int>(&l, 1)).front();
    }

    MCEstimate estimate_ergodic_capacity(const SystemConfig &config, const CorrelationSpec &corr, double rho,
                                         const SampleSpec &spec)
    {
        const Statistic stat = Statistic::log2_det();
        return accumulate(config, corr, rho, spec, std::span<const Statistic>(&stat, 1)).front().estimate();
    }

    MCEstimate infinite_l_bound_from_capacity(const SystemConfig &config, const MCEstimate &capacity)
    {
        const double value = config.ps() * std::exp2(-config.two_over_eta() * capacity.mean);
        return {value, config.two_over_eta() * std::numbers::ln2 * value * capacity.std_error, capacity.n_samples};
    }

    MCEstimate infinite_l_bound_mc(const SystemConfig &config, const CorrelationSpec &corr, double rho,
                                   const SampleSpec &spec)
    {
        return infinite_l_bound_from_capacity(config, estimate_ergodic_capacity(config, corr, rho, spec));
    }

} // namespace eed::mc
