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
#include "eed/montecarlo.hpp"

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eed::cli
{
    /// Bad flags or flag values (exit code 2).
    class UsageError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    /// File system failures (exit code 4).
    class IoError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    enum ExitCode : int
    {
        exit_ok = 0,
        exit_usage = 2,
        exit_domain = 3,
        exit_io = 4
    };

    /// start:stop:step in dB, inclusive of stop when it lies on the grid.
    struct SnrGrid
    {
        double start = 0.0;
        double stop = 40.0;
        double step = 5.0;

        [[nodiscard]] std::vector<double> points() const;
    };

    /// rho = 10^(snr_db / 10).
    double db_to_linear(double snr_db);

    struct OutputSet
    {
        bool mc = false;
        bool asy = false;
        bool inf_mc = false;
        bool inf_asy = false;

        [[nodiscard]] bool any_mc() const { return mc || inf_mc; }
    };

    SnrGrid parse_snr_grid(std::string_view text);
    std::vector<int> parse_l_list(std::string_view text);
    OutputSet parse_outputs(std::string_view text);

    /// identity | exp:<r> | eig:<s1>,<s2>,...
    channel::CorrelationSpec parse_correlation(std::string_view text);

    struct SweepRequest
    {
        int nt = 4;
        int nr = 2;
        double eta = 0.2;
        double ps = 1.0;
        SnrGrid snr;
        std::vector<int> l_values{1};
        channel::CorrelationSpec corr = channel::Identity{};
        mc::SampleSpec sample;
        OutputSet outputs;
    };

    /// Exact CSV header shared by all commands.
    inline constexpr std::string_view csv_header =
        "snr_db,rho,L,regime,s,delta,mu_ln,log_rho_power,ed_asy,ed_mc,ed_mc_stderr,inf_mc,inf_asy,n_samples";

    /// MC relative standard errors above this produce a '#' warning line.
    inline constexpr double warn_relative_error = 0.05;

    /// One row per (snr_db, L), SNR-major. MC columns for all L share one set of draws per SNR point.
    void cmd_sweep(const SweepRequest &request, std::ostream &out);

    /// Regime report, e.g. "moderate, s=1, beta=3.33333333333, L*=4, L>=L*: no".
    void cmd_regime(int nt, int nr, double eta, int l, std::ostream &out);

    /// One row per SNR point with the infinite-diversity bounds (inf_mc, inf_asy); L is left empty.
    void cmd_limit(const SweepRequest &request, std::ostream &out);

    struct FiguresRequest
    {
        std::filesystem::path out_dir = ".";
        SnrGrid snr{0.0, 40.0, 2.0};
        mc::SampleSpec sample;
    };

    /// Writes fig1.csv (MC), fig2.csv (asymptotic) and fig3.csv (asymptotic vs exponential correlation r,
    /// with a leading r column) for nt=4, nr=2, eta=0.2, ps=1.
    void cmd_figures(const FiguresRequest &request);

    /// Full command line entry point; returns the process exit code.
    int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace eed::cli
