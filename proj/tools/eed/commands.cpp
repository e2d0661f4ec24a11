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

#include "eed/commands.hpp"

#include "eed/asymptotic.hpp"
#include "eed/csv.hpp"

#include "CLI11.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

namespace eed::cli
{
    using asymptotic::AsymptoticEED;
    using channel::SystemConfig;

    namespace
    {
        std::string_view trim(std::string_view s)
        {
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
                s.remove_prefix(1);
            while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
                s.remove_suffix(1);
            return s;
        }

        std::vector<std::string_view> split(std::string_view s, char sep)
        {
            std::vector<std::string_view> parts;
            std::size_t pos = 0;
            while (true)
            {
                const auto next = s.find(sep, pos);
                parts.push_back(trim(s.substr(pos, next == std::string_view::npos ? next : next - pos)));
                if (next == std::string_view::npos)
                    break;
                pos = next + 1;
            }
            return parts;
        }

        double parse_double(std::string_view s, std::string_view what)
        {
            const std::string str(trim(s));
            std::size_t used = 0;
            double v = 0.0;
            try
            {
                v = std::stod(str, &used);
            }
            catch (const std::exception &)
            {
                used = 0;
            }
            if (str.empty() || used != str.size() || !std::isfinite(v))
                throw UsageError("invalid number '" + str + "' in " + std::string(what));
            return v;
        }

        int parse_int(std::string_view s, std::string_view what)
        {
            s = trim(s);
            int v = 0;
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
                throw UsageError("invalid integer '" + std::string(s) + "' in " + std::string(what));
            return v;
        }

        std::string describe(const channel::CorrelationSpec &corr)
        {
            if (const auto *e = std::get_if<channel::Exponential>(&corr))
                return "exp:" + format_number(e->r);
            if (const auto *x = std::get_if<channel::ExplicitEigenvalues>(&corr))
            {
                std::string s = "eig:";
                for (std::size_t i = 0; i < x->sigma.size(); ++i)
                    s += (i ? "," : "") + format_number(x->sigma[i]);
                return s;
            }
            return "identity";
        }

        void write_preamble(const SweepRequest &req, std::ostream &out)
        {
            out << "# nt=" << req.nt << " nr=" << req.nr << " eta=" << format_number(req.eta)
                << " ps=" << format_number(req.ps) << " corr=" << describe(req.corr);
            if (req.outputs.any_mc())
                out << " samples=" << req.sample.total() << " seed=" << req.sample.seed
                    << " streams=" << req.sample.n_streams;
            out << '\n'
                << "# rho = 10^(snr_db/10); ed_asy = exp(mu_ln) * ln(rho)^log_rho_power * rho^-delta (natural log)\n"
                << "# inf_mc = ps * 2^(-(2/eta) C), C = E log2 det(I + rho/nt H H^H) per two-dimensional channel use "
                   "(no 2 W_c factor)\n";
        }

        void warn(std::ostream &out, double snr_db, std::optional<int> l, const std::string &message)
        {
            out << "# warning: snr_db=" << format_number(snr_db);
            if (l)
                out << " L=" << *l;
            out << ": " << message << '\n';
        }

        // Sets the field when value lies in (0, ps], otherwise leaves it empty and warns.
        void set_distortion(std::optional<double> &field, double value, double ps, std::string_view name,
                            std::vector<std::string> &warnings)
        {
            if (std::isfinite(value) && value > 0.0 && value <= ps)
            {
                field = value;
                return;
            }
            std::string why;
            if (!std::isfinite(value) || value <= 0.0)
                why = " is outside the double range";
            else
                why = " = " + format_number(value) + " exceeds ps; asymptote not applicable at this SNR";
            warnings.push_back(std::string(name) + why);
        }

        void write_rows(const SweepRequest &req, std::ostream &out, const std::string &prefix)
        {
            const SystemConfig base(req.nt, req.nr, 1, req.eta, req.ps);
            std::vector<SystemConfig> configs;
            for (int l : req.l_values)
                configs.push_back(base.with_l(l));

            std::vector<AsymptoticEED> asy;
            if (req.outputs.asy)
                for (const auto &cfg : configs)
                    asy.push_back(asymptotic::extend_to_L(cfg, req.corr));
            std::optional<AsymptoticEED> inf_asy;
            if (req.outputs.inf_asy)
                inf_asy = asymptotic::infinite_l_asymptotic(base, req.corr);

            std::vector<mc::Statistic> stats;
            if (req.outputs.mc)
                for (const auto &cfg : configs)
                    stats.push_back(mc::Statistic::det_power(cfg.beta()));
            if (req.outputs.inf_mc)
                stats.push_back(mc::Statistic::log2_det());

            for (double snr_db : req.snr.points())
            {
                const double rho = db_to_linear(snr_db);
                std::vector<mc::Accumulator> acc;
                if (!stats.empty())
                    acc = mc::accumulate(base, req.corr, rho, req.sample, stats);

                std::optional<mc::MCEstimate> inf_mc;
                if (req.outputs.inf_mc)
                    inf_mc = mc::infinite_l_bound_from_capacity(base, acc.back().estimate());

                for (std::size_t i = 0; i < configs.size(); ++i)
                {
                    const auto &cfg = configs[i];
                    const auto regime = channel::classify_regime(cfg);
                    std::vector<std::string> warnings;

                    CsvRow row;
                    row.snr_db = snr_db;
                    row.rho = rho;
                    row.l = cfg.l();
                    row.regime = channel::to_string(regime.kind);
                    if (regime.kind == channel::RegimeKind::Moderate)
                        row.s = regime.s;
                    if (req.outputs.asy)
                    {
                        row.delta = asy[i].delta;
                        row.mu_ln = asy[i].mu_ln();
                        row.log_rho_power = asy[i].log_rho_power;
                        set_distortion(row.ed_asy, asy[i].evaluate(rho), req.ps, "ed_asy", warnings);
                    }
                    if (req.outputs.mc)
                    {
                        const auto e = mc::eed_from_inner(acc[i], req.ps, cfg.l());
                        row.ed_mc = e.mean;
                        row.ed_mc_stderr = e.std_error;
                        if (e.relative_error() > warn_relative_error)
                            warnings.push_back("ed_mc relative std error " + format_number(e.relative_error()) +
                                               " exceeds 0.05 (heavy-tailed per-draw values)");
                    }
                    if (inf_mc)
                    {
                        row.inf_mc = inf_mc->mean;
                        if (inf_mc->relative_error() > warn_relative_error)
                            warnings.push_back("inf_mc relative std error " + format_number(inf_mc->relative_error()) +
                                               " exceeds 0.05");
                    }
                    if (inf_asy)
                        set_distortion(row.inf_asy, inf_asy->evaluate(rho), req.ps, "inf_asy", warnings);
                    if (req.outputs.any_mc())
                        row.n_samples = req.sample.total();

                    out << prefix << to_csv(row) << '\n';
                    for (const auto &w : warnings)
                        warn(out, snr_db, cfg.l(), w);
                }
            }
        }

        std::ofstream open_output(const std::filesystem::path &path)
        {
            std::ofstream f(path, std::ios::binary);
            if (!f)
                throw IoError("cannot open '" + path.string() + "' for writing");
            return f;
        }

        void finish_output(std::ofstream &f, const std::filesystem::path &path)
        {
            f.flush();
            if (!f)
                throw IoError("failed writing '" + path.string() + "'");
        }
    } // namespace

    std::vector<double> SnrGrid::points() const
    {
        if (!(step > 0.0) || !(stop >= start) || !std::isfinite(start) || !std::isfinite(stop))
            throw UsageError("snr grid needs step > 0 and stop >= start");
        const auto n = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        if (n > 100000)
            throw UsageError("snr grid has too many points");
        std::vector<double> p(n);
        for (std::size_t i = 0; i < n; ++i)
            p[i] = start + static_cast<double>(i) * step;
        return p;
    }

    double db_to_linear(double snr_db)
    {
        return std::pow(10.0, snr_db / 10.0);
    }

    SnrGrid parse_snr_grid(std::string_view text)
    {
        const auto parts = split(text, ':');
        if (parts.size() != 3)
            throw UsageError("snr grid must be start:stop:step, got '" + std::string(text) + "'");
        SnrGrid g{parse_double(parts[0], "--snr-db"), parse_double(parts[1], "--snr-db"),
                  parse_double(parts[2], "--snr-db")};
        (void)g.points();
        return g;
    }

    std::vector<int> parse_l_list(std::string_view text)
    {
        std::vector<int> out;
        for (auto p : split(text, ','))
        {
            const int l = parse_int(p, "--l");
            if (l < 1 || l > channel::max_diversity)
                throw UsageError("diversity order must lie in [1, 1024], got " + std::to_string(l));
            out.push_back(l);
        }
        return out;
    }

    OutputSet parse_outputs(std::string_view text)
    {
        OutputSet o;
        for (auto p : split(text, ','))
        {
            if (p == "mc")
                o.mc = true;
            else if (p == "asy")
                o.asy = true;
            else if (p == "inf_mc")
                o.inf_mc = true;
            else if (p == "inf_asy")
                o.inf_asy = true;
            else
                throw UsageError("unknown output '" + std::string(p) + "' (expected mc, asy, inf_mc, inf_asy)");
        }
        return o;
    }

    channel::CorrelationSpec parse_correlation(std::string_view text)
    {
        text = trim(text);
        if (text == "identity" || text == "none")
            return channel::Identity{};
        if (text.starts_with("exp:"))
        {
            const double r = parse_double(text.substr(4), "--corr");
            if (!(r > 0.0 && r < 1.0))
                throw UsageError("exponential correlation needs r in (0, 1)");
            return channel::Exponential{r};
        }
        if (text.starts_with("eig:"))
        {
            channel::ExplicitEigenvalues e;
            for (auto p : split(text.substr(4), ','))
                e.sigma.push_back(parse_double(p, "--corr"));
            return e;
        }
        throw UsageError("correlation must be identity, exp:<r> or eig:<s1>,<s2>,..., got '" + std::string(text) + "'");
    }

    void cmd_sweep(const SweepRequest &request, std::ostream &out)
    {
        write_preamble(request, out);
        out << csv_header << '\n';
        write_rows(request, out, "");
    }

    void cmd_regime(int nt, int nr, double eta, int l, std::ostream &out)
    {
        const SystemConfig cfg(nt, nr, l, eta);
        const auto regime = channel::classify_regime(cfg);
        const int l_star = channel::transit_point(cfg);
        out << channel::to_string(regime.kind);
        if (regime.kind == channel::RegimeKind::Moderate)
            out << ", s=" << regime.s;
        out << ", beta=" << format_number(regime.beta) << ", L*=" << l_star
            << ", L>=L*: " << (l >= l_star ? "yes" : "no") << '\n';
    }

    void cmd_limit(const SweepRequest &request, std::ostream &out)
    {
        const SystemConfig cfg(request.nt, request.nr, 1, request.eta, request.ps);
        SweepRequest req = request;
        req.outputs = {false, false, true, true};
        write_preamble(req, out);
        out << csv_header << '\n';

        const auto inf_asy = asymptotic::infinite_l_asymptotic(cfg, req.corr);
        for (double snr_db : req.snr.points())
        {
            const double rho = db_to_linear(snr_db);
            const auto inf_mc = mc::infinite_l_bound_mc(cfg, req.corr, rho, req.sample);
            std::vector<std::string> warnings;

            CsvRow row;
            row.snr_db = snr_db;
            row.rho = rho;
            row.delta = inf_asy.delta;
            row.mu_ln = inf_asy.mu_ln();
            row.log_rho_power = inf_asy.log_rho_power;
            row.inf_mc = inf_mc.mean;
            if (inf_mc.relative_error() > warn_relative_error)
                warnings.push_back("inf_mc relative std error " + format_number(inf_mc.relative_error()) + " exceeds 0.05");
            set_distortion(row.inf_asy, inf_asy.evaluate(rho), req.ps, "inf_asy", warnings);
            row.n_samples = inf_mc.n_samples;

            out << to_csv(row) << '\n';
            for (const auto &w : warnings)
                warn(out, snr_db, std::nullopt, w);
        }
    }

    void cmd_figures(const FiguresRequest &request)
    {
        std::error_code ec;
        std::filesystem::create_directories(request.out_dir, ec);
        if (ec)
            throw IoError("cannot create '" + request.out_dir.string() + "': " + ec.message());

        SweepRequest base;
        base.nt = 4;
        base.nr = 2;
        base.eta = 0.2;
        base.ps = 1.0;
        base.snr = request.snr;
        base.l_values = {1, 2, 3, 4, 8};
        base.sample = request.sample;

        {
            SweepRequest fig1 = base;
            fig1.outputs = {true, false, true, false};
            const auto path = request.out_dir / "fig1.csv";
            auto f = open_output(path);
            cmd_sweep(fig1, f);
            finish_output(f, path);
        }
        {
            SweepRequest fig2 = base;
            fig2.outputs = {false, true, false, true};
            const auto path = request.out_dir / "fig2.csv";
            auto f = open_output(path);
            cmd_sweep(fig2, f);
            finish_output(f, path);
        }
        {
            const auto path = request.out_dir / "fig3.csv";
            auto f = open_output(path);
            SweepRequest fig3 = base;
            fig3.outputs = {false, true, false, true};
            write_preamble(fig3, f);
            f << "# r = exponential correlation coefficient, 0 = uncorrelated\n";
            f << "r," << csv_header << '\n';
            for (double r : {0.0, 0.3, 0.5, 0.7, 0.9})
            {
                fig3.corr = r == 0.0 ? channel::CorrelationSpec(channel::Identity{})
                                     : channel::CorrelationSpec(channel::Exponential{r});
                write_rows(fig3, f, format_number(r) + ",");
            }
            finish_output(f, path);
        }
    }

    // ---------------------------------------------------------------------

    namespace
    {
        std::map<std::string, std::string> read_config_file(const std::string &path)
        {
            std::ifstream f(path);
            if (!f)
                throw IoError("cannot read config file '" + path + "'");
            std::map<std::string, std::string> kv;
            std::string line;
            int lineno = 0;
            while (std::getline(f, line))
            {
                ++lineno;
                const auto t = trim(line);
                if (t.empty() || t.front() == '#')
                    continue;
                const auto eq = t.find('=');
                if (eq == std::string_view::npos)
                    throw UsageError(path + ":" + std::to_string(lineno) + ": expected key=value");
                kv[std::string(trim(t.substr(0, eq)))] = std::string(trim(t.substr(eq + 1)));
            }
            return kv;
        }

        std::optional<std::string> find_config_path(int argc, const char *const *argv)
        {
            for (int i = 1; i < argc; ++i)
            {
                const std::string_view a(argv[i]);
                if (a == "--config" && i + 1 < argc)
                    return std::string(argv[i + 1]);
                if (a.starts_with("--config="))
                    return std::string(a.substr(9));
            }
            return std::nullopt;
        }

        struct Flags
        {
            int nt = 4, nr = 2, l = 1;
            double eta = 0.2, ps = 1.0;
            std::string l_list = "1";
            std::string snr = "0:40:5";
            std::string emit = "mc,asy";
            std::string corr = "identity";
            std::string out;
            std::string out_dir = ".";
            std::string config;
            std::uint64_t samples = 100000;
            std::uint64_t seed = 1;
            std::uint32_t streams = 8;
        };

        void add_link_flags(CLI::App &cmd, Flags &f, bool with_ps = true)
        {
            cmd.add_option("--nt", f.nt, "transmit antennas (1..8)")->capture_default_str();
            cmd.add_option("--nr", f.nr, "receive antennas (1..8)")->capture_default_str();
            cmd.add_option("--eta", f.eta, "source-to-channel bandwidth ratio W_s/W_c")->capture_default_str();
            if (with_ps)
                cmd.add_option("--ps", f.ps, "source power")->capture_default_str();
        }

        void add_sampling_flags(CLI::App &cmd, Flags &f, const std::string &snr_default)
        {
            f.snr = snr_default;
            cmd.add_option("--snr-db", f.snr, "SNR grid start:stop:step in dB; rho = 10^(snr_db/10)")->capture_default_str();
            cmd.add_option("--samples", f.samples, "Monte Carlo draws per SNR point")->capture_default_str();
            cmd.add_option("--seed", f.seed, "64-bit seed")->capture_default_str();
            cmd.add_option("--streams", f.streams, "independent random streams (fixes the partition, not the thread count)")
                ->capture_default_str();
        }

        mc::SampleSpec sample_spec(const Flags &f)
        {
            if (f.samples == 0 || f.streams == 0)
                throw UsageError("--samples and --streams must be positive");
            return {f.seed, f.samples, f.streams, 0};
        }

        SweepRequest sweep_request(const Flags &f)
        {
            SweepRequest r;
            r.nt = f.nt;
            r.nr = f.nr;
            r.eta = f.eta;
            r.ps = f.ps;
            r.snr = parse_snr_grid(f.snr);
            r.l_values = parse_l_list(f.l_list);
            r.corr = parse_correlation(f.corr);
            r.sample = sample_spec(f);
            r.outputs = parse_outputs(f.emit);
            (void)SystemConfig(r.nt, r.nr, 1, r.eta, r.ps);
            return r;
        }

        template <typename Fn>
        void with_output(const std::string &path, std::ostream &out, Fn &&fn)
        {
            if (path.empty() || path == "-")
            {
                fn(out);
                return;
            }
            // Render first so a failing computation leaves no partial file behind.
            std::ostringstream buffer;
            fn(buffer);
            auto f = open_output(path);
            f << buffer.str();
            finish_output(f, path);
        }
    } // namespace

    int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"Optimum expected end-to-end distortion of outage-free wideband MIMO links.\n"
                     "SNR is given in dB and converted as rho = 10^(snr_db/10).\n"
                     "EED_THREADS sets the worker thread count (default: logical CPUs); output depends only on "
                     "--seed, --samples and --streams.",
                     "eed"};
        app.require_subcommand(1);
        Flags f;

        auto *sweep = app.add_subcommand("sweep", "CSV sweep over SNR and diversity orders");
        add_link_flags(*sweep, f);
        sweep->add_option("--l", f.l_list, "comma-separated diversity orders")->capture_default_str();
        add_sampling_flags(*sweep, f, "0:40:5");
        sweep->add_option("--emit", f.emit, "subset of mc,asy,inf_mc,inf_asy")->capture_default_str();
        sweep->add_option("--corr", f.corr, "identity | exp:<r> | eig:<s1>,<s2>,...")->capture_default_str();
        sweep->add_option("--out", f.out, "output file (default stdout)");

        auto *regime = app.add_subcommand("regime", "SCBR regime, beta, s and transit point L*");
        add_link_flags(*regime, f, false);
        regime->add_option("--l", f.l, "diversity order")->capture_default_str();

        auto *limit = app.add_subcommand("limit", "infinite-diversity lower bounds (Monte Carlo and asymptotic)");
        add_link_flags(*limit, f);
        add_sampling_flags(*limit, f, "0:40:5");
        limit->add_option("--corr", f.corr, "identity | exp:<r> | eig:<s1>,<s2>,...")->capture_default_str();
        limit->add_option("--out", f.out, "output file (default stdout)");

        auto *figures = app.add_subcommand("figures", "write fig1.csv, fig2.csv and fig3.csv");
        figures->add_option("--out-dir", f.out_dir, "output directory")->capture_default_str();
        f.snr = "0:40:2";
        figures->add_option("--snr-db", f.snr, "SNR grid start:stop:step in dB")->capture_default_str();
        figures->add_option("--samples", f.samples, "Monte Carlo draws per SNR point")->capture_default_str();
        figures->add_option("--seed", f.seed, "64-bit seed")->capture_default_str();
        figures->add_option("--streams", f.streams, "independent random streams")->capture_default_str();

        for (auto *cmd : {sweep, regime, limit, figures})
            cmd->add_option("--config", f.config, "flat key=value file; command-line flags take precedence");

        try
        {
            if (const auto path = find_config_path(argc, argv))
            {
                // file values become option defaults of the invoked subcommand, so flags still win
                CLI::App *target = nullptr;
                for (int i = 1; i < argc && !target; ++i)
                    for (auto *cmd : {sweep, regime, limit, figures})
                        if (cmd->get_name() == argv[i])
                            target = cmd;
                if (!target)
                    throw UsageError("--config needs a subcommand");
                for (const auto &[key, value] : read_config_file(*path))
                {
                    auto *opt = key == "config" ? nullptr : target->get_option_no_throw("--" + key);
                    if (!opt)
                        throw UsageError("unknown config key '" + key + "' for " + target->get_name());
                    opt->default_val(value);
                }
            }

            try
            {
                app.parse(argc, argv);
            }
            catch (const CLI::ParseError &e)
            {
                const int code = app.exit(e, out, err);
                return code == 0 ? exit_ok : exit_usage;
            }

            if (sweep->parsed())
            {
                const auto req = sweep_request(f);
                with_output(f.out, out, [&](std::ostream &o) { cmd_sweep(req, o); });
            }
            else if (regime->parsed())
                cmd_regime(f.nt, f.nr, f.eta, f.l, out);
            else if (limit->parsed())
            {
                const auto req = sweep_request(f);
                with_output(f.out, out, [&](std::ostream &o) { cmd_limit(req, o); });
            }
            else if (figures->parsed())
                cmd_figures({f.out_dir, parse_snr_grid(f.snr), sample_spec(f)});
            return exit_ok;
        }
        catch (const UsageError &e)
        {
            err << "usage error: " << e.what() << '\n';
            return exit_usage;
        }
        catch (const CLI::Error &e)
        {
            err << "usage error: " << e.what() << '\n';
            return exit_usage;
        }
        catch (const std::invalid_argument &e)
        {
            err << "usage error: " << e.what() << '\n';
            return exit_usage;
        }
        catch (const IoError &e)
        {
            err << "i/o error: " << e.what() << '\n';
            return exit_io;
        }
        catch (const std::domain_error &e)
        {
            err << "error: " << e.what() << '\n';
            return exit_domain;
        }
    }

} // namespace eed::cli
