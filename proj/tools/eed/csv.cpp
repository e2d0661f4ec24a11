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

#include "eed/csv.hpp"

#include <cstdio>

namespace eed::cli
{
    std::string format_number(double x)
    {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", x);
        return buf;
    }

    namespace
    {
        void field(std::string &line, const std::optional<double> &v)
        {
            line += ',';
            if (v)
                line += format_number(*v);
        }

        template <typename Int>
        void int_field(std::string &line, const std::optional<Int> &v)
        {
            line += ',';
            if (v)
                line += std::to_string(*v);
        }
    } // namespace

    std::string to_csv(const CsvRow &row)
    {
        std::string line = row.snr_db ? format_number(*row.snr_db) : std::string();
        field(line, row.rho);
        int_field(line, row.l);
        line += ',';
        line += row.regime;
        int_field(line, row.s);
        field(line, row.delta);
        field(line, row.mu_ln);
        int_field(line, row.log_rho_power);
        field(line, row.ed_asy);
        field(line, row.ed_mc);
        field(line, row.ed_mc_stderr);
        field(line, row.inf_mc);
        field(line, row.inf_asy);
        int_field(line, row.n_samples);
        return line;
    }

} // namespace eed::cli
