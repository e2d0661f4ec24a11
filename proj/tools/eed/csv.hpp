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

#include <cstdint>
#include <optional>
#include <string>

namespace eed::cli
{
    /// %.12g; the only float format used in CSV output.
    std::string format_number(double x);

    /// One data row of the shared CSV layout. Unset fields are written as empty strings.
    struct CsvRow
    {
        std::optional<double> snr_db;
        std::optional<double> rho;
        std::optional<int> l;
        std::string regime;
        std::optional<int> s;
        std::optional<double> delta;
        std::optional<double> mu_ln;
        std::optional<int> log_rho_power;
        std::optional<double> ed_asy;
        std::optional<double> ed_mc;
        std::optional<double> ed_mc_stderr;
        std::optional<double> inf_mc;
        std::optional<double> inf_asy;
        std::optional<std::uint64_t> n_samples;
    };

    std::string to_csv(const CsvRow &row);

} // namespace eed::cli
