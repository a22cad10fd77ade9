// SPDX-License-Identifier: Apache-2.0
//
// dasrate: ergodic sum-rate analysis and mode selection for distributed antenna systems
// Copyright (C) 2026 The dasrate authors
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

#ifndef DASRATE_EXPERIMENTS_HPP
#define DASRATE_EXPERIMENTS_HPP

#include "dasrate/geometry.hpp"
#include "dasrate/modes.hpp"
#include "dasrate/rate.hpp"
#include "dasrate/rate_curve.hpp"
#include "dasrate/simulate.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dasrate
{

/// The fixed two-user, two-port geometry used for rate-curve validation:
/// ports at (-4, 0) and (4, 0), users at (-3, -2.5) and (3, 3.5), p = 3,
/// unit noise, cell radius sqrt(112/3). Port 1 is the one at (-4, 0).
Scenario reference_two_user_scenario();

// "start:step:stop" in dB (stop included when on the grid) or a single value.
std::vector<double> parse_snr_grid(std::string_view text);

// Range edges in grid syntax: "0:10:50" -> [0,10) [10,20) ... [40,50).
std::vector<SnrRange> parse_snr_ranges(std::string_view text);

// ';'-separated list of mode labels; an unknown/invalid label raises a
// UsageError listing the ideal candidates.
std::vector<TransmissionMode> parse_mode_list(std::string_view text, int n_ports, int n_users);

struct RatesOptions
{
    std::vector<TransmissionMode> modes; // empty: the ideal candidate set
    bool monte_carlo = true;
    std::uint64_t n_channels = 5000;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
};

/// Fixed-geometry rate curves: one analytic series per mode plus, unless
/// disabled, a Monte Carlo series with standard errors.
RateCurve run_rates(const Scenario& scenario, const std::vector<double>& snr_grid_db, const RatesOptions& options);

// Ideal selection is part of the default sweep whenever its candidate set has
// at most this many members (568 at N=K=4 is in, 7625 at N=K=5 is out).
inline constexpr std::uint64_t kSweepIdealLimit = 1000;

struct SweepOptions
{
    std::vector<SchemeKind> schemes;              // empty: defaults (see default_sweep_schemes)
    std::vector<TransmissionMode> fixed_modes;    // empty: default_fixed_modes
    bool force_ideal = false;                     // include ideal selection beyond kSweepIdealLimit
    CellAverageOptions cell;
};

std::vector<SchemeKind> default_sweep_schemes(int n_ports, int n_users, bool force_ideal);

// N = K = 2: the four ideal modes. Otherwise [1 2 .. N] (user index cycling
// when K < N) and the all-ports single-user mode [1 ... 1].
std::vector<TransmissionMode> default_fixed_modes(int n_ports, int n_users);

RateCurve run_sweep(const Scenario& scenario_template, const std::vector<double>& snr_grid_db,
                    const SweepOptions& options);

struct CrossoverLabeling
{
    std::string name;           // "as configured" / "users swapped"
    PathlossMatrix pathloss;
    CrossoverSummary versus_12; // [1 1] vs [1 2]
    CrossoverSummary versus_21; // [1 1] vs [2 1]
};

struct CrossoverReport
{
    std::vector<CrossoverLabeling> labelings;
    double reference_db = 37.2; // value quoted for the fixed two-user geometry
};

// N = K = 2 with fixed user positions.
CrossoverReport run_crossover(const Scenario& scenario);
void write_crossover_report(std::ostream& out, const CrossoverReport& report);

void write_histogram_csv(std::ostream& out, const ModeHistogram& histogram);

} // namespace dasrate

#endif
