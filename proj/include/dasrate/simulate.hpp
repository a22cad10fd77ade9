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

#ifndef DASRATE_SIMULATE_HPP
#define DASRATE_SIMULATE_HPP

#include "dasrate/geometry.hpp"
#include "dasrate/modes.hpp"
#include "dasrate/rate_curve.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace dasrate
{

/// One K x N draw of small-scale power gains |h_ij|^2 ~ Exp(1).
struct ChannelRealization
{
    int n_users = 0;
    int n_ports = 0;
    std::vector<double> power_gains; // row-major

    double at(int user, int port) const
    {
        return power_gains[static_cast<std::size_t>(user) * static_cast<std::size_t>(n_ports) +
                           static_cast<std::size_t>(port)];
    }
};

// Entry (i, j) of trial t in drop d is a pure function of (seed, d, t, i, j).
ChannelRealization draw_channel(std::uint64_t seed, std::uint64_t drop, std::uint64_t trial, int n_users, int n_ports);

// Per-user instantaneous rates log2(1 + SINR_i); inactive users get 0.
std::vector<double> instantaneous_rates(const Scenario& scenario, const PathlossMatrix& pathloss,
                                        const TransmissionMode& mode, const ChannelRealization& channel);
std::vector<double> instantaneous_rates(const PathlossMatrix& pathloss, const TransmissionMode& mode,
                                        const ChannelRealization& channel, double tx_power, double noise_power);

struct McEstimate
{
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t n_trials = 0;

    bool operator==(const McEstimate&) const = default;
};

struct McOptions
{
    unsigned jobs = 1;
    std::uint64_t drop_index = 0; // selects an independent fading stream per user drop
};

// Trials are reduced in fixed chunks of this many, in trial order, so the
// result does not depend on the number of workers.
inline constexpr std::uint64_t kMcChunk = 512;

/// Monte Carlo estimate of the ergodic sum rate over n_channels i.i.d.
/// Rayleigh realizations. Bit-identical for equal (seed, drop_index).
McEstimate mc_ergodic_sum_rate(const Scenario& scenario, const PathlossMatrix& pathloss, const TransmissionMode& mode,
                               std::uint64_t n_channels, std::uint64_t seed, const McOptions& options = {});

/// Same estimator at several transmit powers; every point reuses the same
/// channel draws.
std::vector<McEstimate> mc_ergodic_sum_rate_curve(const PathlossMatrix& pathloss, const TransmissionMode& mode,
                                                  std::span<const double> tx_powers, double noise_power,
                                                  std::uint64_t n_channels, std::uint64_t seed,
                                                  const McOptions& options = {});

enum class SchemeKind
{
    Ideal,
    MinDistance,
    FixedMode
};

struct Scheme
{
    SchemeKind kind = SchemeKind::MinDistance;
    std::optional<TransmissionMode> mode; // FixedMode only

    static Scheme ideal() { return {SchemeKind::Ideal, std::nullopt}; }
    static Scheme min_distance() { return {SchemeKind::MinDistance, std::nullopt}; }
    static Scheme fixed(TransmissionMode m) { return {SchemeKind::FixedMode, std::move(m)}; }

    // "ideal", "min_distance" or the mode label.
    std::string label() const;
};

struct CellAverageOptions
{
    std::uint64_t n_drops = 4000;
    std::uint64_t n_channels = 5000; // used by the Monte Carlo source only
    std::uint64_t seed = 1;
    unsigned jobs = 1;
    RateSource source = RateSource::Analytic;
    std::uint64_t ideal_budget = kDefaultIdealBudget;
};

/// Rate of each scheme averaged over uniform user drops.
///
/// Selection always uses closed-form rates. The recorded rate of the chosen
/// mode is the closed form (Analytic) or a Monte Carlo estimate over
/// n_channels fading draws (MonteCarlo). All schemes see the same drops.
RateCurve cell_average(const Scenario& scenario_template, const std::vector<Scheme>& schemes,
                       const std::vector<double>& snr_grid_db, const CellAverageOptions& options);
RateCurve cell_average(const Scenario& scenario_template, const Scheme& scheme, const std::vector<double>& snr_grid_db,
                       const CellAverageOptions& options);

struct SnrRange
{
    double lo_db = 0.0;
    double hi_db = 0.0;
};

struct ModeGroup
{
    int n_active_users = 0;
    int n_active_ports = 0;

    std::string label() const; // "KA1_NA3"
    auto operator<=>(const ModeGroup&) const = default;
};

struct ModeHistogram
{
    std::vector<SnrRange> ranges;
    std::vector<ModeGroup> groups;                // every K_A <= N_A <= N, K_A <= K
    std::vector<std::vector<double>> fractions;   // [range][group], rows sum to 1

    double fraction(std::size_t range, ModeGroup group) const;
    // Share of single-user selections (K_A = 1, any N_A) in a range.
    double single_user_fraction(std::size_t range) const;
};

struct HistogramOptions
{
    std::uint64_t n_drops = 4000;
    std::uint64_t seed = 1;
    unsigned jobs = 1;
    double step_db = 1.0; // evaluation points at lo + (m + 1/2) step inside each range
    SchemeKind scheme = SchemeKind::MinDistance;
    std::uint64_t ideal_budget = kDefaultIdealBudget;
};

/// Relative frequency of the (K_A, N_A) group of the selected mode, per SNR
/// range, across drops and the evaluation points inside the range.
ModeHistogram mode_histogram(const Scenario& scenario_template, const std::vector<SnrRange>& ranges,
                             const HistogramOptions& options);

} // namespace dasrate

#endif
