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

#include "dasrate/simulate.hpp"

#include "dasrate/errors.hpp"
#include "dasrate/parallel.hpp"
#include "dasrate/rate.hpp"
#include "dasrate/rng.hpp"
#include "dasrate/select.hpp"

#include <algorithm>
#include <cmath>

namespace dasrate
{

namespace
{

// Welford accumulator with Chan's pairwise merge.
struct RunningStats
{
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double x)
    {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }

    void merge(const RunningStats& other)
    {
        if (other.n == 0)
            return;
        if (n == 0)
        {
            *this = other;
            return;
        }
        const double total = static_cast<double>(n + other.n);
        const double delta = other.mean - mean;
        mean += delta * static_cast<double>(other.n) / total;
        m2 += other.m2 + delta * delta * static_cast<double>(n) * static_cast<double>(other.n) / total;
        n += other.n;
    }

    McEstimate estimate() const
    {
        const double variance = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
        return {mean, std::sqrt(variance / static_cast<double>(n)), n};
    }
};

void fill_channel(ChannelRealization& channel, std::uint64_t seed, std::uint64_t drop, std::uint64_t trial)
{
    CounterRng rng(derive_key(seed, {kTagFading, drop, trial}));
    for (double& g : channel.power_gains)
        g = rng.exponential();
}

double user_instantaneous_rate(const PathlossMatrix& pathloss, const TransmissionMode& mode,
                               const ChannelRealization& channel, int user, double tx_power, double noise_power)
{
    double signal = 0.0;
    double interference = noise_power;
    for (const int port : mode.active_ports())
    {
        const double p = pathloss.gain(user - 1, port) * tx_power * channel.at(user - 1, port);
        if (mode.assignment()[static_cast<std::size_t>(port)] == user)
            signal += p;
        else
            interference += p;
    }
    return std::log2(1.0 + signal / interference);
}

double instantaneous_sum_rate(const PathlossMatrix& pathloss, const TransmissionMode& mode,
                              const ChannelRealization& channel, double tx_power, double noise_power)
{
    double total = 0.0;
    for (int user = 1; user <= mode.n_users(); ++user)
        if (mode.is_active(user))
            total += user_instantaneous_rate(pathloss, mode, channel, user, tx_power, noise_power);
    return total;
}

} // namespace

ChannelRealization draw_channel(std::uint64_t seed, std::uint64_t drop, std::uint64_t trial, int n_users, int n_ports)
{
    ChannelRealization c{n_users, n_ports,
                         std::vector<double>(static_cast<std::size_t>(n_users) * static_cast<std::size_t>(n_ports))};
    fill_channel(c, seed, drop, trial);
    return c;
}

std::vector<double> instantaneous_rates(const Scenario& scenario, const PathlossMatrix& pathloss,
                                        const TransmissionMode& mode, const ChannelRealization& channel)
{
    return instantaneous_rates(pathloss, mode, channel, scenario.tx_power, scenario.noise_power);
}

std::vector<double> instantaneous_rates(const PathlossMatrix& pathloss, const TransmissionMode& mode,
                                        const ChannelRealization& channel, double tx_power, double noise_power)
{
    std::vector<double> rates(static_cast<std::size_t>(mode.n_users()), 0.0);
    for (int user = 1; user <= mode.n_users(); ++user)
        if (mode.is_active(user))
            rates[static_cast<std::size_t>(user - 1)] =
                user_instantaneous_rate(pathloss, mode, channel, user, tx_power, noise_power);
    return rates;
}

std::vector<McEstimate> mc_ergodic_sum_rate_curve(const PathlossMatrix& pathloss, const TransmissionMode& mode,
                                                  std::span<const double> tx_powers, double noise_power,
                                                  std::uint64_t n_channels, std::uint64_t seed,
                                                  const McOptions& options)
{
    if (n_channels < 2)
        throw UsageError("Monte Carlo estimate needs at least 2 channel realizations");
    if (mode.n_ports() != pathloss.n_ports() || mode.n_users() != pathloss.n_users())
        throw UsageError("mode " + mode.label() + " does not match the pathloss matrix");

    const std::size_t n_points = tx_powers.size();
    const std::uint64_t n_chunks = (n_channels + kMcChunk - 1) / kMcChunk;
    std::vector<std::vector<RunningStats>> partial(n_chunks, std::vector<RunningStats>(n_points));

    parallel_for(n_chunks, options.jobs, [&](std::size_t chunk) {
        ChannelRealization channel{pathloss.n_users(), pathloss.n_ports(),
                                   std::vector<double>(pathloss.gains().size())};
        const std::uint64_t first = chunk * kMcChunk;
        const std::uint64_t last = std::min<std::uint64_t>(first + kMcChunk, n_channels);
        auto& stats = partial[chunk];
        for (std::uint64_t trial = first; trial < last; ++trial)
        {
            fill_channel(channel, seed, options.drop_index, trial);
            for (std::size_t p = 0; p < n_points; ++p)
                stats[p].push(instantaneous_sum_rate(pathloss, mode, channel, tx_powers[p], noise_power));
        }
    });

    std::vector<McEstimate> out;
    out.reserve(n_points);
    for (std::size_t p = 0; p < n_points; ++p)
    {
        RunningStats total;
        for (const auto& chunk : partial)
            total.merge(chunk[p]);
        out.push_back(total.estimate());
    }
    return out;
}

McEstimate mc_ergodic_sum_rate(const Scenario& scenario, const PathlossMatrix& pathloss, const TransmissionMode& mode,
                               std::uint64_t n_channels, std::uint64_t seed, const McOptions& options)
{
    const double p = scenario.tx_power;
    return mc_ergodic_sum_rate_curve(pathloss, mode, std::span<const double>(&p, 1), scenario.noise_power, n_channels,
                                     seed, options)
        .front();
}

std::string Scheme::label() const
{
    switch (kind)
    {
    case SchemeKind::Ideal:
        return "ideal";
    case SchemeKind::MinDistance:
        return "min_distance";
    case SchemeKind::FixedMode:
        return mode ? mode->label() : "fixed";
    }
    return "unknown";
}

RateCurve cell_average(const Scenario& scenario_template, const std::vector<Scheme>& schemes,
                       const std::vector<double>& snr_grid_db, const CellAverageOptions& options)
{
    if (options.n_drops < 1)
        throw UsageError("cell_average needs at least one drop");
    if (schemes.empty())
        throw UsageError("cell_average needs at least one scheme");
    scenario_template.validate(false);
    for (const auto& scheme : schemes)
    {
        if (scheme.kind != SchemeKind::FixedMode)
            continue;
        if (!scheme.mode || scheme.mode->n_ports() != scenario_template.n_ports ||
            scheme.mode->n_users() != scenario_template.n_users)
            throw UsageError("fixed mode does not match the scenario dimensions");
    }

    const bool need_ideal = std::any_of(schemes.begin(), schemes.end(),
                                        [](const Scheme& s) { return s.kind == SchemeKind::Ideal; });
    const CandidateSet ideal = need_ideal ? enumerate_ideal(scenario_template.n_ports, scenario_template.n_users,
                                                            options.ideal_budget)
                                          : CandidateSet{};

    const std::size_t n_schemes = schemes.size();
    const std::size_t n_points = snr_grid_db.size();
    const double noise = scenario_template.noise_power;
    std::vector<double> tx_powers;
    for (const double db : snr_grid_db)
        tx_powers.push_back(db_to_linear(db) * noise);

    // rates[drop][scheme * n_points + point]
    std::vector<std::vector<double>> rates(options.n_drops);
    std::vector<std::vector<double>> errors(options.source == RateSource::MonteCarlo ? options.n_drops : 0);

    parallel_for(options.n_drops, options.jobs, [&](std::size_t drop) {
        const Scenario scenario = drop_users_uniform(scenario_template, derive_key(options.seed, {kTagDropSeed, drop}));
        const PathlossMatrix pathloss = pathloss_matrix(scenario);
        std::optional<CandidateSet> nearest;
        auto& row = rates[drop];
        row.assign(n_schemes * n_points, 0.0);
        if (options.source == RateSource::MonteCarlo)
            errors[drop].assign(n_schemes * n_points, 0.0);
        for (std::size_t s = 0; s < n_schemes; ++s)
        {
            const Scheme& scheme = schemes[s];
            if (scheme.kind == SchemeKind::MinDistance && !nearest)
                nearest = enumerate_min_distance(pathloss);
            for (std::size_t p = 0; p < n_points; ++p)
            {
                const TransmissionMode* chosen = nullptr;
                std::optional<SelectionResult> selection;
                double analytic = 0.0;
                if (scheme.kind == SchemeKind::FixedMode)
                {
                    chosen = &*scheme.mode;
                    if (options.source == RateSource::Analytic)
                        analytic = ergodic_sum_rate(pathloss, *chosen, tx_powers[p], noise).sum_rate;
                }
                else
                {
                    selection = select_mode(pathloss, scheme.kind == SchemeKind::Ideal ? ideal : *nearest,
                                            tx_powers[p], noise);
                    chosen = &selection->chosen_mode;
                    analytic = selection->chosen_rate;
                }
                if (options.source == RateSource::Analytic)
                {
                    row[s * n_points + p] = analytic;
                }
                else
                {
                    const McEstimate mc = mc_ergodic_sum_rate_curve(pathloss, *chosen,
                                                                    std::span<const double>(&tx_powers[p], 1), noise,
                                                                    options.n_channels, options.seed,
                                                                    McOptions{1, drop})
                                              .front();
                    row[s * n_points + p] = mc.mean;
                    errors[drop][s * n_points + p] = mc.std_error;
                }
            }
        }
    });

    RateCurve curve;
    curve.snr_grid_db = snr_grid_db;
    const double inv_drops = 1.0 / static_cast<double>(options.n_drops);
    for (std::size_t s = 0; s < n_schemes; ++s)
    {
        RateSeries series{schemes[s].label(), options.source, std::vector<double>(n_points, 0.0), {}};
        std::vector<double> variance(n_points, 0.0);
        for (std::size_t drop = 0; drop < options.n_drops; ++drop)
            for (std::size_t p = 0; p < n_points; ++p)
            {
                series.values[p] += rates[drop][s * n_points + p];
                if (options.source == RateSource::MonteCarlo)
                    variance[p] += errors[drop][s * n_points + p] * errors[drop][s * n_points + p];
            }
        for (std::size_t p = 0; p < n_points; ++p)
            series.values[p] *= inv_drops;
        if (options.source == RateSource::MonteCarlo)
        {
            // fading noise only; drop-to-drop spread is the quantity being averaged
            series.std_errors.resize(n_points);
            for (std::size_t p = 0; p < n_points; ++p)
                series.std_errors[p] = std::sqrt(variance[p]) * inv_drops;
        }
        curve.series.push_back(std::move(series));
    }
    curve.validate();
    return curve;
}

RateCurve cell_average(const Scenario& scenario_template, const Scheme& scheme, const std::vector<double>& snr_grid_db,
                       const CellAverageOptions& options)
{
    return cell_average(scenario_template, std::vector<Scheme>{scheme}, snr_grid_db, options);
}

std::string ModeGroup::label() const
{
    return "KA" + std::to_string(n_active_users) + "_NA" + std::to_string(n_active_ports);
}

double ModeHistogram::fraction(std::size_t range, ModeGroup group) const
{
    for (std::size_t g = 0; g < groups.size(); ++g)
        if (groups[g] == group)
            return fractions.at(range)[g];
    throw UsageError("histogram has no group " + group.label());
}

double ModeHistogram::single_user_fraction(std::size_t range) const
{
    double total = 0.0;
    for (std::size_t g = 0; g < groups.size(); ++g)
        if (groups[g].n_active_users == 1)
            total += fractions.at(range)[g];
    return total;
}

ModeHistogram mode_histogram(const Scenario& scenario_template, const std::vector<SnrRange>& ranges,
                             const HistogramOptions& options)
{
    if (options.n_drops < 1)
        throw UsageError("mode_histogram needs at least one drop");
    if (!(options.step_db > 0.0))
        throw UsageError("mode_histogram needs a positive SNR step");
    if (options.scheme == SchemeKind::FixedMode)
        throw UsageError("mode_histogram needs a selection scheme");
    scenario_template.validate(false);

    ModeHistogram hist;
    hist.ranges = ranges;
    const int n = scenario_template.n_ports;
    const int k = scenario_template.n_users;
    for (int ka = 1; ka <= std::min(n, k); ++ka)
        for (int na = ka; na <= n; ++na)
            hist.groups.push_back({ka, na});

    // Evaluation points per range.
    std::vector<std::vector<double>> points(ranges.size());
    for (std::size_t r = 0; r < ranges.size(); ++r)
    {
        const auto& range = ranges[r];
        if (!(range.hi_db > range.lo_db))
            throw UsageError("SNR range must have hi > lo");
        for (double db = range.lo_db + 0.5 * options.step_db; db < range.hi_db; db += options.step_db)
            points[r].push_back(db);
        if (points[r].empty())
            points[r].push_back(0.5 * (range.lo_db + range.hi_db));
    }

    const CandidateSet ideal =
        options.scheme == SchemeKind::Ideal ? enumerate_ideal(n, k, options.ideal_budget) : CandidateSet{};
    const double noise = scenario_template.noise_power;
    const std::size_t n_groups = hist.groups.size();

    // counts[drop][range * n_groups + group]
    std::vector<std::vector<std::uint32_t>> counts(options.n_drops);
    parallel_for(options.n_drops, options.jobs, [&](std::size_t drop) {
        const Scenario scenario = drop_users_uniform(scenario_template, derive_key(options.seed, {kTagDropSeed, drop}));
        const PathlossMatrix pathloss = pathloss_matrix(scenario);
        const CandidateSet nearest =
            options.scheme == SchemeKind::MinDistance ? enumerate_min_distance(pathloss) : CandidateSet{};
        const CandidateSet& candidates = options.scheme == SchemeKind::Ideal ? ideal : nearest;
        auto& row = counts[drop];
        row.assign(ranges.size() * n_groups, 0);
        for (std::size_t r = 0; r < ranges.size(); ++r)
            for (const double db : points[r])
            {
                const SelectionResult sel = select_mode(pathloss, candidates, db_to_linear(db) * noise, noise);
                const ModeGroup group{sel.chosen_mode.n_active_users(), sel.chosen_mode.n_active_ports()};
                const auto it = std::find(hist.groups.begin(), hist.groups.end(), group);
                ++row[r * n_groups + static_cast<std::size_t>(it - hist.groups.begin())];
            }
    });

    hist.fractions.assign(ranges.size(), std::vector<double>(n_groups, 0.0));
    for (std::size_t r = 0; r < ranges.size(); ++r)
    {
        std::vector<std::uint64_t> totals(n_groups, 0);
        for (const auto& row : counts)
            for (std::size_t g = 0; g < n_groups; ++g)
                totals[g] += row[r * n_groups + g];
        const double denom = static_cast<double>(options.n_drops) * static_cast<double>(points[r].size());
        for (std::size_t g = 0; g < n_groups; ++g)
            hist.fractions[r][g] = static_cast<double>(totals[g]) / denom;
    }
    return hist;
}

} // namespace dasrate
