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

#include "dasrate/experiments.hpp"

#include "dasrate/errors.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

namespace dasrate
{

namespace
{

double parse_double(std::string_view text, std::string_view what)
{
    while (!text.empty() && text.front() == ' ')
        text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ')
        text.remove_suffix(1);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(value))
        throw UsageError("cannot parse " + std::string(what) + " '" + std::string(text) + "'");
    return value;
}

std::string format_optional_db(const std::optional<double>& db)
{
    return db ? format_number(*db) : std::string("no crossover in range");
}

} // namespace

Scenario reference_two_user_scenario()
{
    Scenario s = make_scenario(2, 2, {{-3.0, -2.5}, {3.0, 3.5}});
    s.port_positions = {{-4.0, 0.0}, {4.0, 0.0}};
    s.validate();
    return s;
}

std::vector<double> parse_snr_grid(std::string_view text)
{
    const auto first = text.find(':');
    if (first == std::string_view::npos)
        return {parse_double(text, "SNR value")};
    const auto second = text.find(':', first + 1);
    if (second == std::string_view::npos)
        throw UsageError("SNR grid must be 'start:step:stop', got '" + std::string(text) + "'");
    const double start = parse_double(text.substr(0, first), "SNR start");
    const double step = parse_double(text.substr(first + 1, second - first - 1), "SNR step");
    const double stop = parse_double(text.substr(second + 1), "SNR stop");
    if (!(step > 0.0) || stop < start)
        throw UsageError("SNR grid '" + std::string(text) + "' needs step > 0 and stop >= start");
    const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
    if (count > 100000)
        throw UsageError("SNR grid '" + std::string(text) + "' has too many points");
    std::vector<double> grid;
    grid.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
        grid.push_back(start + static_cast<double>(i) * step);
    return grid;
}

std::vector<SnrRange> parse_snr_ranges(std::string_view text)
{
    const std::vector<double> edges = parse_snr_grid(text);
    if (edges.size() < 2)
        throw UsageError("SNR ranges need at least two edges, got '" + std::string(text) + "'");
    std::vector<SnrRange> ranges;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        ranges.push_back({edges[i], edges[i + 1]});
    return ranges;
}

std::vector<TransmissionMode> parse_mode_list(std::string_view text, int n_ports, int n_users)
{
    std::vector<TransmissionMode> modes;
    while (!text.empty())
    {
        const auto semi = text.find(';');
        const std::string_view item = text.substr(0, semi);
        if (item.find_first_not_of(" \t") != std::string_view::npos)
        {
            try
            {
                modes.push_back(parse_mode(item, n_ports, n_users));
            }
            catch (const UsageError& e)
            {
                std::string valid;
                try
                {
                    for (const auto& m : enumerate_ideal(n_ports, n_users, 10000).modes)
                        valid += (valid.empty() ? "" : ", ") + m.label();
                }
                catch (const CapacityError&)
                {
                    valid = "any assignment of " + std::to_string(n_ports) + " entries in 0.." + std::to_string(n_users);
                }
                throw UsageError(std::string(e.what()) + "; valid labels: " + valid);
            }
        }
        if (semi == std::string_view::npos)
            break;
        text.remove_prefix(semi + 1);
    }
    return modes;
}

RateCurve run_rates(const Scenario& scenario, const std::vector<double>& snr_grid_db, const RatesOptions& options)
{
    scenario.validate();
    const PathlossMatrix pathloss = pathloss_matrix(scenario);
    const std::vector<TransmissionMode> modes =
        options.modes.empty() ? enumerate_ideal(scenario.n_ports, scenario.n_users).modes : options.modes;

    std::vector<double> tx_powers;
    for (const double db : snr_grid_db)
        tx_powers.push_back(db_to_linear(db) * scenario.noise_power);

    RateCurve curve;
    curve.snr_grid_db = snr_grid_db;
    for (const auto& mode : modes)
    {
        RateSeries analytic{mode.label(), RateSource::Analytic, {}, {}};
        for (const double p : tx_powers)
            analytic.values.push_back(ergodic_sum_rate(pathloss, mode, p, scenario.noise_power).sum_rate);
        curve.series.push_back(std::move(analytic));
        if (!options.monte_carlo)
            continue;
        RateSeries mc{mode.label(), RateSource::MonteCarlo, {}, {}};
        for (const auto& e : mc_ergodic_sum_rate_curve(pathloss, mode, tx_powers, scenario.noise_power,
                                                       options.n_channels, options.seed, McOptions{options.jobs, 0}))
        {
            mc.values.push_back(e.mean);
            mc.std_errors.push_back(e.std_error);
        }
        curve.series.push_back(std::move(mc));
    }
    curve.validate();
    return curve;
}

std::vector<SchemeKind> default_sweep_schemes(int n_ports, int n_users, bool force_ideal)
{
    std::vector<SchemeKind> schemes;
    bool with_ideal = force_ideal;
    if (!with_ideal)
    {
        try
        {
            with_ideal = ideal_count(n_ports, n_users) <= kSweepIdealLimit;
        }
        catch (const CapacityError&)
        {
            with_ideal = false;
        }
    }
    if (with_ideal)
        schemes.push_back(SchemeKind::Ideal);
    schemes.push_back(SchemeKind::MinDistance);
    return schemes;
}

std::vector<TransmissionMode> default_fixed_modes(int n_ports, int n_users)
{
    if (n_ports == 2 && n_users == 2)
        return enumerate_ideal(2, 2).modes;
    std::vector<int> spread(static_cast<std::size_t>(n_ports));
    for (int j = 0; j < n_ports; ++j)
        spread[static_cast<std::size_t>(j)] = j % n_users + 1;
    std::vector<TransmissionMode> modes;
    modes.emplace_back(std::move(spread), n_users);
    modes.emplace_back(std::vector<int>(static_cast<std::size_t>(n_ports), 1), n_users);
    if (modes.front() == modes.back())
        modes.pop_back();
    return modes;
}

RateCurve run_sweep(const Scenario& scenario_template, const std::vector<double>& snr_grid_db,
                    const SweepOptions& options)
{
    const int n = scenario_template.n_ports;
    const int k = scenario_template.n_users;
    const std::vector<SchemeKind> kinds =
        options.schemes.empty() ? default_sweep_schemes(n, k, options.force_ideal) : options.schemes;
    const std::vector<TransmissionMode> fixed =
        options.fixed_modes.empty() ? default_fixed_modes(n, k) : options.fixed_modes;

    std::vector<Scheme> schemes;
    for (const SchemeKind kind : kinds)
    {
        if (kind == SchemeKind::Ideal)
        {
            const std::uint64_t count = ideal_count(n, k);
            if (count > kSweepIdealLimit && !options.force_ideal)
                throw CapacityError("ideal selection needs " + std::to_string(count) +
                                    " candidates per point; pass the ideal override to run it anyway");
            schemes.push_back(Scheme::ideal());
        }
        else if (kind == SchemeKind::MinDistance)
        {
            schemes.push_back(Scheme::min_distance());
        }
    }
    for (const auto& mode : fixed)
        schemes.push_back(Scheme::fixed(mode));
    return cell_average(scenario_template, schemes, snr_grid_db, options.cell);
}

CrossoverReport run_crossover(const Scenario& scenario)
{
    if (scenario.n_ports != 2 || scenario.n_users != 2)
        throw UsageError("crossover analysis needs n_ports = n_users = 2");
    scenario.validate();
    const PathlossMatrix configured = pathloss_matrix(scenario);
    Scenario swapped_scenario = scenario;
    std::swap(swapped_scenario.user_positions[0], swapped_scenario.user_positions[1]);
    const PathlossMatrix swapped = pathloss_matrix(swapped_scenario);

    CrossoverReport report;
    for (const auto& [name, pathloss] : {std::pair{"as configured", configured}, std::pair{"users swapped", swapped}})
    {
        report.labelings.push_back({name, pathloss, analyse_crossover(pathloss, CrossoverPair::SingleVsTwoUser12),
                                    analyse_crossover(pathloss, CrossoverPair::SingleVsTwoUser21)});
    }
    return report;
}

void write_crossover_report(std::ostream& out, const CrossoverReport& report)
{
    out << "reference_db: " << format_number(report.reference_db) << '\n';
    for (const auto& l : report.labelings)
    {
        const auto& pl = l.pathloss;
        out << "labeling: " << l.name << '\n';
        out << "  S11 S12 S21 S22: " << format_number(pl.gain(0, 0)) << ' ' << format_number(pl.gain(0, 1)) << ' '
            << format_number(pl.gain(1, 0)) << ' ' << format_number(pl.gain(1, 1)) << '\n';
        for (const auto& [pair, s] : {std::pair{"[1 1] vs [1 2]", l.versus_12}, std::pair{"[1 1] vs [2 1]", l.versus_21}})
        {
            out << "  pair: " << pair << '\n';
            out << "    formula_db: " << format_number(s.formula_db) << '\n';
            out << "    approximate_intersection_db: " << format_optional_db(s.approximate_db) << '\n';
            out << "    exact_intersection_db: " << format_optional_db(s.exact_db) << '\n';
        }
        out << "  formula_minus_reference_db: " << format_number(l.versus_12.formula_db - report.reference_db) << '\n';
    }
}

void write_histogram_csv(std::ostream& out, const ModeHistogram& histogram)
{
    out << "range_lo_db,range_hi_db,group_label,fraction\n";
    for (std::size_t r = 0; r < histogram.ranges.size(); ++r)
        for (std::size_t g = 0; g < histogram.groups.size(); ++g)
            out << format_number(histogram.ranges[r].lo_db) << ',' << format_number(histogram.ranges[r].hi_db) << ','
                << histogram.groups[g].label() << ',' << format_number(histogram.fractions[r][g]) << '\n';
}

} // namespace dasrate
