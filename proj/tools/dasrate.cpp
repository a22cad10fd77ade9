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

// dasrate command line driver.

#include "dasrate/config.hpp"
#include "dasrate/errors.hpp"
#include "dasrate/experiments.hpp"
#include "dasrate/numerics.hpp"
#include "dasrate/verify.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <optional>
#include <string>

namespace
{

enum ExitCode : int
{
    kOk = 0,
    kVerifyFailed = 1,
    kUsage = 2,
    kCapacity = 3,
    kDegeneracy = 4,
    kNumerical = 5,
    kDomain = 6,
    kOther = 70
};

struct Globals
{
    std::string config;
    std::uint64_t seed = 1;
    std::string snr = "0:5:50";
    std::string out;
    std::uint64_t drops = 4000;
    std::uint64_t channels = 5000;
    unsigned jobs = 1;
};

dasrate::Scenario load_or(const Globals& g, const std::function<dasrate::Scenario()>& fallback)
{
    return g.config.empty() ? fallback() : dasrate::load_scenario(g.config);
}

// Runs `emit` against the --out file, or stdout when none was given.
void with_output(const Globals& g, const std::function<void(std::ostream&)>& emit)
{
    if (g.out.empty() || g.out == "-")
    {
        emit(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream file(g.out, std::ios::binary);
    if (!file)
        throw dasrate::UsageError("cannot open output file '" + g.out + "'");
    emit(file);
    if (!file)
        throw dasrate::Error("failed writing '" + g.out + "'");
}

dasrate::SchemeKind parse_scheme(const std::string& name)
{
    if (name == "ideal")
        return dasrate::SchemeKind::Ideal;
    if (name == "min-distance" || name == "min_distance")
        return dasrate::SchemeKind::MinDistance;
    if (name == "fixed")
        return dasrate::SchemeKind::FixedMode;
    throw dasrate::UsageError("unknown scheme '" + name + "' (expected ideal, min-distance or fixed)");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Ergodic sum rates and transmission mode selection for distributed antenna systems"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config, "Scenario file (key = value)");
    app.add_option("--seed", g.seed, "Base random seed")->capture_default_str();
    app.add_option("--snr", g.snr, "SNR grid in dB, start:step:stop")->capture_default_str();
    app.add_option("--out", g.out, "Output file (default stdout)");
    app.add_option("--drops", g.drops, "User drops for cell averages")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--channels", g.channels, "Fading realizations per drop")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--jobs", g.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);

    auto* rates = app.add_subcommand("rates", "Per-mode sum rate curves for a fixed geometry");
    std::string rate_modes;
    bool no_mc = false;
    rates->add_option("--modes", rate_modes, "Modes, e.g. \"[1 1];[1 2]\" (default: all ideal candidates)");
    rates->add_flag("--no-mc", no_mc, "Analytic curves only");

    auto* sweep = app.add_subcommand("sweep", "Cell-averaged sum rates over uniform user drops");
    std::string sweep_schemes;
    std::string sweep_modes;
    bool with_ideal = false;
    std::string rate_source = "analytic";
    sweep->add_option("--schemes", sweep_schemes, "Comma-separated subset of ideal,min-distance,fixed");
    sweep->add_option("--modes", sweep_modes, "Fixed modes to include, ';'-separated");
    sweep->add_flag("--with-ideal", with_ideal, "Run ideal selection even when the candidate set is large");
    sweep->add_option("--rate-source", rate_source, "analytic or mc")
        ->check(CLI::IsMember({"analytic", "mc"}))
        ->capture_default_str();

    auto* crossover = app.add_subcommand("crossover", "Single-user versus two-user cross-over SNR (N=K=2)");

    auto* hist = app.add_subcommand("hist", "Relative occurrence of selected (K_A, N_A) groups per SNR range");
    std::string ranges = "0:10:50";
    double step = 1.0;
    std::string hist_scheme = "min-distance";
    hist->add_option("--ranges", ranges, "Range edges in dB, start:step:stop")->capture_default_str();
    hist->add_option("--step", step, "Evaluation spacing inside each range (dB)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    hist->add_option("--scheme", hist_scheme, "ideal or min-distance")->capture_default_str();

    auto* verify = app.add_subcommand("verify", "Run the numerical self-checks");
    std::string level = "quick";
    double tamper = 0.0;
    verify->add_option("--level", level, "quick or full")->check(CLI::IsMember({"quick", "full"}))->capture_default_str();
    verify->add_option("--tamper-e1", tamper, "Scale the special function by (1 + value)")->group("");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try
    {
        if (*rates)
        {
            const auto scenario = load_or(g, dasrate::reference_two_user_scenario);
            dasrate::RatesOptions opts;
            if (!rate_modes.empty())
                opts.modes = dasrate::parse_mode_list(rate_modes, scenario.n_ports, scenario.n_users);
            opts.monte_carlo = !no_mc;
            opts.n_channels = g.channels;
            opts.seed = g.seed;
            opts.jobs = g.jobs;
            const auto curve = dasrate::run_rates(scenario, dasrate::parse_snr_grid(g.snr), opts);
            with_output(g, [&](std::ostream& os) { dasrate::write_csv(os, curve); });
        }
        else if (*sweep)
        {
            const auto scenario = load_or(g, [] { return dasrate::make_scenario(2, 2); });
            dasrate::SweepOptions opts;
            if (!sweep_schemes.empty())
            {
                std::stringstream list(sweep_schemes);
                for (std::string item; std::getline(list, item, ',');)
                    opts.schemes.push_back(parse_scheme(item));
            }
            if (!sweep_modes.empty())
                opts.fixed_modes = dasrate::parse_mode_list(sweep_modes, scenario.n_ports, scenario.n_users);
            opts.force_ideal = with_ideal;
            opts.cell.n_drops = g.drops;
            opts.cell.n_channels = g.channels;
            opts.cell.seed = g.seed;
            opts.cell.jobs = g.jobs;
            opts.cell.source = rate_source == "mc" ? dasrate::RateSource::MonteCarlo : dasrate::RateSource::Analytic;
            const auto curve = dasrate::run_sweep(scenario, dasrate::parse_snr_grid(g.snr), opts);
            with_output(g, [&](std::ostream& os) { dasrate::write_csv(os, curve); });
        }
        else if (*crossover)
        {
            const auto scenario = load_or(g, dasrate::reference_two_user_scenario);
            const auto report = dasrate::run_crossover(scenario);
            with_output(g, [&](std::ostream& os) { dasrate::write_crossover_report(os, report); });
        }
        else if (*hist)
        {
            const auto scenario = load_or(g, [] { return dasrate::make_scenario(3, 3); });
            dasrate::HistogramOptions opts;
            opts.n_drops = g.drops;
            opts.seed = g.seed;
            opts.jobs = g.jobs;
            opts.step_db = step;
            opts.scheme = parse_scheme(hist_scheme);
            if (opts.scheme == dasrate::SchemeKind::FixedMode)
                throw dasrate::UsageError("hist needs a selection scheme (ideal or min-distance)");
            const auto histogram = dasrate::mode_histogram(scenario, dasrate::parse_snr_ranges(ranges), opts);
            with_output(g, [&](std::ostream& os) { dasrate::write_histogram_csv(os, histogram); });
        }
        else if (*verify)
        {
            dasrate::VerifyOptions opts;
            opts.level = level == "full" ? dasrate::VerifyLevel::Full : dasrate::VerifyLevel::Quick;
            opts.jobs = g.jobs;
            opts.seed = g.seed;
            if (tamper != 0.0)
                opts.e1_kernel = [tamper](double x) { return dasrate::numerics::exp_e1(x) * (1.0 + tamper); };
            const auto results = dasrate::run_verify(opts);
            with_output(g, [&](std::ostream& os) { dasrate::write_verify_report(os, results); });
            return dasrate::all_passed(results) ? kOk : kVerifyFailed;
        }
        return kOk;
    }
    catch (const dasrate::UsageError& e)
    {
        std::cerr << "usage error: " << e.what() << '\n';
        return kUsage;
    }
    catch (const dasrate::CapacityError& e)
    {
        std::cerr << "capacity error: " << e.what() << '\n';
        return kCapacity;
    }
    catch (const dasrate::DegeneracyError& e)
    {
        std::cerr << "degeneracy error: " << e.what() << '\n';
        return kDegeneracy;
    }
    catch (const dasrate::NumericalFailure& e)
    {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kNumerical;
    }
    catch (const dasrate::DomainError& e)
    {
        std::cerr << "domain error: " << e.what() << '\n';
        return kDomain;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return kOther;
    }
}
