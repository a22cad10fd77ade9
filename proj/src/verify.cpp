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

#include "dasrate/verify.hpp"

#include "dasrate/errors.hpp"
#include "dasrate/experiments.hpp"
#include "dasrate/modes.hpp"
#include "dasrate/numerics.hpp"
#include "dasrate/rate.hpp"
#include "dasrate/rng.hpp"
#include "dasrate/select.hpp"
#include "dasrate/simulate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <utility>

namespace dasrate
{

namespace
{

// e^x E1(x), 20 significant digits (40-digit reference arithmetic).
constexpr std::array<std::pair<double, double>, 14> kScaledE1Reference = {{
    {1e-300, 690.19831223331217234},
    {1e-8, 17.843465267485484369},
    {0.01, 4.0785114434564258466},
    {0.25, 1.3408854448313933526},
    {0.5, 0.92291063248373046883},
    {0.999, 0.59675131336868582445},
    {1.0, 0.59634736232319407434},
    {1.001, 0.59594400762544767665},
    {2.0, 0.3613286168882225847},
    {5.0, 0.17042217628473220181},
    {10.0, 0.091563333939788081876},
    {100.0, 0.0099019422867330184064},
    {1e4, 0.00009999000199940023988},
    {1e6, 9.99999000001999994e-7},
}};

struct Collector
{
    std::vector<CheckResult> results;

    void add(std::string name, double measured, double tolerance, std::string detail = {}, bool strict_less = false)
    {
        const bool ok = std::isfinite(measured) && (strict_less ? measured < tolerance : measured <= tolerance);
        results.push_back({std::move(name), ok, measured, tolerance, std::move(detail)});
    }

    void fail(std::string name, std::string detail)
    {
        results.push_back({std::move(name), false, 0.0, 0.0, std::move(detail)});
    }
};

UserLinkPartition random_partition(CounterRng& rng, bool with_interference)
{
    const auto gain = [&] { return std::pow(10.0, -3.0 + 3.0 * rng.uniform()); };
    const auto count = [&] { return 1 + static_cast<int>(rng.uniform() * 3.0); };
    std::vector<double> signal(static_cast<std::size_t>(count()));
    std::vector<double> interference(with_interference ? static_cast<std::size_t>(count()) : 0);
    for (double& s : signal)
        s = gain();
    for (double& s : interference)
        s = gain();
    const double tx_power = std::pow(10.0, 4.0 * rng.uniform());
    return make_partition(std::move(signal), std::move(interference), tx_power, 1.0);
}

double max_signal_mean(const UserLinkPartition& p)
{
    return *std::max_element(p.signal_gains.begin(), p.signal_gains.end()) * p.tx_power;
}

void check_special_function(Collector& c, const std::function<double(double)>& kernel)
{
    double worst = 0.0;
    for (const auto& [x, expected] : kScaledE1Reference)
        worst = std::max(worst, std::abs(kernel(x) - expected) / expected);
    c.add("exp_e1 vs 40-digit reference", worst, 1e-12, "max relative error over 14 points");

    double worst_margin = 1.0;
    bool monotone = true;
    double previous = 0.0;
    constexpr int n = 241;
    for (int i = 0; i < n; ++i)
    {
        const double x = std::pow(10.0, -6.0 + 9.0 * i / (n - 1));
        const double v = kernel(x);
        const double upper = std::log1p(1.0 / x);
        const double lower = 0.5 * std::log1p(2.0 / x);
        worst_margin = std::min({worst_margin, (upper - v) / upper, (v - lower) / lower});
        if (i > 0 && !(v < previous))
            monotone = false;
        previous = v;
    }
    c.add("exp_e1 two-sided bound on [1e-6, 1e3]", -worst_margin, 0.0,
          "negated smallest relative margin to ln(1+2/x)/2 and ln(1+1/x)", true);
    c.add("exp_e1 strictly decreasing", monotone ? 0.0 : 1.0, 0.0, "241-point log grid");
}

void check_branches(Collector& c)
{
    const double x = numerics::detail::kExpE1Switchover;
    const double series = numerics::detail::exp_e1_series(x);
    const double fraction = numerics::detail::exp_e1_continued_fraction(x);
    c.add("exp_e1 branch consistency at switchover", std::abs(series - fraction) / fraction, 1e-12);
}

void check_counts(Collector& c)
{
    const std::array<std::array<std::uint64_t, 3>, 3> expected = {{{2, 4, 2}, {4, 568, 12}, {5, 7625, 27}}};
    double mismatches = 0.0;
    std::string detail;
    for (const auto& [nk, ideal, nearest] : expected)
    {
        const int n = static_cast<int>(nk);
        // One user close to each port: distinct nearest users.
        Scenario s = make_scenario(n, n);
        for (const Point& p : s.port_positions)
            s.user_positions.push_back({0.9 * p.x, 0.9 * p.y});
        const auto pathloss = pathloss_matrix(s);
        const auto got_ideal = enumerate_ideal(n, n).size();
        const auto got_nearest = enumerate_min_distance(pathloss).size();
        if (got_ideal != ideal || ideal_count(n, n) != ideal || got_nearest != nearest || min_distance_count(n) != nearest)
            mismatches += 1.0;
        detail += "N=K=" + std::to_string(n) + ": " + std::to_string(got_ideal) + "/" + std::to_string(got_nearest) + " ";
    }
    c.add("candidate counts 4/568/7625 and 2/12/27", mismatches, 0.0, detail);
}

void check_pdfs_and_rates(Collector& c, std::uint64_t seed, int n_partitions)
{
    CounterRng rng(derive_key(seed, {0x7665726966ULL, 1}));
    double worst_norm = 0.0;
    double worst_rate = 0.0;
    for (int i = 0; i < n_partitions; ++i)
    {
        const UserLinkPartition p = random_partition(rng, true);
        const double scale_s = max_signal_mean(p);
        const double scale_i = *std::max_element(p.interference_gains.begin(), p.interference_gains.end()) * p.tx_power;
        worst_norm = std::max(worst_norm, std::abs(numerics::integrate_half_line(pdf_signal(p), 0.0, scale_s, 1e-10).value - 1.0));
        worst_norm = std::max(worst_norm, std::abs(numerics::integrate_half_line(pdf_interference_plus_noise(p),
                                                                                  p.noise_power, scale_i, 1e-10).value -
                                                   1.0));
        worst_norm = std::max(worst_norm, std::abs(numerics::integrate_half_line(pdf_sinr(p), 0.0,
                                                                                  scale_s / p.noise_power, 1e-10).value -
                                                   1.0));

        const double closed = ergodic_user_rate(p);
        const double quad = numerics::log_integral_quadrature(pdf_sinr(p), scale_s / p.noise_power);
        worst_rate = std::max(worst_rate, std::abs(closed - quad));

        // Interference-free rate against the signal density rescaled by the noise.
        const double no_int = ergodic_user_rate_no_interference(p.signal_gains, p.tx_power, p.noise_power);
        const auto signal_pdf = pdf_signal(p);
        const double noise = p.noise_power;
        const double quad_no_int = numerics::log_integral_quadrature(
            [&](double snr) { return noise * signal_pdf(snr * noise); }, scale_s / noise);
        worst_rate = std::max(worst_rate, std::abs(no_int - quad_no_int));
    }
    c.add("pdf normalization (signal, interference+noise, SINR)", worst_norm, 1e-6,
          std::to_string(n_partitions) + " random partitions");
    c.add("closed-form rate vs quadrature", worst_rate, 1e-8, std::to_string(n_partitions) + " random partitions");
}

void check_selection(Collector& c, std::uint64_t seed, int n_drops, unsigned jobs)
{
    const std::array<double, 6> snr_db = {0.0, 10.0, 20.0, 30.0, 40.0, 50.0};
    double worst_violation = 0.0;
    int argmax_changes = 0;
    for (const int nk : {2, 3})
    {
        const Scenario tmpl = make_scenario(nk, nk);
        const CandidateSet ideal = enumerate_ideal(nk, nk);
        for (int d = 0; d < n_drops; ++d)
        {
            const Scenario s = drop_users_uniform(tmpl, derive_key(seed, {0x73656cULL, static_cast<std::uint64_t>(nk),
                                                                          static_cast<std::uint64_t>(d)}));
            const PathlossMatrix pl = pathloss_matrix(s);
            const CandidateSet nearest = enumerate_min_distance(pl);
            for (const double db : snr_db)
            {
                const double rho = db_to_linear(db);
                const auto a = select_mode(pl, ideal, rho, 1.0);
                const auto b = select_mode(pl, nearest, rho, 1.0);
                worst_violation = std::max(worst_violation, b.chosen_rate - a.chosen_rate);
                const auto scaled = select_mode(pl, ideal, rho * 7.5, 7.5);
                if (!(scaled.chosen_mode == a.chosen_mode))
                    ++argmax_changes;
            }
        }
    }
    c.add("selection subset dominance (ideal >= min-distance)", worst_violation, 0.0,
          std::to_string(n_drops) + " drops each at N=K=2,3");
    c.add("argmax invariance under common P/noise scaling", argmax_changes, 0.0);

    // Determinism across worker counts.
    const Scenario fig = reference_two_user_scenario();
    const PathlossMatrix pl = pathloss_matrix(fig);
    const TransmissionMode mode({1, 2}, 2);
    const Scenario at30 = fig.at_snr(1e3);
    const McEstimate one = mc_ergodic_sum_rate(at30, pl, mode, 20000, seed, McOptions{1, 0});
    const McEstimate many = mc_ergodic_sum_rate(at30, pl, mode, 20000, seed, McOptions{std::max(2u, jobs), 0});
    CellAverageOptions opts;
    opts.n_drops = 40;
    opts.seed = seed;
    opts.jobs = 1;
    const auto grid = std::vector<double>{0.0, 25.0, 50.0};
    const RateCurve c1 = cell_average(make_scenario(3, 3), Scheme::min_distance(), grid, opts);
    opts.jobs = std::max(3u, jobs);
    const RateCurve c3 = cell_average(make_scenario(3, 3), Scheme::min_distance(), grid, opts);
    const bool identical = one == many && c1.series.front().values == c3.series.front().values;
    c.add("bit-identical reruns across worker counts", identical ? 0.0 : 1.0, 0.0);
}

void check_monte_carlo(Collector& c, std::uint64_t seed, unsigned jobs)
{
    const Scenario fig = reference_two_user_scenario();
    const PathlossMatrix pl = pathloss_matrix(fig);
    const std::vector<double> grid = parse_snr_grid("0:5:50");
    std::vector<double> powers;
    for (const double db : grid)
        powers.push_back(db_to_linear(db));
    double worst_z = 0.0;
    for (const auto& mode : enumerate_ideal(2, 2).modes)
    {
        const auto mc = mc_ergodic_sum_rate_curve(pl, mode, powers, 1.0, 100000, seed, McOptions{jobs, 0});
        for (std::size_t p = 0; p < grid.size(); ++p)
        {
            const double exact = ergodic_sum_rate(pl, mode, powers[p], 1.0).sum_rate;
            worst_z = std::max(worst_z, std::abs(exact - mc[p].mean) / mc[p].std_error);
        }
    }
    c.add("analytic vs Monte Carlo, reference geometry (|z|)", worst_z, 3.0, "4 modes x 11 SNR points, 1e5 channels");

    // Random scenarios and modes.
    CounterRng rng(derive_key(seed, {0x6d63ULL}));
    double worst_random = 0.0;
    for (int t = 0; t < 20; ++t)
    {
        const int nk = 2 + t % 3;
        const Scenario s = drop_users_uniform(make_scenario(nk, nk), rng.next_u64()).at_snr(db_to_linear(50.0 * rng.uniform()));
        const PathlossMatrix spl = pathloss_matrix(s);
        const CandidateSet set = enumerate_ideal(nk, nk);
        const auto& mode = set.modes[static_cast<std::size_t>(rng.uniform() * static_cast<double>(set.size()))];
        const McEstimate mc = mc_ergodic_sum_rate(s, spl, mode, 100000, seed, McOptions{jobs, static_cast<std::uint64_t>(t + 1)});
        worst_random = std::max(worst_random, std::abs(ergodic_sum_rate(s, spl, mode).sum_rate - mc.mean) / mc.std_error);
    }
    c.add("analytic vs Monte Carlo, 20 random scenarios (|z|)", worst_random, 3.0, "1e5 channels each");
}

void check_ks(Collector& c, std::uint64_t seed)
{
    const UserLinkPartition p = make_partition({0.05, 0.02}, {0.01, 0.003}, 100.0, 1.0);
    constexpr std::size_t n = 1000000;
    CounterRng rng(derive_key(seed, {0x6b73ULL}));
    std::vector<double> signal(n), ipn(n), sinr(n);
    for (std::size_t t = 0; t < n; ++t)
    {
        double s = 0.0;
        double i = p.noise_power;
        for (const double g : p.signal_gains)
            s += g * p.tx_power * rng.exponential();
        for (const double g : p.interference_gains)
            i += g * p.tx_power * rng.exponential();
        signal[t] = s;
        ipn[t] = i;
        sinr[t] = s / i;
    }
    const double worst = std::max({ks_statistic(signal, cdf_signal(p)), ks_statistic(ipn, cdf_interference_plus_noise(p)),
                                   ks_statistic(sinr, cdf_sinr(p))});
    c.add("KS statistic of the three densities", worst, 0.005, "1e6 samples each");
}

} // namespace

double ks_statistic(std::vector<double>& samples, const std::function<double(double)>& cdf)
{
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i)
    {
        const double f = cdf(samples[i]);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    return d;
}

std::vector<CheckResult> run_verify(const VerifyOptions& options)
{
    Collector c;
    const auto kernel = options.e1_kernel ? options.e1_kernel : [](double x) { return numerics::exp_e1(x); };
    const bool full = options.level == VerifyLevel::Full;
    const auto guarded = [&](const char* name, auto&& body) {
        try
        {
            body();
        }
        catch (const std::exception& e)
        {
            c.fail(name, std::string("threw: ") + e.what());
        }
    };
    guarded("special function", [&] { check_special_function(c, kernel); });
    guarded("special function branches", [&] { check_branches(c); });
    guarded("candidate counts", [&] { check_counts(c); });
    guarded("densities and rates", [&] { check_pdfs_and_rates(c, options.seed, full ? 50 : 10); });
    guarded("selection", [&] { check_selection(c, options.seed, full ? 300 : 30, options.jobs); });
    if (full)
    {
        guarded("monte carlo", [&] { check_monte_carlo(c, options.seed, options.jobs); });
        guarded("ks", [&] { check_ks(c, options.seed); });
    }
    return c.results;
}

bool all_passed(const std::vector<CheckResult>& results)
{
    return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

void write_verify_report(std::ostream& out, const std::vector<CheckResult>& results)
{
    for (const auto& r : results)
    {
        out << (r.passed ? "PASS " : "FAIL ") << r.name << "  measured=" << r.measured << " tolerance=" << r.tolerance;
        if (!r.detail.empty())
            out << "  (" << r.detail << ')';
        out << '\n';
    }
    const auto failed = std::count_if(results.begin(), results.end(), [](const CheckResult& r) { return !r.passed; });
    out << (failed == 0 ? "all " + std::to_string(results.size()) + " checks passed"
                        : std::to_string(failed) + " of " + std::to_string(results.size()) + " checks failed")
        << '\n';
}

} // namespace dasrate
