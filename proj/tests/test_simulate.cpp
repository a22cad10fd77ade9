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

#include "dasrate/errors.hpp"
#include "dasrate/experiments.hpp"
#include "dasrate/rate.hpp"
#include "dasrate/rng.hpp"
#include "dasrate/simulate.hpp"

#include "doctest.h"

#include <cmath>
#include <numeric>

using namespace dasrate;

TEST_CASE("counter RNG")
{
    CounterRng a(derive_key(1, {2, 3}));
    CounterRng b(derive_key(1, {2, 3}));
    CounterRng c(derive_key(1, {3, 2}));
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
    CounterRng u(7);
    for (int i = 0; i < 10000; ++i)
    {
        const double v = u.uniform();
        CHECK(v > 0.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("fading draws have unit mean")
{
    const int n = 1000000;
    std::vector<double> sum(6, 0.0);
    for (int t = 0; t < n; ++t)
    {
        const auto ch = draw_channel(3, 0, static_cast<std::uint64_t>(t), 2, 3);
        for (std::size_t e = 0; e < 6; ++e)
        {
            CHECK_MESSAGE(ch.power_gains[e] >= 0.0, "negative gain");
            sum[e] += ch.power_gains[e];
        }
    }
    double all = 0.0;
    for (const double s : sum)
    {
        CHECK(std::abs(s / n - 1.0) < 0.01);
        all += s;
    }
    CHECK(std::abs(all / (6.0 * n) - 1.0) < 0.005);
    const auto a = draw_channel(3, 4, 5, 2, 2);
    const auto b = draw_channel(3, 4, 5, 2, 2);
    CHECK(a.power_gains == b.power_gains);
    CHECK(a.power_gains != draw_channel(3, 4, 6, 2, 2).power_gains);
    CHECK(a.power_gains != draw_channel(3, 5, 5, 2, 2).power_gains);
}

TEST_CASE("instantaneous rates")
{
    const auto unit = PathlossMatrix::from_gains(1, 1, {1.0});
    CHECK(instantaneous_rates(unit, TransmissionMode({1}, 1), ChannelRealization{1, 1, {1.0}}, 1.0, 1.0)[0] == 1.0);

    const auto pl = PathlossMatrix::from_gains(2, 2, {0.1, 0.2, 0.3, 0.4});
    const ChannelRealization ch{2, 2, {1.0, 2.0, 3.0, 4.0}};
    const auto r = instantaneous_rates(pl, TransmissionMode({1, 2}, 2), ch, 10.0, 1.0);
    CHECK(r[0] == doctest::Approx(std::log2(1.0 + 1.0 / 5.0)).epsilon(1e-14));
    CHECK(r[1] == doctest::Approx(std::log2(1.0 + 16.0 / 10.0)).epsilon(1e-14));

    const auto zero = instantaneous_rates(pl, TransmissionMode({1, 2}, 2), ChannelRealization{2, 2, {0, 0, 0, 0}}, 10.0, 1.0);
    CHECK(zero[0] == 0.0);
    CHECK(zero[1] == 0.0);
    const auto off = instantaneous_rates(pl, TransmissionMode({2, 2}, 2), ch, 10.0, 1.0);
    CHECK(off[0] == 0.0);
}

TEST_CASE("Monte Carlo single-link mean")
{
    Scenario s = make_scenario(1, 1, {{0.0, 0.0}});
    s.port_positions = {{1.0, 0.0}};
    const PathlossMatrix pl = pathloss_matrix(s);
    const McEstimate e = mc_ergodic_sum_rate(s, pl, TransmissionMode({1}, 1), 1000000, 17);
    CHECK(e.n_trials == 1000000);
    CHECK(std::abs(e.mean - 0.86034738227088595119) <= 3.0 * e.std_error);
    CHECK(e.std_error > 0.0);
    CHECK_THROWS_AS(mc_ergodic_sum_rate(s, pl, TransmissionMode({1}, 1), 1, 17), UsageError);
}

TEST_CASE("Monte Carlo agrees with the closed form on the reference geometry")
{
    const Scenario s = reference_two_user_scenario();
    const PathlossMatrix pl = pathloss_matrix(s);
    std::vector<double> powers;
    for (double db = 0.0; db <= 45.0; db += 5.0)
        powers.push_back(db_to_linear(db));
    for (const auto& mode : enumerate_ideal(2, 2).modes)
    {
        const auto mc = mc_ergodic_sum_rate_curve(pl, mode, powers, 1.0, 100000, 23);
        REQUIRE(mc.size() == powers.size());
        for (std::size_t p = 0; p < powers.size(); ++p)
        {
            CAPTURE(mode.label());
            CAPTURE(p);
            CHECK(std::abs(mc[p].mean - ergodic_sum_rate(pl, mode, powers[p], 1.0).sum_rate) <= 3.0 * mc[p].std_error);
        }
        // Curve entries use the same channels as single-point runs.
        const auto single = mc_ergodic_sum_rate(s.at_snr(powers[3]), pl, mode, 100000, 23);
        CHECK(single == mc[3]);
    }
}

TEST_CASE("Monte Carlo determinism across worker counts")
{
    const Scenario s = drop_users_uniform(make_scenario(3, 3), 5).at_snr(300.0);
    const PathlossMatrix pl = pathloss_matrix(s);
    const TransmissionMode mode({1, 2, 3}, 3);
    const McEstimate one = mc_ergodic_sum_rate(s, pl, mode, 12345, 9, {1, 0});
    for (const unsigned jobs : {2u, 3u, 8u})
        CHECK(mc_ergodic_sum_rate(s, pl, mode, 12345, 9, {jobs, 0}) == one);
    CHECK_FALSE(mc_ergodic_sum_rate(s, pl, mode, 12345, 9, {1, 1}) == one);
}

TEST_CASE("cell averages")
{
    const Scenario tmpl = make_scenario(2, 2);
    const std::vector<double> grid{0.0, 20.0, 40.0};
    CellAverageOptions opts;
    opts.n_drops = 2000;
    opts.seed = 4;
    const TransmissionMode m12({1, 2}, 2);
    const TransmissionMode m21({2, 1}, 2);
    const RateCurve curve = cell_average(tmpl, {Scheme::ideal(), Scheme::min_distance(), Scheme::fixed(m12), Scheme::fixed(m21)},
                                         grid, opts);
    REQUIRE(curve.series.size() == 4);
    CHECK(curve.series[0].label == "ideal");
    CHECK(curve.series[2].label == "[1 2]");

    // Independent recomputation from the documented drop stream.
    for (std::size_t p = 0; p < grid.size(); ++p)
    {
        const double rho = db_to_linear(grid[p]);
        double sum12 = 0.0;
        double sum21 = 0.0;
        double diff = 0.0;
        double diff_sq = 0.0;
        for (std::uint64_t d = 0; d < opts.n_drops; ++d)
        {
            const Scenario s = drop_users_uniform(tmpl, derive_key(opts.seed, {kTagDropSeed, d}));
            const PathlossMatrix pl = pathloss_matrix(s);
            const double a = ergodic_sum_rate(pl, m12, rho, 1.0).sum_rate;
            const double b = ergodic_sum_rate(pl, m21, rho, 1.0).sum_rate;
            sum12 += a;
            sum21 += b;
            diff += a - b;
            diff_sq += (a - b) * (a - b);
        }
        const double n = static_cast<double>(opts.n_drops);
        CHECK(curve.series[2].values[p] == doctest::Approx(sum12 / n).epsilon(1e-12));
        CHECK(curve.series[3].values[p] == doctest::Approx(sum21 / n).epsilon(1e-12));
        // [1 2] and [2 1] are mirror images under uniform drops.
        const double mean = diff / n;
        const double se = std::sqrt((diff_sq / n - mean * mean) / n);
        CHECK(std::abs(mean) <= 3.5 * se);
        for (std::size_t s = 2; s < 4; ++s)
        {
            CHECK(curve.series[0].values[p] >= curve.series[s].values[p]);
            CHECK(curve.series[1].values[p] >= curve.series[s].values[p]);
        }
        CHECK(curve.series[0].values[p] >= curve.series[1].values[p]);
    }

    // Worker count does not change the result.
    opts.n_drops = 50;
    opts.jobs = 1;
    const RateCurve c1 = cell_average(make_scenario(3, 3), Scheme::min_distance(), grid, opts);
    opts.jobs = 4;
    const RateCurve c4 = cell_average(make_scenario(3, 3), Scheme::min_distance(), grid, opts);
    CHECK(c1.series[0].values == c4.series[0].values);

    // Monte Carlo rating path carries standard errors.
    opts.n_drops = 5;
    opts.n_channels = 200;
    opts.source = RateSource::MonteCarlo;
    const RateCurve mc = cell_average(tmpl, Scheme::fixed(m12), grid, opts);
    CHECK(mc.series[0].source == RateSource::MonteCarlo);
    CHECK(mc.series[0].std_errors.size() == grid.size());

    opts.n_drops = 0;
    CHECK_THROWS_AS(cell_average(tmpl, Scheme::ideal(), grid, opts), UsageError);
}

TEST_CASE("mode histogram")
{
    HistogramOptions opts;
    opts.n_drops = 60;
    opts.seed = 2;
    opts.step_db = 5.0;
    const std::vector<SnrRange> ranges{{0.0, 25.0}, {25.0, 50.0}};
    const ModeHistogram h = mode_histogram(make_scenario(3, 3), ranges, opts);
    REQUIRE(h.fractions.size() == 2);
    // (K_A, N_A) with K_A <= N_A <= 3: 6 groups.
    CHECK(h.groups.size() == 6);
    CHECK(h.groups.front().label() == "KA1_NA1");
    for (const auto& row : h.fractions)
    {
        CHECK(std::accumulate(row.begin(), row.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
        for (const double f : row)
            CHECK(f >= 0.0);
    }
    CHECK(h.single_user_fraction(1) >= h.single_user_fraction(0));
    CHECK(h.single_user_fraction(0) == doctest::Approx(h.fraction(0, {1, 1}) + h.fraction(0, {1, 2}) + h.fraction(0, {1, 3})));
    opts.jobs = 3;
    CHECK(mode_histogram(make_scenario(3, 3), ranges, opts).fractions == h.fractions);
    CHECK_THROWS_AS(mode_histogram(make_scenario(3, 3), {{10.0, 10.0}}, opts), UsageError);
}
