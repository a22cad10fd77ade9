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
#include "dasrate/numerics.hpp"
#include "dasrate/rate.hpp"
#include "dasrate/rng.hpp"

#include "doctest.h"

#include <boost/math/quadrature/exp_sinh.hpp>

#include <cmath>
#include <numbers>
#include <vector>

using namespace dasrate;

namespace
{

constexpr double kInvLn2 = 1.4426950408889634074;

// E[log2(1 + X/Y)] via E[ln(1 + X/Y)] = int_0^inf (M_Y(z) - M_{X+Y}(z)) / z dz,
// with M the Laplace transforms of the exponential mixtures. Independent of
// the partial-fraction and E1 machinery.
double mgf_rate(const std::vector<double>& signal, const std::vector<double>& interference, double P, double noise)
{
    const auto f = [&](double z) {
        double my = std::exp(-z * noise);
        for (const double g : interference)
            my /= 1.0 + z * g * P;
        double mx = 1.0;
        for (const double g : signal)
            mx /= 1.0 + z * g * P;
        return my * -std::expm1(std::log(mx)) / z;
    };
    boost::math::quadrature::exp_sinh<double> integrator;
    return integrator.integrate(f, 0.0, std::numeric_limits<double>::infinity(), 1e-13) * kInvLn2;
}

struct RandomPartition
{
    std::vector<double> signal;
    std::vector<double> interference;
    double P;
};

RandomPartition random_partition(CounterRng& rng, int max_signal, int max_interference)
{
    RandomPartition r;
    const int ns = 1 + static_cast<int>(rng.uniform() * max_signal);
    const int ni = static_cast<int>(rng.uniform() * (max_interference + 1));
    for (int k = 0; k < ns; ++k)
        r.signal.push_back(std::pow(10.0, -3.0 + 3.0 * rng.uniform()));
    for (int k = 0; k < ni; ++k)
        r.interference.push_back(std::pow(10.0, -3.0 + 3.0 * rng.uniform()));
    r.P = std::pow(10.0, 5.0 * rng.uniform());
    return r;
}

double rate_of(const RandomPartition& r, double noise = 1.0)
{
    const auto p = make_partition(r.signal, r.interference, r.P, noise);
    return p.interference_gains.empty() ? ergodic_user_rate_no_interference(p.signal_gains, p.tx_power, p.noise_power)
                                        : ergodic_user_rate(p);
}

PathlossMatrix fig2_pathloss() { return pathloss_matrix(reference_two_user_scenario()); }

} // namespace

TEST_CASE("partial fraction weights")
{
    const auto w1 = partial_fraction_weights(std::vector<double>{0.3});
    CHECK(w1[0] == 1.0);
    const auto w2 = partial_fraction_weights(std::vector<double>{1.0, 2.0});
    CHECK(w2[0] == doctest::Approx(-1.0));
    CHECK(w2[1] == doctest::Approx(2.0));
    const auto w3 = partial_fraction_weights(std::vector<double>{0.1, 0.5, 0.9});
    CHECK(w3[0] + w3[1] + w3[2] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("signal density examples")
{
    const auto one = make_partition({0.2}, {}, 5.0, 1.0);
    const auto pdf = pdf_signal(one);
    for (const double x : {0.0, 0.3, 1.0, 7.0})
        CHECK(pdf(x) == doctest::Approx(std::exp(-x) / 1.0).epsilon(1e-14));

    const auto two = make_partition({1.0, 2.0}, {}, 1.0, 1.0);
    const auto pdf2 = pdf_signal(two);
    for (const double x : {0.1, 1.0, 4.0, 20.0})
        CHECK(pdf2(x) == doctest::Approx(std::exp(-x / 2.0) - std::exp(-x)).epsilon(1e-12));
    const double mass = numerics::integrate_half_line(pdf2, 0.0, 2.0).value;
    CHECK(std::abs(mass - 1.0) <= 1e-6);
    const auto cdf2 = cdf_signal(two);
    CHECK(cdf2(0.0) == doctest::Approx(0.0));
    const double h = 1e-5;
    CHECK((cdf2(3.0 + h) - cdf2(3.0 - h)) / (2 * h) == doctest::Approx(pdf2(3.0)).epsilon(1e-7));
}

TEST_CASE("interference plus noise density")
{
    const auto p = make_partition({0.5}, {0.1}, 10.0, 2.0);
    const auto pdf = pdf_interference_plus_noise(p);
    CHECK(pdf(2.0 + 3.0) == doctest::Approx(std::exp(-3.0) / 1.0).epsilon(1e-13));
    CHECK(pdf(1.5) == 0.0);

    const auto q = make_partition({0.5}, {0.1, 0.03, 0.2}, 10.0, 2.0);
    const auto pq = pdf_interference_plus_noise(q);
    const double mean = numerics::integrate_half_line([&](double x) { return x * pq(x); }, 2.0, 2.0, 1e-12).value;
    CHECK(std::abs(mean - (2.0 + 10.0 * (0.1 + 0.03 + 0.2))) <= 1e-6);
    const double mass = numerics::integrate_half_line(pq, 2.0, 2.0).value;
    CHECK(std::abs(mass - 1.0) <= 1e-6);
}

TEST_CASE("SINR density")
{
    CounterRng rng(derive_key(5, {1}));
    for (int t = 0; t < 20; ++t)
    {
        RandomPartition r = random_partition(rng, 3, 3);
        if (r.interference.empty())
            r.interference.push_back(0.01);
        const auto p = make_partition(r.signal, r.interference, r.P, 1.0);
        const double scale = r.P * *std::max_element(p.signal_gains.begin(), p.signal_gains.end());
        const double mass = numerics::integrate_half_line(pdf_sinr(p), 0.0, scale).value;
        CHECK(std::abs(mass - 1.0) <= 1e-6);
        const auto cdf = cdf_sinr(p);
        const double x = 0.7 * scale;
        const double h = 1e-6 * x;
        CHECK((cdf(x + h) - cdf(x - h)) / (2 * h) == doctest::Approx(pdf_sinr(p)(x)).epsilon(1e-5));
    }

    // Vanishing noise: ratio of exponentials.
    const double ss = 0.3;
    const double su = 0.05;
    const auto p = make_partition({ss}, {su}, 1.0, 1e-9);
    const auto pdf = pdf_sinr(p);
    for (const double rho : {0.1, 1.0, 10.0})
        CHECK(pdf(rho) == doctest::Approx(ss * su / ((su * rho + ss) * (su * rho + ss))).epsilon(1e-6));

    CHECK_THROWS_AS(pdf_sinr(make_partition({0.1}, {}, 1.0, 1.0)), UsageError);
}

TEST_CASE("closed-form rate equals the Laplace-transform oracle")
{
    CounterRng rng(derive_key(6, {1}));
    for (int t = 0; t < 60; ++t)
    {
        const RandomPartition r = random_partition(rng, 3, 3);
        const auto p = make_partition(r.signal, r.interference, r.P, 1.0);
        CAPTURE(t);
        CHECK(std::abs(rate_of(r) - mgf_rate(p.signal_gains, p.interference_gains, r.P, 1.0)) <= 1e-9);
    }
}

TEST_CASE("closed-form rate equals quadrature over the densities")
{
    CounterRng rng(derive_key(7, {1}));
    for (int t = 0; t < 50; ++t)
    {
        RandomPartition r = random_partition(rng, 3, 3);
        if (r.interference.empty())
            r.interference.push_back(0.02);
        const auto p = make_partition(r.signal, r.interference, r.P, 1.0);
        const double cut = r.P * *std::max_element(p.signal_gains.begin(), p.signal_gains.end());
        CHECK(std::abs(ergodic_user_rate(p) - numerics::log_integral_quadrature(pdf_sinr(p), cut)) <= 1e-8);
        const double noise = 1.0;
        const auto ps = pdf_signal(p);
        const double q = numerics::log_integral_quadrature([&](double x) { return noise * ps(x * noise); }, cut);
        CHECK(std::abs(ergodic_user_rate_no_interference(p.signal_gains, r.P, noise) - q) <= 1e-8);
    }
}

TEST_CASE("no-interference rate examples")
{
    // S P / noise = 1: e E1(1) / ln 2
    CHECK(ergodic_user_rate_no_interference(std::vector<double>{0.5}, 2.0, 1.0) ==
          doctest::Approx(0.86034738227088595119).epsilon(1e-13));

    // Near-repeated gains approach the Erlang-2 rate.
    const double s = 0.04;
    const double P = 300.0;
    const double near = ergodic_user_rate_no_interference(std::vector<double>{s, s * (1 + 1e-6)}, P, 1.0);
    const double theta = s * P;
    const double erlang = numerics::log_integral_quadrature(
        [&](double x) { return x / (theta * theta) * std::exp(-x / theta); }, 2.0 * theta);
    CHECK(std::abs(near - erlang) <= 1e-4);

    CounterRng rng(derive_key(8, {1}));
    for (int t = 0; t < 30; ++t)
    {
        RandomPartition r = random_partition(rng, 3, 3);
        const double base = rate_of(r);
        r.P *= 2.0;
        CHECK(rate_of(r) > base);
    }
}

TEST_CASE("degeneracy guard")
{
    std::vector<double> s{0.1, 0.1, 0.2};
    std::vector<double> i{0.2};
    apply_degeneracy_guard(s, i);
    CHECK(s[0] == 0.1);
    CHECK(s[1] == doctest::Approx(0.1 * (1 + 1e-7)).epsilon(1e-15));
    CHECK(s[1] != 0.1);
    CHECK(i[0] != 0.2);

    // Continuity across the perturbation.
    CounterRng rng(derive_key(9, {1}));
    for (int t = 0; t < 30; ++t)
    {
        RandomPartition r = random_partition(rng, 3, 3);
        const double base = rate_of(r);
        r.signal[0] *= 1.0 + 1e-7;
        CHECK(std::abs(rate_of(r) - base) < 1e-4);
    }
    const double exact_tie = rate_of({{0.05, 0.05}, {0.05}, 100.0});
    const double split = rate_of({{0.05, 0.05 * (1 + 1e-5)}, {0.05 * (1 - 1e-5)}, 100.0});
    CHECK(std::abs(exact_tie - split) < 1e-4);
    const auto guarded = make_partition({0.05, 0.05}, {0.05}, 100.0, 1.0);
    CHECK(std::abs(exact_tie - mgf_rate(guarded.signal_gains, guarded.interference_gains, 100.0, 1.0)) < 1e-9);
    CHECK(std::abs(exact_tie - mgf_rate({0.05, 0.05}, {0.05}, 100.0, 1.0)) < 1e-6);
    // The third gain is pushed onto the first.
    CHECK_THROWS_AS(make_partition({0.05 * (1 + 2e-7), 0.05, 0.05}, {}, 1.0, 1.0), DegeneracyError);
}

TEST_CASE("nearly coincident gains stay accurate")
{
    // Gap above the guard tolerance but small enough to wreck partial fractions.
    for (const double gap : {1e-8, 1e-6, 1e-4, 1e-2})
    {
        const std::vector<double> s{0.02, 0.02 * (1 + gap), 0.02 * (1 + 2 * gap)};
        const std::vector<double> i{0.01, 0.01 * (1 + gap)};
        CAPTURE(gap);
        CHECK(std::abs(rate_of({s, i, 1e3}) - mgf_rate(s, i, 1e3, 1.0)) < 1e-9);
        CHECK(std::abs(rate_of({s, {}, 1e3}) - mgf_rate(s, {}, 1e3, 1.0)) < 1e-9);
    }

    // A user at the cell centre is equidistant from every port.
    Scenario centre = make_scenario(5, 2, {{0.0, 0.0}, {1.0, 2.0}}).at_snr(db_to_linear(30.0));
    const PathlossMatrix pl = pathloss_matrix(centre);
    const TransmissionMode mode({1, 1, 1, 2, 2}, 2);
    const auto a = ergodic_sum_rate(centre, pl, mode);
    const auto p1 = user_partition(pl, mode, 1, centre.tx_power, 1.0);
    CHECK(std::abs(a.per_user_rates[0] - mgf_rate(p1.signal_gains, p1.interference_gains, centre.tx_power, 1.0)) < 1e-9);
    const auto single = ergodic_sum_rate(centre, pl, TransmissionMode({1, 1, 1, 1, 1}, 2));
    const auto ps = user_partition(pl, TransmissionMode({1, 1, 1, 1, 1}, 2), 1, centre.tx_power, 1.0);
    CHECK(std::abs(single.sum_rate - mgf_rate(ps.signal_gains, {}, centre.tx_power, 1.0)) < 1e-9);
}

TEST_CASE("interference strictly hurts, vanishing interference is harmless")
{
    CounterRng rng(derive_key(10, {1}));
    for (int t = 0; t < 30; ++t)
    {
        RandomPartition r = random_partition(rng, 3, 2);
        const double base = rate_of(r);
        r.interference.push_back(std::pow(10.0, -2.5 + 2.0 * rng.uniform()));
        CHECK(rate_of(r) < base);
    }
    const double clean = ergodic_user_rate_no_interference(std::vector<double>{0.07}, 1000.0, 1.0);
    const double faint = ergodic_user_rate(make_partition({0.07}, {1e-12}, 1000.0, 1.0));
    CHECK(std::abs(clean - faint) < 1e-8);
}

TEST_CASE("reference geometry sum rates against frozen values")
{
    // 30-digit evaluation of the Laplace-transform identity.
    struct Case
    {
        std::vector<int> mode;
        double db;
        double expected;
    };
    const Case cases[] = {
        {{1, 1}, 0, 0.07379750651309286},  {{1, 1}, 20, 2.2732492180894497}, {{1, 1}, 40, 8.3961036132155932},
        {{1, 2}, 0, 0.099549725790857956}, {{1, 2}, 20, 3.2103458592225608}, {{1, 2}, 40, 7.8585518170210342},
        {{2, 1}, 0, 0.0062850167224258065}, {{2, 1}, 20, 0.21779712515046752}, {{2, 1}, 40, 0.55693848235788401},
        {{2, 2}, 0, 0.032260083425102244}, {{2, 2}, 20, 1.4832272138162574}, {{2, 2}, 40, 7.2508605973635153},
    };
    const PathlossMatrix pl = fig2_pathloss();
    for (const auto& c : cases)
    {
        const TransmissionMode m(c.mode, 2);
        const AnalysisPoint a = ergodic_sum_rate(pl, m, db_to_linear(c.db), 1.0);
        CAPTURE(m.label());
        CAPTURE(c.db);
        CHECK(a.sum_rate == doctest::Approx(c.expected).epsilon(1e-10));
        CHECK(a.sum_rate == doctest::Approx(a.per_user_rates[0] + a.per_user_rates[1]).epsilon(1e-15));
    }
    const AnalysisPoint single = ergodic_sum_rate(pl, TransmissionMode({1, 1}, 2), 100.0, 1.0);
    CHECK(single.per_user_rates[1] == 0.0);
}

TEST_CASE("permutation equivariance")
{
    Scenario s = drop_users_uniform(make_scenario(3, 3), 1234).at_snr(db_to_linear(25.0));
    const PathlossMatrix pl = pathloss_matrix(s);
    const TransmissionMode mode({2, 1, 3}, 3);
    const AnalysisPoint base = ergodic_sum_rate(s, pl, mode);

    // Swap users 1 and 2.
    Scenario swapped = s;
    std::swap(swapped.user_positions[0], swapped.user_positions[1]);
    const AnalysisPoint su = ergodic_sum_rate(swapped, pathloss_matrix(swapped), TransmissionMode({1, 2, 3}, 3));
    CHECK(su.per_user_rates[0] == doctest::Approx(base.per_user_rates[1]).epsilon(1e-12));
    CHECK(su.per_user_rates[1] == doctest::Approx(base.per_user_rates[0]).epsilon(1e-12));
    CHECK(su.per_user_rates[2] == doctest::Approx(base.per_user_rates[2]).epsilon(1e-12));

    // Reverse port order with the mode.
    Scenario ports = s;
    std::reverse(ports.port_positions.begin(), ports.port_positions.end());
    const AnalysisPoint sp = ergodic_sum_rate(ports, pathloss_matrix(ports), TransmissionMode({3, 1, 2}, 3));
    CHECK(sp.sum_rate == doctest::Approx(base.sum_rate).epsilon(1e-12));
}

TEST_CASE("approximate rates")
{
    const PathlossMatrix pl = fig2_pathloss();
    const double S11 = pl.gain(0, 0), S12 = pl.gain(0, 1), S21 = pl.gain(1, 0), S22 = pl.gain(1, 1);
    const double rho = 100.0;
    // [1 2]: each user sees one signal and one interference gain.
    // Exact form with one signal and one interference gain, g(x) -> ln(1 + 1/x).
    const auto pair = [&](double s, double i) {
        return s / (s - i) * (std::log1p(s * rho) - std::log1p(i * rho)) * kInvLn2;
    };
    const double hand = pair(S11, S12) + pair(S22, S21);
    CHECK(approx_sum_rate(pl, TransmissionMode({1, 2}, 2), rho, 1.0) == doctest::Approx(hand).epsilon(1e-12));

    // [1 1]: two-logarithm form.
    const double two_log =
        (S11 / (S11 - S12) * std::log1p(S11 * rho) + S12 / (S12 - S11) * std::log1p(S12 * rho)) * kInvLn2;
    CHECK(approx_sum_rate(pl, TransmissionMode({1, 1}, 2), rho, 1.0) == doctest::Approx(two_log).epsilon(1e-12));
    (void)S21;

    // Single-user modes: both grow as log2(rho) with the same slope, the
    // relative gap closes, and the absolute gap tends to gamma / ln 2 because
    // e^x E1(x) + gamma + ln x -> 0 while ln(1 + 1/x) + ln x -> 0.
    const TransmissionMode m({2, 2}, 2);
    const auto gap = [&](double rho) { return approx_sum_rate(pl, m, rho, 1.0) - ergodic_sum_rate(pl, m, rho, 1.0).sum_rate; };
    const auto rel_gap = [&](double rho) { return gap(rho) / ergodic_sum_rate(pl, m, rho, 1.0).sum_rate; };
    CHECK(rel_gap(1e8) < rel_gap(1e6));
    CHECK(std::abs(gap(1e8) - numerics::kEulerGamma * kInvLn2) < 1e-3);
    CHECK(std::abs(gap(1e10) - numerics::kEulerGamma * kInvLn2) < 1e-5);

    // Single gain: approximation never below exact.
    for (const double P : {0.1, 1.0, 10.0, 1e3, 1e6})
    {
        const double exact = ergodic_user_rate_no_interference(std::vector<double>{0.05}, P, 1.0);
        CHECK(std::log1p(0.05 * P) * kInvLn2 >= exact);
    }
}

TEST_CASE("cross-over formula")
{
    const PathlossMatrix pl = fig2_pathloss();
    const double S12 = pl.gain(0, 1), S11 = pl.gain(0, 0), S21 = pl.gain(1, 0), S22 = pl.gain(1, 1);
    const double r = S21 / S22;
    CHECK(crossover_snr(pl, CrossoverPair::SingleVsTwoUser12) ==
          doctest::Approx(std::pow(r, 1.0 / (r - 1.0)) / S12).epsilon(1e-13));
    CHECK(crossover_snr(pl, CrossoverPair::SingleVsTwoUser21) ==
          doctest::Approx(std::pow(r, r / (r - 1.0)) / S11).epsilon(1e-13));
    CHECK(linear_to_db(crossover_snr(pl)) == doctest::Approx(37.224).epsilon(1e-4));

    // Limit S21 = S22.
    const auto sym = PathlossMatrix::from_gains(2, 2, {0.3, 0.01, 0.02, 0.02});
    CHECK(crossover_snr(sym) == doctest::Approx(std::numbers::e / 0.01).epsilon(1e-12));
    CHECK(crossover_snr(sym, CrossoverPair::SingleVsTwoUser21) == doctest::Approx(std::numbers::e / 0.3).epsilon(1e-12));
    const auto near = PathlossMatrix::from_gains(2, 2, {0.3, 0.01, 0.02, 0.02 * (1 + 1e-10)});
    CHECK(crossover_snr(near) == doctest::Approx(std::numbers::e / 0.01).epsilon(1e-8));

    // Approximate-curve intersection matches the high-SNR formula when the
    // crossover is deep in the high-SNR regime.
    const auto summary = analyse_crossover(pl, CrossoverPair::SingleVsTwoUser12);
    REQUIRE(summary.approximate_db.has_value());
    REQUIRE(summary.exact_db.has_value());
    CHECK(std::abs(*summary.approximate_db - summary.formula_db) < 1.0);
    const double at = db_to_linear(*summary.approximate_db);
    CHECK(std::abs(approx_sum_rate(pl, TransmissionMode({1, 1}, 2), at, 1.0) -
                   approx_sum_rate(pl, TransmissionMode({1, 2}, 2), at, 1.0)) < 1e-9);

    CHECK_FALSE(crossover_intersection_db(PathlossMatrix::from_gains(2, 2, {1.0, 1e-9, 1e-9, 1.0}),
                                          CrossoverPair::SingleVsTwoUser12, RateModel::Exact, -20, -10)
                    .has_value());
    CHECK_THROWS_AS(crossover_snr(PathlossMatrix::from_gains(3, 3, std::vector<double>(9, 0.1))), UsageError);
}

TEST_CASE("single-user lower bound")
{
    const PathlossMatrix pl = fig2_pathloss();
    double previous = 0.0;
    for (double db = 0.0; db <= 60.0; db += 2.5)
    {
        const double rho = db_to_linear(db);
        const double bound = single_user_rate_lower_bound(pl, 1, rho);
        CHECK(bound <= approx_sum_rate(pl, TransmissionMode({1, 1}, 2), rho, 1.0) + 1e-12);
        CHECK(bound > previous);
        previous = bound;
        CHECK(single_user_rate_lower_bound(pl, 2, rho) <= approx_sum_rate(pl, TransmissionMode({2, 2}, 2), rho, 1.0) + 1e-12);
    }
    const auto eq = PathlossMatrix::from_gains(2, 2, {0.02, 0.02, 0.1, 0.3});
    CHECK(single_user_rate_lower_bound(eq, 1, 1000.0) == doctest::Approx(std::log2(0.02 * 1000.0 + 1.0)));
}

TEST_CASE("dB conversion")
{
    CHECK(db_to_linear(30.0) == doctest::Approx(1000.0));
    CHECK(linear_to_db(100.0) == doctest::Approx(20.0));
    CHECK(db_to_linear(linear_to_db(3.7)) == doctest::Approx(3.7).epsilon(1e-15));
}
