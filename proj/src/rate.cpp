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

#include "dasrate/rate.hpp"

#include "dasrate/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <type_traits>
#include <numbers>
#include <string>

namespace dasrate
{

namespace
{

constexpr double kInvLn2 = 1.4426950408889634074;

bool coincident(double a, double b)
{
    return std::abs(a - b) <= kDegeneracyTolerance * std::max(a, b);
}

void check_gains(std::span<const double> gains, const char* what)
{
    for (const double s : gains)
        if (!(s > 0.0) || !std::isfinite(s))
            throw UsageError(std::string(what) + ": gains must be positive and finite");
}

struct ExactKernel
{
    double operator()(double x) const { return numerics::exp_e1(x); }
};

struct ApproxKernel
{
    double operator()(double x) const { return std::log1p(1.0 / x); }
};

// Partial-fraction sums cancel badly when gains nearly coincide (weights grow
// like 1/gap^(n-1)). Above this estimated roundoff the exact rate is taken from
// the Laplace-transform integral instead.
constexpr double kRateRoundoffLimit = 1e-10;

// E[log2(1 + X/Y)] = (1/ln 2) int_0^inf M_Y(z) (1 - M_X(z)) / z dz, with
// M_X(z) = prod_k 1/(1 + z S_k P) and M_Y(z) = e^{-z noise} prod_u 1/(1 + z S_u P).
double laplace_rate(std::span<const double> signal, std::span<const double> interference, double tx_power,
                    double noise_power)
{
    const auto integrand = [&](double z) {
        if (z == 0.0)
            return 0.0;
        double log_my = -z * noise_power;
        for (const double s : interference)
            log_my -= std::log1p(z * s * tx_power);
        double log_mx = 0.0;
        for (const double s : signal)
            log_mx -= std::log1p(z * s * tx_power);
        return std::exp(log_my) * -std::expm1(log_mx) / z;
    };
    const double largest = *std::max_element(signal.begin(), signal.end()) * tx_power;
    const auto r = numerics::integrate_half_line(integrand, 0.0, 1.0 / largest, 1e-12);
    if (!(r.abs_error <= 1e-9))
        throw NumericalFailure("ergodic rate integral did not converge (error estimate " + std::to_string(r.abs_error) +
                               ")");
    return r.value * kInvLn2;
}

template <typename Kernel>
double user_rate(std::span<const double> signal, std::span<const double> interference, double tx_power,
                 double noise_power, Kernel kernel)
{
    const std::vector<double> a = partial_fraction_weights(signal);
    std::vector<double> gs(signal.size());
    for (std::size_t k = 0; k < signal.size(); ++k)
        gs[k] = kernel(noise_power / (signal[k] * tx_power));

    double total = 0.0;
    double magnitude = 0.0;
    if (interference.empty())
    {
        for (std::size_t k = 0; k < signal.size(); ++k)
        {
            total += a[k] * gs[k];
            magnitude += std::abs(a[k] * gs[k]);
        }
    }
    else
    {
        const std::vector<double> b = partial_fraction_weights(interference);
        std::vector<double> gi(interference.size());
        for (std::size_t u = 0; u < interference.size(); ++u)
            gi[u] = kernel(noise_power / (interference[u] * tx_power));

        for (std::size_t k = 0; k < signal.size(); ++k)
            for (std::size_t u = 0; u < interference.size(); ++u)
            {
                const double c = a[k] * b[u] * signal[k] / (signal[k] - interference[u]);
                total += c * (gs[k] - gi[u]);
                magnitude += std::abs(c) * (std::abs(gs[k]) + std::abs(gi[u]));
            }
    }
    if constexpr (std::is_same_v<Kernel, ExactKernel>)
    {
        if (32.0 * std::numeric_limits<double>::epsilon() * magnitude * kInvLn2 > kRateRoundoffLimit)
            return laplace_rate(signal, interference, tx_power, noise_power);
    }
    return total * kInvLn2;
}

template <typename Kernel>
AnalysisPoint sum_rate(const PathlossMatrix& pathloss, const TransmissionMode& mode, double tx_power,
                       double noise_power, Kernel kernel)
{
    if (mode.n_ports() != pathloss.n_ports() || mode.n_users() != pathloss.n_users())
        throw UsageError("mode " + mode.label() + " does not match a " + std::to_string(pathloss.n_users()) + "x" +
                         std::to_string(pathloss.n_ports()) + " pathloss matrix");
    AnalysisPoint point;
    point.snr = tx_power / noise_power;
    point.per_user_rates.assign(static_cast<std::size_t>(mode.n_users()), 0.0);
    for (int user = 1; user <= mode.n_users(); ++user)
    {
        if (!mode.is_active(user))
            continue;
        UserLinkPartition partition;
        try
        {
            partition = user_partition(pathloss, mode, user, tx_power, noise_power);
        }
        catch (const DegeneracyError& e)
        {
            throw DegeneracyError("mode " + mode.label() + ", user " + std::to_string(user) + ": " + e.what());
        }
        const double r = user_rate(partition.signal_gains, partition.interference_gains, tx_power, noise_power, kernel);
        point.per_user_rates[static_cast<std::size_t>(user - 1)] = r;
        point.sum_rate += r;
    }
    return point;
}

void require_two_by_two(const PathlossMatrix& pathloss, const char* what)
{
    if (pathloss.n_users() != 2 || pathloss.n_ports() != 2)
        throw UsageError(std::string(what) + " is defined for two users and two ports only");
}

} // namespace

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

double linear_to_db(double linear)
{
    return 10.0 * std::log10(linear);
}

void apply_degeneracy_guard(std::vector<double>& signal_gains, std::vector<double>& interference_gains)
{
    const std::size_t n_signal = signal_gains.size();
    const std::size_t n = n_signal + interference_gains.size();
    const auto at = [&](std::size_t k) -> double& {
        return k < n_signal ? signal_gains[k] : interference_gains[k - n_signal];
    };
    for (std::size_t b = 1; b < n; ++b)
    {
        for (std::size_t a = 0; a < b; ++a)
        {
            if (coincident(at(a), at(b)))
            {
                at(b) *= 1.0 + kDegeneracyPerturbation * static_cast<double>(b);
                break;
            }
        }
    }
    for (std::size_t b = 1; b < n; ++b)
        for (std::size_t a = 0; a < b; ++a)
            if (coincident(at(a), at(b)))
                throw DegeneracyError("gains at positions " + std::to_string(a) + " and " + std::to_string(b) +
                                      " coincide after perturbation (" + std::to_string(at(a)) + ")");
}

std::vector<double> partial_fraction_weights(std::span<const double> gains)
{
    std::vector<double> w(gains.size(), 1.0);
    for (std::size_t k = 0; k < gains.size(); ++k)
        for (std::size_t l = 0; l < gains.size(); ++l)
            if (l != k)
            {
                if (gains[k] == gains[l])
                    throw DegeneracyError("partial fractions need distinct gains");
                w[k] *= gains[k] / (gains[k] - gains[l]);
            }
    return w;
}

UserLinkPartition make_partition(std::vector<double> signal_gains, std::vector<double> interference_gains,
                                 double tx_power, double noise_power)
{
    if (signal_gains.empty())
        throw UsageError("partition needs at least one signal gain");
    check_gains(signal_gains, "signal");
    check_gains(interference_gains, "interference");
    if (!(tx_power > 0.0) || !(noise_power > 0.0))
        throw UsageError("partition needs positive tx and noise power");
    apply_degeneracy_guard(signal_gains, interference_gains);
    return {std::move(signal_gains), std::move(interference_gains), tx_power, noise_power};
}

UserLinkPartition user_partition(const PathlossMatrix& pathloss, const TransmissionMode& mode, int user,
                                 double tx_power, double noise_power)
{
    std::vector<double> signal;
    std::vector<double> interference;
    for (const int port : mode.active_ports())
    {
        const double s = pathloss.gain(user - 1, port);
        if (mode.assignment()[static_cast<std::size_t>(port)] == user)
            signal.push_back(s);
        else
            interference.push_back(s);
    }
    return make_partition(std::move(signal), std::move(interference), tx_power, noise_power);
}

RealFunction pdf_signal(const UserLinkPartition& p)
{
    std::vector<double> means;
    for (const double s : p.signal_gains)
        means.push_back(s * p.tx_power);
    return [means, weights = partial_fraction_weights(p.signal_gains)](double rho) {
        if (rho < 0.0)
            return 0.0;
        double f = 0.0;
        for (std::size_t k = 0; k < means.size(); ++k)
            f += weights[k] / means[k] * std::exp(-rho / means[k]);
        return f;
    };
}

RealFunction cdf_signal(const UserLinkPartition& p)
{
    std::vector<double> means;
    for (const double s : p.signal_gains)
        means.push_back(s * p.tx_power);
    return [means, weights = partial_fraction_weights(p.signal_gains)](double rho) {
        if (rho <= 0.0)
            return 0.0;
        double tail = 0.0;
        for (std::size_t k = 0; k < means.size(); ++k)
            tail += weights[k] * std::exp(-rho / means[k]);
        return 1.0 - tail;
    };
}

RealFunction pdf_interference_plus_noise(const UserLinkPartition& p)
{
    if (p.interference_gains.empty())
        throw UsageError("pdf_interference_plus_noise: partition has no interferers");
    std::vector<double> means;
    for (const double s : p.interference_gains)
        means.push_back(s * p.tx_power);
    return [means, noise = p.noise_power, weights = partial_fraction_weights(p.interference_gains)](double rho) {
        if (rho <= noise)
            return 0.0;
        double f = 0.0;
        for (std::size_t u = 0; u < means.size(); ++u)
            f += weights[u] / means[u] * std::exp(-(rho - noise) / means[u]);
        return f;
    };
}

RealFunction cdf_interference_plus_noise(const UserLinkPartition& p)
{
    if (p.interference_gains.empty())
        throw UsageError("cdf_interference_plus_noise: partition has no interferers");
    std::vector<double> means;
    for (const double s : p.interference_gains)
        means.push_back(s * p.tx_power);
    return [means, noise = p.noise_power, weights = partial_fraction_weights(p.interference_gains)](double rho) {
        if (rho <= noise)
            return 0.0;
        double tail = 0.0;
        for (std::size_t u = 0; u < means.size(); ++u)
            tail += weights[u] * std::exp(-(rho - noise) / means[u]);
        return 1.0 - tail;
    };
}

namespace
{

struct SinrTerms
{
    std::vector<double> signal;
    std::vector<double> interference;
    std::vector<double> coefficient; // A_k B_u, row-major k x u
    double tx_power;
    double noise_power;
};

SinrTerms sinr_terms(const UserLinkPartition& p, const char* what)
{
    if (p.interference_gains.empty())
        throw UsageError(std::string(what) + ": no interferers; use the interference-free rate path");
    const auto a = partial_fraction_weights(p.signal_gains);
    const auto b = partial_fraction_weights(p.interference_gains);
    SinrTerms t{p.signal_gains, p.interference_gains, {}, p.tx_power, p.noise_power};
    for (const double ak : a)
        for (const double bu : b)
            t.coefficient.push_back(ak * bu);
    return t;
}

} // namespace

RealFunction pdf_sinr(const UserLinkPartition& p)
{
    return [t = sinr_terms(p, "pdf_sinr")](double rho) {
        if (rho < 0.0)
            return 0.0;
        const std::size_t nu = t.interference.size();
        double f = 0.0;
        for (std::size_t k = 0; k < t.signal.size(); ++k)
        {
            const double sk = t.signal[k];
            const double decay = std::exp(-t.noise_power * rho / (sk * t.tx_power));
            if (decay == 0.0)
                continue;
            for (std::size_t u = 0; u < t.interference.size(); ++u)
            {
                const double su = t.interference[u];
                const double q = su * rho + sk;
                f += t.coefficient[k * nu + u] *
                     (t.noise_power * q + sk * su * t.tx_power) / (q * q) * decay;
            }
        }
        return f / t.tx_power;
    };
}

RealFunction cdf_sinr(const UserLinkPartition& p)
{
    return [t = sinr_terms(p, "cdf_sinr")](double rho) {
        if (rho <= 0.0)
            return 0.0;
        double tail = 0.0;
        for (std::size_t k = 0; k < t.signal.size(); ++k)
        {
            const double sk = t.signal[k];
            const double decay = std::exp(-t.noise_power * rho / (sk * t.tx_power));
            for (std::size_t u = 0; u < t.interference.size(); ++u)
                tail += t.coefficient[k * t.interference.size() + u] * decay * sk / (sk + t.interference[u] * rho);
        }
        return 1.0 - tail;
    };
}

double ergodic_user_rate(const UserLinkPartition& p)
{
    if (p.signal_gains.empty())
        throw UsageError("ergodic_user_rate: partition has no signal gains");
    return user_rate(p.signal_gains, p.interference_gains, p.tx_power, p.noise_power, ExactKernel{});
}

double ergodic_user_rate_no_interference(std::span<const double> signal_gains, double tx_power, double noise_power)
{
    std::vector<double> gains(signal_gains.begin(), signal_gains.end());
    const UserLinkPartition p = make_partition(std::move(gains), {}, tx_power, noise_power);
    return user_rate(p.signal_gains, {}, tx_power, noise_power, ExactKernel{});
}

AnalysisPoint ergodic_sum_rate(const Scenario& scenario, const PathlossMatrix& pathloss, const TransmissionMode& mode)
{
    return ergodic_sum_rate(pathloss, mode, scenario.tx_power, scenario.noise_power);
}

AnalysisPoint ergodic_sum_rate(const PathlossMatrix& pathloss, const TransmissionMode& mode, double tx_power,
                               double noise_power)
{
    return sum_rate(pathloss, mode, tx_power, noise_power, ExactKernel{});
}

double approx_sum_rate(const Scenario& scenario, const PathlossMatrix& pathloss, const TransmissionMode& mode)
{
    return approx_sum_rate(pathloss, mode, scenario.tx_power, scenario.noise_power);
}

double approx_sum_rate(const PathlossMatrix& pathloss, const TransmissionMode& mode, double tx_power,
                       double noise_power)
{
    return sum_rate(pathloss, mode, tx_power, noise_power, ApproxKernel{}).sum_rate;
}

double crossover_snr(const PathlossMatrix& pathloss, CrossoverPair pair)
{
    require_two_by_two(pathloss, "crossover_snr");
    const double s11 = pathloss.gain(0, 0);
    const double s12 = pathloss.gain(0, 1);
    const double s21 = pathloss.gain(1, 0);
    const double s22 = pathloss.gain(1, 1);
    const double r = s21 / s22;
    const bool limit = std::abs(r - 1.0) <= 1e-9;
    if (pair == CrossoverPair::SingleVsTwoUser12)
    {
        const double factor = limit ? std::numbers::e : std::exp(std::log(r) / (r - 1.0));
        return factor / s12;
    }
    const double factor = limit ? std::numbers::e : std::exp(r * std::log(r) / (r - 1.0));
    return factor / s11;
}

std::optional<double> crossover_intersection_db(const PathlossMatrix& pathloss, CrossoverPair pair, RateModel model,
                                                double lo_db, double hi_db)
{
    require_two_by_two(pathloss, "crossover_intersection_db");
    const TransmissionMode single({1, 1}, 2);
    const TransmissionMode two_user = pair == CrossoverPair::SingleVsTwoUser12 ? TransmissionMode({1, 2}, 2)
                                                                               : TransmissionMode({2, 1}, 2);
    const auto gap = [&](double db) {
        const double rho = db_to_linear(db);
        if (model == RateModel::Exact)
            return ergodic_sum_rate(pathloss, two_user, rho, 1.0).sum_rate -
                   ergodic_sum_rate(pathloss, single, rho, 1.0).sum_rate;
        return approx_sum_rate(pathloss, two_user, rho, 1.0) - approx_sum_rate(pathloss, single, rho, 1.0);
    };

    constexpr double step = 0.25;
    double a = lo_db;
    double fa = gap(a);
    while (a < hi_db)
    {
        const double b = std::min(a + step, hi_db);
        const double fb = gap(b);
        if (fa == 0.0)
            return a;
        if ((fa < 0.0) != (fb < 0.0))
        {
            double left = a;
            double right = b;
            double f_left = fa;
            for (int it = 0; it < 200 && right - left > 1e-12; ++it)
            {
                const double mid = 0.5 * (left + right);
                const double fm = gap(mid);
                if ((fm < 0.0) == (f_left < 0.0))
                {
                    left = mid;
                    f_left = fm;
                }
                else
                {
                    right = mid;
                }
            }
            return 0.5 * (left + right);
        }
        a = b;
        fa = fb;
    }
    return std::nullopt;
}

CrossoverSummary analyse_crossover(const PathlossMatrix& pathloss, CrossoverPair pair)
{
    CrossoverSummary s;
    s.formula_db = linear_to_db(crossover_snr(pathloss, pair));
    s.approximate_db = crossover_intersection_db(pathloss, pair, RateModel::Approximate);
    s.exact_db = crossover_intersection_db(pathloss, pair, RateModel::Exact);
    return s;
}

double single_user_rate_lower_bound(const PathlossMatrix& pathloss, int user, double rho)
{
    if (pathloss.n_ports() != 2)
        throw UsageError("single_user_rate_lower_bound is defined for two ports");
    if (user < 1 || user > pathloss.n_users())
        throw UsageError("single_user_rate_lower_bound: user index out of range");
    const double best = std::max(pathloss.gain(user - 1, 0), pathloss.gain(user - 1, 1));
    return std::log2(best * rho + 1.0);
}

} // namespace dasrate
