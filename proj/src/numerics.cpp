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

#include "dasrate/numerics.hpp"

#include "dasrate/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

namespace dasrate::numerics
{

namespace detail
{

double exp_e1_series(double x)
{
    double term = 1.0;
    double sum = 0.0;
    for (int n = 1; n < 200; ++n)
    {
        term *= -x / n;
        const double contribution = term / n;
        sum += contribution;
        if (std::abs(contribution) <= std::numeric_limits<double>::epsilon() * 0.25 * std::abs(sum))
            break;
    }
    return std::exp(x) * (-kEulerGamma - std::log(x) - sum);
}

double exp_e1_continued_fraction(double x)
{
    constexpr double tiny = 1e-300;
    constexpr int max_iterations = 100000;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= max_iterations; ++i)
    {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double delta = c * d;
        h *= delta;
        if (std::abs(delta - 1.0) <= std::numeric_limits<double>::epsilon())
            return h;
    }
    throw NumericalFailure("exp_e1: continued fraction did not converge at x = " + std::to_string(x));
}

} // namespace detail

double exp_e1(double x)
{
    if (!std::isfinite(x) || x <= 0.0)
        throw DomainError("exp_e1: argument must be finite and > 0, got " + std::to_string(x));
    return x < detail::kExpE1Switchover ? detail::exp_e1_series(x) : detail::exp_e1_continued_fraction(x);
}

namespace
{

// 15-point Kronrod abscissae with embedded 7-point Gauss rule (QUADPACK qk15).
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval
{
    double a;
    double b;
    double value;
    double error;
};

struct ByError
{
    bool operator()(const Interval& lhs, const Interval& rhs) const { return lhs.error < rhs.error; }
};

template <typename F>
Interval kronrod15(const F& g, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = g(center);
    double kronrod = fc * kKronrodWeights[7];
    double gauss = fc * kGaussWeights[3];
    for (int j = 0; j < 7; ++j)
    {
        const double dx = half * kKronrodNodes[j];
        const double pair = g(center - dx) + g(center + dx);
        kronrod += kKronrodWeights[j] * pair;
        if (j % 2 == 1)
            gauss += kGaussWeights[j / 2] * pair;
    }
    kronrod *= half;
    gauss *= half;
    if (!std::isfinite(kronrod))
        throw NumericalFailure("integrate_half_line: non-finite integrand on [" + std::to_string(a) + ", " +
                               std::to_string(b) + "] (log-mapped)");
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

} // namespace

QuadratureResult integrate_half_line(const RealFunction& f, double lower, double scale, double abs_tol,
                                     std::size_t max_intervals)
{
    if (!(scale > 0.0) || !std::isfinite(scale) || !std::isfinite(lower))
        throw DomainError("integrate_half_line: scale must be positive and finite");

    std::size_t evaluations = 0;
    const auto mapped = [&](double t) {
        ++evaluations;
        const double et = std::exp(t);
        const double y = f(lower + et);
        return y == 0.0 ? 0.0 : y * et;
    };

    // Unit-width blocks in log space, from 50 e-folds below the scale up to
    // the point where the integrand has visibly died out.
    constexpr double t_max = 709.0;
    constexpr int quiet_blocks_needed = 6;
    const double t_anchor = std::log(scale);
    double t = t_anchor - 50.0;
    std::vector<Interval> intervals;
    int quiet = 0;
    while (t < t_max)
    {
        const double next = std::min(t + 1.0, t_max);
        Interval piece = kronrod15(mapped, t, next);
        intervals.push_back(piece);
        t = next;
        if (t > t_anchor + 1.0)
        {
            const bool negligible = std::abs(piece.value) + piece.error <= abs_tol * 1e-4;
            quiet = negligible ? quiet + 1 : 0;
            if (quiet >= quiet_blocks_needed)
                break;
        }
    }

    std::priority_queue<Interval, std::vector<Interval>, ByError> heap(ByError{}, std::move(intervals));
    double total_error = 0.0;
    {
        auto copy = heap;
        while (!copy.empty())
        {
            total_error += copy.top().error;
            copy.pop();
        }
    }

    std::size_t refinements = 0;
    while (total_error > abs_tol)
    {
        if (heap.size() >= max_intervals)
            throw NumericalFailure("integrate_half_line: error estimate " + std::to_string(total_error) +
                                   " above tolerance " + std::to_string(abs_tol) + " after " +
                                   std::to_string(heap.size()) + " intervals");
        const Interval worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Interval left = kronrod15(mapped, worst.a, mid);
        const Interval right = kronrod15(mapped, mid, worst.b);
        total_error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // Incremental updates drift; resync periodically.
        if (++refinements % 1024 == 0)
        {
            total_error = 0.0;
            auto copy = heap;
            while (!copy.empty())
            {
                total_error += copy.top().error;
                copy.pop();
            }
        }
    }

    std::vector<Interval> pieces;
    pieces.reserve(heap.size());
    while (!heap.empty())
    {
        pieces.push_back(heap.top());
        heap.pop();
    }
    std::sort(pieces.begin(), pieces.end(), [](const Interval& l, const Interval& r) { return l.a < r.a; });

    QuadratureResult result;
    long double value = 0.0L;
    long double error = 0.0L;
    for (const auto& piece : pieces)
    {
        value += piece.value;
        error += piece.error;
    }
    result.value = static_cast<double>(value);
    result.abs_error = static_cast<double>(error);
    result.evaluations = evaluations;
    result.intervals = pieces.size();
    return result;
}

double log_integral_quadrature(const RealFunction& pdf, double upper_cut)
{
    constexpr double inv_ln2 = 1.4426950408889634074;
    const auto integrand = [&pdf](double rho) {
        const double density = pdf(rho);
        return density == 0.0 ? 0.0 : std::log1p(rho) * inv_ln2 * density;
    };
    const QuadratureResult r = integrate_half_line(integrand, 0.0, upper_cut, 1e-11);
    if (r.abs_error > 1e-8)
        throw NumericalFailure("log_integral_quadrature: error estimate " + std::to_string(r.abs_error));
    return r.value;
}

} // namespace dasrate::numerics
