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

#ifndef DASRATE_NUMERICS_HPP
#define DASRATE_NUMERICS_HPP

#include <cstddef>
#include <functional>

namespace dasrate::numerics
{

/// Euler-Mascheroni constant, 20 significant digits.
inline constexpr double kEulerGamma = 0.57721566490153286061;

/// Exponentially scaled exponential integral e^x * E1(x) for x > 0, where
/// E1(x) = int_x^inf e^{-t}/t dt.
///
/// Naming note: the rate literature this library follows writes this function
/// as "Ei(x)" while defining it by the E1 integral above. The classical Ei
/// (principal value of -int_{-x}^inf e^{-t}/t dt) is a different function and
/// is not implemented here. Only E1 gives correct ergodic rates.
///
/// Only the scaled product is ever needed by the rate formulas, and forming it
/// natively keeps the result finite for x in [1e-300, 1e300]; unscaled E1
/// underflows for x above roughly 700.
///
/// Throws DomainError for x <= 0 or non-finite x.
double exp_e1(double x);

namespace detail
{
// Branch point between the two evaluation regimes of exp_e1.
inline constexpr double kExpE1Switchover = 1.0;

// Power series E1(x) = -gamma - ln x - sum_{n>=1} (-x)^n / (n n!), scaled by e^x.
double exp_e1_series(double x);

// Modified Lentz evaluation of the continued fraction
// e^x E1(x) = 1/(x+1- 1/(x+3- 4/(x+5- ...))).
double exp_e1_continued_fraction(double x);
} // namespace detail

using RealFunction = std::function<double(double)>;

struct QuadratureResult
{
    double value = 0.0;
    double abs_error = 0.0; // estimated
    std::size_t evaluations = 0;
    std::size_t intervals = 0;
};

/// Adaptive Gauss-Kronrod (7/15) integration of f over (lower, inf).
///
/// The axis is mapped as rho = lower + e^t, so integrands whose mass spans
/// many decades (SINR densities at high SNR) are sampled uniformly in log
/// scale. `scale` anchors the mapping: the region below lower + scale*e^-50
/// is dropped, and the upper region is extended block by block until the
/// integrand has decayed. Throws NumericalFailure if the error estimate is
/// still above abs_tol after max_intervals subdivisions.
QuadratureResult integrate_half_line(const RealFunction& f, double lower, double scale,
                                     double abs_tol = 1e-11, std::size_t max_intervals = 200000);

/// int_0^inf log2(1 + rho) pdf(rho) d rho, absolute error <= 1e-8.
///
/// `upper_cut` is the characteristic scale of the density (e.g. its largest
/// exponential mean). The caller is responsible for pdf being a normalized
/// density.
double log_integral_quadrature(const RealFunction& pdf, double upper_cut);

} // namespace dasrate::numerics

#endif
