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

#ifndef DASRATE_RATE_HPP
#define DASRATE_RATE_HPP

#include "dasrate/geometry.hpp"
#include "dasrate/modes.hpp"
#include "dasrate/numerics.hpp"

#include <optional>
#include <span>
#include <vector>

namespace dasrate
{

// Two gains a, b are treated as coincident when |a - b| <= kDegeneracyTolerance * max(a, b).
inline constexpr double kDegeneracyTolerance = 1e-9;
// Coincident gain at combined position k is moved to S * (1 + kDegeneracyPerturbation * k).
inline constexpr double kDegeneracyPerturbation = 1e-7;

/// Large-scale gains seen by one active user under a given mode: the ports
/// serving it (signal) and the other active ports (interference).
///
/// Use make_partition() to build one; it applies the degeneracy guard over the
/// union of both lists, which the partial-fraction forms below require.
struct UserLinkPartition
{
    std::vector<double> signal_gains;
    std::vector<double> interference_gains;
    double tx_power = 1.0;
    double noise_power = 1.0;
};

UserLinkPartition make_partition(std::vector<double> signal_gains, std::vector<double> interference_gains,
                                 double tx_power, double noise_power);

// user is 1-based and must be active in `mode`.
UserLinkPartition user_partition(const PathlossMatrix& pathloss, const TransmissionMode& mode, int user,
                                 double tx_power, double noise_power);

// Perturbs near-coincident gains in place. The lists are treated as one
// sequence (signal first). Throws DegeneracyError if gains still collide.
void apply_degeneracy_guard(std::vector<double>& signal_gains, std::vector<double>& interference_gains);

// prod_{l != k} S_k / (S_k - S_l) for each k.
std::vector<double> partial_fraction_weights(std::span<const double> gains);

using numerics::RealFunction;

// Densities of the received signal power, of noise-plus-interference power
// (support rho > noise_power) and of the SINR, with matching CDFs.
// pdf_sinr/cdf_sinr need at least one interference gain.
RealFunction pdf_signal(const UserLinkPartition& partition);
RealFunction cdf_signal(const UserLinkPartition& partition);
RealFunction pdf_interference_plus_noise(const UserLinkPartition& partition);
RealFunction cdf_interference_plus_noise(const UserLinkPartition& partition);
RealFunction pdf_sinr(const UserLinkPartition& partition);
RealFunction cdf_sinr(const UserLinkPartition& partition);

/// E[log2(1 + SINR)] in bits/s/Hz. Interference-free partitions are
/// dispatched to ergodic_user_rate_no_interference().
///
/// Both exact rates fall back to the Laplace-transform integral
/// int_0^inf M_Y(z)(1 - M_X(z))/z dz when the partial-fraction sum would lose
/// more than about 1e-10 bits to cancellation (nearly coincident gains).
double ergodic_user_rate(const UserLinkPartition& partition);

/// (1/ln 2) sum_k [prod_{l != k} S_k/(S_k - S_l)] e^x E1(x), x = noise/(S_k P).
double ergodic_user_rate_no_interference(std::span<const double> signal_gains, double tx_power, double noise_power);

struct AnalysisPoint
{
    double snr = 0.0;
    std::vector<double> per_user_rates; // indexed by 0-based user
    double sum_rate = 0.0;
};

AnalysisPoint ergodic_sum_rate(const Scenario& scenario, const PathlossMatrix& pathloss, const TransmissionMode& mode);
AnalysisPoint ergodic_sum_rate(const PathlossMatrix& pathloss, const TransmissionMode& mode, double tx_power,
                               double noise_power);

/// Closed form with every e^x E1(x) replaced by ln(1 + 1/x).
double approx_sum_rate(const Scenario& scenario, const PathlossMatrix& pathloss, const TransmissionMode& mode);
double approx_sum_rate(const PathlossMatrix& pathloss, const TransmissionMode& mode, double tx_power,
                       double noise_power);

enum class CrossoverPair
{
    SingleVsTwoUser12, // [1 1] against [1 2]
    SingleVsTwoUser21  // [1 1] against [2 1]
};

enum class RateModel
{
    Exact,
    Approximate
};

/// High-SNR cross-over point between [1 1] and the given two-user mode
/// (linear SNR). N = K = 2 only. With r = S21/S22:
///   [1 1] vs [1 2]:  rho_c = r^(1/(r-1)) / S12
///   [1 1] vs [2 1]:  rho_c = r^(r/(r-1)) / S11
/// Both factors tend to e as r -> 1 and that limit is returned for
/// |r - 1| <= 1e-9.
double crossover_snr(const PathlossMatrix& pathloss, CrossoverPair pair = CrossoverPair::SingleVsTwoUser12);

/// Intersection (dB) of the two sum-rate curves of `pair`, evaluated with the
/// exact or the approximated closed form at rho = P with unit noise. The grid
/// [lo_db, hi_db] is scanned in 0.25 dB steps and the first sign change is
/// refined by bisection. nullopt when the curves do not cross in range.
std::optional<double> crossover_intersection_db(const PathlossMatrix& pathloss, CrossoverPair pair, RateModel model,
                                                double lo_db = -20.0, double hi_db = 80.0);

struct CrossoverSummary
{
    double formula_db = 0.0;
    std::optional<double> approximate_db;
    std::optional<double> exact_db;
};

CrossoverSummary analyse_crossover(const PathlossMatrix& pathloss, CrossoverPair pair);

/// log2(max_j S_{i,j} rho + 1), a lower bound on the approximated rate of
/// [i i] for two ports. user is 1-based.
double single_user_rate_lower_bound(const PathlossMatrix& pathloss, int user, double rho);

double db_to_linear(double db);
double linear_to_db(double linear);

} // namespace dasrate

#endif
