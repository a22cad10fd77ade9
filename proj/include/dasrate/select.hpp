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

#ifndef DASRATE_SELECT_HPP
#define DASRATE_SELECT_HPP

#include "dasrate/geometry.hpp"
#include "dasrate/modes.hpp"

#include <cstdint>
#include <vector>

namespace dasrate
{

struct SelectionResult
{
    TransmissionMode chosen_mode;
    double chosen_rate = 0.0;
    std::size_t chosen_index = 0;
    std::vector<double> per_candidate_rates; // aligned with the candidate set
    CandidateOrigin scheme = CandidateOrigin::Explicit;
};

/// Evaluates the closed-form ergodic sum rate of every candidate and returns
/// the first maximizer in candidate order.
SelectionResult select_mode(const PathlossMatrix& pathloss, const CandidateSet& candidates, double tx_power,
                            double noise_power);

// rho is the linear SNR; the scenario supplies the noise power.
SelectionResult select_mode(const Scenario& scenario, const PathlossMatrix& pathloss, const CandidateSet& candidates,
                            double rho);

struct SchemeComparison
{
    SelectionResult ideal;
    SelectionResult min_distance;
    double difference = 0.0; // ideal - min_distance, >= 0
};

SchemeComparison compare_schemes(const Scenario& scenario, const PathlossMatrix& pathloss, double rho,
                                 std::uint64_t ideal_budget = kDefaultIdealBudget);

} // namespace dasrate

#endif
