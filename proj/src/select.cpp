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

#include "dasrate/select.hpp"

#include "dasrate/errors.hpp"
#include "dasrate/rate.hpp"

namespace dasrate
{

SelectionResult select_mode(const PathlossMatrix& pathloss, const CandidateSet& candidates, double tx_power,
                            double noise_power)
{
    if (candidates.empty())
        throw UsageError("select_mode: empty candidate set");
    std::vector<double> rates;
    rates.reserve(candidates.size());
    std::size_t best = 0;
    for (std::size_t c = 0; c < candidates.size(); ++c)
    {
        double r = 0.0;
        try
        {
            r = ergodic_sum_rate(pathloss, candidates.modes[c], tx_power, noise_power).sum_rate;
        }
        catch (const DegeneracyError& e)
        {
            throw DegeneracyError("candidate " + std::to_string(c) + ": " + e.what());
        }
        rates.push_back(r);
        if (r > rates[best])
            best = c;
    }
    return SelectionResult{candidates.modes[best], rates[best], best, std::move(rates), candidates.origin};
}

SelectionResult select_mode(const Scenario& scenario, const PathlossMatrix& pathloss, const CandidateSet& candidates,
                            double rho)
{
    return select_mode(pathloss, candidates, rho * scenario.noise_power, scenario.noise_power);
}

SchemeComparison compare_schemes(const Scenario& scenario, const PathlossMatrix& pathloss, double rho,
                                 std::uint64_t ideal_budget)
{
    const CandidateSet ideal = enumerate_ideal(pathloss.n_ports(), pathloss.n_users(), ideal_budget);
    const CandidateSet nearest = enumerate_min_distance(pathloss);
    SchemeComparison out{select_mode(scenario, pathloss, ideal, rho), select_mode(scenario, pathloss, nearest, rho), 0.0};
    out.difference = out.ideal.chosen_rate - out.min_distance.chosen_rate;
    return out;
}

} // namespace dasrate
