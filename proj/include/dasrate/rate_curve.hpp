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

#ifndef DASRATE_RATE_CURVE_HPP
#define DASRATE_RATE_CURVE_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace dasrate
{

enum class RateSource
{
    Analytic,
    MonteCarlo
};

struct RateSeries
{
    std::string label; // mode label "[1 2]" or scheme name
    RateSource source = RateSource::Analytic;
    std::vector<double> values;
    std::vector<double> std_errors; // Monte Carlo only; empty means "no error column"
};

/// Rates on a common SNR grid. CSV columns: snr_db, then for each series
/// `<label>_analytic` or `<label>_mc` (+ `<label>_mc_stderr` when errors are
/// present), in series order.
struct RateCurve
{
    std::vector<double> snr_grid_db;
    std::vector<RateSeries> series;

    // Throws UsageError if the series are ragged or labels repeat.
    void validate() const;
    const RateSeries& find(const std::string& label, RateSource source = RateSource::Analytic) const;
};

// Shortest round-trip decimal form, locale independent.
std::string format_number(double value);

void write_csv(std::ostream& out, const RateCurve& curve);

} // namespace dasrate

#endif
