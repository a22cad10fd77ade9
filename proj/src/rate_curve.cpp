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

#include "dasrate/rate_curve.hpp"

#include "dasrate/errors.hpp"

#include <array>
#include <charconv>
#include <ostream>
#include <set>
#include <utility>

namespace dasrate
{

namespace
{

std::string column_name(const RateSeries& s)
{
    return s.label + (s.source == RateSource::Analytic ? "_analytic" : "_mc");
}

} // namespace

void RateCurve::validate() const
{
    std::set<std::pair<std::string, RateSource>> seen;
    for (const auto& s : series)
    {
        if (s.values.size() != snr_grid_db.size())
            throw UsageError("rate series '" + s.label + "' does not match the SNR grid");
        if (!s.std_errors.empty() && s.std_errors.size() != snr_grid_db.size())
            throw UsageError("rate series '" + s.label + "' has a ragged error column");
        if (!seen.emplace(s.label, s.source).second)
            throw UsageError("duplicate rate series '" + column_name(s) + "'");
    }
}

const RateSeries& RateCurve::find(const std::string& label, RateSource source) const
{
    for (const auto& s : series)
        if (s.label == label && s.source == source)
            return s;
    throw UsageError("no rate series '" + label + "'");
}

std::string format_number(double value)
{
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    return std::string(buf.data(), end);
}

void write_csv(std::ostream& out, const RateCurve& curve)
{
    curve.validate();
    out << "snr_db";
    for (const auto& s : curve.series)
    {
        out << ',' << column_name(s);
        if (!s.std_errors.empty())
            out << ',' << s.label << "_mc_stderr";
    }
    out << '\n';
    for (std::size_t row = 0; row < curve.snr_grid_db.size(); ++row)
    {
        out << format_number(curve.snr_grid_db[row]);
        for (const auto& s : curve.series)
        {
            out << ',' << format_number(s.values[row]);
            if (!s.std_errors.empty())
                out << ',' << format_number(s.std_errors[row]);
        }
        out << '\n';
    }
}

} // namespace dasrate
