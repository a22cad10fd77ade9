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

#include "dasrate/modes.hpp"

#include "dasrate/errors.hpp"

#include <algorithm>
#include <charconv>
#include <limits>

namespace dasrate
{

TransmissionMode::TransmissionMode(std::vector<int> assignment, int n_users)
    : assignment_(std::move(assignment)), n_users_(n_users)
{
    if (assignment_.empty())
        throw UsageError("transmission mode needs at least one port");
    if (n_users_ < 1)
        throw UsageError("transmission mode needs n_users >= 1");
    support_.resize(static_cast<std::size_t>(n_users_));
    for (int port = 0; port < n_ports(); ++port)
    {
        const int user = assignment_[static_cast<std::size_t>(port)];
        if (user < 0 || user > n_users_)
            throw UsageError("transmission mode entry " + std::to_string(user) + " outside 0.." +
                             std::to_string(n_users_));
        if (user == 0)
            continue;
        support_[static_cast<std::size_t>(user - 1)].push_back(port);
        active_ports_.push_back(port);
    }
    n_active_users_ = static_cast<int>(
        std::count_if(support_.begin(), support_.end(), [](const auto& g) { return !g.empty(); }));
}

std::vector<int> TransmissionMode::complement(int user) const
{
    std::vector<int> out;
    for (const int port : active_ports_)
        if (assignment_[static_cast<std::size_t>(port)] != user)
            out.push_back(port);
    return out;
}

std::string TransmissionMode::label() const
{
    std::string out = "[";
    for (std::size_t j = 0; j < assignment_.size(); ++j)
    {
        if (j > 0)
            out += ' ';
        out += std::to_string(assignment_[j]);
    }
    out += ']';
    return out;
}

TransmissionMode parse_mode(std::string_view text, int n_ports, int n_users)
{
    std::vector<int> entries;
    std::size_t pos = 0;
    while (pos < text.size())
    {
        const char c = text[pos];
        if (c == '[' || c == ']' || c == ' ' || c == ',' || c == '\t')
        {
            ++pos;
            continue;
        }
        int value = 0;
        const auto [end, ec] = std::from_chars(text.data() + pos, text.data() + text.size(), value);
        if (ec != std::errc{})
            throw UsageError("cannot parse mode '" + std::string(text) + "'");
        entries.push_back(value);
        pos = static_cast<std::size_t>(end - text.data());
    }
    if (static_cast<int>(entries.size()) != n_ports)
        throw UsageError("mode '" + std::string(text) + "' has " + std::to_string(entries.size()) +
                         " entries, expected " + std::to_string(n_ports));
    TransmissionMode mode(std::move(entries), n_users);
    if (mode.n_active_users() == 0)
        throw UsageError("mode '" + std::string(text) + "' switches every port off");
    return mode;
}

const char* origin_name(CandidateOrigin origin)
{
    switch (origin)
    {
    case CandidateOrigin::Ideal:
        return "ideal";
    case CandidateOrigin::MinDistance:
        return "min_distance";
    case CandidateOrigin::Explicit:
        return "explicit";
    }
    return "unknown";
}

CandidateSet CandidateSet::from_modes(std::vector<TransmissionMode> modes)
{
    std::sort(modes.begin(), modes.end());
    modes.erase(std::unique(modes.begin(), modes.end()), modes.end());
    return CandidateSet{std::move(modes), CandidateOrigin::Explicit, false};
}

namespace
{

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
        throw CapacityError("candidate count overflows 64-bit range");
    return a * b;
}

std::uint64_t checked_pow(std::uint64_t base, int exponent)
{
    std::uint64_t r = 1;
    for (int i = 0; i < exponent; ++i)
        r = checked_mul(r, base);
    return r;
}

} // namespace

std::uint64_t ideal_count(int n_ports, int n_users)
{
    if (n_ports < 1 || n_users < 1)
        throw UsageError("ideal_count: N and K must be >= 1");
    const std::uint64_t all = checked_pow(static_cast<std::uint64_t>(n_users) + 1, n_ports);
    const std::uint64_t partial = checked_mul(static_cast<std::uint64_t>(n_users), checked_pow(2, n_ports) - 2);
    return all - partial - 1;
}

std::uint64_t min_distance_count(int n_ports)
{
    if (n_ports < 1)
        throw UsageError("min_distance_count: N must be >= 1");
    return checked_pow(2, n_ports) - static_cast<std::uint64_t>(n_ports);
}

CandidateSet enumerate_ideal(int n_ports, int n_users, std::uint64_t budget)
{
    if (n_ports < 1 || n_users < 1)
        throw UsageError("enumerate_ideal: N and K must be >= 1");
    std::uint64_t total = 0;
    try
    {
        total = checked_pow(static_cast<std::uint64_t>(n_users) + 1, n_ports);
    }
    catch (const CapacityError&)
    {
        throw CapacityError("ideal enumeration for N=" + std::to_string(n_ports) + ", K=" + std::to_string(n_users) +
                            " exceeds the 64-bit range");
    }
    if (total > budget)
        throw CapacityError("ideal enumeration for N=" + std::to_string(n_ports) + ", K=" + std::to_string(n_users) +
                            " needs " + std::to_string(total) + " assignments, budget is " + std::to_string(budget));

    CandidateSet set;
    set.origin = CandidateOrigin::Ideal;
    set.modes.reserve(static_cast<std::size_t>(ideal_count(n_ports, n_users)));
    std::vector<int> d(static_cast<std::size_t>(n_ports), 0);
    for (std::uint64_t step = 0; step < total; ++step)
    {
        // d runs through {0..K}^N in lexicographic order.
        if (step > 0)
        {
            for (int j = n_ports - 1; j >= 0; --j)
            {
                auto& digit = d[static_cast<std::size_t>(j)];
                if (++digit <= n_users)
                    break;
                digit = 0;
            }
        }
        TransmissionMode mode(d, n_users);
        if (mode.n_active_users() == 0)
            continue;
        if (mode.n_active_users() == 1 && mode.n_active_ports() < n_ports)
            continue;
        set.modes.push_back(std::move(mode));
    }
    return set;
}

std::vector<int> nearest_users(const PathlossMatrix& pathloss)
{
    std::vector<int> nearest(static_cast<std::size_t>(pathloss.n_ports()), 0);
    for (int j = 0; j < pathloss.n_ports(); ++j)
    {
        int best = 0;
        for (int i = 1; i < pathloss.n_users(); ++i)
            if (pathloss.distance(i, j) < pathloss.distance(best, j))
                best = i;
        nearest[static_cast<std::size_t>(j)] = best + 1;
    }
    return nearest;
}

CandidateSet enumerate_min_distance(const PathlossMatrix& pathloss)
{
    const int n = pathloss.n_ports();
    const int k = pathloss.n_users();
    if (n < 1 || k < 1)
        throw UsageError("enumerate_min_distance: empty pathloss matrix");
    if (n > 30)
        throw CapacityError("enumerate_min_distance: N=" + std::to_string(n) + " is too large");

    const std::vector<int> base = nearest_users(pathloss);

    std::vector<TransmissionMode> modes;
    modes.reserve(static_cast<std::size_t>(min_distance_count(n)));
    const std::uint32_t masks = (1u << n) - 1u;
    for (std::uint32_t mask = 1; mask <= masks; ++mask)
    {
        std::vector<int> d(base);
        int on = 0;
        for (int j = 0; j < n; ++j)
        {
            if (mask & (1u << j))
                ++on;
            else
                d[static_cast<std::size_t>(j)] = 0;
        }
        if (on > 1)
            modes.emplace_back(std::move(d), k);
    }

    int best_user = 0;
    int best_port = 0;
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < n; ++j)
            if (pathloss.distance(i, j) < pathloss.distance(best_user, best_port))
            {
                best_user = i;
                best_port = j;
            }
    modes.emplace_back(std::vector<int>(static_cast<std::size_t>(n), best_user + 1), k);

    const std::size_t generated = modes.size();
    CandidateSet set = CandidateSet::from_modes(std::move(modes));
    set.origin = CandidateOrigin::MinDistance;
    set.degenerate = set.size() != generated;
    return set;
}

} // namespace dasrate
