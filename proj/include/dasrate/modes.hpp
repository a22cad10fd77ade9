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

#ifndef DASRATE_MODES_HPP
#define DASRATE_MODES_HPP

#include "dasrate/geometry.hpp"

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dasrate
{

/// Port-to-user assignment D = [u_1 .. u_N]; u_j in {0..K}, 0 = port off.
///
/// User indices are 1-based (as they appear in D); port indices are 0-based.
/// All derived sets are computed once from the assignment.
class TransmissionMode
{
public:
    TransmissionMode(std::vector<int> assignment, int n_users);

    std::span<const int> assignment() const { return assignment_; }
    int n_ports() const { return static_cast<int>(assignment_.size()); }
    int n_users() const { return n_users_; }

    // G_i: ports serving user i (1-based user).
    const std::vector<int>& support(int user) const { return support_.at(static_cast<std::size_t>(user - 1)); }
    // G_T: all switched-on ports.
    const std::vector<int>& active_ports() const { return active_ports_; }
    // G_i^C = G_T \ G_i.
    std::vector<int> complement(int user) const;

    bool is_active(int user) const { return !support(user).empty(); }
    int n_active_users() const { return n_active_users_; }
    int n_active_ports() const { return static_cast<int>(active_ports_.size()); }

    // "[u1 u2 ... uN]"
    std::string label() const;

    bool operator==(const TransmissionMode& other) const { return assignment_ == other.assignment_; }
    std::strong_ordering operator<=>(const TransmissionMode& other) const
    {
        return assignment_ <=> other.assignment_;
    }

private:
    std::vector<int> assignment_;
    int n_users_;
    std::vector<std::vector<int>> support_;
    std::vector<int> active_ports_;
    int n_active_users_ = 0;
};

// Accepts "[1 2 0]", "1 2 0" or "1,2,0".
TransmissionMode parse_mode(std::string_view text, int n_ports, int n_users);

enum class CandidateOrigin
{
    Ideal,
    MinDistance,
    Explicit
};

const char* origin_name(CandidateOrigin origin);

struct CandidateSet
{
    std::vector<TransmissionMode> modes; // lexicographic in D, no duplicates
    CandidateOrigin origin = CandidateOrigin::Explicit;
    // Set when the min-distance construction produced fewer than 2^N - N
    // distinct modes (all ports share one nearest user).
    bool degenerate = false;

    std::size_t size() const { return modes.size(); }
    bool empty() const { return modes.empty(); }

    // Sorted, deduplicated explicit set.
    static CandidateSet from_modes(std::vector<TransmissionMode> modes);
};

inline constexpr std::uint64_t kDefaultIdealBudget = 10'000'000;

// (K+1)^N - K(2^N - 2) - 1. Throws CapacityError on 64-bit overflow.
std::uint64_t ideal_count(int n_ports, int n_users);
// 2^N - N.
std::uint64_t min_distance_count(int n_ports);

/// Every assignment in {0..K}^N except the all-off mode and the single-user
/// modes that leave some port off, in lexicographic order.
/// Throws CapacityError if (K+1)^N exceeds `budget`.
CandidateSet enumerate_ideal(int n_ports, int n_users, std::uint64_t budget = kDefaultIdealBudget);

// Nearest user (1-based) of every port; ties go to the lowest user index.
std::vector<int> nearest_users(const PathlossMatrix& pathloss);

/// Minimum-distance candidate generation:
///   1. base mode: every port serves its nearest user;
///   2. for each of the 2^N - 1 non-empty on/off masks, switch off the
///      masked-out ports of the base mode and keep the result if more than
///      one port remains on;
///   3. append [i* ... i*], i* the user of the globally smallest distance.
/// Duplicates (only possible when every port shares one nearest user) are
/// removed and flagged via CandidateSet::degenerate.
CandidateSet enumerate_min_distance(const PathlossMatrix& pathloss);

} // namespace dasrate

#endif
