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

#ifndef DASRATE_RNG_HPP
#define DASRATE_RNG_HPP

#include <cmath>
#include <cstdint>
#include <initializer_list>

namespace dasrate
{

inline constexpr std::uint64_t splitmix64(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Hashes a master seed and a path of stream identifiers (tag, drop, trial, ...)
// into an independent stream key.
inline constexpr std::uint64_t derive_key(std::uint64_t seed, std::initializer_list<std::uint64_t> path)
{
    std::uint64_t key = splitmix64(seed);
    for (const std::uint64_t id : path)
        key = splitmix64(key ^ splitmix64(id + 0x632be59bd9b4e019ULL));
    return key;
}

// Stream tags keep geometry draws and fading draws disjoint.
inline constexpr std::uint64_t kTagUserDrop = 1;
inline constexpr std::uint64_t kTagFading = 2;
inline constexpr std::uint64_t kTagDropSeed = 3;

/// Counter-based generator: output n is a pure function of (key, n), so any
/// draw can be reproduced regardless of which thread produced it.
class CounterRng
{
public:
    explicit constexpr CounterRng(std::uint64_t key, std::uint64_t counter = 0) : key_(key), counter_(counter) {}

    constexpr std::uint64_t next_u64() { return splitmix64(key_ + 0x9e3779b97f4a7c15ULL * counter_++); }

    // Uniform on the open interval (0, 1).
    double uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

    // Unit-mean exponential.
    double exponential() { return -std::log(uniform()); }

    constexpr std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t key_;
    std::uint64_t counter_;
};

} // namespace dasrate

#endif
