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

#ifndef DASRATE_CONFIG_HPP
#define DASRATE_CONFIG_HPP

#include "dasrate/geometry.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace dasrate
{

// Scenario files are flat `key = value` text; `#` starts a comment.
//
//   n_ports = 2
//   n_users = 2
//   cell_radius = 6.1101009266077866
//   port_ring_radius = 4            # optional, default sqrt(3/7)*cell_radius
//   pathloss_exponent = 3
//   tx_power_dB = 30
//   noise_power = 1
//   user_positions = -3,-2.5; 3,3.5 # optional, "x,y" pairs separated by ';'
//   port_positions = -4,0; 4,0      # optional, default circular layout
//
// Unknown keys, repeated keys and malformed values raise UsageError.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

// Inverse of parse_scenario (always writes every key).
std::string format_scenario(const Scenario& scenario);

} // namespace dasrate

#endif
