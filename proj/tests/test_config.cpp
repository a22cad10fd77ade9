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

#include "dasrate/config.hpp"
#include "dasrate/errors.hpp"

#include "doctest.h"

#include <cmath>
#include <string>

using namespace dasrate;

namespace
{
const std::string kBase = "n_ports = 2\n"
                          "n_users = 2\n"
                          "cell_radius = 6.1101009266077866\n"
                          "pathloss_exponent = 3\n"
                          "tx_power_dB = 30\n"
                          "noise_power = 1\n";
}

TEST_CASE("parse a template scenario")
{
    const Scenario s = parse_scenario("# comment\n" + kBase + "\n   # trailing\n");
    CHECK(s.n_ports == 2);
    CHECK(s.n_users == 2);
    CHECK(s.tx_power == doctest::Approx(1000.0).epsilon(1e-14));
    CHECK(s.port_ring_radius == doctest::Approx(4.0).epsilon(1e-15));
    REQUIRE(s.port_positions.size() == 2);
    CHECK(s.port_positions[0].x == doctest::Approx(4.0));
    CHECK_FALSE(s.has_user_positions());
}

TEST_CASE("explicit positions and ring override")
{
    const Scenario s = parse_scenario(kBase + "user_positions = -3,-2.5; 3, 3.5\nport_positions = -4,0;4,0\n");
    REQUIRE(s.user_positions.size() == 2);
    CHECK(s.user_positions[0] == Point{-3.0, -2.5});
    CHECK(s.user_positions[1] == Point{3.0, 3.5});
    CHECK(s.port_positions[0] == Point{-4.0, 0.0});

    const Scenario r = parse_scenario(kBase + "port_ring_radius = 2 # half\n");
    CHECK(r.port_ring_radius == 2.0);
    CHECK(r.port_positions[0].x == doctest::Approx(2.0));
    CHECK(r.port_positions[1].x == doctest::Approx(-2.0));
}

TEST_CASE("format and parse round trip")
{
    const Scenario s = parse_scenario(kBase + "user_positions = -3,-2.5; 3,3.5\n");
    const Scenario t = parse_scenario(format_scenario(s));
    CHECK(t.n_ports == s.n_ports);
    CHECK(t.cell_radius == s.cell_radius);
    CHECK(t.tx_power == doctest::Approx(s.tx_power).epsilon(1e-14));
    CHECK(t.user_positions == s.user_positions);
    CHECK(t.port_positions == s.port_positions);
}

TEST_CASE("config errors")
{
    CHECK_THROWS_AS(parse_scenario(kBase + "bogus = 1\n"), UsageError);
    CHECK_THROWS_AS(parse_scenario(kBase + "n_ports = 3\n"), UsageError);
    CHECK_THROWS_AS(parse_scenario("n_ports = 2\n"), UsageError);
    CHECK_THROWS_AS(parse_scenario(kBase + "just words\n"), UsageError);
    CHECK_THROWS_AS(parse_scenario("n_ports = two\nn_users = 2\ncell_radius = 1\npathloss_exponent = 3\n"
                                   "tx_power_dB = 0\nnoise_power = 1\n"),
                    UsageError);
    CHECK_THROWS_AS(parse_scenario(kBase + "user_positions = 1,2,3\n"), UsageError);
    CHECK_THROWS_AS(parse_scenario(kBase + "user_positions = 0,0; 9,0\n"), UsageError);
    CHECK_THROWS_AS(parse_scenario(kBase + "port_positions = 0,0\n"), UsageError);
    CHECK_THROWS_AS(load_scenario("/nonexistent/path.cfg"), UsageError);
}
