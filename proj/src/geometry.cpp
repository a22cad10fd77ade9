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

#include "dasrate/geometry.hpp"

#include "dasrate/errors.hpp"
#include "dasrate/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace dasrate
{

double default_port_ring_radius(double cell_radius)
{
    return std::sqrt(3.0 / 7.0) * cell_radius;
}

Scenario Scenario::at_snr(double rho) const
{
    Scenario copy = *this;
    copy.tx_power = rho * noise_power;
    return copy;
}

void Scenario::validate(bool require_users) const
{
    const auto fail = [](const std::string& what) { throw UsageError("invalid scenario: " + what); };
    if (n_ports < 1)
        fail("n_ports must be >= 1");
    if (n_users < 1)
        fail("n_users must be >= 1");
    if (!(cell_radius > 0.0) || !std::isfinite(cell_radius))
        fail("cell_radius must be > 0");
    if (!(port_ring_radius > 0.0) || !std::isfinite(port_ring_radius))
        fail("port_ring_radius must be > 0");
    if (!(pathloss_exponent > 0.0) || !std::isfinite(pathloss_exponent))
        fail("pathloss_exponent must be > 0");
    if (!(tx_power > 0.0) || !std::isfinite(tx_power))
        fail("tx_power must be > 0");
    if (!(noise_power > 0.0) || !std::isfinite(noise_power))
        fail("noise_power must be > 0");
    if (port_positions.size() != static_cast<std::size_t>(n_ports))
        fail("expected " + std::to_string(n_ports) + " port positions, got " + std::to_string(port_positions.size()));
    if (user_positions.empty())
    {
        if (require_users)
            fail("user positions are required");
        return;
    }
    if (user_positions.size() != static_cast<std::size_t>(n_users))
        fail("expected " + std::to_string(n_users) + " user positions, got " + std::to_string(user_positions.size()));
    const double limit = cell_radius * (1.0 + 1e-12);
    for (std::size_t i = 0; i < user_positions.size(); ++i)
    {
        const Point& u = user_positions[i];
        if (!std::isfinite(u.x) || !std::isfinite(u.y) || std::hypot(u.x, u.y) > limit)
            fail("user " + std::to_string(i + 1) + " lies outside the cell");
    }
}

Scenario make_scenario(int n_ports, int n_users, std::vector<Point> users, double cell_radius,
                       double pathloss_exponent)
{
    Scenario s;
    s.n_ports = n_ports;
    s.n_users = n_users;
    s.cell_radius = cell_radius;
    s.port_ring_radius = default_port_ring_radius(cell_radius);
    s.pathloss_exponent = pathloss_exponent;
    s.user_positions = std::move(users);
    if (n_ports >= 1)
        s.port_positions = default_port_layout(n_ports, cell_radius);
    s.validate(false);
    return s;
}

std::vector<Point> default_port_layout(int n_ports, double cell_radius)
{
    if (n_ports < 1)
        throw UsageError("default_port_layout: n_ports must be >= 1");
    const double r = default_port_ring_radius(cell_radius);
    std::vector<Point> ports;
    ports.reserve(static_cast<std::size_t>(n_ports));
    for (int j = 0; j < n_ports; ++j)
    {
        const double angle = 2.0 * std::numbers::pi * j / n_ports;
        ports.push_back({r * std::cos(angle), r * std::sin(angle)});
    }
    return ports;
}

PathlossMatrix::PathlossMatrix(int n_users, int n_ports, std::vector<double> distances, double pathloss_exponent)
    : n_users_(n_users), n_ports_(n_ports), exponent_(pathloss_exponent), distances_(std::move(distances))
{
    if (distances_.size() != static_cast<std::size_t>(n_users) * static_cast<std::size_t>(n_ports))
        throw UsageError("PathlossMatrix: distance matrix has wrong size");
    gains_.resize(distances_.size());
    for (std::size_t k = 0; k < distances_.size(); ++k)
    {
        distances_[k] = std::max(distances_[k], kMinDistance);
        gains_[k] = std::pow(distances_[k], -exponent_);
    }
}

PathlossMatrix PathlossMatrix::from_gains(int n_users, int n_ports, std::vector<double> gains,
                                          double pathloss_exponent)
{
    if (gains.size() != static_cast<std::size_t>(n_users) * static_cast<std::size_t>(n_ports))
        throw UsageError("PathlossMatrix: gain matrix has wrong size");
    PathlossMatrix m;
    m.n_users_ = n_users;
    m.n_ports_ = n_ports;
    m.exponent_ = pathloss_exponent;
    m.distances_.resize(gains.size());
    for (std::size_t k = 0; k < gains.size(); ++k)
    {
        if (!(gains[k] > 0.0) || !std::isfinite(gains[k]))
            throw UsageError("PathlossMatrix: gains must be positive and finite");
        m.distances_[k] = std::pow(gains[k], -1.0 / pathloss_exponent);
    }
    m.gains_ = std::move(gains);
    return m;
}

PathlossMatrix pathloss_matrix(const Scenario& scenario)
{
    scenario.validate();
    std::vector<double> d;
    d.reserve(static_cast<std::size_t>(scenario.n_users) * static_cast<std::size_t>(scenario.n_ports));
    for (const Point& u : scenario.user_positions)
        for (const Point& port : scenario.port_positions)
            d.push_back(std::hypot(u.x - port.x, u.y - port.y));
    return PathlossMatrix(scenario.n_users, scenario.n_ports, std::move(d), scenario.pathloss_exponent);
}

Scenario drop_users_uniform(const Scenario& scenario_template, std::uint64_t rng_seed)
{
    scenario_template.validate(false);
    Scenario s = scenario_template;
    CounterRng rng(derive_key(rng_seed, {kTagUserDrop}));
    s.user_positions.clear();
    s.user_positions.reserve(static_cast<std::size_t>(s.n_users));
    for (int i = 0; i < s.n_users; ++i)
    {
        const double radius = s.cell_radius * std::sqrt(rng.uniform());
        const double angle = 2.0 * std::numbers::pi * rng.uniform();
        s.user_positions.push_back({radius * std::cos(angle), radius * std::sin(angle)});
    }
    return s;
}

} // namespace dasrate
