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

#ifndef DASRATE_GEOMETRY_HPP
#define DASRATE_GEOMETRY_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

namespace dasrate
{

struct Point
{
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point&) const = default;
};

// Default cell radius of the reference layout, sqrt(112/3). With it the
// default port ring sits at radius exactly 4.
inline constexpr double kReferenceCellRadius = 6.1101009266077866;

// Distances below this are clamped before computing d^-p.
inline constexpr double kMinDistance = 0.01;

double default_port_ring_radius(double cell_radius);

/// Complete static description of one downlink DAS problem.
///
/// Distances are dimensionless ("cell units"); powers are linear. The SNR is
/// rho = tx_power / noise_power. `user_positions` may be empty for a template
/// that is meant to be filled by drop_users_uniform().
struct Scenario
{
    int n_ports = 0;
    int n_users = 0;
    double cell_radius = kReferenceCellRadius;
    double port_ring_radius = 0.0;
    double pathloss_exponent = 3.0;
    double tx_power = 1.0;
    double noise_power = 1.0;
    std::vector<Point> user_positions;
    std::vector<Point> port_positions;

    double snr() const { return tx_power / noise_power; }
    bool has_user_positions() const { return !user_positions.empty(); }

    // Copy with tx_power set so that tx_power / noise_power = rho.
    Scenario at_snr(double rho) const;

    // Throws UsageError on any violated invariant. Templates (no users yet)
    // are accepted unless require_users is set.
    void validate(bool require_users = true) const;
};

// Builds a validated scenario on the default circular port layout.
Scenario make_scenario(int n_ports, int n_users, std::vector<Point> users = {},
                       double cell_radius = kReferenceCellRadius, double pathloss_exponent = 3.0);

/// Ports on the circle of radius sqrt(3/7) * cell_radius, port j (0-based)
/// at angle 2 pi j / N.
std::vector<Point> default_port_layout(int n_ports, double cell_radius);

/// Row-major K x N matrix of distances and large-scale gains S = d^-p.
class PathlossMatrix
{
public:
    PathlossMatrix() = default;
    PathlossMatrix(int n_users, int n_ports, std::vector<double> distances, double pathloss_exponent);

    // Direct construction from gains (distances reconstructed as S^(-1/p)).
    static PathlossMatrix from_gains(int n_users, int n_ports, std::vector<double> gains,
                                     double pathloss_exponent = 3.0);

    int n_users() const { return n_users_; }
    int n_ports() const { return n_ports_; }
    double pathloss_exponent() const { return exponent_; }

    // 0-based user and port indices.
    double distance(int user, int port) const { return distances_[index(user, port)]; }
    double gain(int user, int port) const { return gains_[index(user, port)]; }

    const std::vector<double>& distances() const { return distances_; }
    const std::vector<double>& gains() const { return gains_; }

private:
    std::size_t index(int user, int port) const
    {
        return static_cast<std::size_t>(user) * static_cast<std::size_t>(n_ports_) + static_cast<std::size_t>(port);
    }

    int n_users_ = 0;
    int n_ports_ = 0;
    double exponent_ = 0.0;
    std::vector<double> distances_;
    std::vector<double> gains_;
};

PathlossMatrix pathloss_matrix(const Scenario& scenario);

/// Replaces the template's users with K i.i.d. uniform points on the cell
/// disc (radius R*sqrt(u), uniform angle). Deterministic in rng_seed.
Scenario drop_users_uniform(const Scenario& scenario_template, std::uint64_t rng_seed);

} // namespace dasrate

#endif
