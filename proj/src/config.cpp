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

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace dasrate
{

namespace
{

constexpr std::array<std::string_view, 9> kKeys = {"n_ports",           "n_users",     "cell_radius",
                                                    "port_ring_radius",  "pathloss_exponent", "tx_power_dB",
                                                    "noise_power",       "user_positions", "port_positions"};

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos)
        return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_real(std::string_view key, std::string_view text)
{
    text = trim(text);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || !std::isfinite(value))
        throw UsageError("config: key '" + std::string(key) + "' expects a real number, got '" + std::string(text) + "'");
    return value;
}

int parse_count(std::string_view key, std::string_view text)
{
    text = trim(text);
    int value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size() || value < 1)
        throw UsageError("config: key '" + std::string(key) + "' expects a positive integer, got '" +
                         std::string(text) + "'");
    return value;
}

std::vector<Point> parse_points(std::string_view key, std::string_view text)
{
    std::vector<Point> points;
    text = trim(text);
    while (!text.empty())
    {
        const auto semi = text.find(';');
        const std::string_view pair = trim(text.substr(0, semi));
        const auto comma = pair.find(',');
        if (comma == std::string_view::npos)
            throw UsageError("config: key '" + std::string(key) + "' expects 'x,y' pairs, got '" + std::string(pair) + "'");
        points.push_back({parse_real(key, pair.substr(0, comma)), parse_real(key, pair.substr(comma + 1))});
        if (semi == std::string_view::npos)
            break;
        text = trim(text.substr(semi + 1));
    }
    return points;
}

std::string format_real(double v)
{
    std::array<char, 64> buf{};
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    return std::string(buf.data(), end);
}

std::string format_points(const std::vector<Point>& points)
{
    std::string out;
    for (std::size_t i = 0; i < points.size(); ++i)
    {
        if (i > 0)
            out += "; ";
        out += format_real(points[i].x) + "," + format_real(points[i].y);
    }
    return out;
}

} // namespace

Scenario parse_scenario(std::string_view text)
{
    std::map<std::string, std::string, std::less<>> values;
    std::size_t line_no = 0;
    while (!text.empty())
    {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw UsageError("config line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end())
            throw UsageError("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        if (!values.emplace(key, std::string(trim(line.substr(eq + 1)))).second)
            throw UsageError("config line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }

    const auto required = [&](std::string_view key) -> const std::string& {
        const auto it = values.find(key);
        if (it == values.end())
            throw UsageError("config: missing required key '" + std::string(key) + "'");
        return it->second;
    };

    Scenario s;
    s.n_ports = parse_count("n_ports", required("n_ports"));
    s.n_users = parse_count("n_users", required("n_users"));
    s.cell_radius = parse_real("cell_radius", required("cell_radius"));
    s.pathloss_exponent = parse_real("pathloss_exponent", required("pathloss_exponent"));
    s.tx_power = std::pow(10.0, parse_real("tx_power_dB", required("tx_power_dB")) / 10.0);
    s.noise_power = parse_real("noise_power", required("noise_power"));

    const auto it_ring = values.find("port_ring_radius");
    s.port_ring_radius = it_ring != values.end() ? parse_real("port_ring_radius", it_ring->second)
                                                 : default_port_ring_radius(s.cell_radius);
    if (const auto it = values.find("user_positions"); it != values.end())
        s.user_positions = parse_points("user_positions", it->second);
    if (const auto it = values.find("port_positions"); it != values.end())
    {
        s.port_positions = parse_points("port_positions", it->second);
    }
    else
    {
        // Circular layout on the (possibly overridden) ring radius.
        s.port_positions = default_port_layout(s.n_ports, s.cell_radius);
        const double scale = s.port_ring_radius / default_port_ring_radius(s.cell_radius);
        for (Point& p : s.port_positions)
            p = {p.x * scale, p.y * scale};
    }
    s.validate(false);
    return s;
}

Scenario load_scenario(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw UsageError("cannot open config file '" + path.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str());
}

std::string format_scenario(const Scenario& s)
{
    std::ostringstream out;
    out << "n_ports = " << s.n_ports << '\n'
        << "n_users = " << s.n_users << '\n'
        << "cell_radius = " << format_real(s.cell_radius) << '\n'
        << "port_ring_radius = " << format_real(s.port_ring_radius) << '\n'
        << "pathloss_exponent = " << format_real(s.pathloss_exponent) << '\n'
        << "tx_power_dB = " << format_real(10.0 * std::log10(s.tx_power)) << '\n'
        << "noise_power = " << format_real(s.noise_power) << '\n';
    if (s.has_user_positions())
        out << "user_positions = " << format_points(s.user_positions) << '\n';
    out << "port_positions = " << format_points(s.port_positions) << '\n';
    return out.str();
}

} // namespace dasrate
