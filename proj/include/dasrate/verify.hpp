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

#ifndef DASRATE_VERIFY_HPP
#define DASRATE_VERIFY_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace dasrate
{

enum class VerifyLevel
{
    Quick,
    Full
};

struct CheckResult
{
    std::string name;
    bool passed = false;
    double measured = 0.0;  // worst observed error / statistic
    double tolerance = 0.0; // limit it was held against
    std::string detail;
};

struct VerifyOptions
{
    VerifyLevel level = VerifyLevel::Quick;
    unsigned jobs = 1;
    std::uint64_t seed = 1;
    // Scaled-E1 kernel exercised by the special-function checks. Replacing it
    // lets callers confirm the suite notices a perturbed implementation.
    std::function<double(double)> e1_kernel;
};

/// Runs the invariant suites of every module. Quick level is a subset sized
/// for interactive use; Full adds the Monte Carlo and KS checks.
std::vector<CheckResult> run_verify(const VerifyOptions& options);

// Kolmogorov-Smirnov statistic of the samples (sorted in place) against cdf.
double ks_statistic(std::vector<double>& samples, const std::function<double(double)>& cdf);

bool all_passed(const std::vector<CheckResult>& results);
void write_verify_report(std::ostream& out, const std::vector<CheckResult>& results);

} // namespace dasrate

#endif
