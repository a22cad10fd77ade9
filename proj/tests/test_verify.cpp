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

#include "dasrate/numerics.hpp"
#include "dasrate/verify.hpp"

#include "doctest.h"

#include <cmath>
#include <sstream>

using namespace dasrate;

TEST_CASE("quick verification passes")
{
    const auto results = run_verify({});
    CHECK(results.size() >= 9);
    for (const auto& r : results)
    {
        CAPTURE(r.name);
        CAPTURE(r.measured);
        CHECK(r.passed);
    }
    CHECK(all_passed(results));
    std::ostringstream out;
    write_verify_report(out, results);
    CHECK(out.str().find("checks passed") != std::string::npos);
}

TEST_CASE("a perturbed special function is caught")
{
    VerifyOptions opts;
    opts.e1_kernel = [](double x) { return numerics::exp_e1(x) * (1.0 + 1e-6); };
    const auto results = run_verify(opts);
    CHECK_FALSE(all_passed(results));
    std::ostringstream out;
    write_verify_report(out, results);
    CHECK(out.str().find("FAIL exp_e1 vs 40-digit reference") != std::string::npos);
}

TEST_CASE("KS statistic")
{
    std::vector<double> u;
    for (int i = 0; i < 1000; ++i)
        u.push_back((i + 0.5) / 1000.0);
    CHECK(ks_statistic(u, [](double x) { return x; }) == doctest::Approx(0.0005));
    std::vector<double> shifted(u);
    CHECK(ks_statistic(shifted, [](double x) { return std::min(1.0, x + 0.1); }) > 0.09);
}
