// SPDX-License-Identifier: Apache-2.0
//
// mmshare - coverage analysis of mmWave networks with shared infrastructure and spectrum
// Copyright (C) 2026 The mmshare authors
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

#include <catch2/catch_amalgamated.hpp>

#include "mmshare/curve.hpp"
#include "mmshare/errors.hpp"
#include "test_support.hpp"

#include <cmath>
#include <sstream>

using namespace mmshare;

TEST_CASE("wilson_halfwidth - matches the closed form")
{
    auto rng = test_support::rng(31);
    const double z = 1.959964;
    for (int trial = 0; trial < 100; ++trial)
    {
        const std::size_t n = 1 + rng() % 100000;
        const std::size_t k = rng() % (n + 1);
        const double p = double(k) / double(n);
        const double dn = double(n);
        const double expected = z / (1.0 + z * z / dn) * std::sqrt(p * (1.0 - p) / dn + z * z / (4.0 * dn * dn));
        CHECK(std::abs(wilson_halfwidth(k, n) - expected) < 1e-12);
    }
    // Nonzero at the boundaries, unlike the Wald interval.
    CHECK(wilson_halfwidth(0, 100) > 0.01);
    CHECK(wilson_halfwidth(100, 100) > 0.01);
    // Shrinks like 1 / sqrt(n).
    CHECK(std::abs(wilson_halfwidth(5000, 10000) / wilson_halfwidth(20000, 40000) - 2.0) < 1e-3);
    CHECK_THROWS_AS(wilson_halfwidth(0, 0), std::invalid_argument);
}

TEST_CASE("make_grid - endpoints and step")
{
    const auto g = make_grid(-10.0, 1.0, 30.0);
    REQUIRE(g.size() == 41);
    CHECK(g.front() == -10.0);
    CHECK(g.back() == 30.0);
    const auto r = make_grid(50e6, 50e6, 1000e6);
    REQUIRE(r.size() == 20);
    CHECK(std::abs(r.back() - 1000e6) < 1e-3);
    CHECK(make_grid(0.1, 0.1, 0.3).size() == 3);
    CHECK(make_grid(5.0, 1.0, 5.0).size() == 1);
    CHECK_THROWS_AS(make_grid(0.0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(make_grid(1.0, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("CoverageCurve - validate and max_increase")
{
    CoverageCurve c;
    c.thresholds = {0.0, 1.0, 2.0};
    c.probabilities = {0.9, 0.5, 0.6};
    CHECK_NOTHROW(c.validate());
    CHECK(std::abs(c.max_increase() - 0.1) < 1e-12);
    c.probabilities = {0.9, 0.5, 0.1};
    CHECK(c.max_increase() == 0.0);
    c.probabilities = {0.9, 1.5, 0.1};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.probabilities = {0.9, 0.5};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c.probabilities = {0.9, 0.5, 0.1};
    c.thresholds = {0.0, 0.0, 1.0};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("write_curve_csv - round trip with and without intervals")
{
    CoverageCurve c;
    c.unit = ThresholdUnit::rate_bps;
    c.kind = CurveKind::empirical;
    c.thresholds = {5e7, 1e8, 1.5e8};
    c.probabilities = {0.75, 0.5, 0.1234567890123};
    c.ci_halfwidth = {0.01, 0.02, 0.003};
    std::stringstream s;
    write_curve_csv(s, c);
    CHECK(s.str().rfind("rate_bps,probability,ci_halfwidth\n", 0) == 0);
    const CoverageCurve back = read_curve_csv(s);
    CHECK(back.unit == ThresholdUnit::rate_bps);
    CHECK(back.thresholds == c.thresholds);
    CHECK(back.probabilities == c.probabilities);
    CHECK(back.ci_halfwidth == c.ci_halfwidth);

    CoverageCurve a;
    a.thresholds = {-10.0, 0.0};
    a.probabilities = {0.9, 0.4};
    std::stringstream t;
    write_curve_csv(t, a);
    CHECK(t.str() == "threshold_db,probability\n-10,0.9\n0,0.4\n");
    const CoverageCurve b = read_curve_csv(t);
    CHECK(b.unit == ThresholdUnit::sinr_db);
    CHECK(!b.has_ci());
}

TEST_CASE("read_curve_csv - malformed input is a data error")
{
    std::istringstream bad_header("snr,probability\n0,1\n");
    CHECK_THROWS_AS(read_curve_csv(bad_header), data_error);
    std::istringstream bad_value("threshold_db,probability\n0,x\n");
    CHECK_THROWS_AS(read_curve_csv(bad_value), data_error);
    std::istringstream out_of_range("threshold_db,probability\n0,1.5\n");
    CHECK_THROWS_AS(read_curve_csv(out_of_range), data_error);
    std::istringstream empty("");
    CHECK_THROWS_AS(read_curve_csv(empty), data_error);
}
