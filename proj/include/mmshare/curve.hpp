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

#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace mmshare
{
    enum class ThresholdUnit
    {
        sinr_db,
        rate_bps
    };

    enum class CurveKind
    {
        analytic,
        empirical
    };

    // P(X > threshold) on an ascending threshold grid. ci_halfwidth is empty for analytic curves
    // and parallel to probabilities for empirical ones.
    struct CoverageCurve
    {
        ThresholdUnit unit = ThresholdUnit::sinr_db;
        CurveKind kind = CurveKind::analytic;
        std::vector<double> thresholds;
        std::vector<double> probabilities;
        std::vector<double> ci_halfwidth;

        std::size_t size() const { return thresholds.size(); }
        bool has_ci() const { return !ci_halfwidth.empty(); }

        // Checks sizes, ascending thresholds and probabilities in [0, 1]. Monotonicity is checked
        // separately because analytic values carry quadrature noise.
        void validate() const;

        // Largest increase of the probability between consecutive thresholds (0 for a CCDF).
        double max_increase() const;
    };

    // Half-width of the Wilson score interval for `successes` out of `trials`.
    double wilson_halfwidth(std::size_t successes, std::size_t trials, double z = 1.959964);

    // Ascending grid lo, lo + step, ..., up to hi inclusive (within 1e-9 step). Throws
    // std::invalid_argument for step <= 0 or hi < lo.
    std::vector<double> make_grid(double lo, double step, double hi);

    // `threshold_db,probability[,ci_halfwidth]` or `rate_bps,probability[,ci_halfwidth]`.
    void write_curve_csv(std::ostream &out, const CoverageCurve &curve);
    CoverageCurve read_curve_csv(std::istream &in, const std::string &source = "<stream>");
    void save_curve_csv(const std::filesystem::path &path, const CoverageCurve &curve);
    CoverageCurve load_curve_csv(const std::filesystem::path &path);
}
