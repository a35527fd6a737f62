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

#include "mmshare/curve.hpp"
#include "mmshare/geometry.hpp"
#include "mmshare/model.hpp"

#include <cstdint>
#include <variant>
#include <vector>

namespace mmshare
{
    struct SimPlan
    {
        std::size_t replications = 1000;
        double half_width_m = 0.0; // 0 selects r_max of the home operator (scenario sources only)
        std::uint64_t seed = 1;
        int home_operator = 1;
        unsigned threads = 1;
        bool include_interference = true;
        std::size_t max_redraws = 1000; // per replication, when the home operator is absent

        void validate() const;
    };

    // Where the sites come from: a model sampled afresh per replication, or a fixed deployment on
    // which the user position is drawn uniformly from the central half of each axis.
    using SimSource = std::variant<BlockModel, TwoOpSpec, Deployment>;

    struct SimSamples
    {
        std::vector<double> sinr; // one linear SINR per replication
        std::size_t redraws = 0;  // replications re-sampled because the home operator was absent
        std::size_t los_serving = 0;
        std::size_t co_located_serving = 0;
        double half_width_m = 0.0; // simulation window actually used (0 for deployment sources)
        double home_density = 0.0; // per m^2, used for the rate mapping
    };

    // One SINR sample per replication; results do not depend on plan.threads.
    SimSamples simulate_sinr(const SimSource &source, const SystemParams &params, const SimPlan &plan);

    // Fraction of samples strictly above each threshold with Wilson 95% half-widths.
    CoverageCurve empirical_sinr_curve(const SimSamples &samples, const std::vector<double> &thresholds_db);
    CoverageCurve empirical_rate_curve(const SimSamples &samples, const SystemParams &params,
                                       const std::vector<double> &rates_bps);

    // Rate R at which the empirical P(Rate > R) crosses 0.5, by bisection to rel_tol.
    double empirical_median_rate(const SimSamples &samples, const SystemParams &params, double rel_tol = 1e-3);

    struct SimResult
    {
        CoverageCurve curve;
        SimSamples samples;
    };

    SimResult run_simulation(const SimPlan &plan, const SimSource &source, const SystemParams &params,
                             const std::vector<double> &thresholds_db);
    SimResult empirical_rate_curve(const SimPlan &plan, const SimSource &source, const SystemParams &params,
                                   const std::vector<double> &rates_bps);
}
