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
#include "mmshare/model.hpp"
#include "mmshare/quadrature.hpp"

#include <vector>

namespace mmshare
{
    // ---------- Blockage measures ----------

    // Lower incomplete gamma function gamma(2, x) = 1 - (1 + x) e^{-x}, accurate for small x.
    double lower_gamma2(double x);

    // Expected number of LOS / NLOS points of a density-lambda block inside B(0, r) under
    // p_L(t) = e^{-beta t}. Their sum is pi * lambda * r^2.
    double los_measure(double lambda, double beta, double r);
    double nlos_measure(double lambda, double beta, double r);

    // p_L(r) = e^{-beta r} and p_N(r) = 1 - p_L(r).
    double link_probability(LinkType link, double r, const SystemParams &params);

    // ---------- Association ----------

    // Radius around the user free of home-network sites of the other link type when the user is
    // served over `serving` at distance r. It equates the two path losses:
    // serving LOS -> D_N(r) = (c_N / c_L)^{1/alpha_N} r^{alpha_L / alpha_N},
    // serving NLOS -> D_L(r) = (c_L / c_N)^{1/alpha_L} r^{alpha_N / alpha_L}.
    double exclusion_radius(LinkType serving, double r, const SystemParams &params);

    struct SubBlockId
    {
        OperatorSet subset;
        LinkType link = LinkType::los;
    };

    // Density of the serving distance jointly with the event that the user (of home_operator)
    // associates with the sub-block `sub`.
    double assoc_pdf(const SubBlockId &sub, double r, const BlockModel &model, const SystemParams &params,
                     int home_operator = 1);

    // Serving distance beyond which the association density has tail mass below `tail_mass`,
    // from a union bound on LOS sites and the NLOS void probability.
    double r_max(double home_density, const SystemParams &params, double tail_mass = 1e-8);

    // ---------- Interference Laplace transforms (Rayleigh fading) ----------

    // E_G[1 / (1 + s c_tau G t^{-alpha_tau})] over the sectored gain distribution.
    double u_tau(LinkType link, double s, double t, const SystemParams &params);

    // 1 - u_tau, computed without cancellation.
    double one_minus_u_tau(LinkType link, double s, double t, const SystemParams &params);

    // Laplace transform of the interference at the user, given association with sub-block
    // `serving` at distance r. Evaluated block by block for any number of operators.
    double laplace_general(const SubBlockId &serving, double r, double s, const BlockModel &model,
                           const SystemParams &params, int home_operator = 1, const QuadOptions &opts = {});

    struct ServingLink
    {
        LinkType link = LinkType::los;
        double r = 0.0;
        bool co_located = false;
    };

    // Factors of the two-operator transform for a user of operator 1:
    //   near_* = exp(-2 pi lambda (1 - a) int_0^lo (1 - u) p t dt),   lo = exclusion or r
    //   far_*  = exp(-2 pi lambda int_lo^inf (1 - u)(1 + rho u) p t dt)
    // and co_location = u_tau(s, r) when the serving site is shared, 1 otherwise.
    struct TwoOpLaplaceFactors
    {
        double near_los = 1.0;
        double far_los = 1.0;
        double near_nlos = 1.0;
        double far_nlos = 1.0;
        double co_location = 1.0;

        double product() const { return near_los * far_los * near_nlos * far_nlos * co_location; }
    };

    TwoOpLaplaceFactors laplace_two_op_factors(const ServingLink &serving, double s, const TwoOpSpec &spec,
                                               const SystemParams &params, const QuadOptions &opts = {});
    double laplace_two_op(const ServingLink &serving, double s, const TwoOpSpec &spec, const SystemParams &params,
                          const QuadOptions &opts = {});

    // ---------- Coverage ----------

    struct AnalyticOptions
    {
        QuadOptions inner;                  // exponent integrals of the Laplace transforms
        QuadOptions outer{1e-9, 1e-7, 2000}; // integral over the serving distance
        double tail_mass = 1e-8;
        int home_operator = 1;
        bool include_interference = true; // false gives the noise-limited coverage
    };

    // Throws unsupported_fading unless params.fading is Rayleigh.
    void require_rayleigh(const SystemParams &params);

    // P(SINR > threshold) for a linear threshold.
    double coverage_probability(const Scenario &scenario, const SystemParams &params, double threshold,
                                const AnalyticOptions &opts = {});

    CoverageCurve sinr_coverage(const Scenario &scenario, const SystemParams &params,
                                const std::vector<double> &thresholds_db, const AnalyticOptions &opts = {});

    // SINR threshold 2^{R N_U / B} - 1 for rate R, with N_U from the home operator's density.
    double rate_to_sinr_threshold(double rate_bps, const SystemParams &params, double home_density);

    CoverageCurve rate_coverage(const Scenario &scenario, const SystemParams &params,
                                const std::vector<double> &rates_bps, const AnalyticOptions &opts = {});

    // Rate R with P(Rate > R) = 0.5, by bisection on [0, (B / N_U) log2(1 + max_sinr)] to the
    // relative tolerance rel_tol. Throws numerical_error if the coverage never drops below 0.5.
    double median_rate(const Scenario &scenario, const SystemParams &params, const AnalyticOptions &opts = {},
                       double rel_tol = 1e-3, double max_sinr = 1e6);
}
