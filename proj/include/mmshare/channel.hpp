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

#include "mmshare/geometry.hpp"
#include "mmshare/model.hpp"
#include "mmshare/rng.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace mmshare
{
    // c_tau * r^(-alpha_tau). Throws std::invalid_argument for r <= 0.
    double path_loss(LinkType link, double r, const SystemParams &params);

    // Path loss from a squared distance; skips the square root for the common exponents 2 and 4.
    inline double path_loss_sq(double c, double alpha, double r_sq)
    {
        if (alpha == 2.0)
            return c / r_sq;
        if (alpha == 4.0)
            return c / (r_sq * r_sq);
        return c * std::pow(r_sq, -0.5 * alpha);
    }

    struct GainPmf
    {
        double main_gain = 0.0;
        double main_probability = 0.0;
        double side_gain = 0.0;
        double side_probability = 0.0;
    };

    // Sectored antenna: G with probability theta_b / pi, g otherwise.
    GainPmf gain_pmf(const SystemParams &params);
    double sample_gain(const SystemParams &params, Rng &rng);
    double sample_gain(const SystemParams &params, std::uint64_t seed);

    // Power fading: Exp(1) for Rayleigh; Gamma(m, 1/m) * 10^(X/10), X ~ N(0, sigma_dB^2), otherwise.
    double sample_fading(const FadingSpec &spec, LinkType link, Rng &rng);
    double sample_fading(const FadingSpec &spec, LinkType link, std::uint64_t seed);

    struct Association
    {
        std::size_t site_index = 0; // index into deployment.sites
        std::uint64_t site_id = 0;
        LinkType link = LinkType::los;
        double distance = 0.0;
        bool co_located = false; // serving site hosts other operators
    };

    struct SinrResult
    {
        double sinr = 0.0;
        double signal = 0.0;       // G * H * l(r), normalized by the transmit power
        double interference = 0.0; // normalized by the transmit power
        Association assoc;
    };

    // Gains and fades for every (site, occupant) pair, laid out site by site with occupants in
    // ascending order; offsets[i] is the first slot of site i and offsets.back() the slot count.
    // The serving slot's gain is ignored (the serving beam always uses G).
    struct RadioDraws
    {
        std::vector<std::size_t> offsets;
        std::vector<double> gain;
        std::vector<double> fade;

        void sample(const LabeledDeployment &dep, const SystemParams &params, Rng &rng);
        std::size_t slot(std::size_t site_index, OperatorSet occupants, int op) const;
    };

    // Serving site: minimal path loss among sites hosting home_operator, ties broken by the lowest
    // site id. Throws data_error when the home operator has no site.
    Association associate(const LabeledDeployment &dep, Point user, int home_operator, const SystemParams &params);

    // SINR for fixed draws. With include_interference = false only noise limits the link.
    SinrResult evaluate_sinr(const LabeledDeployment &dep, Point user, int home_operator, const SystemParams &params,
                             const RadioDraws &draws, bool include_interference = true);

    SinrResult sinr_at_user(const LabeledDeployment &dep, Point user, int home_operator, const SystemParams &params,
                            Rng &rng, bool include_interference = true);
    SinrResult sinr_at_user(const LabeledDeployment &dep, Point user, int home_operator, const SystemParams &params,
                            std::uint64_t seed, bool include_interference = true);
}
