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

#include "mmshare/channel.hpp"
#include "mmshare/errors.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace mmshare
{
    double path_loss(LinkType link, double r, const SystemParams &params)
    {
        if (!(r > 0.0))
            throw std::invalid_argument("path_loss: distance must be positive.");
        if (link == LinkType::los)
            return params.c_los * std::pow(r, -params.alpha_los);
        return params.c_nlos * std::pow(r, -params.alpha_nlos);
    }

    GainPmf gain_pmf(const SystemParams &params)
    {
        const double p = params.main_lobe_probability();
        return {params.gain_main, p, params.gain_side, 1.0 - p};
    }

    double sample_gain(const SystemParams &params, Rng &rng)
    {
        return uniform01(rng) < params.main_lobe_probability() ? params.gain_main : params.gain_side;
    }

    double sample_gain(const SystemParams &params, std::uint64_t seed)
    {
        Rng rng = make_stream(seed, StreamTag::radio);
        return sample_gain(params, rng);
    }

    double sample_fading(const FadingSpec &spec, LinkType link, Rng &rng)
    {
        if (spec.kind == FadingKind::rayleigh)
            return std::exponential_distribution<double>(1.0)(rng);

        const bool los = link == LinkType::los;
        const double m = los ? spec.nakagami_m_los : spec.nakagami_m_nlos;
        const double sigma_db = los ? spec.shadow_sigma_db_los : spec.shadow_sigma_db_nlos;
        double h = std::gamma_distribution<double>(m, 1.0 / m)(rng);
        if (sigma_db > 0.0)
            h *= std::pow(10.0, 0.1 * std::normal_distribution<double>(0.0, sigma_db)(rng));
        return h;
    }

    double sample_fading(const FadingSpec &spec, LinkType link, std::uint64_t seed)
    {
        Rng rng = make_stream(seed, StreamTag::radio);
        return sample_fading(spec, link, rng);
    }

    void RadioDraws::sample(const LabeledDeployment &dep, const SystemParams &params, Rng &rng)
    {
        const auto &sites = dep.deployment.sites;
        offsets.resize(sites.size() + 1);
        offsets[0] = 0;
        for (std::size_t i = 0; i < sites.size(); ++i)
            offsets[i + 1] = offsets[i] + std::size_t(sites[i].occupants.size());
        gain.resize(offsets.back());
        fade.resize(offsets.back());

        const double p_main = params.main_lobe_probability();
        const bool rayleigh = params.fading.kind == FadingKind::rayleigh;
        std::exponential_distribution<double> exp1(1.0);
        for (std::size_t i = 0; i < sites.size(); ++i)
        {
            for (std::size_t k = offsets[i]; k < offsets[i + 1]; ++k)
            {
                gain[k] = uniform01(rng) < p_main ? params.gain_main : params.gain_side;
                fade[k] = rayleigh ? exp1(rng) : sample_fading(params.fading, dep.links[i], rng);
            }
        }
    }

    std::size_t RadioDraws::slot(std::size_t site_index, OperatorSet occupants, int op) const
    {
        // rank of op among the occupants
        const std::uint16_t below = static_cast<std::uint16_t>((1u << (op - 1)) - 1u);
        return offsets[site_index] + std::size_t(OperatorSet(occupants.bits() & below).size());
    }

    Association associate(const LabeledDeployment &dep, Point user, int home_operator, const SystemParams &params)
    {
        const auto &sites = dep.deployment.sites;
        if (dep.links.size() != sites.size())
            throw std::invalid_argument("associate: link labels do not match the deployment.");

        bool found = false;
        Association best;
        double best_gain = -1.0;
        for (std::size_t i = 0; i < sites.size(); ++i)
        {
            const Site &site = sites[i];
            if (!site.occupants.contains(home_operator))
                continue;
            const double dx = site.position.x - user.x;
            const double dy = site.position.y - user.y;
            const double r_sq = dx * dx + dy * dy;
            const bool los = dep.links[i] == LinkType::los;
            const double g = r_sq > 0.0 ? path_loss_sq(los ? params.c_los : params.c_nlos,
                                                       los ? params.alpha_los : params.alpha_nlos, r_sq)
                                        : std::numeric_limits<double>::infinity();
            if (!found || g > best_gain || (g == best_gain && site.id < best.site_id))
            {
                found = true;
                best_gain = g;
                best.site_index = i;
                best.site_id = site.id;
                best.link = dep.links[i];
                best.distance = std::sqrt(r_sq);
            }
        }
        if (!found)
            throw data_error("Operator " + std::to_string(home_operator) + " has no site in the deployment.");
        best.co_located = sites[best.site_index].occupants.size() > 1;
        return best;
    }

    SinrResult evaluate_sinr(const LabeledDeployment &dep, Point user, int home_operator, const SystemParams &params,
                             const RadioDraws &draws, bool include_interference)
    {
        const auto &sites = dep.deployment.sites;
        if (draws.offsets.size() != sites.size() + 1)
            throw std::invalid_argument("evaluate_sinr: radio draws do not match the deployment.");

        SinrResult out;
        out.assoc = associate(dep, user, home_operator, params);
        const std::size_t serving_slot = draws.slot(out.assoc.site_index, sites[out.assoc.site_index].occupants,
                                                    home_operator);

        if (out.assoc.distance <= 0.0)
            throw numerical_error("User coincides with its serving site; path loss is unbounded.");
        out.signal = params.gain_main * draws.fade[serving_slot] *
                     path_loss(out.assoc.link, out.assoc.distance, params);

        double interference = 0.0;
        if (include_interference)
        {
            for (std::size_t i = 0; i < sites.size(); ++i)
            {
                const double dx = sites[i].position.x - user.x;
                const double dy = sites[i].position.y - user.y;
                const bool los = dep.links[i] == LinkType::los;
                double weight = 0.0;
                for (std::size_t k = draws.offsets[i]; k < draws.offsets[i + 1]; ++k)
                    if (k != serving_slot)
                        weight += draws.gain[k] * draws.fade[k];
                if (weight == 0.0)
                    continue;
                const double r_sq = dx * dx + dy * dy;
                if (r_sq <= 0.0)
                    throw numerical_error("Interfering site coincides with the user; path loss is unbounded.");
                interference += weight * path_loss_sq(los ? params.c_los : params.c_nlos,
                                                      los ? params.alpha_los : params.alpha_nlos, r_sq);
            }
        }
        out.interference = interference;
        out.sinr = out.signal / (interference + params.noise_power());
        return out;
    }

    SinrResult sinr_at_user(const LabeledDeployment &dep, Point user, int home_operator, const SystemParams &params,
                            Rng &rng, bool include_interference)
    {
        RadioDraws draws;
        draws.sample(dep, params, rng);
        return evaluate_sinr(dep, user, home_operator, params, draws, include_interference);
    }

    SinrResult sinr_at_user(const LabeledDeployment &dep, Point user, int home_operator, const SystemParams &params,
                            std::uint64_t seed, bool include_interference)
    {
        Rng rng = make_stream(seed, StreamTag::radio);
        return sinr_at_user(dep, user, home_operator, params, rng, include_interference);
    }
}
