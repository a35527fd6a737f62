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

#include "mmshare/model.hpp"
#include "mmshare/rng.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace mmshare
{
    // A cell site: one location hosting base stations of every operator in `occupants`.
    struct Site
    {
        std::uint64_t id = 0;
        Point position;
        OperatorSet occupants;
        std::optional<double> mark_u; // retention mark, only set by the coupled construction
    };

    struct Deployment
    {
        Window window;
        std::vector<Site> sites;

        std::size_t count_operator(int op) const;       // sites whose occupants contain op
        std::size_t count_exact(OperatorSet set) const; // sites whose occupants equal set
    };

    // Deployment plus a LOS / NLOS label per site (parallel to deployment.sites).
    struct LabeledDeployment
    {
        Deployment deployment;
        std::vector<LinkType> links;
    };

    // Independent homogeneous PPPs, one per block, in model.window. Block S draws from its own
    // stream keyed by S, so adding or removing a block leaves the others unchanged.
    Deployment sample_block_model(const BlockModel &model, std::uint64_t seed);

    // Mother PPP of density lambda with uniform marks U; network 1 keeps U <= a, network 2 keeps
    // U > b. Sites retained by neither network are dropped.
    Deployment couple_two_operators(const TwoOpSpec &spec, const Window &window, std::uint64_t seed);
    void couple_two_operators(const TwoOpSpec &spec, const Window &window, Rng &rng, Deployment &out);

    // LOS with probability exp(-beta * |x - origin|), independently per site.
    LabeledDeployment thin_blockage(const Deployment &dep, Point origin, double beta, std::uint64_t seed);
    void label_blockage(const Deployment &dep, Point origin, double beta, Rng &rng, std::vector<LinkType> &links);

    // Affine rescaling about the window center so that the density of `which_operator`
    // (0 selects all distinct sites) becomes target_density. Occupant sets are untouched.
    Deployment press(const Deployment &dep, double target_density, int which_operator = 0);

    // Cox-type perturbation used to produce non-Poisson test data: keeps only the sites that fall
    // within cluster_radius of a cluster center drawn from a PPP of density cluster_density.
    Deployment thin_clustered(const Deployment &dep, double cluster_density, double cluster_radius, std::uint64_t seed);
}
