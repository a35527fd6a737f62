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

#include "mmshare/geometry.hpp"
#include "mmshare/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace mmshare
{
    std::size_t Deployment::count_operator(int op) const
    {
        return std::size_t(std::count_if(sites.begin(), sites.end(), [op](const Site &s)
                                         { return s.occupants.contains(op); }));
    }

    std::size_t Deployment::count_exact(OperatorSet set) const
    {
        return std::size_t(std::count_if(sites.begin(), sites.end(), [set](const Site &s)
                                         { return s.occupants == set; }));
    }

    static Point uniform_point(const Window &w, Rng &rng)
    {
        double x = w.x_min + w.width() * uniform01(rng);
        double y = w.y_min + w.height() * uniform01(rng);
        return {x, y};
    }

    static std::int64_t poisson_count(double mean, Rng &rng)
    {
        if (mean <= 0.0)
            return 0;
        std::poisson_distribution<std::int64_t> dist(mean);
        return dist(rng);
    }

    Deployment sample_block_model(const BlockModel &model, std::uint64_t seed)
    {
        model.validate();
        Deployment dep;
        dep.window = model.window;
        const double area = model.window.area();

        std::uint64_t next_id = 0;
        for (const auto &[subset, density] : model.densities)
        {
            if (density <= 0.0)
                continue;
            Rng rng = make_stream(seed, StreamTag::block, {subset.bits()});
            std::int64_t n = poisson_count(density * area, rng);
            dep.sites.reserve(dep.sites.size() + std::size_t(n));
            for (std::int64_t i = 0; i < n; ++i)
                dep.sites.push_back({next_id++, uniform_point(model.window, rng), subset, std::nullopt});
        }
        return dep;
    }

    void couple_two_operators(const TwoOpSpec &spec, const Window &window, Rng &rng, Deployment &out)
    {
        window.validate();
        out.window = window;
        out.sites.clear();

        const double a = spec.retain_a();
        const double b = spec.retain_b();
        std::int64_t n = poisson_count(spec.lambda_total() * window.area(), rng);
        out.sites.reserve(std::size_t(n));

        std::uint64_t next_id = 0;
        for (std::int64_t i = 0; i < n; ++i)
        {
            Point p = uniform_point(window, rng);
            double u = uniform01(rng);
            OperatorSet occupants;
            if (u <= a)
                occupants.insert(1);
            if (u > b)
                occupants.insert(2);
            if (occupants.empty())
                continue;
            out.sites.push_back({next_id++, p, occupants, u});
        }
    }

    Deployment couple_two_operators(const TwoOpSpec &spec, const Window &window, std::uint64_t seed)
    {
        Rng rng = make_stream(seed, StreamTag::mother);
        Deployment dep;
        couple_two_operators(spec, window, rng, dep);
        return dep;
    }

    void label_blockage(const Deployment &dep, Point origin, double beta, Rng &rng, std::vector<LinkType> &links)
    {
        if (!(beta > 0.0))
            throw std::invalid_argument("Blockage constant beta must be positive.");
        links.resize(dep.sites.size());
        for (std::size_t i = 0; i < dep.sites.size(); ++i)
        {
            double d = distance(dep.sites[i].position, origin);
            links[i] = uniform01(rng) < std::exp(-beta * d) ? LinkType::los : LinkType::nlos;
        }
    }

    LabeledDeployment thin_blockage(const Deployment &dep, Point origin, double beta, std::uint64_t seed)
    {
        Rng rng = make_stream(seed, StreamTag::blockage);
        LabeledDeployment out{dep, {}};
        label_blockage(dep, origin, beta, rng, out.links);
        return out;
    }

    Deployment press(const Deployment &dep, double target_density, int which_operator)
    {
        dep.window.validate();
        if (!(target_density > 0.0) || !std::isfinite(target_density))
            throw std::invalid_argument("Target density must be positive.");
        if (dep.sites.empty())
            throw data_error("Cannot press an empty deployment.");

        std::size_t count = which_operator == 0 ? dep.sites.size() : dep.count_operator(which_operator);
        if (count == 0)
            throw data_error("Operator " + std::to_string(which_operator) + " has no sites to press.");

        const double current = double(count) / dep.window.area();
        const double scale = std::sqrt(current / target_density);
        if (scale == 1.0)
            return dep;

        const Point c = dep.window.center();
        auto map = [&](Point p) -> Point
        { return {c.x + scale * (p.x - c.x), c.y + scale * (p.y - c.y)}; };

        Deployment out;
        Point lo = map({dep.window.x_min, dep.window.y_min});
        Point hi = map({dep.window.x_max, dep.window.y_max});
        out.window = {lo.x, hi.x, lo.y, hi.y};
        out.sites = dep.sites;
        for (auto &site : out.sites)
            site.position = map(site.position);
        return out;
    }

    Deployment thin_clustered(const Deployment &dep, double cluster_density, double cluster_radius, std::uint64_t seed)
    {
        dep.window.validate();
        if (!(cluster_density > 0.0) || !(cluster_radius > 0.0))
            throw std::invalid_argument("Cluster density and radius must be positive.");

        // Centers are drawn in the window dilated by the radius so that coverage has no edge deficit.
        Window dilated{dep.window.x_min - cluster_radius, dep.window.x_max + cluster_radius,
                       dep.window.y_min - cluster_radius, dep.window.y_max + cluster_radius};
        Rng rng = make_stream(seed, StreamTag::clusters);
        std::int64_t n = poisson_count(cluster_density * dilated.area(), rng);

        auto cell_of = [&](Point p)
        {
            auto ix = std::int64_t(std::floor((p.x - dilated.x_min) / cluster_radius));
            auto iy = std::int64_t(std::floor((p.y - dilated.y_min) / cluster_radius));
            return std::pair{ix, iy};
        };
        auto key = [](std::int64_t ix, std::int64_t iy)
        { return (std::uint64_t(ix) << 32) ^ std::uint64_t(iy & 0xffffffff); };

        std::unordered_map<std::uint64_t, std::vector<Point>> grid;
        for (std::int64_t i = 0; i < n; ++i)
        {
            Point p = uniform_point(dilated, rng);
            auto [ix, iy] = cell_of(p);
            grid[key(ix, iy)].push_back(p);
        }

        Deployment out;
        out.window = dep.window;
        for (const auto &site : dep.sites)
        {
            auto [ix, iy] = cell_of(site.position);
            bool covered = false;
            for (std::int64_t dx = -1; dx <= 1 && !covered; ++dx)
                for (std::int64_t dy = -1; dy <= 1 && !covered; ++dy)
                {
                    auto it = grid.find(key(ix + dx, iy + dy));
                    if (it == grid.end())
                        continue;
                    for (const auto &center : it->second)
                        if (distance(center, site.position) <= cluster_radius)
                        {
                            covered = true;
                            break;
                        }
                }
            if (covered)
                out.sites.push_back(site);
        }
        return out;
    }
}
