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

#include "mmshare/estimation.hpp"
#include "mmshare/errors.hpp"
#include "mmshare/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace mmshare
{
    static double window_area(const Deployment &dep)
    {
        try
        {
            dep.window.validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw data_error(std::string("Deployment window: ") + e.what());
        }
        return dep.window.area();
    }

    double estimate_density(const Deployment &dep, int op)
    {
        return double(dep.count_operator(op)) / window_area(dep);
    }

    double estimate_density(const Deployment &dep, OperatorSet subset)
    {
        return double(dep.count_exact(subset)) / window_area(dep);
    }

    double estimate_total_density(const Deployment &dep)
    {
        return double(dep.sites.size()) / window_area(dep);
    }

    double estimate_overlap_indirect(const Deployment &dep)
    {
        window_area(dep);
        if (dep.sites.empty())
            throw data_error("Overlap estimation needs a non-empty deployment.");
        const OperatorSet both{1, 2};
        std::size_t shared = 0;
        for (const auto &site : dep.sites)
            if ((site.occupants & both) == both)
                ++shared;
        return double(shared) / double(dep.sites.size());
    }

    std::vector<DirectOverlapPoint> estimate_overlap_direct(const Deployment &dep, const std::vector<int> &ks)
    {
        window_area(dep);
        if (dep.sites.empty())
            throw data_error("Overlap estimation needs a non-empty deployment.");
        const double n_total = double(dep.sites.size());
        const double n1 = double(dep.count_operator(1));
        const double n2 = double(dep.count_operator(2));
        const Window &w = dep.window;

        std::vector<DirectOverlapPoint> out;
        std::vector<std::uint32_t> c1, c2;
        for (int k : ks)
        {
            if (k < 2)
                throw std::invalid_argument("Direct overlap: need at least 2 cells per axis (n >= 4).");
            if (k > 4096)
                throw std::invalid_argument("Direct overlap: at most 4096 cells per axis.");
            const std::size_t cells = std::size_t(k) * std::size_t(k);
            c1.assign(cells, 0);
            c2.assign(cells, 0);
            for (const auto &site : dep.sites)
            {
                auto cell_of = [k](double v, double lo, double width)
                {
                    int i = int(std::floor((v - lo) / width * k));
                    return std::clamp(i, 0, k - 1);
                };
                const std::size_t ix = std::size_t(cell_of(site.position.x, w.x_min, w.width()));
                const std::size_t iy = std::size_t(cell_of(site.position.y, w.y_min, w.height()));
                const std::size_t idx = iy * std::size_t(k) + ix;
                if (site.occupants.contains(1))
                    ++c1[idx];
                if (site.occupants.contains(2))
                    ++c2[idx];
            }
            double cross = 0.0;
            for (std::size_t i = 0; i < cells; ++i)
                cross += double(c1[i]) * double(c2[i]);
            DirectOverlapPoint p;
            p.k = k;
            p.bins = k * k;
            p.rho = (cross - n1 * n2 / double(cells)) / n_total;
            p.mean_occupancy = n_total / double(cells);
            out.push_back(p);
        }
        return out;
    }

    std::vector<double> moving_average(const std::vector<double> &series, int window)
    {
        if (window < 1 || window % 2 == 0)
            throw std::invalid_argument("Moving-average window must be odd and positive.");
        const int half = window / 2;
        const int n = int(series.size());
        std::vector<double> out(series.size());
        for (int i = 0; i < n; ++i)
        {
            const int reach = std::min({half, i, n - 1 - i});
            double sum = 0.0;
            for (int j = i - reach; j <= i + reach; ++j)
                sum += series[std::size_t(j)];
            out[std::size_t(i)] = sum / double(2 * reach + 1);
        }
        return out;
    }

    double direct_plateau(const std::vector<DirectOverlapPoint> &points, const std::vector<double> &smoothed,
                          double occ_lo, double occ_hi)
    {
        if (points.empty() || smoothed.size() != points.size())
            throw std::invalid_argument("direct_plateau: series is empty or mismatched.");
        double sum = 0.0;
        int count = 0;
        for (std::size_t i = 0; i < points.size(); ++i)
            if (points[i].mean_occupancy >= occ_lo && points[i].mean_occupancy <= occ_hi)
            {
                sum += smoothed[i];
                ++count;
            }
        if (count > 0)
            return sum / count;

        const double middle = std::sqrt(occ_lo * occ_hi);
        std::size_t best = 0;
        for (std::size_t i = 1; i < points.size(); ++i)
            if (std::abs(std::log(points[i].mean_occupancy / middle)) <
                std::abs(std::log(points[best].mean_occupancy / middle)))
                best = i;
        return smoothed[best];
    }

    std::vector<int> default_bin_sweep(const Deployment &dep, int count)
    {
        const double n = double(std::max<std::size_t>(dep.sites.size(), 1));
        const int k_max = std::clamp(int(std::ceil(std::sqrt(n / 0.1))), 2, 4096);
        std::vector<int> ks;
        for (int i = 0; i < count; ++i)
        {
            const double t = count > 1 ? double(i) / double(count - 1) : 1.0;
            const int k = int(std::lround(2.0 * std::pow(double(k_max) / 2.0, t)));
            if (ks.empty() || k > ks.back())
                ks.push_back(k);
        }
        return ks;
    }

    SharingSummary sharing_summary(const Deployment &dep)
    {
        SharingSummary out;
        out.total_sites = dep.sites.size();
        std::map<int, std::size_t> present, shared;
        for (const auto &site : dep.sites)
        {
            ++out.counts[site.occupants];
            for (int m : site.occupants.members())
            {
                ++present[m];
                if (site.occupants.size() >= 2)
                    ++shared[m];
            }
        }
        for (const auto &[m, count] : present)
            out.sharing_ratio[m] = double(shared[m]) / double(count);
        return out;
    }

    namespace
    {
        struct UnionFind
        {
            std::vector<std::size_t> parent;
            explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
            std::size_t find(std::size_t i)
            {
                while (parent[i] != i)
                {
                    parent[i] = parent[parent[i]];
                    i = parent[i];
                }
                return i;
            }
            void unite(std::size_t a, std::size_t b)
            {
                a = find(a);
                b = find(b);
                if (a != b)
                    parent[std::max(a, b)] = std::min(a, b);
            }
        };

        struct CellKey
        {
            std::int64_t x, y;
            bool operator==(const CellKey &) const = default;
        };
        struct CellHash
        {
            std::size_t operator()(const CellKey &k) const
            {
                return std::size_t(mix64(std::uint64_t(k.x) * 0x9e3779b97f4a7c15ull ^ std::uint64_t(k.y)));
            }
        };
    }

    Deployment merge_colocated(const Deployment &raw, double epsilon_m)
    {
        if (!(epsilon_m >= 0.0) || !std::isfinite(epsilon_m))
            throw std::invalid_argument("Co-location tolerance must be non-negative.");
        const auto &sites = raw.sites;
        const std::size_t n = sites.size();
        UnionFind uf(n);

        auto try_link = [&](std::size_t i, std::size_t j)
        {
            if ((sites[i].occupants & sites[j].occupants).empty() &&
                distance(sites[i].position, sites[j].position) <= epsilon_m)
                uf.unite(i, j);
        };

        // grid of cell size epsilon (or exact coordinates for epsilon = 0)
        const double cell = epsilon_m > 0.0 ? epsilon_m : 1.0;
        std::unordered_map<CellKey, std::vector<std::size_t>, CellHash> grid;
        auto key_of = [&](const Point &p)
        {
            if (epsilon_m == 0.0)
            {
                std::int64_t kx, ky;
                std::memcpy(&kx, &p.x, sizeof kx);
                std::memcpy(&ky, &p.y, sizeof ky);
                return CellKey{kx, ky};
            }
            return CellKey{std::int64_t(std::floor(p.x / cell)), std::int64_t(std::floor(p.y / cell))};
        };
        for (std::size_t i = 0; i < n; ++i)
            grid[key_of(sites[i].position)].push_back(i);

        for (std::size_t i = 0; i < n; ++i)
        {
            const CellKey k = key_of(sites[i].position);
            const int reach = epsilon_m > 0.0 ? 1 : 0;
            for (int dx = -reach; dx <= reach; ++dx)
                for (int dy = -reach; dy <= reach; ++dy)
                {
                    auto it = grid.find({k.x + dx, k.y + dy});
                    if (it == grid.end())
                        continue;
                    for (std::size_t j : it->second)
                        if (j > i)
                            try_link(i, j);
                }
        }

        Deployment out;
        out.window = raw.window;
        std::vector<std::size_t> slot(n, SIZE_MAX);
        std::vector<std::size_t> members;
        for (std::size_t i = 0; i < n; ++i)
        {
            const std::size_t root = uf.find(i);
            if (slot[root] == SIZE_MAX)
            {
                slot[root] = out.sites.size();
                Site s;
                s.id = sites[root].id;
                s.position = {0.0, 0.0};
                out.sites.push_back(s);
                members.push_back(0);
            }
            Site &merged = out.sites[slot[root]];
            merged.occupants = merged.occupants | sites[i].occupants;
            merged.position.x += sites[i].position.x;
            merged.position.y += sites[i].position.y;
            ++members[slot[root]];
        }
        for (std::size_t i = 0; i < out.sites.size(); ++i)
        {
            out.sites[i].position.x /= double(members[i]);
            out.sites[i].position.y /= double(members[i]);
        }
        return out;
    }

    Deployment merge_colocated(const std::vector<std::vector<Point>> &per_operator, const Window &window,
                               double epsilon_m)
    {
        if (per_operator.size() > std::size_t(OperatorSet::max_operators))
            throw std::invalid_argument("At most 16 operators are supported.");
        Deployment raw;
        raw.window = window;
        std::uint64_t id = 0;
        for (std::size_t m = 0; m < per_operator.size(); ++m)
            for (const Point &p : per_operator[m])
                raw.sites.push_back({id++, p, OperatorSet::single(int(m + 1)), std::nullopt});
        return merge_colocated(raw, epsilon_m);
    }

    OverlapReport analyze_overlap(const Deployment &dep, const std::vector<int> &ks, int smoothing_window)
    {
        OverlapReport r;
        r.window_area_m2 = window_area(dep);
        r.sharing = sharing_summary(dep);
        for (const auto &[m, ratio] : r.sharing.sharing_ratio)
            r.lambda_operator[m] = estimate_density(dep, m);
        for (const auto &[subset, count] : r.sharing.counts)
            r.lambda_subset[subset] = double(count) / r.window_area_m2;
        r.lambda_total = estimate_total_density(dep);
        r.rho_indirect = estimate_overlap_indirect(dep);
        r.direct = estimate_overlap_direct(dep, ks);
        std::vector<double> raw(r.direct.size());
        for (std::size_t i = 0; i < raw.size(); ++i)
            raw[i] = r.direct[i].rho;
        r.smoothing_window = smoothing_window;
        r.direct_smoothed = moving_average(raw, smoothing_window);
        r.rho_direct_plateau = direct_plateau(r.direct, r.direct_smoothed);
        return r;
    }

    std::string overlap_report_json(const OverlapReport &r)
    {
        using json = nlohmann::ordered_json;
        json doc;
        doc["window_area_km2"] = r.window_area_m2 * per_km2;
        doc["total_sites"] = r.sharing.total_sites;
        doc["lambda_total_per_km2"] = r.lambda_total / per_km2;
        json ops = json::object();
        for (const auto &[m, lambda] : r.lambda_operator)
            ops[std::to_string(m)] = lambda / per_km2;
        doc["lambda_operator_per_km2"] = ops;
        json subsets = json::object();
        for (const auto &[subset, lambda] : r.lambda_subset)
            subsets[subset.to_string()] = lambda / per_km2;
        doc["lambda_subset_per_km2"] = subsets;
        json counts = json::object();
        for (const auto &[subset, count] : r.sharing.counts)
            counts[subset.to_string()] = count;
        doc["subset_counts"] = counts;
        json ratios = json::object();
        for (const auto &[m, ratio] : r.sharing.sharing_ratio)
            ratios[std::to_string(m)] = ratio;
        doc["sharing_ratio"] = ratios;
        doc["rho_indirect"] = r.rho_indirect;
        doc["rho_direct_plateau"] = r.rho_direct_plateau;
        doc["plateau_occupancy_band"] = {0.25, 1.0};
        doc["smoothing_window"] = r.smoothing_window;
        json series = json::array();
        for (std::size_t i = 0; i < r.direct.size(); ++i)
            series.push_back({{"k", r.direct[i].k},
                              {"bins", r.direct[i].bins},
                              {"mean_occupancy", r.direct[i].mean_occupancy},
                              {"rho_direct", r.direct[i].rho},
                              {"rho_direct_smoothed", r.direct_smoothed[i]}});
        doc["direct_series"] = series;
        return doc.dump(2) + "\n";
    }

    std::string rho_vs_bins_csv(const OverlapReport &r)
    {
        std::ostringstream out;
        out << "k,bins,mean_occupancy,rho_direct,rho_direct_smoothed,rho_indirect\n";
        for (std::size_t i = 0; i < r.direct.size(); ++i)
            out << r.direct[i].k << ',' << r.direct[i].bins << ',' << format_double(r.direct[i].mean_occupancy) << ','
                << format_double(r.direct[i].rho) << ',' << format_double(r.direct_smoothed[i]) << ','
                << format_double(r.rho_indirect) << '\n';
        return out.str();
    }
}
