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

#include <map>
#include <string>
#include <vector>

namespace mmshare
{
    // Sites whose occupants contain `op`, per m^2 of the window.
    double estimate_density(const Deployment &dep, int op);
    // Sites whose occupants equal `subset` exactly, per m^2.
    double estimate_density(const Deployment &dep, OperatorSet subset);
    // All distinct sites, per m^2.
    double estimate_total_density(const Deployment &dep);

    // rho = lambda_12 / lambda with lambda the density of distinct sites. Sites with operators
    // other than 1 and 2 count towards lambda only.
    double estimate_overlap_indirect(const Deployment &dep);

    struct DirectOverlapPoint
    {
        int k = 0;      // cells per axis
        int bins = 0;   // n = k^2
        double rho = 0.0;
        double mean_occupancy = 0.0; // distinct sites per cell
    };

    // For each n = k^2, partition the window into k x k cells and return
    //   rho_n = (sum_w Phi1(w) Phi2(w) - lambda1 lambda2 |W|^2 / n) / (lambda |W|).
    // Throws std::invalid_argument for k < 2.
    std::vector<DirectOverlapPoint> estimate_overlap_direct(const Deployment &dep, const std::vector<int> &ks);

    // Centered moving average; the window shrinks near both ends. window must be odd and >= 1.
    std::vector<double> moving_average(const std::vector<double> &series, int window = 5);

    // Mean of the smoothed series over bins whose mean occupancy lies in [occ_lo, occ_hi]; falls
    // back to the bin closest to the geometric middle of that band when none qualifies.
    double direct_plateau(const std::vector<DirectOverlapPoint> &points, const std::vector<double> &smoothed,
                          double occ_lo = 0.25, double occ_hi = 1.0);

    // Default k sweep: roughly geometric from 2 up to a mean occupancy of about 0.1 sites per cell.
    std::vector<int> default_bin_sweep(const Deployment &dep, int count = 24);

    struct SharingSummary
    {
        std::map<OperatorSet, std::size_t> counts; // exact occupant set -> number of sites
        std::map<int, double> sharing_ratio;      // operator -> shared sites / its sites
        std::size_t total_sites = 0;
    };

    SharingSummary sharing_summary(const Deployment &dep);

    // Merges sites whose occupant sets are disjoint and whose distance is at most epsilon_m
    // (epsilon 0 means identical coordinates), closing the relation transitively. Each group
    // becomes one site at the centroid with the union of occupants and the id of its first member.
    // Sites keep the order of their first members; the window is kept.
    Deployment merge_colocated(const Deployment &raw, double epsilon_m);

    // Per-operator site lists (operator m at index m-1) merged into one deployment.
    Deployment merge_colocated(const std::vector<std::vector<Point>> &per_operator, const Window &window,
                               double epsilon_m);

    struct OverlapReport
    {
        std::map<int, double> lambda_operator;       // per m^2
        std::map<OperatorSet, double> lambda_subset; // per m^2, exact occupant sets
        double lambda_total = 0.0;
        double rho_indirect = 0.0;
        std::vector<DirectOverlapPoint> direct;
        std::vector<double> direct_smoothed;
        double rho_direct_plateau = 0.0;
        int smoothing_window = 5;
        SharingSummary sharing;
        double window_area_m2 = 0.0;
    };

    OverlapReport analyze_overlap(const Deployment &dep, const std::vector<int> &ks, int smoothing_window = 5);

    // JSON document; densities reported per km^2.
    std::string overlap_report_json(const OverlapReport &report);
    // `k,bins,mean_occupancy,rho_direct,rho_direct_smoothed,rho_indirect`
    std::string rho_vs_bins_csv(const OverlapReport &report);
}
