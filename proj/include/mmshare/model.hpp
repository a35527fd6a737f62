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

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace mmshare
{
    // ---------- Units ----------

    inline constexpr double per_km2 = 1.0e-6; // one site per km^2 expressed in sites per m^2
    inline constexpr double pi = 3.14159265358979323846;

    double db_to_linear(double db);
    double linear_to_db(double linear);
    double dbm_to_watt(double dbm);

    // ---------- OperatorSet ----------

    // Subset of the operators {1, ..., 16} stored as a bitmask (bit m-1 for operator m).
    class OperatorSet
    {
    public:
        static constexpr int max_operators = 16;

        constexpr OperatorSet() = default;
        constexpr explicit OperatorSet(std::uint16_t bits) : bits_(bits) {}
        OperatorSet(std::initializer_list<int> operators);

        static OperatorSet single(int op) { return OperatorSet{op}; }
        static OperatorSet parse(std::string_view text); // "1;2;4"

        constexpr std::uint16_t bits() const { return bits_; }
        bool contains(int op) const;
        int size() const;
        constexpr bool empty() const { return bits_ == 0; }

        void insert(int op);
        std::vector<int> members() const;
        std::string to_string() const; // "1;2;4", the deployment CSV encoding

        constexpr OperatorSet operator|(OperatorSet other) const
        {
            return OperatorSet(static_cast<std::uint16_t>(bits_ | other.bits_));
        }
        constexpr OperatorSet operator&(OperatorSet other) const
        {
            return OperatorSet(static_cast<std::uint16_t>(bits_ & other.bits_));
        }
        constexpr auto operator<=>(const OperatorSet &) const = default;

    private:
        std::uint16_t bits_ = 0;
    };

    // ---------- Plane geometry ----------

    struct Point
    {
        double x = 0.0;
        double y = 0.0;
    };

    double distance(const Point &a, const Point &b);

    // Axis-aligned observation / simulation window in meters.
    struct Window
    {
        double x_min = 0.0;
        double x_max = 0.0;
        double y_min = 0.0;
        double y_max = 0.0;

        static Window centered(double half_width, Point center = {});

        double width() const { return x_max - x_min; }
        double height() const { return y_max - y_min; }
        double area() const { return width() * height(); }
        Point center() const { return {0.5 * (x_min + x_max), 0.5 * (y_min + y_max)}; }
        bool contains(const Point &p) const;
        void validate() const; // throws std::invalid_argument on non-positive area

        bool operator==(const Window &) const = default;
    };

    // ---------- Link types ----------

    // Line-of-sight state of a link; selects the (c, alpha) path-loss pair.
    enum class LinkType : std::uint8_t
    {
        los,
        nlos
    };

    const char *to_string(LinkType link);

    // ---------- Block model ----------

    // Densities (sites per m^2) of the independent blocks Phi_S, keyed by the exact occupant set S.
    struct BlockModel
    {
        Window window;
        std::map<OperatorSet, double> densities;

        void validate() const;
        void validate_densities() const; // skips the window, which the analytic engine ignores
        double block_density(OperatorSet subset) const;
        double operator_density(int op) const; // sum over all blocks containing op
        double total_density() const;          // density of distinct sites
        int operator_count() const;            // highest operator index that appears
    };

    // ---------- Radio parameters ----------

    enum class FadingKind
    {
        rayleigh,
        nakagami_lognormal
    };

    struct FadingSpec
    {
        FadingKind kind = FadingKind::rayleigh;
        double nakagami_m_los = 1.0;
        double nakagami_m_nlos = 1.0;
        double shadow_sigma_db_los = 0.0;
        double shadow_sigma_db_nlos = 0.0;

        static FadingSpec rayleigh() { return {}; }
        static FadingSpec nakagami_lognormal(double m_los, double m_nlos, double sigma_db_los, double sigma_db_nlos);

        void validate() const;
        bool operator==(const FadingSpec &) const = default;
    };

    // All quantities linear and SI. Path gains c_los / c_nlos are the gains at 1 m.
    struct SystemParams
    {
        double carrier_freq_hz = 0.0;
        double bandwidth_hz = 0.0;
        double tx_power_w = 0.0;
        double noise_psd_w_per_hz = 0.0;
        double noise_figure_db = 0.0;
        double beta_per_m = 0.0;
        double c_los = 0.0;
        double c_nlos = 0.0;
        double alpha_los = 0.0;
        double alpha_nlos = 0.0;
        double gain_main = 0.0;
        double gain_side = 0.0;
        double half_beamwidth_rad = 0.0;
        double user_density_per_m2 = 0.0;
        FadingSpec fading;

        // sigma^2 = N0 * B * NF / P_t, the thermal noise normalized by the transmit power.
        double noise_power() const;

        // theta_b / pi, the probability that an interfering beam points at the user.
        double main_lobe_probability() const;

        void validate() const;
    };

    // 28 GHz, 200 MHz, c_L = -60 dB, c_N = -70 dB, alpha = 2 / 4, 26 dBm, -174 dBm/Hz, NF 10 dB,
    // G = 18 dB, g = -2 dB, theta_b = 10 deg, lambda_U = 200 / km^2, beta = 0.007 / m.
    SystemParams paper_sec5_params();

    // Nakagami m = 2 / 3 with 5.2 / 7.6 dB log-normal shadowing for LOS / NLOS links.
    FadingSpec paper_sec5_nakagami();

    inline constexpr double paper_sec5_lambda0 = 30.0 * per_km2;

    // ---------- Two-operator coupling ----------

    // Two networks extracted from a mother PPP of density lambda by uniform marks U:
    // network 1 keeps U <= a, network 2 keeps U > b, with 0 <= b <= a <= 1.
    class TwoOpSpec
    {
    public:
        static TwoOpSpec from_retention(double lambda_total, double retain_a, double retain_b);
        static TwoOpSpec from_densities(double lambda1, double lambda2, double rho);

        double lambda_total() const { return lambda_; }
        double retain_a() const { return a_; }
        double retain_b() const { return b_; }
        double rho() const { return a_ - b_; }

        double lambda1() const { return a_ * lambda_; }
        double lambda2() const { return (1.0 - b_) * lambda_; }
        double lambda12() const { return (a_ - b_) * lambda_; }
        double exclusive_density(int op) const; // lambda_1' = b * lambda, lambda_2' = (1 - a) * lambda
        double operator_density(int op) const;

        // Same network seen from operator 2: swaps the roles of the two mark intervals.
        TwoOpSpec mirrored() const;

        BlockModel to_block_model(const Window &window = {}) const;

    private:
        TwoOpSpec(double lambda, double a, double b) : lambda_(lambda), a_(a), b_(b) {}
        double lambda_;
        double a_;
        double b_;
    };

    // Fixed individual densities: each operator relocates rho / (1 + rho) of its sites.
    TwoOpSpec fid_scenario(double lambda0, double rho);

    // Fixed combined density: each operator expands into a fraction rho of the other's sites.
    TwoOpSpec fcd_scenario(double lambda0, double rho);

    // Mean number of users sharing a base station, N_U = 1 + 1.28 lambda_U / lambda_op.
    double load_factor(const SystemParams &params, double lambda_op);

    // Either a general block model or the two-operator coupled construction.
    using Scenario = std::variant<BlockModel, TwoOpSpec>;

    double operator_density(const Scenario &scenario, int op);
    BlockModel to_block_model(const Scenario &scenario, const Window &window = {});
}
