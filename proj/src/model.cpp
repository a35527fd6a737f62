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

#include "mmshare/model.hpp"
#include "mmshare/errors.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace mmshare
{
    double db_to_linear(double db)
    {
        return std::pow(10.0, db / 10.0);
    }

    double linear_to_db(double linear)
    {
        return 10.0 * std::log10(linear);
    }

    double dbm_to_watt(double dbm)
    {
        return 1.0e-3 * db_to_linear(dbm);
    }

    // ---------- OperatorSet ----------

    static void check_operator_index(int op)
    {
        if (op < 1 || op > OperatorSet::max_operators)
            throw std::invalid_argument("Operator index " + std::to_string(op) + " outside 1.." +
                                        std::to_string(OperatorSet::max_operators));
    }

    OperatorSet::OperatorSet(std::initializer_list<int> operators)
    {
        for (int op : operators)
            insert(op);
    }

    OperatorSet OperatorSet::parse(std::string_view text)
    {
        OperatorSet result;
        std::size_t pos = 0;
        while (pos <= text.size())
        {
            std::size_t end = text.find(';', pos);
            if (end == std::string_view::npos)
                end = text.size();
            auto token = text.substr(pos, end - pos);
            while (!token.empty() && token.front() == ' ')
                token.remove_prefix(1);
            while (!token.empty() && token.back() == ' ')
                token.remove_suffix(1);

            int op = 0;
            auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), op);
            if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
                throw std::invalid_argument("Malformed operator list '" + std::string(text) + "'");
            result.insert(op);
            pos = end + 1;
        }
        return result;
    }

    bool OperatorSet::contains(int op) const
    {
        if (op < 1 || op > max_operators)
            return false;
        return (bits_ >> (op - 1)) & 1u;
    }

    int OperatorSet::size() const
    {
        return std::popcount(bits_);
    }

    void OperatorSet::insert(int op)
    {
        check_operator_index(op);
        bits_ = static_cast<std::uint16_t>(bits_ | (1u << (op - 1)));
    }

    std::vector<int> OperatorSet::members() const
    {
        std::vector<int> out;
        for (int op = 1; op <= max_operators; ++op)
            if (contains(op))
                out.push_back(op);
        return out;
    }

    std::string OperatorSet::to_string() const
    {
        std::string out;
        for (int op : members())
        {
            if (!out.empty())
                out += ';';
            out += std::to_string(op);
        }
        return out;
    }

    // ---------- Geometry primitives ----------

    double distance(const Point &a, const Point &b)
    {
        return std::hypot(a.x - b.x, a.y - b.y);
    }

    Window Window::centered(double half_width, Point center)
    {
        if (!(half_width > 0.0))
            throw std::invalid_argument("Window half-width must be positive.");
        return {center.x - half_width, center.x + half_width, center.y - half_width, center.y + half_width};
    }

    bool Window::contains(const Point &p) const
    {
        return p.x >= x_min && p.x <= x_max && p.y >= y_min && p.y <= y_max;
    }

    void Window::validate() const
    {
        if (!(x_max > x_min) || !(y_max > y_min) || !std::isfinite(area()))
            throw std::invalid_argument("Window must have positive, finite area.");
    }

    const char *to_string(LinkType link)
    {
        return link == LinkType::los ? "LOS" : "NLOS";
    }

    // ---------- BlockModel ----------

    void BlockModel::validate() const
    {
        window.validate();
        validate_densities();
    }

    void BlockModel::validate_densities() const
    {
        for (const auto &[subset, density] : densities)
        {
            if (subset.empty())
                throw std::invalid_argument("Block model contains a block with an empty operator set.");
            if (!(density >= 0.0) || !std::isfinite(density))
                throw std::invalid_argument("Block density for {" + subset.to_string() + "} must be finite and >= 0.");
        }
    }

    double BlockModel::block_density(OperatorSet subset) const
    {
        auto it = densities.find(subset);
        return it == densities.end() ? 0.0 : it->second;
    }

    double BlockModel::operator_density(int op) const
    {
        double sum = 0.0;
        for (const auto &[subset, density] : densities)
            if (subset.contains(op))
                sum += density;
        return sum;
    }

    double BlockModel::total_density() const
    {
        double sum = 0.0;
        for (const auto &[subset, density] : densities)
            sum += density;
        return sum;
    }

    int BlockModel::operator_count() const
    {
        int highest = 0;
        for (const auto &[subset, density] : densities)
            highest = std::max(highest, int(std::bit_width(subset.bits())));
        return highest;
    }

    // ---------- Fading / params ----------

    FadingSpec FadingSpec::nakagami_lognormal(double m_los, double m_nlos, double sigma_db_los, double sigma_db_nlos)
    {
        FadingSpec spec{FadingKind::nakagami_lognormal, m_los, m_nlos, sigma_db_los, sigma_db_nlos};
        spec.validate();
        return spec;
    }

    void FadingSpec::validate() const
    {
        if (kind == FadingKind::rayleigh)
            return;
        if (!(nakagami_m_los >= 0.5) || !(nakagami_m_nlos >= 0.5))
            throw std::invalid_argument("Nakagami m must be >= 0.5.");
        if (!(shadow_sigma_db_los >= 0.0) || !(shadow_sigma_db_nlos >= 0.0))
            throw std::invalid_argument("Shadowing sigma must be >= 0 dB.");
    }

    double SystemParams::noise_power() const
    {
        return noise_psd_w_per_hz * bandwidth_hz * db_to_linear(noise_figure_db) / tx_power_w;
    }

    double SystemParams::main_lobe_probability() const
    {
        return half_beamwidth_rad / pi;
    }

    void SystemParams::validate() const
    {
        auto positive = [](double v, const char *name)
        {
            if (!(v > 0.0) || !std::isfinite(v))
                throw std::invalid_argument(std::string(name) + " must be positive and finite.");
        };
        positive(bandwidth_hz, "Bandwidth");
        positive(tx_power_w, "Transmit power");
        positive(noise_psd_w_per_hz, "Noise PSD");
        positive(beta_per_m, "Blockage constant beta");
        positive(c_los, "LOS path gain c_L");
        positive(c_nlos, "NLOS path gain c_N");
        positive(alpha_los, "LOS path-loss exponent");
        positive(alpha_nlos, "NLOS path-loss exponent");
        positive(gain_side, "Side-lobe gain");
        if (!std::isfinite(noise_figure_db))
            throw std::invalid_argument("Noise figure must be finite.");
        if (!(user_density_per_m2 >= 0.0))
            throw std::invalid_argument("User density must be >= 0.");
        if (alpha_los > alpha_nlos)
            throw std::invalid_argument("Require alpha_los <= alpha_nlos.");
        if (c_los < c_nlos)
            throw std::invalid_argument("Require c_los >= c_nlos.");
        if (gain_main < gain_side)
            throw std::invalid_argument("Require main-lobe gain >= side-lobe gain.");
        if (!(half_beamwidth_rad > 0.0) || half_beamwidth_rad > pi)
            throw std::invalid_argument("Half beamwidth must lie in (0, pi].");
        if (!(noise_power() > 0.0))
            throw std::invalid_argument("Normalized noise power must be positive.");
        fading.validate();
    }

    SystemParams paper_sec5_params()
    {
        SystemParams p;
        p.carrier_freq_hz = 28.0e9;
        p.bandwidth_hz = 200.0e6;
        p.tx_power_w = dbm_to_watt(26.0);
        p.noise_psd_w_per_hz = dbm_to_watt(-174.0);
        p.noise_figure_db = 10.0;
        p.beta_per_m = 0.007;
        p.c_los = db_to_linear(-60.0);
        p.c_nlos = db_to_linear(-70.0);
        p.alpha_los = 2.0;
        p.alpha_nlos = 4.0;
        p.gain_main = db_to_linear(18.0);
        p.gain_side = db_to_linear(-2.0);
        p.half_beamwidth_rad = 10.0 * pi / 180.0;
        p.user_density_per_m2 = 200.0 * per_km2;
        p.fading = FadingSpec::rayleigh();
        return p;
    }

    FadingSpec paper_sec5_nakagami()
    {
        return FadingSpec::nakagami_lognormal(2.0, 3.0, 5.2, 7.6);
    }

    // ---------- TwoOpSpec ----------

    TwoOpSpec TwoOpSpec::from_retention(double lambda_total, double retain_a, double retain_b)
    {
        if (!(lambda_total > 0.0) || !std::isfinite(lambda_total))
            throw std::invalid_argument("Mother density must be positive.");
        if (!(retain_b >= 0.0) || !(retain_b <= retain_a) || !(retain_a <= 1.0))
            throw std::invalid_argument("Retention parameters must satisfy 0 <= b <= a <= 1.");
        return TwoOpSpec(lambda_total, retain_a, retain_b);
    }

    TwoOpSpec TwoOpSpec::from_densities(double lambda1, double lambda2, double rho)
    {
        if (!(lambda1 >= 0.0) || !(lambda2 >= 0.0) || !(lambda1 + lambda2 > 0.0))
            throw std::invalid_argument("Operator densities must be >= 0 and not both zero.");
        if (!(rho >= 0.0) || !(rho <= 1.0))
            throw std::invalid_argument("Overlap coefficient must lie in [0, 1].");
        // lambda1 + lambda2 - rho * lambda = lambda
        double lambda = (lambda1 + lambda2) / (1.0 + rho);
        double a = lambda1 / lambda;
        double b = 1.0 - lambda2 / lambda;
        constexpr double slack = 1e-12;
        if (a > 1.0 + slack || b < -slack)
            throw std::invalid_argument("Overlap too large for the given densities (requires rho * lambda_i <= lambda_j).");
        return TwoOpSpec(lambda, std::min(a, 1.0), std::max(b, 0.0));
    }

    double TwoOpSpec::exclusive_density(int op) const
    {
        check_operator_index(op);
        if (op == 1)
            return b_ * lambda_;
        if (op == 2)
            return (1.0 - a_) * lambda_;
        return 0.0;
    }

    double TwoOpSpec::operator_density(int op) const
    {
        check_operator_index(op);
        if (op == 1)
            return lambda1();
        if (op == 2)
            return lambda2();
        return 0.0;
    }

    TwoOpSpec TwoOpSpec::mirrored() const
    {
        return TwoOpSpec(lambda_, 1.0 - b_, 1.0 - a_);
    }

    BlockModel TwoOpSpec::to_block_model(const Window &window) const
    {
        BlockModel model;
        model.window = window;
        model.densities[OperatorSet{1}] = exclusive_density(1);
        model.densities[OperatorSet{2}] = exclusive_density(2);
        model.densities[OperatorSet{1, 2}] = lambda12();
        return model;
    }

    static void check_scenario_inputs(double lambda0, double rho)
    {
        if (!(lambda0 > 0.0) || !std::isfinite(lambda0))
            throw std::domain_error("Reference density lambda0 must be positive.");
        if (!(rho >= 0.0) || !(rho <= 1.0))
            throw std::domain_error("Overlap coefficient rho must lie in [0, 1].");
    }

    TwoOpSpec fid_scenario(double lambda0, double rho)
    {
        check_scenario_inputs(lambda0, rho);
        return TwoOpSpec::from_densities(lambda0, lambda0, rho);
    }

    TwoOpSpec fcd_scenario(double lambda0, double rho)
    {
        check_scenario_inputs(lambda0, rho);
        return TwoOpSpec::from_densities((1.0 + rho) * lambda0, (1.0 + rho) * lambda0, rho);
    }

    double load_factor(const SystemParams &params, double lambda_op)
    {
        if (!(lambda_op > 0.0))
            throw std::domain_error("Operator density must be positive for the load model.");
        return 1.0 + 1.28 * (params.user_density_per_m2 / lambda_op);
    }

    double operator_density(const Scenario &scenario, int op)
    {
        return std::visit([op](const auto &s)
                          { return s.operator_density(op); },
                          scenario);
    }

    BlockModel to_block_model(const Scenario &scenario, const Window &window)
    {
        if (const auto *model = std::get_if<BlockModel>(&scenario))
        {
            BlockModel copy = *model;
            copy.window = window;
            return copy;
        }
        return std::get<TwoOpSpec>(scenario).to_block_model(window);
    }
}
