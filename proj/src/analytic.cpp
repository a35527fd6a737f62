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

#include "mmshare/analytic.hpp"
#include "mmshare/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace mmshare
{
    // ---------- Blockage measures ----------

    double lower_gamma2(double x)
    {
        if (!(x >= 0.0))
            throw std::invalid_argument("lower_gamma2: argument must be non-negative.");
        if (x < 0.5)
        {
            // sum_{n>=2} (-1)^n (n - 1) x^n / n!
            double term = x * x / 2.0; // x^n / n!
            double sum = 0.0;
            for (int n = 2; n < 40; ++n)
            {
                const double add = (n % 2 == 0 ? 1.0 : -1.0) * double(n - 1) * term;
                sum += add;
                if (std::abs(add) < 1e-18 * std::abs(sum))
                    break;
                term *= x / double(n + 1);
            }
            return sum;
        }
        return -std::expm1(-x) - x * std::exp(-x);
    }

    // x^2 / 2 - gamma(2, x), the NLOS share of the disc measure in units of 2 pi lambda / beta^2.
    static double nlos_shape(double x)
    {
        if (x < 1.0)
        {
            // sum_{n>=3} (-1)^{n+1} (n - 1) x^n / n!
            double term = x * x * x / 6.0;
            double sum = 0.0;
            for (int n = 3; n < 40; ++n)
            {
                const double add = (n % 2 == 1 ? 1.0 : -1.0) * double(n - 1) * term;
                sum += add;
                if (std::abs(add) < 1e-18 * std::abs(sum))
                    break;
                term *= x / double(n + 1);
            }
            return sum;
        }
        return 0.5 * x * x - lower_gamma2(x);
    }

    static void check_measure_args(double lambda, double beta, double r)
    {
        if (!(r >= 0.0))
            throw std::invalid_argument("Blockage measure: radius must be non-negative.");
        if (!(lambda >= 0.0) || !(beta > 0.0))
            throw std::invalid_argument("Blockage measure: need lambda >= 0 and beta > 0.");
    }

    double los_measure(double lambda, double beta, double r)
    {
        check_measure_args(lambda, beta, r);
        if (std::isinf(r))
            return 2.0 * pi * lambda / (beta * beta);
        return 2.0 * pi * lambda / (beta * beta) * lower_gamma2(beta * r);
    }

    double nlos_measure(double lambda, double beta, double r)
    {
        check_measure_args(lambda, beta, r);
        return 2.0 * pi * lambda / (beta * beta) * nlos_shape(beta * r);
    }

    double link_probability(LinkType link, double r, const SystemParams &params)
    {
        const double p = std::exp(-params.beta_per_m * r);
        return link == LinkType::los ? p : -std::expm1(-params.beta_per_m * r);
    }

    static double measure(LinkType link, double lambda, double beta, double r)
    {
        return link == LinkType::los ? los_measure(lambda, beta, r) : nlos_measure(lambda, beta, r);
    }

    static LinkType other(LinkType link)
    {
        return link == LinkType::los ? LinkType::nlos : LinkType::los;
    }

    // ---------- Association ----------

    double exclusion_radius(LinkType serving, double r, const SystemParams &params)
    {
        if (!(r > 0.0))
            throw std::invalid_argument("exclusion_radius: distance must be positive.");
        if (serving == LinkType::los)
            return std::pow(params.c_nlos / params.c_los, 1.0 / params.alpha_nlos) *
                   std::pow(r, params.alpha_los / params.alpha_nlos);
        return std::pow(params.c_los / params.c_nlos, 1.0 / params.alpha_los) *
               std::pow(r, params.alpha_nlos / params.alpha_los);
    }

    // Density of the distance to the strongest home site jointly with its link type, for a home
    // network of density lambda_home.
    static double home_assoc_pdf(LinkType link, double r, double lambda_home, const SystemParams &params)
    {
        if (lambda_home <= 0.0)
            return 0.0;
        const double beta = params.beta_per_m;
        const double excl = exclusion_radius(link, r, params);
        const double void_exponent = measure(link, lambda_home, beta, r) + measure(other(link), lambda_home, beta, excl);
        return 2.0 * pi * lambda_home * r * link_probability(link, r, params) * std::exp(-void_exponent);
    }

    double assoc_pdf(const SubBlockId &sub, double r, const BlockModel &model, const SystemParams &params,
                     int home_operator)
    {
        if (!(r > 0.0))
            throw std::invalid_argument("assoc_pdf: distance must be positive.");
        if (!sub.subset.contains(home_operator))
            throw std::invalid_argument("assoc_pdf: the sub-block must contain the home operator.");
        const double lambda_s = model.block_density(sub.subset);
        if (lambda_s <= 0.0)
            return 0.0;

        // void probability of the whole home network: product over the blocks T containing home
        const double beta = params.beta_per_m;
        const double excl = exclusion_radius(sub.link, r, params);
        double void_exponent = 0.0;
        for (const auto &[subset, density] : model.densities)
            if (subset.contains(home_operator) && density > 0.0)
                void_exponent += measure(sub.link, density, beta, r) + measure(other(sub.link), density, beta, excl);
        return 2.0 * pi * lambda_s * r * link_probability(sub.link, r, params) * std::exp(-void_exponent);
    }

    double r_max(double home_density, const SystemParams &params, double tail_mass)
    {
        if (!(home_density > 0.0))
            throw std::invalid_argument("r_max: home density must be positive.");
        const double beta = params.beta_per_m;
        auto bound = [&](double R)
        {
            const double los_tail = 2.0 * pi * home_density / (beta * beta) * (1.0 + beta * R) * std::exp(-beta * R);
            const double nlos_void = std::exp(-nlos_measure(home_density, beta, R));
            return los_tail + nlos_void;
        };
        double lo = 1.0;
        double hi = 1e7;
        if (bound(hi) > tail_mass)
            throw numerical_error("r_max: association tail does not decay below the requested mass.");
        if (bound(lo) <= tail_mass)
            return lo;
        for (int i = 0; i < 200 && hi - lo > 1e-6 * hi; ++i)
        {
            const double mid = 0.5 * (lo + hi);
            (bound(mid) > tail_mass ? lo : hi) = mid;
        }
        return hi;
    }

    // ---------- Laplace transforms ----------

    static double path_gain(double c, double alpha, double t)
    {
        if (alpha == 2.0)
            return c / (t * t);
        if (alpha == 4.0)
        {
            const double t2 = t * t;
            return c / (t2 * t2);
        }
        return c * std::pow(t, -alpha);
    }

    // (u, 1 - u) for link type `link` at distance t
    struct UPair
    {
        double u;
        double w;
    };

    struct UEvaluator
    {
        double sc_main; // s * c_tau * G
        double sc_side; // s * c_tau * g
        double alpha;
        double p_main;

        UEvaluator(LinkType link, double s, const SystemParams &params)
        {
            const double c = link == LinkType::los ? params.c_los : params.c_nlos;
            sc_main = s * c * params.gain_main;
            sc_side = s * c * params.gain_side;
            alpha = link == LinkType::los ? params.alpha_los : params.alpha_nlos;
            p_main = params.main_lobe_probability();
        }

        UPair operator()(double t) const
        {
            const double x_main = path_gain(sc_main, alpha, t);
            const double x_side = path_gain(sc_side, alpha, t);
            if (!std::isfinite(x_main) || !std::isfinite(x_side))
                return {0.0, 1.0};
            const double u = p_main / (1.0 + x_main) + (1.0 - p_main) / (1.0 + x_side);
            const double w = p_main * x_main / (1.0 + x_main) + (1.0 - p_main) * x_side / (1.0 + x_side);
            return {u, w};
        }

        // distance where the main-lobe / side-lobe terms reach x = 1
        double knee_main() const { return sc_main > 0.0 ? std::pow(sc_main, 1.0 / alpha) : 0.0; }
        double knee_side() const { return sc_side > 0.0 ? std::pow(sc_side, 1.0 / alpha) : 0.0; }
    };

    double u_tau(LinkType link, double s, double t, const SystemParams &params)
    {
        if (!(s >= 0.0) || !(t > 0.0))
            throw std::invalid_argument("u_tau: need s >= 0 and t > 0.");
        return UEvaluator(link, s, params)(t).u;
    }

    double one_minus_u_tau(LinkType link, double s, double t, const SystemParams &params)
    {
        if (!(s >= 0.0) || !(t > 0.0))
            throw std::invalid_argument("one_minus_u_tau: need s >= 0 and t > 0.");
        return UEvaluator(link, s, params)(t).w;
    }

    // 1 - u^k = (1 - u)(1 + u + ... + u^{k-1})
    static double one_minus_power(UPair uw, int k)
    {
        double geometric = 0.0;
        double power = 1.0;
        for (int j = 0; j < k; ++j)
        {
            geometric += power;
            power *= uw.u;
        }
        return uw.w * geometric;
    }

    // int_lo^hi weight(u, w) p_kappa(t) t dt over a finite range, with breakpoints at the
    // blockage length scale and the interference knees.
    template <class Weight>
    static double interference_near(LinkType kappa, const UEvaluator &ue, double hi, const SystemParams &params,
                                    Weight &&weight, const QuadOptions &opts)
    {
        if (!(hi > 0.0))
            return 0.0;
        std::vector<double> points{0.0};
        std::vector<double> marks;
        const double scale = 1.0 / params.beta_per_m;
        for (double m = scale; m < hi; m *= 2.0)
            marks.push_back(m);
        for (double knee : {ue.knee_main(), ue.knee_side()})
            if (knee > 0.0 && knee < hi)
                marks.push_back(knee);
        std::sort(marks.begin(), marks.end());
        points.insert(points.end(), marks.begin(), marks.end());
        points.push_back(hi);

        auto f = [&](double t)
        { return weight(ue(t)) * link_probability(kappa, t, params) * t; };
        return integrate(f, points, opts).value;
    }

    template <class Weight>
    static double interference_far(LinkType kappa, const UEvaluator &ue, double lo, const SystemParams &params,
                                   Weight &&weight, const QuadOptions &opts)
    {
        double scale;
        if (kappa == LinkType::los)
            scale = 1.0 / params.beta_per_m;
        else
            scale = std::max({lo, ue.knee_main(), 1.0});
        auto f = [&](double t)
        { return weight(ue(t)) * link_probability(kappa, t, params) * t; };
        return integrate_to_infinity(f, lo, scale, opts).value;
    }

    static double serving_s_check(double s)
    {
        if (!(s >= 0.0))
            throw std::invalid_argument("Laplace transform: s must be non-negative.");
        return s;
    }

    double laplace_general(const SubBlockId &serving, double r, double s, const BlockModel &model,
                           const SystemParams &params, int home_operator, const QuadOptions &opts)
    {
        serving_s_check(s);
        if (!(r > 0.0))
            throw std::invalid_argument("laplace_general: serving distance must be positive.");
        if (!serving.subset.contains(home_operator))
            throw std::invalid_argument("laplace_general: serving block must contain the home operator.");
        if (s == 0.0)
            return 1.0;

        const LinkType tau = serving.link;
        const double excl = exclusion_radius(tau, r, params);
        double exponent = 0.0;
        for (const auto &[subset, density] : model.densities)
        {
            if (density <= 0.0)
                continue;
            const int k = subset.size();
            const bool home = subset.contains(home_operator);
            auto weight = [k](UPair uw)
            { return one_minus_power(uw, k); };
            for (LinkType kappa : {LinkType::los, LinkType::nlos})
            {
                const UEvaluator ue(kappa, s, params);
                const double lo = !home ? 0.0 : (kappa == tau ? r : excl);
                exponent += 2.0 * pi * density * interference_far(kappa, ue, lo, params, weight, opts);
            }
        }
        const double u_serving = u_tau(tau, s, r, params);
        return std::exp(-exponent) * std::pow(u_serving, serving.subset.size() - 1);
    }

    TwoOpLaplaceFactors laplace_two_op_factors(const ServingLink &serving, double s, const TwoOpSpec &spec,
                                               const SystemParams &params, const QuadOptions &opts)
    {
        serving_s_check(s);
        if (!(serving.r > 0.0))
            throw std::invalid_argument("laplace_two_op: serving distance must be positive.");
        TwoOpLaplaceFactors out;
        if (s == 0.0)
            return out;

        const double lambda = spec.lambda_total();
        const double a = spec.retain_a();
        const double rho = spec.rho();
        const LinkType tau = serving.link;
        const double excl = exclusion_radius(tau, serving.r, params);

        auto near_weight = [a](UPair uw)
        { return (1.0 - a) * uw.w; };
        auto far_weight = [rho](UPair uw)
        { return uw.w * (1.0 + rho * uw.u); };

        for (LinkType kappa : {LinkType::los, LinkType::nlos})
        {
            const UEvaluator ue(kappa, s, params);
            const double lo = kappa == tau ? serving.r : excl;
            const double near = a < 1.0 ? interference_near(kappa, ue, lo, params, near_weight, opts) : 0.0;
            const double far = interference_far(kappa, ue, lo, params, far_weight, opts);
            const double near_factor = std::exp(-2.0 * pi * lambda * near);
            const double far_factor = std::exp(-2.0 * pi * lambda * far);
            if (kappa == LinkType::los)
            {
                out.near_los = near_factor;
                out.far_los = far_factor;
            }
            else
            {
                out.near_nlos = near_factor;
                out.far_nlos = far_factor;
            }
        }
        if (serving.co_located)
            out.co_location = u_tau(tau, s, serving.r, params);
        return out;
    }

    double laplace_two_op(const ServingLink &serving, double s, const TwoOpSpec &spec, const SystemParams &params,
                          const QuadOptions &opts)
    {
        return laplace_two_op_factors(serving, s, spec, params, opts).product();
    }

    // ---------- Coverage ----------

    void require_rayleigh(const SystemParams &params)
    {
        if (params.fading.kind != FadingKind::rayleigh)
            throw unsupported_fading("The analytic engine supports Rayleigh fading only; use Monte Carlo simulation "
                                     "for Nakagami / log-normal fading.");
    }

    namespace
    {
        // Interference seen by a user of the home operator, reduced to three functions of u:
        //   near(u): blocks without the home operator, integrated inside the exclusion radius,
        //   far(u):  all blocks, integrated outside it,
        //   coloc(u): E[u^{|T|-1}] over the serving block T.
        struct Profile
        {
            bool two_op = false;
            double lambda_home = 0.0;

            // two-operator form (home operator 1)
            double lambda = 0.0;
            double a = 1.0;
            double b = 1.0;
            double rho = 0.0;

            // general form, indexed by block size k
            std::array<double, OperatorSet::max_operators + 1> other{};
            std::array<double, OperatorSet::max_operators + 1> all{};
            std::array<double, OperatorSet::max_operators + 1> home{};
            int k_max = 0;

            double near(UPair uw) const
            {
                if (two_op)
                    return lambda * (1.0 - a) * uw.w;
                double sum = 0.0;
                double geometric = 0.0;
                double power = 1.0;
                for (int k = 1; k <= k_max; ++k)
                {
                    geometric += power;
                    power *= uw.u;
                    sum += other[k] * geometric;
                }
                return sum * uw.w;
            }

            double far(UPair uw) const
            {
                if (two_op)
                    return lambda * uw.w * (1.0 + rho * uw.u);
                double sum = 0.0;
                double geometric = 0.0;
                double power = 1.0;
                for (int k = 1; k <= k_max; ++k)
                {
                    geometric += power;
                    power *= uw.u;
                    sum += all[k] * geometric;
                }
                return sum * uw.w;
            }

            bool has_near() const
            {
                if (two_op)
                    return a < 1.0;
                for (int k = 1; k <= k_max; ++k)
                    if (other[k] > 0.0)
                        return true;
                return false;
            }

            double coloc(double u) const
            {
                if (two_op)
                    return (b + rho * u) / a;
                double sum = 0.0;
                double power = 1.0;
                for (int k = 1; k <= k_max; ++k)
                {
                    sum += home[k] * power;
                    power *= u;
                }
                return sum / lambda_home;
            }
        };

        Profile make_profile(const Scenario &scenario, int home_operator)
        {
            Profile p;
            if (const auto *spec_ptr = std::get_if<TwoOpSpec>(&scenario))
            {
                if (home_operator != 1 && home_operator != 2)
                    throw config_error("Two-operator scenarios have operators 1 and 2 only.");
                const TwoOpSpec spec = home_operator == 1 ? *spec_ptr : spec_ptr->mirrored();
                p.two_op = true;
                p.lambda = spec.lambda_total();
                p.a = spec.retain_a();
                p.b = spec.retain_b();
                p.rho = spec.rho();
                p.lambda_home = spec.lambda1();
            }
            else
            {
                const auto &model = std::get<BlockModel>(scenario);
                model.validate_densities();
                for (const auto &[subset, density] : model.densities)
                {
                    if (density <= 0.0)
                        continue;
                    const int k = subset.size();
                    p.k_max = std::max(p.k_max, k);
                    p.all[k] += density;
                    if (subset.contains(home_operator))
                    {
                        p.home[k] += density;
                        p.lambda_home += density;
                    }
                    else
                        p.other[k] += density;
                }
            }
            if (!(p.lambda_home > 0.0))
                throw config_error("Operator " + std::to_string(home_operator) + " has zero density.");
            return p;
        }

        double coverage_with_profile(const Profile &profile, const SystemParams &params, double threshold,
                                     const AnalyticOptions &opts)
        {
            if (!(threshold > 0.0))
                return 1.0;
            const double sigma2 = params.noise_power();
            const double r_hi = r_max(profile.lambda_home, params, opts.tail_mass);

            auto integrand = [&](double r) -> double
            {
                if (r <= 0.0)
                    return 0.0;
                double total = 0.0;
                for (LinkType tau : {LinkType::los, LinkType::nlos})
                {
                    const double f = home_assoc_pdf(tau, r, profile.lambda_home, params);
                    const double c = tau == LinkType::los ? params.c_los : params.c_nlos;
                    const double alpha = tau == LinkType::los ? params.alpha_los : params.alpha_nlos;
                    const double s = threshold / (path_gain(c, alpha, r) * params.gain_main);
                    const double weight = f * std::exp(-sigma2 * s);
                    if (!(weight > 1e-20))
                        continue;
                    if (!opts.include_interference)
                    {
                        total += weight;
                        continue;
                    }

                    const double excl = exclusion_radius(tau, r, params);
                    double exponent = 0.0;
                    for (LinkType kappa : {LinkType::los, LinkType::nlos})
                    {
                        const UEvaluator ue(kappa, s, params);
                        const double lo = kappa == tau ? r : excl;
                        if (profile.has_near())
                            exponent += interference_near(
                                kappa, ue, lo, params, [&](UPair uw)
                                { return profile.near(uw); },
                                opts.inner);
                        exponent += interference_far(
                            kappa, ue, lo, params, [&](UPair uw)
                            { return profile.far(uw); },
                            opts.inner);
                    }
                    const double u_serving = UEvaluator(tau, s, params)(r).u;
                    total += weight * std::exp(-2.0 * pi * exponent) * profile.coloc(u_serving);
                }
                return total;
            };

            std::vector<double> points{0.0};
            for (double m = 25.0; m < r_hi; m *= 2.0)
                points.push_back(m);
            points.push_back(r_hi);
            const QuadResult result = integrate(integrand, points, opts.outer);
            if (!std::isfinite(result.value))
                throw numerical_error("Coverage integral is not finite.");
            return std::clamp(result.value, 0.0, 1.0);
        }

        double home_density(const Scenario &scenario, int home_operator)
        {
            if (const auto *spec = std::get_if<TwoOpSpec>(&scenario))
            {
                if (home_operator != 1 && home_operator != 2)
                    throw config_error("Two-operator scenarios have operators 1 and 2 only.");
                return spec->operator_density(home_operator);
            }
            return std::get<BlockModel>(scenario).operator_density(home_operator);
        }
    }

    double coverage_probability(const Scenario &scenario, const SystemParams &params, double threshold,
                                const AnalyticOptions &opts)
    {
        require_rayleigh(params);
        params.validate();
        return coverage_with_profile(make_profile(scenario, opts.home_operator), params, threshold, opts);
    }

    static CoverageCurve coverage_curve(const Scenario &scenario, const SystemParams &params,
                                        const std::vector<double> &linear_thresholds, const AnalyticOptions &opts)
    {
        require_rayleigh(params);
        params.validate();
        const Profile profile = make_profile(scenario, opts.home_operator);
        CoverageCurve curve;
        curve.kind = CurveKind::analytic;
        curve.probabilities.resize(linear_thresholds.size());
        for (std::size_t i = 0; i < linear_thresholds.size(); ++i)
            curve.probabilities[i] = coverage_with_profile(profile, params, linear_thresholds[i], opts);
        return curve;
    }

    CoverageCurve sinr_coverage(const Scenario &scenario, const SystemParams &params,
                                const std::vector<double> &thresholds_db, const AnalyticOptions &opts)
    {
        std::vector<double> linear(thresholds_db.size());
        std::transform(thresholds_db.begin(), thresholds_db.end(), linear.begin(), db_to_linear);
        CoverageCurve curve = coverage_curve(scenario, params, linear, opts);
        curve.unit = ThresholdUnit::sinr_db;
        curve.thresholds = thresholds_db;
        curve.validate();
        return curve;
    }

    double rate_to_sinr_threshold(double rate_bps, const SystemParams &params, double home_density)
    {
        if (!(rate_bps >= 0.0))
            throw std::invalid_argument("Rate must be non-negative.");
        const double n_u = load_factor(params, home_density);
        return std::expm1(std::log(2.0) * rate_bps * n_u / params.bandwidth_hz);
    }

    CoverageCurve rate_coverage(const Scenario &scenario, const SystemParams &params,
                                const std::vector<double> &rates_bps, const AnalyticOptions &opts)
    {
        const double lambda_home = home_density(scenario, opts.home_operator);
        std::vector<double> linear(rates_bps.size());
        for (std::size_t i = 0; i < rates_bps.size(); ++i)
            linear[i] = rate_to_sinr_threshold(rates_bps[i], params, lambda_home);
        CoverageCurve curve = coverage_curve(scenario, params, linear, opts);
        curve.unit = ThresholdUnit::rate_bps;
        curve.thresholds = rates_bps;
        curve.validate();
        return curve;
    }

    double median_rate(const Scenario &scenario, const SystemParams &params, const AnalyticOptions &opts,
                       double rel_tol, double max_sinr)
    {
        require_rayleigh(params);
        params.validate();
        const Profile profile = make_profile(scenario, opts.home_operator);
        const double lambda_home = home_density(scenario, opts.home_operator);
        const double n_u = load_factor(params, lambda_home);

        auto coverage_at = [&](double rate)
        { return coverage_with_profile(profile, params, rate_to_sinr_threshold(rate, params, lambda_home), opts); };

        double lo = 0.0;
        double hi = params.bandwidth_hz / n_u * std::log2(1.0 + max_sinr);
        if (coverage_at(hi) >= 0.5)
            throw numerical_error("median_rate: coverage stays above 0.5 over the whole rate bracket.");
        for (int i = 0; i < 200 && hi - lo > rel_tol * hi; ++i)
        {
            const double mid = 0.5 * (lo + hi);
            (coverage_at(mid) > 0.5 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }
}
