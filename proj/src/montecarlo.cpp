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

#include "mmshare/montecarlo.hpp"
#include "mmshare/analytic.hpp"
#include "mmshare/channel.hpp"
#include "mmshare/errors.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

namespace mmshare
{
    void SimPlan::validate() const
    {
        if (replications < 1)
            throw config_error("Simulation needs at least one replication.");
        if (!(half_width_m >= 0.0) || !std::isfinite(half_width_m))
            throw config_error("Simulation half-width must be non-negative.");
        if (home_operator < 1 || home_operator > OperatorSet::max_operators)
            throw config_error("Home operator must lie in 1..16.");
    }

    namespace
    {
        struct RepOutcome
        {
            double sinr = 0.0;
            std::size_t redraws = 0;
            bool los = false;
            bool co_located = false;
        };

        class Replicator
        {
        public:
            Replicator(const SimSource &source, const SystemParams &params, const SimPlan &plan, const Window &window)
                : source_(source), params_(params), plan_(plan), window_(window)
            {
                if (const auto *model = std::get_if<BlockModel>(&source))
                {
                    model_ = *model;
                    model_.window = window;
                }
                if (const auto *dep = std::get_if<Deployment>(&source))
                    labeled_.deployment = *dep;
            }

            RepOutcome run(std::size_t rep)
            {
                RepOutcome out;
                Point user{};
                if (std::holds_alternative<Deployment>(source_))
                {
                    const Window &w = labeled_.deployment.window;
                    Rng rng = make_stream(plan_.seed, StreamTag::user_position, {rep});
                    user.x = w.x_min + w.width() * (0.25 + 0.5 * uniform01(rng));
                    user.y = w.y_min + w.height() * (0.25 + 0.5 * uniform01(rng));
                }
                else
                {
                    user = window_.center();
                    for (std::size_t attempt = 0;; ++attempt)
                    {
                        if (attempt > plan_.max_redraws)
                            throw numerical_error("Operator " + std::to_string(plan_.home_operator) + " absent in " +
                                                  std::to_string(attempt) + " consecutive draws.");
                        sample(rep, attempt);
                        if (labeled_.deployment.count_operator(plan_.home_operator) > 0)
                            break;
                        ++out.redraws;
                    }
                }

                Rng blockage = make_stream(plan_.seed, StreamTag::blockage, {rep});
                label_blockage(labeled_.deployment, user, params_.beta_per_m, blockage, labeled_.links);
                Rng radio = make_stream(plan_.seed, StreamTag::radio, {rep});
                draws_.sample(labeled_, params_, radio);
                const SinrResult r =
                    evaluate_sinr(labeled_, user, plan_.home_operator, params_, draws_, plan_.include_interference);
                out.sinr = r.sinr;
                out.los = r.assoc.link == LinkType::los;
                out.co_located = r.assoc.co_located;
                return out;
            }

        private:
            void sample(std::size_t rep, std::size_t attempt)
            {
                if (const auto *spec = std::get_if<TwoOpSpec>(&source_))
                {
                    Rng rng = make_stream(plan_.seed, StreamTag::mother, {rep, attempt});
                    couple_two_operators(*spec, window_, rng, labeled_.deployment);
                }
                else
                {
                    const std::uint64_t key = derive_seed(plan_.seed, {std::uint64_t(StreamTag::replication), rep, attempt});
                    labeled_.deployment = sample_block_model(model_, key);
                }
            }

            const SimSource &source_;
            const SystemParams &params_;
            const SimPlan &plan_;
            Window window_;
            BlockModel model_;
            LabeledDeployment labeled_;
            RadioDraws draws_;
        };

        double source_home_density(const SimSource &source, int home)
        {
            if (const auto *spec = std::get_if<TwoOpSpec>(&source))
            {
                if (home != 1 && home != 2)
                    throw config_error("Two-operator scenarios have operators 1 and 2 only.");
                return spec->operator_density(home);
            }
            if (const auto *model = std::get_if<BlockModel>(&source))
                return model->operator_density(home);
            const auto &dep = std::get<Deployment>(source);
            dep.window.validate();
            return double(dep.count_operator(home)) / dep.window.area();
        }
    }

    SimSamples simulate_sinr(const SimSource &source, const SystemParams &params, const SimPlan &plan)
    {
        plan.validate();
        params.validate();
        if (const auto *model = std::get_if<BlockModel>(&source))
        {
            model->validate_densities();
        }

        SimSamples out;
        out.home_density = source_home_density(source, plan.home_operator);
        if (!(out.home_density > 0.0))
        {
            if (std::holds_alternative<Deployment>(source))
                throw data_error("Operator " + std::to_string(plan.home_operator) + " has no site in the deployment.");
            throw config_error("Operator " + std::to_string(plan.home_operator) + " has zero density.");
        }

        Window window;
        if (!std::holds_alternative<Deployment>(source))
        {
            out.half_width_m = plan.half_width_m > 0.0 ? plan.half_width_m : r_max(out.home_density, params);
            window = Window::centered(out.half_width_m);
        }

        const std::size_t n = plan.replications;
        std::vector<RepOutcome> outcomes(n);
        const unsigned threads = std::max(1u, std::min<unsigned>(plan.threads, unsigned(std::min<std::size_t>(n, 256))));

        auto worker = [&](unsigned index, std::exception_ptr &error)
        {
            try
            {
                Replicator replicator(source, params, plan, window);
                for (std::size_t rep = index; rep < n; rep += threads)
                    outcomes[rep] = replicator.run(rep);
            }
            catch (...)
            {
                error = std::current_exception();
            }
        };

        std::vector<std::exception_ptr> errors(threads);
        if (threads == 1)
            worker(0, errors[0]);
        else
        {
            std::vector<std::thread> pool;
            for (unsigned t = 0; t < threads; ++t)
                pool.emplace_back(worker, t, std::ref(errors[t]));
            for (auto &th : pool)
                th.join();
        }
        for (const auto &e : errors)
            if (e)
                std::rethrow_exception(e);

        out.sinr.resize(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            out.sinr[i] = outcomes[i].sinr;
            out.redraws += outcomes[i].redraws;
            out.los_serving += outcomes[i].los ? 1 : 0;
            out.co_located_serving += outcomes[i].co_located ? 1 : 0;
        }
        return out;
    }

    static CoverageCurve empirical_curve(const std::vector<double> &sinr, const std::vector<double> &linear_thresholds)
    {
        if (sinr.empty())
            throw std::invalid_argument("Empirical curve needs at least one sample.");
        std::vector<double> sorted = sinr;
        std::sort(sorted.begin(), sorted.end());
        CoverageCurve curve;
        curve.kind = CurveKind::empirical;
        for (double t : linear_thresholds)
        {
            const auto above = std::size_t(sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), t));
            curve.probabilities.push_back(double(above) / double(sorted.size()));
            curve.ci_halfwidth.push_back(wilson_halfwidth(above, sorted.size()));
        }
        return curve;
    }

    CoverageCurve empirical_sinr_curve(const SimSamples &samples, const std::vector<double> &thresholds_db)
    {
        std::vector<double> linear(thresholds_db.size());
        std::transform(thresholds_db.begin(), thresholds_db.end(), linear.begin(), db_to_linear);
        CoverageCurve curve = empirical_curve(samples.sinr, linear);
        curve.unit = ThresholdUnit::sinr_db;
        curve.thresholds = thresholds_db;
        curve.validate();
        return curve;
    }

    CoverageCurve empirical_rate_curve(const SimSamples &samples, const SystemParams &params,
                                       const std::vector<double> &rates_bps)
    {
        std::vector<double> linear(rates_bps.size());
        for (std::size_t i = 0; i < rates_bps.size(); ++i)
            linear[i] = rate_to_sinr_threshold(rates_bps[i], params, samples.home_density);
        CoverageCurve curve = empirical_curve(samples.sinr, linear);
        curve.unit = ThresholdUnit::rate_bps;
        curve.thresholds = rates_bps;
        curve.validate();
        return curve;
    }

    double empirical_median_rate(const SimSamples &samples, const SystemParams &params, double rel_tol)
    {
        if (samples.sinr.empty())
            throw std::invalid_argument("Empirical median needs at least one sample.");
        const double n_u = load_factor(params, samples.home_density);
        std::vector<double> rates(samples.sinr.size());
        for (std::size_t i = 0; i < rates.size(); ++i)
            rates[i] = params.bandwidth_hz / n_u * std::log2(1.0 + samples.sinr[i]);
        std::sort(rates.begin(), rates.end());

        auto ccdf = [&](double rate)
        { return double(rates.end() - std::upper_bound(rates.begin(), rates.end(), rate)) / double(rates.size()); };

        double lo = 0.0;
        double hi = rates.back();
        if (ccdf(lo) <= 0.5)
            throw numerical_error("Empirical median: at least half of the samples have zero rate.");
        for (int i = 0; i < 200 && hi - lo > rel_tol * hi; ++i)
        {
            const double mid = 0.5 * (lo + hi);
            (ccdf(mid) > 0.5 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }

    SimResult run_simulation(const SimPlan &plan, const SimSource &source, const SystemParams &params,
                             const std::vector<double> &thresholds_db)
    {
        SimResult out;
        out.samples = simulate_sinr(source, params, plan);
        out.curve = empirical_sinr_curve(out.samples, thresholds_db);
        return out;
    }

    SimResult empirical_rate_curve(const SimPlan &plan, const SimSource &source, const SystemParams &params,
                                   const std::vector<double> &rates_bps)
    {
        SimResult out;
        out.samples = simulate_sinr(source, params, plan);
        out.curve = empirical_rate_curve(out.samples, params, rates_bps);
        return out;
    }
}
