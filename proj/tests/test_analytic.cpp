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

#include <catch2/catch_amalgamated.hpp>

#include "mmshare/analytic.hpp"
#include "mmshare/channel.hpp"
#include "mmshare/errors.hpp"
#include "mmshare/geometry.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

#include <cmath>

using namespace mmshare;
using test_support::rel_close;

namespace
{
    BlockModel random_model(Rng &rng, int operators)
    {
        BlockModel m;
        for (std::uint16_t bits = 1; bits < (1u << operators); ++bits)
            if (bits == 1 || uniform01(rng) < 0.7)
                m.densities[OperatorSet(bits)] = test_support::uniform(rng, 2.0, 60.0) * per_km2;
        return m;
    }

    double assoc_total(const BlockModel &model, const SystemParams &p, int home)
    {
        const double top = r_max(model.operator_density(home), p, 1e-12);
        std::vector<double> points{0.0};
        for (double b = 10.0; b < top; b *= 2.0)
            points.push_back(b);
        points.push_back(top);
        double total = 0.0;
        for (const auto &[subset, density] : model.densities)
        {
            if (!subset.contains(home) || density <= 0.0)
                continue;
            for (LinkType link : {LinkType::los, LinkType::nlos})
            {
                const SubBlockId sub{subset, link};
                total += integrate([&](double r) { return assoc_pdf(sub, r, model, p, home); }, points,
                                   QuadOptions{1e-12, 1e-10, 4000})
                             .value;
            }
        }
        return total;
    }
}

TEST_CASE("los_measure - closed forms match a tanh-sinh oracle")
{
    auto rng = test_support::rng(61);
    for (int i = 0; i < 20; ++i)
    {
        const double lambda = test_support::log_uniform(rng, 1.0, 1000.0) * per_km2;
        const double beta = test_support::log_uniform(rng, 1e-4, 0.1);
        const double r = test_support::log_uniform(rng, 1e-2, 1e4);
        CHECK(rel_close(los_measure(lambda, beta, r), oracles::measure(true, lambda, beta, r), 1e-8));
        CHECK(rel_close(nlos_measure(lambda, beta, r), oracles::measure(false, lambda, beta, r), 1e-8));
        CHECK(rel_close(los_measure(lambda, beta, r) + nlos_measure(lambda, beta, r), pi * lambda * r * r, 1e-12));
    }
    CHECK(los_measure(1e-5, 0.007, 0.0) == 0.0);
    CHECK(nlos_measure(1e-5, 0.007, 0.0) == 0.0);
    const double lambda = 30 * per_km2;
    const double limit = los_measure(lambda, 0.007, std::numeric_limits<double>::infinity());
    CHECK(rel_close(limit, 2.0 * pi * lambda / (0.007 * 0.007), 1e-12));
    CHECK(std::abs(limit - 3.847) < 1e-3);
    CHECK(rel_close(limit, oracles::measure(true, lambda, 0.007, std::numeric_limits<double>::infinity()), 1e-8));
    for (double r : {50.0, 100.0, 500.0})
        CHECK(rel_close(los_measure(lambda, 0.007, r) + nlos_measure(lambda, 0.007, r), pi * lambda * r * r, 1e-12));
    CHECK_THROWS_AS(los_measure(lambda, 0.007, -1.0), std::invalid_argument);
}

TEST_CASE("lower_gamma2 - small arguments keep full relative precision")
{
    for (double x : {1e-12, 1e-8, 1e-4, 1e-2, 0.5, 3.0, 50.0})
    {
        // gamma(2, x) = int_0^x t e^{-t} dt
        boost::math::quadrature::tanh_sinh<double> ts;
        const double oracle = ts.integrate([](double t) { return t * std::exp(-t); }, 0.0, x, 1e-15);
        CHECK(rel_close(lower_gamma2(x), oracle, 1e-12));
    }
}

TEST_CASE("exclusion_radius - path loss equality")
{
    const SystemParams p = paper_sec5_params();
    CHECK(std::abs(exclusion_radius(LinkType::los, 100.0, p) - 5.6234) < 1e-4);
    CHECK(rel_close(exclusion_radius(LinkType::nlos, 5.623413251903491, p), 100.0, 1e-12));

    auto rng = test_support::rng(62);
    for (int i = 0; i < 100; ++i)
    {
        SystemParams q = p;
        q.c_los = test_support::log_uniform(rng, 1e-8, 1e-4);
        q.c_nlos = q.c_los * test_support::log_uniform(rng, 1e-3, 1.0);
        q.alpha_los = test_support::uniform(rng, 1.8, 3.0);
        q.alpha_nlos = test_support::uniform(rng, q.alpha_los, 4.5);
        const double r = test_support::log_uniform(rng, 1.0, 5000.0);
        const double dn = exclusion_radius(LinkType::los, r, q);
        CHECK(rel_close(path_loss(LinkType::nlos, dn, q), path_loss(LinkType::los, r, q), 1e-12));
        const double dl = exclusion_radius(LinkType::nlos, r, q);
        CHECK(rel_close(path_loss(LinkType::los, dl, q), path_loss(LinkType::nlos, r, q), 1e-12));
    }

    SystemParams sym = p;
    sym.c_nlos = sym.c_los;
    sym.alpha_nlos = sym.alpha_los;
    CHECK(rel_close(exclusion_radius(LinkType::los, 123.0, sym), 123.0, 1e-12));
    CHECK(rel_close(exclusion_radius(LinkType::nlos, 123.0, sym), 123.0, 1e-12));
    CHECK_THROWS_AS(exclusion_radius(LinkType::los, 0.0, p), std::invalid_argument);
}

TEST_CASE("u_tau - closed form, limits and Monte Carlo")
{
    const SystemParams p = paper_sec5_params();
    CHECK(u_tau(LinkType::los, 0.0, 100.0, p) == 1.0);
    auto rng = test_support::rng(63);
    for (int i = 0; i < 50; ++i)
    {
        const LinkType link = i % 2 ? LinkType::los : LinkType::nlos;
        const double s = test_support::log_uniform(rng, 1e3, 1e16);
        const double t = test_support::log_uniform(rng, 1.0, 5000.0);
        const double u = u_tau(link, s, t, p);
        CHECK(rel_close(u, oracles::u_value(link == LinkType::los, s, t, p), 1e-13));
        CHECK(u > 0.0);
        CHECK(u <= 1.0);
        CHECK(std::abs(u + one_minus_u_tau(link, s, t, p) - 1.0) < 1e-15);
    }
    // Cancellation-free complement at tiny arguments.
    const double w = one_minus_u_tau(LinkType::nlos, 1.0, 1e4, p);
    const double x = 1.0 * p.c_nlos * 1e-16;
    const double q = 1.0 / 18.0;
    CHECK(rel_close(w, q * x * p.gain_main / (1 + x * p.gain_main) + (1 - q) * x * p.gain_side / (1 + x * p.gain_side), 1e-12));

    SystemParams omni = p;
    omni.half_beamwidth_rad = pi;
    CHECK(rel_close(u_tau(LinkType::los, 1e9, 100.0, omni), 1.0 / (1.0 + 1e9 * 1e-10 * p.gain_main), 1e-14));

    // E[exp(-s c G H t^-alpha)] with H ~ Exp(1), G from the sectored pmf
    const double s = 1e9, t = 100.0;
    Rng mc = test_support::rng(64);
    std::exponential_distribution<double> h(1.0);
    const int n = 1000000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i)
    {
        const double g = uniform01(mc) < q ? p.gain_main : p.gain_side;
        const double v = std::exp(-s * p.c_los * g * h(mc) / (t * t));
        sum += v;
        sum_sq += v * v;
    }
    const double mean = sum / n;
    const double se = std::sqrt((sum_sq / n - mean * mean) / n);
    CHECK(std::abs(mean - u_tau(LinkType::los, s, t, p)) < 3.0 * se);
}

TEST_CASE("assoc_pdf - normalizes to one for random block models")
{
    SystemParams p = paper_sec5_params();
    auto rng = test_support::rng(65);
    for (int i = 0; i < 8; ++i)
    {
        const BlockModel model = random_model(rng, 1 + i % 3);
        p.beta_per_m = test_support::log_uniform(rng, 1e-3, 3e-2);
        CHECK(std::abs(assoc_total(model, p, 1) - 1.0) < 1e-6);
    }
    const SystemParams preset = paper_sec5_params();
    const BlockModel two = fid_scenario(30 * per_km2, 0.4).to_block_model();
    CHECK(std::abs(assoc_total(two, preset, 1) - 1.0) < 1e-6);
    CHECK(std::abs(assoc_total(two, preset, 2) - 1.0) < 1e-6);
    CHECK(assoc_pdf(SubBlockId{OperatorSet{1}, LinkType::los}, 1e-9, two, preset) < 1e-12);
    CHECK_THROWS_AS(assoc_pdf(SubBlockId{OperatorSet{1}, LinkType::los}, 0.0, two, preset), std::invalid_argument);
}

TEST_CASE("assoc_pdf - single block matches the nearest LOS / NLOS oracle")
{
    const SystemParams p = paper_sec5_params();
    BlockModel model;
    const double lambda = 30 * per_km2;
    model.densities[OperatorSet{1}] = lambda;
    for (double r : {5.0, 40.0, 120.0, 400.0})
    {
        const double excl_n = exclusion_radius(LinkType::los, r, p);
        const double f_l = 2 * pi * lambda * r * std::exp(-p.beta_per_m * r) *
                           std::exp(-oracles::measure(true, lambda, p.beta_per_m, r) -
                                    oracles::measure(false, lambda, p.beta_per_m, excl_n));
        CHECK(rel_close(assoc_pdf(SubBlockId{OperatorSet{1}, LinkType::los}, r, model, p), f_l, 1e-10));
        const double excl_l = exclusion_radius(LinkType::nlos, r, p);
        const double f_n = 2 * pi * lambda * r * -std::expm1(-p.beta_per_m * r) *
                           std::exp(-oracles::measure(false, lambda, p.beta_per_m, r) -
                                    oracles::measure(true, lambda, p.beta_per_m, excl_l));
        CHECK(rel_close(assoc_pdf(SubBlockId{OperatorSet{1}, LinkType::nlos}, r, model, p), f_n, 1e-10));
    }
}

TEST_CASE("assoc_pdf - LOS association probability matches simulation")
{
    const SystemParams p = paper_sec5_params();
    const TwoOpSpec spec = fid_scenario(30 * per_km2, 0.4);
    BlockModel model = spec.to_block_model(Window::centered(1500.0));

    double p_los = 0.0;
    for (OperatorSet s : {OperatorSet{1}, OperatorSet{1, 2}})
        p_los += integrate([&](double r) { return assoc_pdf(SubBlockId{s, LinkType::los}, r, model, p); },
                           std::vector<double>{0.0, 50.0, 100.0, 200.0, 400.0, 1000.0, 3000.0},
                           QuadOptions{1e-12, 1e-10, 4000})
                     .value;

    const int reps = 20000;
    int los = 0;
    for (int rep = 0; rep < reps; ++rep)
    {
        const Deployment dep = sample_block_model(model, std::uint64_t(rep));
        if (dep.count_operator(1) == 0)
            continue;
        const LabeledDeployment labeled = thin_blockage(dep, {0.0, 0.0}, p.beta_per_m, std::uint64_t(rep));
        los += associate(labeled, {0.0, 0.0}, 1, p).link == LinkType::los ? 1 : 0;
    }
    const double freq = double(los) / reps;
    CHECK(std::abs(freq - p_los) < 3.0 * std::sqrt(p_los * (1 - p_los) / reps));
}

TEST_CASE("r_max - tail mass beyond the cutoff is negligible")
{
    const SystemParams p = paper_sec5_params();
    const double lambda = 30 * per_km2;
    const double top = r_max(lambda, p, 1e-8);
    CHECK(top > 1000.0);
    CHECK(top < 10000.0);
    BlockModel model;
    model.densities[OperatorSet{1}] = lambda;
    double tail = 0.0;
    for (LinkType link : {LinkType::los, LinkType::nlos})
        tail += integrate([&](double r) { return assoc_pdf(SubBlockId{OperatorSet{1}, link}, r, model, p); },
                          std::vector<double>{top, 2 * top, 8 * top}, QuadOptions{1e-16, 1e-8, 4000})
                    .value;
    CHECK(tail < 1e-8);
}

TEST_CASE("laplace_two_op - agrees with the general engine for a,b = 0.7, 0.2")
{
    const SystemParams p = paper_sec5_params();
    const TwoOpSpec spec = TwoOpSpec::from_retention(60 * per_km2, 0.7, 0.2);
    const BlockModel model = spec.to_block_model();
    const QuadOptions tight{1e-14, 1e-12, 20000};
    auto rng = test_support::rng(66);
    for (int i = 0; i < 20; ++i)
    {
        const LinkType link = i % 2 ? LinkType::los : LinkType::nlos;
        const bool shared = (i / 2) % 2 == 1;
        const double r = test_support::log_uniform(rng, 5.0, 800.0);
        const double c = link == LinkType::los ? p.c_los : p.c_nlos;
        const double alpha = link == LinkType::los ? p.alpha_los : p.alpha_nlos;
        const double t = db_to_linear(test_support::uniform(rng, -10.0, 30.0));
        const double s = t * std::pow(r, alpha) / (c * p.gain_main);
        const OperatorSet subset = shared ? OperatorSet{1, 2} : OperatorSet{1};
        const double fast = laplace_two_op(ServingLink{link, r, shared}, s, spec, p, tight);
        const double general = laplace_general(SubBlockId{subset, link}, r, s, model, p, 1, tight);
        CHECK(rel_close(fast, general, 1e-9));
        const double oracle = oracles::laplace(model, subset, link == LinkType::los, r, s, p);
        INFO("r=" << r << " s=" << s << " general=" << general << " oracle=" << oracle);
        // Compare exponents: values far below one carry the relative error of the exponent.
        CHECK(std::abs(std::log(general) - std::log(oracle)) < 1e-8 * std::max(1.0, -std::log(oracle)));
    }
}

TEST_CASE("laplace_two_op - disjoint networks equal blocks {1},{2}")
{
    const SystemParams p = paper_sec5_params();
    const TwoOpSpec spec = fid_scenario(30 * per_km2, 0.0);
    BlockModel model;
    model.densities[OperatorSet{1}] = 30 * per_km2;
    model.densities[OperatorSet{2}] = 30 * per_km2;
    const QuadOptions tight{1e-14, 1e-12, 20000};
    for (double r : {20.0, 150.0})
        for (LinkType link : {LinkType::los, LinkType::nlos})
        {
            const double s = 1e-2 * std::pow(r, link == LinkType::los ? 2.0 : 4.0) / p.c_nlos;
            CHECK(rel_close(laplace_two_op(ServingLink{link, r, false}, s, spec, p, tight),
                            laplace_general(SubBlockId{OperatorSet{1}, link}, r, s, model, p, 1, tight), 1e-9));
        }
}

TEST_CASE("laplace_two_op - full overlap keeps only the far factors")
{
    const SystemParams p = paper_sec5_params();
    const TwoOpSpec spec = fid_scenario(30 * per_km2, 1.0);
    for (LinkType link : {LinkType::los, LinkType::nlos})
    {
        const double r = 80.0;
        const double s = std::pow(r, link == LinkType::los ? 2.0 : 4.0) / (p.c_los * p.gain_main);
        const TwoOpLaplaceFactors f = laplace_two_op_factors(ServingLink{link, r, true}, s, spec, p);
        CHECK(f.near_los == 1.0);
        CHECK(f.near_nlos == 1.0);
        const double collapsed = f.far_los * f.far_nlos * f.co_location;
        CHECK(rel_close(laplace_two_op(ServingLink{link, r, true}, s, spec, p), collapsed, 1e-12));
        CHECK(rel_close(f.product(), collapsed, 1e-12));
        CHECK(rel_close(f.co_location, u_tau(link, s, r, p), 1e-15));
    }
}

TEST_CASE("laplace_general - limits and monotonicity")
{
    const SystemParams p = paper_sec5_params();
    const BlockModel model = fcd_scenario(30 * per_km2, 0.5).to_block_model();
    const SubBlockId sub{OperatorSet{1, 2}, LinkType::los};
    CHECK(laplace_general(sub, 100.0, 0.0, model, p) == 1.0);
    BlockModel lonely;
    lonely.densities[OperatorSet{1}] = 0.0;
    CHECK(laplace_general(SubBlockId{OperatorSet{1}, LinkType::los}, 100.0, 1e9, lonely, p) == 1.0);
    double last = 1.0;
    for (double s = 1e6; s < 1e14; s *= 4.0)
    {
        const double v = laplace_general(sub, 100.0, s, model, p);
        CHECK(v > 0.0);
        CHECK(v <= last);
        last = v;
    }
    CHECK_THROWS_AS(laplace_general(SubBlockId{OperatorSet{2}, LinkType::los}, 100.0, 1.0, model, p),
                    std::invalid_argument);
}

TEST_CASE("laplace_general - matches conditioned simulation at spot points")
{
    const SystemParams p = paper_sec5_params();
    const TwoOpSpec spec = fid_scenario(30 * per_km2, 0.4);
    const BlockModel model = spec.to_block_model();
    struct Spot
    {
        OperatorSet subset;
        bool los;
        double r;
    };
    for (const Spot &spot : {Spot{OperatorSet{1}, true, 100.0}, Spot{OperatorSet{1, 2}, true, 60.0},
                             Spot{OperatorSet{1}, false, 40.0}})
    {
        const double c = spot.los ? p.c_los : p.c_nlos;
        const double alpha = spot.los ? p.alpha_los : p.alpha_nlos;
        const double s = std::pow(spot.r, alpha) / (c * p.gain_main); // T = 0 dB
        const double exact = laplace_general(SubBlockId{spot.subset, spot.los ? LinkType::los : LinkType::nlos},
                                             spot.r, s, model, p);
        const auto mc = oracles::laplace_mc(model, spot.subset, spot.los, spot.r, s, p, 20000, 67);
        CHECK(std::abs(mc.mean - exact) < 3.0 * mc.std_error);
    }
}

TEST_CASE("coverage_probability - limits, monotonicity and equivalences")
{
    const SystemParams p = paper_sec5_params();
    const TwoOpSpec spec = fid_scenario(30 * per_km2, 0.4);
    CHECK(coverage_probability(spec, p, 0.0) == 1.0);
    CHECK(std::abs(coverage_probability(spec, p, 1e-12) - 1.0) < 1e-4);

    const CoverageCurve curve = sinr_coverage(spec, p, make_grid(-10.0, 2.0, 30.0));
    CHECK_NOTHROW(curve.validate());
    CHECK(curve.max_increase() < 1e-7);
    CHECK(curve.probabilities.front() > 0.9);
    CHECK(curve.probabilities.back() < 0.2);

    const BlockModel model = spec.to_block_model();
    for (double t_db : {-5.0, 5.0, 15.0})
        CHECK(std::abs(coverage_probability(spec, p, db_to_linear(t_db)) -
                       coverage_probability(model, p, db_to_linear(t_db))) < 1e-6);

    // Operator 2 of the FID scenario sees the same statistics as operator 1.
    AnalyticOptions op2;
    op2.home_operator = 2;
    CHECK(std::abs(coverage_probability(spec, p, 1.0, op2) - coverage_probability(spec, p, 1.0)) < 1e-6);
}

TEST_CASE("coverage_probability - noise-only matches a one-dimensional oracle")
{
    const SystemParams p = paper_sec5_params();
    BlockModel model;
    model.densities[OperatorSet{1}] = 30 * per_km2;
    AnalyticOptions quiet;
    quiet.include_interference = false;
    for (double t_db : {-10.0, 0.0, 10.0, 20.0, 30.0})
    {
        const double t = db_to_linear(t_db);
        CHECK(std::abs(coverage_probability(model, p, t, quiet) - oracles::noise_only_coverage(30 * per_km2, t, p)) <
              1e-6);
    }
}

TEST_CASE("coverage_probability - rejects non-Rayleigh fading")
{
    SystemParams p = paper_sec5_params();
    p.fading = paper_sec5_nakagami();
    CHECK_THROWS_AS(coverage_probability(fid_scenario(30 * per_km2, 0.4), p, 1.0), unsupported_fading);
    CHECK_THROWS_AS(require_rayleigh(p), config_error);
}

TEST_CASE("rate_to_sinr_threshold - example and rate coverage at zero")
{
    const SystemParams p = paper_sec5_params();
    const double t = rate_to_sinr_threshold(100e6, p, 30 * per_km2);
    CHECK(std::abs(t - (std::pow(2.0, 100e6 * (1.0 + 1.28 * 200.0 / 30.0) / 200e6) - 1.0)) < 1e-9);
    CHECK(std::abs(t - 26.2) < 0.05);
    CHECK(rate_to_sinr_threshold(0.0, p, 30 * per_km2) == 0.0);
    const CoverageCurve rc = rate_coverage(fid_scenario(30 * per_km2, 0.0), p, {0.0, 50e6, 500e6});
    CHECK(rc.unit == ThresholdUnit::rate_bps);
    CHECK(rc.probabilities[0] == 1.0);
    CHECK(rc.probabilities[1] > rc.probabilities[2]);
}

TEST_CASE("median_rate - bisection invariant")
{
    const SystemParams p = paper_sec5_params();
    const TwoOpSpec spec = fid_scenario(30 * per_km2, 0.4);
    const double m = median_rate(spec, p);
    const CoverageCurve around = rate_coverage(spec, p, {m * 0.99, m * 1.01});
    CHECK(around.probabilities[0] > 0.5);
    CHECK(around.probabilities[1] < 0.5);
    CHECK_THROWS_AS(median_rate(spec, p, {}, 1e-3, 1e-3), numerical_error);
}
