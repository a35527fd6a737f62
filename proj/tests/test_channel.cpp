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

#include "mmshare/channel.hpp"
#include "mmshare/errors.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

using namespace mmshare;
using test_support::rel_close;

namespace
{
    LabeledDeployment random_deployment(Rng &rng, int n, int operators, double half_width)
    {
        LabeledDeployment out;
        out.deployment.window = Window::centered(half_width);
        for (int i = 0; i < n; ++i)
        {
            Site s;
            s.id = std::uint64_t(1000 - i);
            s.position = {test_support::uniform(rng, -half_width, half_width),
                          test_support::uniform(rng, -half_width, half_width)};
            s.occupants = OperatorSet(std::uint16_t(1 + rng() % ((1u << operators) - 1)));
            out.deployment.sites.push_back(s);
            out.links.push_back(uniform01(rng) < 0.4 ? LinkType::los : LinkType::nlos);
        }
        return out;
    }
}

TEST_CASE("path_loss - examples")
{
    const SystemParams p = paper_sec5_params();
    CHECK(rel_close(path_loss(LinkType::los, 100.0, p), 1e-10, 1e-12));
    CHECK(rel_close(path_loss(LinkType::nlos, 100.0, p), 1e-15, 1e-12));
    CHECK(rel_close(path_loss(LinkType::los, 1.0, p), p.c_los, 1e-12));
    CHECK_THROWS_AS(path_loss(LinkType::los, 0.0, p), std::invalid_argument);

    auto rng = test_support::rng(41);
    for (int i = 0; i < 100; ++i)
    {
        const double r = test_support::log_uniform(rng, 1.0, 1e4);
        const double alpha = test_support::uniform(rng, 2.0, 4.0);
        CHECK(rel_close(path_loss_sq(3e-7, alpha, r * r), 3e-7 * std::pow(r, -alpha), 1e-12));
        CHECK(rel_close(path_loss_sq(3e-7, 2.0, r * r), 3e-7 * std::pow(r, -2.0), 1e-12));
        CHECK(rel_close(path_loss_sq(3e-7, 4.0, r * r), 3e-7 * std::pow(r, -4.0), 1e-12));
    }
}

TEST_CASE("gain_pmf - sectored antenna probabilities")
{
    const SystemParams p = paper_sec5_params();
    const GainPmf pmf = gain_pmf(p);
    CHECK(rel_close(pmf.main_probability, 1.0 / 18.0, 1e-12));
    CHECK(rel_close(pmf.main_probability + pmf.side_probability, 1.0, 1e-15));
    CHECK(rel_close(pmf.main_gain, std::pow(10.0, 1.8), 1e-12));
    CHECK(rel_close(pmf.side_gain, std::pow(10.0, -0.2), 1e-12));

    auto rng = test_support::rng(42);
    const int n = 200000;
    int main = 0;
    for (int i = 0; i < n; ++i)
        main += sample_gain(p, rng) == p.gain_main ? 1 : 0;
    const double q = 1.0 / 18.0;
    CHECK(std::abs(double(main) / n - q) < 5.0 * std::sqrt(q * (1 - q) / n));
}

TEST_CASE("sample_fading - unit mean and Nakagami m=1 matches Exp(1)")
{
    auto rng = test_support::rng(43);
    const int n = 200000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
        sum += sample_fading(FadingSpec::rayleigh(), LinkType::los, rng);
    CHECK(std::abs(sum / n - 1.0) < 5.0 / std::sqrt(double(n)));

    // Gamma(m, 1/m) has unit mean; log-normal shadowing multiplies it by exp((sigma ln10 / 10)^2 / 2).
    const FadingSpec nak = FadingSpec::nakagami_lognormal(2.0, 3.0, 5.2, 7.6);
    for (auto [link, sigma] : {std::pair{LinkType::los, 5.2}, {LinkType::nlos, 7.6}})
    {
        std::vector<double> x(n);
        for (auto &v : x)
            v = sample_fading(nak, link, rng);
        double mean = 0.0, log_mean = 0.0;
        for (double v : x)
        {
            mean += v;
            log_mean += 10.0 * std::log10(v);
        }
        mean /= n;
        log_mean /= n;
        const double s = sigma * std::log(10.0) / 10.0;
        CHECK(std::abs(mean / std::exp(0.5 * s * s) - 1.0) < 0.05);
        const double m = link == LinkType::los ? 2.0 : 3.0;
        // E[10 log10 Gamma(m, 1/m)] = 10 (psi(m) - ln m) / ln 10, psi(2) = 1 - gamma_E, psi(3) = 1.5 - gamma_E
        const double psi = (link == LinkType::los ? 1.0 : 1.5) - 0.5772156649015329;
        CHECK(std::abs(log_mean - 10.0 * (psi - std::log(m)) / std::log(10.0)) < 0.1);
    }

    const FadingSpec one = FadingSpec::nakagami_lognormal(1.0, 1.0, 0.0, 0.0);
    const int k = 20000;
    std::vector<double> x(k);
    for (auto &v : x)
        v = sample_fading(one, LinkType::nlos, rng);
    std::sort(x.begin(), x.end());
    double d = 0.0;
    for (int i = 0; i < k; ++i)
    {
        const double cdf = 1.0 - std::exp(-x[std::size_t(i)]);
        d = std::max({d, std::abs(cdf - double(i) / k), std::abs(cdf - double(i + 1) / k)});
    }
    CHECK(d < 1.63 / std::sqrt(double(k))); // KS critical value at the 1% level
}

TEST_CASE("associate - strongest path gain with LOS preferred at larger range")
{
    const SystemParams p = paper_sec5_params();
    LabeledDeployment dep;
    dep.deployment.window = Window::centered(1000.0);
    dep.deployment.sites = {Site{1, {50.0, 0.0}, OperatorSet{1}, {}}, Site{2, {0.0, 400.0}, OperatorSet{1, 2}, {}},
                            Site{3, {10.0, 0.0}, OperatorSet{2}, {}}};
    dep.links = {LinkType::nlos, LinkType::los, LinkType::los};

    // NLOS at 50 m: 1e-7 / 50^4 = 1.6e-14; LOS at 400 m: 1e-6 / 400^2 = 6.25e-12.
    Association a = associate(dep, {0.0, 0.0}, 1, p);
    CHECK(a.site_id == 2);
    CHECK(a.link == LinkType::los);
    CHECK(rel_close(a.distance, 400.0, 1e-12));
    CHECK(a.co_located);

    Association b = associate(dep, {0.0, 0.0}, 2, p);
    CHECK(b.site_id == 3);
    CHECK(!b.co_located);

    dep.links[0] = LinkType::los;
    CHECK(associate(dep, {0.0, 0.0}, 1, p).site_id == 1);

    CHECK_THROWS_AS(associate(dep, {0.0, 0.0}, 3, p), data_error);
}

TEST_CASE("associate - ties go to the lowest site id")
{
    const SystemParams p = paper_sec5_params();
    LabeledDeployment dep;
    dep.deployment.window = Window::centered(1000.0);
    dep.deployment.sites = {Site{9, {100.0, 0.0}, OperatorSet{1}, {}}, Site{4, {-100.0, 0.0}, OperatorSet{1}, {}},
                            Site{6, {0.0, 100.0}, OperatorSet{1}, {}}};
    dep.links = {LinkType::los, LinkType::los, LinkType::los};
    CHECK(associate(dep, {0.0, 0.0}, 1, p).site_id == 4);
}

TEST_CASE("evaluate_sinr - matches a per-operator brute-force sum")
{
    const SystemParams p = paper_sec5_params();
    auto rng = test_support::rng(44);
    for (int trial = 0; trial < 50; ++trial)
    {
        const int operators = 1 + int(rng() % 4);
        const LabeledDeployment dep = random_deployment(rng, 1 + int(rng() % 60), operators, 800.0);
        const Point user{test_support::uniform(rng, -300.0, 300.0), test_support::uniform(rng, -300.0, 300.0)};
        const int home = 1 + int(rng() % std::uint64_t(operators));
        if (dep.deployment.count_operator(home) == 0)
            continue;

        RadioDraws draws;
        draws.sample(dep, p, rng);
        const SinrResult res = evaluate_sinr(dep, user, home, p, draws);

        // Serving site by exhaustive comparison.
        const auto &sites = dep.deployment.sites;
        std::size_t serve = sites.size();
        double best = -1.0;
        for (std::size_t i = 0; i < sites.size(); ++i)
        {
            if (!sites[i].occupants.contains(home))
                continue;
            const double g = path_loss(dep.links[i], distance(sites[i].position, user), p);
            if (g > best || (g == best && sites[i].id < sites[serve].id))
            {
                best = g;
                serve = i;
            }
        }
        REQUIRE(serve < sites.size());
        CHECK(res.assoc.site_index == serve);

        // Interference grouped by operator: every base station of every operator except the server.
        double interference = 0.0;
        double signal = 0.0;
        for (int op = 1; op <= operators; ++op)
        {
            for (std::size_t i = 0; i < sites.size(); ++i)
            {
                const auto members = sites[i].occupants.members();
                const auto it = std::find(members.begin(), members.end(), op);
                if (it == members.end())
                    continue;
                const std::size_t k = draws.offsets[i] + std::size_t(it - members.begin());
                const double l = path_loss(dep.links[i], distance(sites[i].position, user), p);
                if (i == serve && op == home)
                    signal = p.gain_main * draws.fade[k] * l;
                else
                    interference += draws.gain[k] * draws.fade[k] * l;
            }
        }
        CHECK(rel_close(res.signal, signal, 1e-12));
        CHECK(rel_close(res.interference, interference, 1e-10));
        CHECK(rel_close(res.sinr, signal / (interference + p.noise_power()), 1e-10));

        const SinrResult quiet = evaluate_sinr(dep, user, home, p, draws, false);
        CHECK(quiet.interference == 0.0);
        CHECK(rel_close(quiet.sinr, signal / p.noise_power(), 1e-12));
    }
}

TEST_CASE("evaluate_sinr - co-located operators interfere at the serving distance")
{
    const SystemParams p = paper_sec5_params();
    LabeledDeployment dep;
    dep.deployment.window = Window::centered(500.0);
    dep.deployment.sites = {Site{1, {80.0, 0.0}, OperatorSet{1, 2, 3}, {}}};
    dep.links = {LinkType::los};
    RadioDraws draws;
    auto rng = test_support::rng(45);
    draws.sample(dep, p, rng);
    REQUIRE(draws.offsets.back() == 3);

    const SinrResult r = evaluate_sinr(dep, {0.0, 0.0}, 2, p, draws);
    CHECK(r.assoc.co_located);
    const double l = path_loss(LinkType::los, 80.0, p);
    CHECK(rel_close(r.signal, p.gain_main * draws.fade[1] * l, 1e-12));
    CHECK(rel_close(r.interference, (draws.gain[0] * draws.fade[0] + draws.gain[2] * draws.fade[2]) * l, 1e-12));
    CHECK(draws.slot(0, OperatorSet{1, 2, 3}, 3) == 2);
}

TEST_CASE("sinr_at_user - invariant to a joint scaling of transmit and noise power")
{
    SystemParams p = paper_sec5_params();
    auto rng = test_support::rng(46);
    const LabeledDeployment dep = random_deployment(rng, 40, 2, 600.0);
    SystemParams q = p;
    q.tx_power_w *= 1e3;
    q.noise_psd_w_per_hz *= 1e3;
    for (std::uint64_t seed = 0; seed < 20; ++seed)
    {
        const double a = sinr_at_user(dep, {1.0, 2.0}, 1, p, seed).sinr;
        const double b = sinr_at_user(dep, {1.0, 2.0}, 1, q, seed).sinr;
        CHECK(rel_close(a, b, 1e-12));
    }
}
