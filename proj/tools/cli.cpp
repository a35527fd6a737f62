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

#include "cli.hpp"

#include "mmshare/analytic.hpp"
#include "mmshare/config.hpp"
#include "mmshare/curve.hpp"
#include "mmshare/deployment_csv.hpp"
#include "mmshare/errors.hpp"
#include "mmshare/estimation.hpp"
#include "mmshare/montecarlo.hpp"
#include "mmshare/text.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

namespace mmshare::cli
{
    namespace
    {
        using json = nlohmann::ordered_json;
        namespace fs = std::filesystem;

        struct Options
        {
            std::string preset = "paper-sec5";
            std::string params_file;
            std::string blocks_file;
            std::string deployment_file;
            std::string fading;
            std::vector<std::string> fid_values;
            std::vector<std::string> fcd_values;
            double rho = 0.0;
            double lambda0_km2 = paper_sec5_lambda0 / per_km2;
            std::string sinr_grid;
            std::string rates_grid;
            std::size_t reps = 10000;
            std::uint64_t seed = 1;
            unsigned threads = 1;
            std::string out_dir = ".";
            double eps_coloc = 10.0;
            std::string bins;
            int smoothing = 5;
            bool median = false;
            bool noise_only = false;
            double half_width = 0.0;
            int home_operator = 1;
            int press_operator = 0;
            double target_km2 = 0.0;
            std::string engine = "analytic";
            std::string rhos = "0,0.4,1";

            CLI::Option *preset_opt = nullptr;
            CLI::Option *fid_opt = nullptr;
            CLI::Option *fcd_opt = nullptr;
            CLI::Option *rho_opt = nullptr;
            CLI::Option *lambda0_opt = nullptr;
            CLI::Option *sinr_opt = nullptr;
            CLI::Option *rates_opt = nullptr;
        };

        // ---------- argument helpers ----------

        double parse_number(const std::string &text, const std::string &what)
        {
            auto v = parse_double(text);
            if (!v || !std::isfinite(*v))
                throw config_error(what + ": '" + text + "' is not a number.");
            return *v;
        }

        std::vector<double> parse_grid(const std::string &text, const std::string &what, double scale = 1.0)
        {
            auto parts = split_fields(text, ':');
            if (parts.size() != 3)
                throw config_error(what + " must look like lo:step:hi, got '" + text + "'.");
            const double lo = parse_number(std::string(parts[0]), what);
            const double step = parse_number(std::string(parts[1]), what);
            const double hi = parse_number(std::string(parts[2]), what);
            std::vector<double> grid;
            try
            {
                grid = make_grid(lo, step, hi);
            }
            catch (const std::invalid_argument &e)
            {
                throw config_error(what + ": " + e.what());
            }
            for (double &g : grid)
                g *= scale;
            return grid;
        }

        std::vector<double> parse_list(const std::string &text, const std::string &what)
        {
            std::vector<double> values;
            for (auto part : split_fields(text, ','))
                values.push_back(parse_number(std::string(trim(part)), what));
            return values;
        }

        std::vector<int> parse_bins(const std::string &text)
        {
            std::vector<int> ks;
            for (double v : parse_list(text, "--bins"))
            {
                if (v != std::floor(v) || v < 2 || v > 4096)
                    throw config_error("--bins takes integers k in 2..4096 (n = k^2 cells).");
                ks.push_back(int(v));
            }
            return ks;
        }

        std::string label_number(double v)
        {
            return format_double(v);
        }

        // ---------- configuration ----------

        SystemParams load_params(const Options &o, std::optional<Scenario> *file_scenario = nullptr)
        {
            SystemParams params;
            if (!o.params_file.empty())
            {
                if (o.preset_opt && o.preset_opt->count() > 0)
                    throw config_error("Give either --preset or --params, not both.");
                ScenarioConfig cfg = load_config(o.params_file);
                params = cfg.params;
                if (file_scenario)
                    *file_scenario = cfg.scenario;
            }
            else
                params = preset_params(o.preset);

            if (o.fading == "rayleigh")
                params.fading = FadingSpec::rayleigh();
            else if (o.fading == "nakagami")
                params.fading = paper_sec5_nakagami();
            else if (!o.fading.empty())
                throw config_error("--fading must be 'rayleigh' or 'nakagami'.");
            return params;
        }

        bool two_op_flags_given(const Options &o)
        {
            auto given = [](CLI::Option *opt)
            { return opt && opt->count() > 0; };
            return given(o.fid_opt) || given(o.fcd_opt) || given(o.rho_opt) || given(o.lambda0_opt);
        }

        TwoOpSpec two_op_from_flags(const Options &o)
        {
            const bool fid = o.fid_opt && o.fid_opt->count() > 0;
            const bool fcd = o.fcd_opt && o.fcd_opt->count() > 0;
            if (fid && fcd)
                throw config_error("Give either --fid or --fcd, not both.");
            const auto &values = fid ? o.fid_values : o.fcd_values;
            std::optional<double> rho;
            if ((fid || fcd) && !values.empty() && !values.front().empty())
                rho = parse_number(values.front(), fid ? "--fid" : "--fcd");
            if (o.rho_opt && o.rho_opt->count() > 0)
            {
                if (rho)
                    throw config_error("The overlap is given twice (--rho and a value after --fid / --fcd).");
                rho = o.rho;
            }
            if (!rho)
                throw config_error("Two-operator scenario needs --rho X (or --fid X / --fcd X).");
            if (!(o.lambda0_km2 > 0.0))
                throw config_error("--lambda0 must be positive.");
            try
            {
                return fcd ? fcd_scenario(o.lambda0_km2 * per_km2, *rho) : fid_scenario(o.lambda0_km2 * per_km2, *rho);
            }
            catch (const std::domain_error &e)
            {
                throw config_error(e.what());
            }
        }

        struct Source
        {
            std::optional<Scenario> scenario;
            std::optional<Deployment> deployment;
            json description;
        };

        json describe(const Scenario &scenario)
        {
            json d;
            if (const auto *spec = std::get_if<TwoOpSpec>(&scenario))
            {
                d["type"] = "two_operator";
                d["lambda_total_per_km2"] = spec->lambda_total() / per_km2;
                d["retain_a"] = spec->retain_a();
                d["retain_b"] = spec->retain_b();
                d["rho"] = spec->rho();
                d["lambda1_per_km2"] = spec->lambda1() / per_km2;
                d["lambda2_per_km2"] = spec->lambda2() / per_km2;
                d["lambda12_per_km2"] = spec->lambda12() / per_km2;
            }
            else
            {
                d["type"] = "blocks";
                json blocks = json::array();
                for (const auto &[subset, density] : std::get<BlockModel>(scenario).densities)
                    blocks.push_back({{"operators", subset.to_string()}, {"density_per_km2", density / per_km2}});
                d["blocks"] = blocks;
            }
            return d;
        }

        Source resolve_source(const Options &o, const std::optional<Scenario> &file_scenario, bool allow_deployment)
        {
            int count = 0;
            count += file_scenario ? 1 : 0;
            count += o.blocks_file.empty() ? 0 : 1;
            count += two_op_flags_given(o) ? 1 : 0;
            count += o.deployment_file.empty() ? 0 : 1;
            if (count != 1)
                throw config_error("Give exactly one scenario source: a scenario inside --params, --blocks FILE, "
                                   "--rho/--lambda0/--fid/--fcd" +
                                   std::string(allow_deployment ? ", or --deployment FILE." : "."));

            Source src;
            if (!o.deployment_file.empty())
            {
                if (!allow_deployment)
                    throw config_error("--deployment is only accepted by simulate, estimate and press.");
                src.deployment = load_deployment_csv(o.deployment_file);
                src.description = {{"type", "deployment"},
                                   {"file", fs::path(o.deployment_file).filename().string()},
                                   {"sites", src.deployment->sites.size()}};
                return src;
            }
            if (file_scenario)
                src.scenario = *file_scenario;
            else if (!o.blocks_file.empty())
                src.scenario = load_blocks_csv(o.blocks_file);
            else
                src.scenario = two_op_from_flags(o);
            if (auto *model = std::get_if<BlockModel>(&*src.scenario))
            {
                try
                {
                    model->validate_densities();
                }
                catch (const std::invalid_argument &e)
                {
                    throw config_error(e.what());
                }
            }
            src.description = describe(*src.scenario);
            return src;
        }

        fs::path prepare_out(const Options &o)
        {
            fs::path dir(o.out_dir);
            std::error_code ec;
            fs::create_directories(dir, ec);
            if (ec || !fs::is_directory(dir))
                throw config_error("Cannot create output directory '" + o.out_dir + "'.");
            return dir;
        }

        void write_text(const fs::path &path, const std::string &text)
        {
            std::ofstream f(path, std::ios::binary);
            if (!f)
                throw config_error("Cannot write '" + path.string() + "'.");
            f << text;
        }

        json params_json(const SystemParams &params)
        {
            return json::parse(params_to_json(params));
        }

        struct Grids
        {
            std::vector<double> sinr_db;
            std::vector<double> rates_bps;
        };

        Grids grids(const Options &o)
        {
            Grids g;
            if (!o.sinr_grid.empty())
                g.sinr_db = parse_grid(o.sinr_grid, "--sinr");
            if (!o.rates_grid.empty())
                g.rates_bps = parse_grid(o.rates_grid, "--rates", 1e6);
            if (g.sinr_db.empty() && g.rates_bps.empty())
                g.sinr_db = make_grid(-10.0, 1.0, 30.0);
            for (double r : g.rates_bps)
                if (r < 0.0)
                    throw config_error("--rates must be non-negative.");
            return g;
        }

        double home_density_of(const Scenario &scenario, int op)
        {
            return operator_density(scenario, op);
        }

        // ---------- commands ----------

        int cmd_analyze(const Options &o, std::ostream &out)
        {
            std::optional<Scenario> file_scenario;
            const SystemParams params = load_params(o, &file_scenario);
            require_rayleigh(params);
            const Source src = resolve_source(o, file_scenario, false);
            const Grids g = grids(o);
            const fs::path dir = prepare_out(o);

            AnalyticOptions opts;
            opts.home_operator = o.home_operator;
            opts.include_interference = !o.noise_only;

            json report;
            report["command"] = "analyze";
            report["engine"] = "analytic";
            report["home_operator"] = o.home_operator;
            report["interference"] = !o.noise_only;
            report["scenario"] = src.description;
            report["params"] = params_json(params);

            if (!g.sinr_db.empty())
            {
                const CoverageCurve c = sinr_coverage(*src.scenario, params, g.sinr_db, opts);
                save_curve_csv(dir / "sinr_coverage.csv", c);
                out << "wrote " << (dir / "sinr_coverage.csv").string() << " (" << c.size() << " rows)\n";
                report["sinr_points"] = c.size();
            }
            if (!g.rates_bps.empty())
            {
                const CoverageCurve c = rate_coverage(*src.scenario, params, g.rates_bps, opts);
                save_curve_csv(dir / "rate_coverage.csv", c);
                out << "wrote " << (dir / "rate_coverage.csv").string() << " (" << c.size() << " rows)\n";
                report["rate_points"] = c.size();
            }
            report["load_factor"] = load_factor(params, home_density_of(*src.scenario, o.home_operator));
            if (o.median)
            {
                const double m = median_rate(*src.scenario, params, opts);
                report["median_rate_bps"] = m;
                out << "median rate: " << format_double(m / 1e6) << " Mbps\n";
            }
            write_text(dir / "run_report.json", report.dump(2) + "\n");
            return exit_ok;
        }

        SimPlan make_plan(const Options &o)
        {
            SimPlan plan;
            plan.replications = o.reps;
            plan.seed = o.seed;
            plan.threads = std::max(1u, o.threads);
            plan.home_operator = o.home_operator;
            plan.include_interference = !o.noise_only;
            plan.half_width_m = o.half_width;
            return plan;
        }

        json sim_summary(const SimSamples &s)
        {
            json j;
            j["replications"] = s.sinr.size();
            j["redraws"] = s.redraws;
            j["los_serving_fraction"] = double(s.los_serving) / double(s.sinr.size());
            j["co_located_serving_fraction"] = double(s.co_located_serving) / double(s.sinr.size());
            j["half_width_m"] = s.half_width_m;
            j["home_density_per_km2"] = s.home_density / per_km2;
            return j;
        }

        SimSource to_sim_source(const Source &src)
        {
            if (src.deployment)
                return *src.deployment;
            if (const auto *spec = std::get_if<TwoOpSpec>(&*src.scenario))
                return *spec;
            return std::get<BlockModel>(*src.scenario);
        }

        int cmd_simulate(const Options &o, std::ostream &out)
        {
            std::optional<Scenario> file_scenario;
            const SystemParams params = load_params(o, &file_scenario);
            const Source src = resolve_source(o, file_scenario, true);
            const Grids g = grids(o);
            const fs::path dir = prepare_out(o);
            const SimPlan plan = make_plan(o);

            const SimSamples samples = simulate_sinr(to_sim_source(src), params, plan);

            json report;
            report["command"] = "simulate";
            report["engine"] = "monte_carlo";
            report["seed"] = plan.seed;
            report["home_operator"] = plan.home_operator;
            report["interference"] = plan.include_interference;
            report["scenario"] = src.description;
            report["params"] = params_json(params);
            report["simulation"] = sim_summary(samples);

            if (!g.sinr_db.empty())
            {
                const CoverageCurve c = empirical_sinr_curve(samples, g.sinr_db);
                save_curve_csv(dir / "sinr_coverage.csv", c);
                out << "wrote " << (dir / "sinr_coverage.csv").string() << " (" << c.size() << " rows)\n";
            }
            if (!g.rates_bps.empty())
            {
                const CoverageCurve c = empirical_rate_curve(samples, params, g.rates_bps);
                save_curve_csv(dir / "rate_coverage.csv", c);
                out << "wrote " << (dir / "rate_coverage.csv").string() << " (" << c.size() << " rows)\n";
            }
            if (o.median)
            {
                const double m = empirical_median_rate(samples, params);
                report["median_rate_bps"] = m;
                out << "median rate: " << format_double(m / 1e6) << " Mbps\n";
            }
            if (samples.redraws > 0)
                out << "note: " << samples.redraws << " replication(s) re-drawn because operator " << plan.home_operator
                    << " had no site\n";
            write_text(dir / "run_report.json", report.dump(2) + "\n");
            return exit_ok;
        }

        int cmd_estimate(const Options &o, std::ostream &out)
        {
            if (o.deployment_file.empty())
                throw config_error("estimate needs --deployment FILE.");
            if (o.smoothing < 1 || o.smoothing % 2 == 0)
                throw config_error("--smoothing must be an odd positive integer.");
            if (!(o.eps_coloc >= 0.0))
                throw config_error("--eps-coloc must be non-negative.");
            const Deployment raw = load_deployment_csv(o.deployment_file);
            const Deployment dep = merge_colocated(raw, o.eps_coloc);
            if (dep.sites.empty())
                throw data_error("Deployment '" + o.deployment_file + "' has no sites.");
            const std::vector<int> ks = o.bins.empty() ? default_bin_sweep(dep) : parse_bins(o.bins);
            const fs::path dir = prepare_out(o);

            const OverlapReport report = analyze_overlap(dep, ks, o.smoothing);
            write_text(dir / "overlap_report.json", overlap_report_json(report));
            write_text(dir / "rho_vs_bins.csv", rho_vs_bins_csv(report));
            save_deployment_csv(dir / "merged_deployment.csv", dep);

            out << "sites: " << raw.sites.size() << " raw, " << dep.sites.size() << " after merging within "
                << format_double(o.eps_coloc) << " m\n";
            for (const auto &[subset, count] : report.sharing.counts)
                out << "  {" << subset.to_string() << "}: " << count << "\n";
            out << "rho (indirect): " << format_double(report.rho_indirect) << "\n";
            out << "rho (direct, plateau): " << format_double(report.rho_direct_plateau) << "\n";
            return exit_ok;
        }

        int cmd_press(const Options &o, std::ostream &out)
        {
            if (o.deployment_file.empty())
                throw config_error("press needs --deployment FILE.");
            if (!(o.target_km2 > 0.0))
                throw config_error("press needs --target D (sites per km^2, > 0).");
            const Deployment dep = load_deployment_csv(o.deployment_file);
            const Deployment pressed = press(dep, o.target_km2 * per_km2, o.press_operator);
            const fs::path dir = prepare_out(o);
            save_deployment_csv(dir / "pressed_deployment.csv", pressed);

            auto density = [&](const Deployment &d)
            {
                return o.press_operator == 0 ? estimate_total_density(d) : estimate_density(d, o.press_operator);
            };
            out << "density: " << format_double(density(dep) / per_km2) << " -> "
                << format_double(density(pressed) / per_km2) << " per km^2\n";
            out << "window area: " << format_double(dep.window.area() * per_km2) << " -> "
                << format_double(pressed.window.area() * per_km2) << " km^2\n";
            out << "wrote " << (dir / "pressed_deployment.csv").string() << "\n";
            return exit_ok;
        }

        int cmd_compare(const Options &o, std::ostream &out)
        {
            if (o.rho_opt && o.rho_opt->count() > 0)
                throw config_error("compare sweeps the overlap itself; use --rhos r1,r2,...");
            const bool fid = o.fid_opt && o.fid_opt->count() > 0;
            const bool fcd = o.fcd_opt && o.fcd_opt->count() > 0;
            if (fid && fcd)
                throw config_error("Give either --fid or --fcd, not both.");
            if ((fid && !o.fid_values.empty() && !o.fid_values.front().empty()) ||
                (fcd && !o.fcd_values.empty() && !o.fcd_values.front().empty()))
                throw config_error("compare takes --fid / --fcd without a value; use --rhos for the overlaps.");
            if (!o.blocks_file.empty() || !o.deployment_file.empty())
                throw config_error("compare builds its own two-operator scenarios; drop --blocks / --deployment.");
            if (o.engine != "analytic" && o.engine != "mc")
                throw config_error("--engine must be 'analytic' or 'mc'.");
            if (!(o.lambda0_km2 > 0.0))
                throw config_error("--lambda0 must be positive.");

            const std::string scheme = fid ? "fid" : "fcd";
            const SystemParams params = load_params(o);
            SystemParams params_100 = params;
            params_100.bandwidth_hz = 0.5 * params.bandwidth_hz;
            const bool mc = o.engine == "mc";
            if (!mc)
                require_rayleigh(params);

            const std::vector<double> rates =
                o.rates_grid.empty() ? parse_grid("50:50:1000", "--rates", 1e6) : parse_grid(o.rates_grid, "--rates", 1e6);
            const std::vector<double> rhos = parse_list(o.rhos, "--rhos");
            const double lambda0 = o.lambda0_km2 * per_km2;
            const fs::path dir = prepare_out(o);

            auto make = [&](const std::string &s, double rho)
            {
                try
                {
                    return s == "fid" ? fid_scenario(lambda0, rho) : fcd_scenario(lambda0, rho);
                }
                catch (const std::domain_error &e)
                {
                    throw config_error(e.what());
                }
            };
            const SimPlan plan = make_plan(o);
            std::map<std::tuple<double, double, double, double>, SimSamples> cache;
            auto samples_for = [&](const TwoOpSpec &spec, const SystemParams &p) -> const SimSamples &
            {
                auto key = std::make_tuple(spec.lambda_total(), spec.retain_a(), spec.retain_b(), p.bandwidth_hz);
                auto it = cache.find(key);
                if (it == cache.end())
                    it = cache.emplace(key, simulate_sinr(spec, p, plan)).first;
                return it->second;
            };
            auto curve_for = [&](const TwoOpSpec &spec, const SystemParams &p)
            {
                return mc ? empirical_rate_curve(samples_for(spec, p), p, rates) : rate_coverage(spec, p, rates);
            };
            auto median_for = [&](const TwoOpSpec &spec, const SystemParams &p)
            {
                return mc ? empirical_median_rate(samples_for(spec, p), p) : median_rate(spec, p);
            };

            std::vector<std::pair<std::string, CoverageCurve>> curves;
            for (double rho : rhos)
                curves.emplace_back(scheme + "_rho" + label_number(rho), curve_for(make(scheme, rho), params));
            const TwoOpSpec single = TwoOpSpec::from_retention(lambda0, 1.0, 1.0);
            curves.emplace_back("single_100mhz", curve_for(single, params_100));
            curves.emplace_back("single_200mhz", curve_for(single, params));

            std::ostringstream csv;
            csv << "curve,rate_bps,probability" << (mc ? ",ci_halfwidth" : "") << "\n";
            for (const auto &[label, c] : curves)
                for (std::size_t i = 0; i < c.size(); ++i)
                {
                    csv << label << ',' << format_double(c.thresholds[i]) << ',' << format_double(c.probabilities[i]);
                    if (mc)
                        csv << ',' << format_double(c.ci_halfwidth[i]);
                    csv << '\n';
                }
            write_text(dir / "compare_rate_coverage.csv", csv.str());

            std::ostringstream med;
            med << "rho,fid_bps,fcd_bps,single_matched_100mhz_bps\n";
            json medians = json::array();
            for (double rho : rhos)
            {
                const double m_fid = median_for(make("fid", rho), params);
                const double m_fcd = median_for(make("fcd", rho), params);
                const double m_single = median_for(TwoOpSpec::from_retention((1.0 + rho) * lambda0, 1.0, 1.0), params_100);
                med << format_double(rho) << ',' << format_double(m_fid) << ',' << format_double(m_fcd) << ','
                    << format_double(m_single) << '\n';
                medians.push_back({{"rho", rho}, {"fid_bps", m_fid}, {"fcd_bps", m_fcd}, {"single_matched_100mhz_bps", m_single}});
                out << "rho " << format_double(rho) << ": median FID " << format_double(m_fid / 1e6) << " Mbps, FCD "
                    << format_double(m_fcd / 1e6) << " Mbps, single (100 MHz, matched density) "
                    << format_double(m_single / 1e6) << " Mbps\n";
            }
            write_text(dir / "median_rate.csv", med.str());

            json report;
            report["command"] = "compare";
            report["engine"] = mc ? "monte_carlo" : "analytic";
            report["scheme"] = scheme;
            report["lambda0_per_km2"] = o.lambda0_km2;
            report["rhos"] = rhos;
            if (mc)
            {
                report["seed"] = plan.seed;
                report["replications"] = plan.replications;
            }
            report["params"] = params_json(params);
            json labels = json::array();
            for (const auto &c : curves)
                labels.push_back(c.first);
            report["curves"] = labels;
            report["medians"] = medians;
            write_text(dir / "run_report.json", report.dump(2) + "\n");
            out << "wrote " << (dir / "compare_rate_coverage.csv").string() << " and median_rate.csv\n";
            return exit_ok;
        }

        // ---------- option registration ----------

        // Subcommands register options with the same names; point Options at the parsed one.
        void bind_parsed(CLI::App *sub, Options &o)
        {
            o.preset_opt = sub->get_option_no_throw("--preset");
            o.fid_opt = sub->get_option_no_throw("--fid");
            o.fcd_opt = sub->get_option_no_throw("--fcd");
            o.rho_opt = sub->get_option_no_throw("--rho");
            o.lambda0_opt = sub->get_option_no_throw("--lambda0");
            o.sinr_opt = sub->get_option_no_throw("--sinr");
            o.rates_opt = sub->get_option_no_throw("--rates");
        }

        void add_params_options(CLI::App *sub, Options &o)
        {
            o.preset_opt = sub->add_option("--preset", o.preset, "Named parameter set (paper-sec5)");
            sub->add_option("--params", o.params_file, "JSON configuration file");
            sub->add_option("--fading", o.fading, "Override fading: rayleigh | nakagami");
            sub->add_option("--operator", o.home_operator, "Home operator of the typical user")->check(CLI::Range(1, 16));
        }

        void add_scenario_options(CLI::App *sub, Options &o)
        {
            sub->add_option("--blocks", o.blocks_file, "Block densities CSV (operators,density_per_km2)");
            o.rho_opt = sub->add_option("--rho", o.rho, "Overlap coefficient of the two-operator scenario");
            o.lambda0_opt = sub->add_option("--lambda0", o.lambda0_km2, "Base density per km^2 (default 30)");
            o.fid_opt = sub->add_option("--fid", o.fid_values, "Fixed-individual-density scheme [rho]")->expected(0, 1);
            o.fcd_opt = sub->add_option("--fcd", o.fcd_values, "Fixed-combined-density scheme [rho]")->expected(0, 1);
        }

        void add_grid_options(CLI::App *sub, Options &o)
        {
            o.sinr_opt = sub->add_option("--sinr", o.sinr_grid, "SINR thresholds lo:step:hi in dB");
            o.rates_opt = sub->add_option("--rates", o.rates_grid, "Rate thresholds lo:step:hi in Mbps");
            sub->add_option("--out", o.out_dir, "Output directory");
            sub->add_flag("--median", o.median, "Also compute the median rate");
            sub->add_flag("--noise-only", o.noise_only, "Drop all interference");
        }

        void add_sim_options(CLI::App *sub, Options &o)
        {
            sub->add_option("--reps", o.reps, "Monte Carlo replications")->check(CLI::PositiveNumber);
            sub->add_option("--seed", o.seed, "Random seed");
            sub->add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1u, 256u));
            sub->add_option("--half-width", o.half_width, "Simulation window half-width in m (default r_max)");
        }
    }

    int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
    {
        Options o;
        CLI::App app{"mmshare: coverage of mmWave networks with shared infrastructure and spectrum", "mmshare"};
        app.require_subcommand(1);

        auto *analyze = app.add_subcommand("analyze", "Analytic SINR / rate coverage (Rayleigh fading)");
        add_params_options(analyze, o);
        add_scenario_options(analyze, o);
        add_grid_options(analyze, o);

        auto *simulate = app.add_subcommand("simulate", "Monte Carlo SINR / rate coverage");
        add_params_options(simulate, o);
        add_scenario_options(simulate, o);
        add_grid_options(simulate, o);
        add_sim_options(simulate, o);
        simulate->add_option("--deployment", o.deployment_file, "Fixed deployment CSV to simulate on");

        auto *estimate = app.add_subcommand("estimate", "Density and overlap estimation from a deployment");
        estimate->add_option("--deployment", o.deployment_file, "Deployment CSV")->required();
        estimate->add_option("--eps-coloc", o.eps_coloc, "Co-location tolerance in m (default 10)");
        estimate->add_option("--bins", o.bins, "Cells per axis k1,k2,... (n = k^2)");
        estimate->add_option("--smoothing", o.smoothing, "Moving-average window (odd, default 5)");
        estimate->add_option("--out", o.out_dir, "Output directory");

        auto *press_cmd = app.add_subcommand("press", "Rescale a deployment to a target density");
        press_cmd->add_option("--deployment", o.deployment_file, "Deployment CSV")->required();
        press_cmd->add_option("--target", o.target_km2, "Target density per km^2")->required();
        press_cmd->add_option("--operator", o.press_operator, "Operator whose density is matched (0 = all sites)")
            ->check(CLI::Range(0, 16));
        press_cmd->add_option("--out", o.out_dir, "Output directory");

        auto *compare = app.add_subcommand("compare", "Shared networks vs single-operator networks (rates)");
        add_params_options(compare, o);
        add_scenario_options(compare, o);
        compare->add_option("--rates", o.rates_grid, "Rate thresholds lo:step:hi in Mbps (default 50:50:1000)");
        compare->add_option("--rhos", o.rhos, "Overlaps to compare (default 0,0.4,1)");
        compare->add_option("--engine", o.engine, "analytic | mc");
        compare->add_option("--out", o.out_dir, "Output directory");
        add_sim_options(compare, o);

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::CallForHelp &)
        {
            out << app.help();
            return exit_ok;
        }
        catch (const CLI::ParseError &e)
        {
            err << "error: " << e.what() << "\n";
            if (app.get_subcommands().empty())
                err << app.help();
            return exit_config;
        }

        try
        {
            for (CLI::App *sub : app.get_subcommands())
                bind_parsed(sub, o);
            if (analyze->parsed())
                return cmd_analyze(o, out);
            if (simulate->parsed())
                return cmd_simulate(o, out);
            if (estimate->parsed())
                return cmd_estimate(o, out);
            if (press_cmd->parsed())
                return cmd_press(o, out);
            if (compare->parsed())
                return cmd_compare(o, out);
        }
        catch (const unsupported_fading &e)
        {
            err << "config error: " << e.what() << " Run 'mmshare simulate' for this fading model.\n";
            return exit_config;
        }
        catch (const config_error &e)
        {
            err << "config error: " << e.what() << "\n";
            return exit_config;
        }
        catch (const data_error &e)
        {
            err << "data error: " << e.what() << "\n";
            return exit_data;
        }
        catch (const numerical_error &e)
        {
            err << "numerical error: " << e.what() << "\n";
            return exit_numerical;
        }
        catch (const std::invalid_argument &e)
        {
            err << "config error: " << e.what() << "\n";
            return exit_config;
        }
        catch (const std::domain_error &e)
        {
            err << "config error: " << e.what() << "\n";
            return exit_config;
        }
        catch (const fs::filesystem_error &e)
        {
            err << "config error: " << e.what() << "\n";
            return exit_config;
        }
        catch (const std::exception &e)
        {
            err << "numerical error: " << e.what() << "\n";
            return exit_numerical;
        }
        return exit_config;
    }

    int run_cli(int argc, const char *const *argv)
    {
        return run_cli(argc, argv, std::cout, std::cerr);
    }
}
