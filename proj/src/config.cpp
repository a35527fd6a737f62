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

#include "mmshare/config.hpp"
#include "mmshare/errors.hpp"
#include "mmshare/text.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

namespace mmshare
{
    using json = nlohmann::json;

    SystemParams preset_params(const std::string &name)
    {
        if (name == "paper-sec5")
            return paper_sec5_params();
        throw config_error("Unknown preset '" + name + "' (available: paper-sec5).");
    }

    namespace
    {
        double number(const json &obj, const std::string &key, const std::string &where)
        {
            const json &v = obj.at(key);
            if (!v.is_number())
                throw config_error(where + ": '" + key + "' must be a number.");
            const double d = v.get<double>();
            if (!std::isfinite(d))
                throw config_error(where + ": '" + key + "' must be finite.");
            return d;
        }

        void reject_unknown(const json &obj, const std::set<std::string> &allowed, const std::string &where)
        {
            for (const auto &item : obj.items())
                if (!allowed.count(item.key()))
                    throw config_error(where + ": unknown key '" + item.key() + "'.");
        }

        FadingSpec parse_fading(const json &obj, const std::string &where)
        {
            if (!obj.is_object() || !obj.contains("kind") || !obj.at("kind").is_string())
                throw config_error(where + ": 'fading' needs a string 'kind'.");
            const std::string kind = obj.at("kind").get<std::string>();
            if (kind == "rayleigh")
            {
                reject_unknown(obj, {"kind"}, where + ".fading");
                return FadingSpec::rayleigh();
            }
            if (kind == "nakagami_lognormal" || kind == "nakagami")
            {
                reject_unknown(obj, {"kind", "m_los", "m_nlos", "shadow_sigma_db_los", "shadow_sigma_db_nlos"},
                               where + ".fading");
                FadingSpec spec;
                spec.kind = FadingKind::nakagami_lognormal;
                const std::string w = where + ".fading";
                spec.nakagami_m_los = obj.contains("m_los") ? number(obj, "m_los", w) : 1.0;
                spec.nakagami_m_nlos = obj.contains("m_nlos") ? number(obj, "m_nlos", w) : 1.0;
                spec.shadow_sigma_db_los = obj.contains("shadow_sigma_db_los") ? number(obj, "shadow_sigma_db_los", w) : 0.0;
                spec.shadow_sigma_db_nlos =
                    obj.contains("shadow_sigma_db_nlos") ? number(obj, "shadow_sigma_db_nlos", w) : 0.0;
                return spec;
            }
            throw config_error(where + ": unknown fading kind '" + kind + "'.");
        }

        OperatorSet parse_operator_list(const json &list, const std::string &where)
        {
            if (!list.is_array() || list.empty())
                throw config_error(where + ": 'operators' must be a non-empty array.");
            OperatorSet set;
            for (const auto &v : list)
            {
                if (!v.is_number_integer())
                    throw config_error(where + ": operator indices must be integers.");
                const int op = v.get<int>();
                if (op < 1 || op > OperatorSet::max_operators)
                    throw config_error(where + ": operator index " + std::to_string(op) + " outside 1..16.");
                set.insert(op);
            }
            return set;
        }

        TwoOpSpec parse_two_operator(const json &obj, const std::string &where)
        {
            if (!obj.is_object())
                throw config_error(where + ": 'two_operator' must be an object.");
            try
            {
                if (obj.contains("scheme"))
                {
                    reject_unknown(obj, {"scheme", "lambda0_per_km2", "rho"}, where);
                    const std::string scheme = obj.at("scheme").get<std::string>();
                    const double lambda0 = number(obj, "lambda0_per_km2", where) * per_km2;
                    const double rho = number(obj, "rho", where);
                    if (scheme == "fid")
                        return fid_scenario(lambda0, rho);
                    if (scheme == "fcd")
                        return fcd_scenario(lambda0, rho);
                    throw config_error(where + ": scheme must be 'fid' or 'fcd'.");
                }
                if (obj.contains("lambda_total_per_km2"))
                {
                    reject_unknown(obj, {"lambda_total_per_km2", "a", "b"}, where);
                    return TwoOpSpec::from_retention(number(obj, "lambda_total_per_km2", where) * per_km2,
                                                     number(obj, "a", where), number(obj, "b", where));
                }
                reject_unknown(obj, {"lambda1_per_km2", "lambda2_per_km2", "rho"}, where);
                return TwoOpSpec::from_densities(number(obj, "lambda1_per_km2", where) * per_km2,
                                                 number(obj, "lambda2_per_km2", where) * per_km2,
                                                 number(obj, "rho", where));
            }
            catch (const json::exception &e)
            {
                throw config_error(where + ": " + e.what());
            }
            catch (const config_error &)
            {
                throw;
            }
            catch (const std::logic_error &e)
            {
                throw config_error(where + ": " + e.what());
            }
        }
    }

    ScenarioConfig parse_config(const std::string &text, const std::string &source)
    {
        json doc;
        try
        {
            doc = json::parse(text);
        }
        catch (const json::parse_error &e)
        {
            throw config_error(source + ": invalid JSON: " + e.what());
        }
        if (!doc.is_object())
            throw config_error(source + ": top level must be an object.");

        static const std::set<std::string> radio_keys = {
            "carrier_freq_ghz", "bandwidth_mhz", "tx_power_dbm", "noise_psd_dbm_per_hz", "noise_figure_db",
            "beta_per_m", "c_los_db", "c_nlos_db", "alpha_los", "alpha_nlos", "gain_main_db", "gain_side_db",
            "half_beamwidth_deg", "user_density_per_km2"};
        std::set<std::string> allowed = radio_keys;
        allowed.insert({"preset", "fading", "blocks", "two_operator"});
        reject_unknown(doc, allowed, source);

        ScenarioConfig cfg;
        try
        {
            const bool has_preset = doc.contains("preset");
            if (has_preset)
            {
                if (!doc.at("preset").is_string())
                    throw config_error(source + ": 'preset' must be a string.");
                cfg.params = preset_params(doc.at("preset").get<std::string>());
            }
            else
            {
                for (const auto &key : radio_keys)
                    if (!doc.contains(key))
                        throw config_error(source + ": missing '" + key + "' (or give a 'preset').");
            }

            SystemParams &p = cfg.params;
            auto set = [&](const char *key, auto &&apply)
            {
                if (doc.contains(key))
                    apply(number(doc, key, source));
            };
            set("carrier_freq_ghz", [&](double v) { p.carrier_freq_hz = v * 1e9; });
            set("bandwidth_mhz", [&](double v) { p.bandwidth_hz = v * 1e6; });
            set("tx_power_dbm", [&](double v) { p.tx_power_w = dbm_to_watt(v); });
            set("noise_psd_dbm_per_hz", [&](double v) { p.noise_psd_w_per_hz = dbm_to_watt(v); });
            set("noise_figure_db", [&](double v) { p.noise_figure_db = v; });
            set("beta_per_m", [&](double v) { p.beta_per_m = v; });
            set("c_los_db", [&](double v) { p.c_los = db_to_linear(v); });
            set("c_nlos_db", [&](double v) { p.c_nlos = db_to_linear(v); });
            set("alpha_los", [&](double v) { p.alpha_los = v; });
            set("alpha_nlos", [&](double v) { p.alpha_nlos = v; });
            set("gain_main_db", [&](double v) { p.gain_main = db_to_linear(v); });
            set("gain_side_db", [&](double v) { p.gain_side = db_to_linear(v); });
            set("half_beamwidth_deg", [&](double v) { p.half_beamwidth_rad = v * pi / 180.0; });
            set("user_density_per_km2", [&](double v) { p.user_density_per_m2 = v * per_km2; });
            if (doc.contains("fading"))
                p.fading = parse_fading(doc.at("fading"), source);

            if (doc.contains("blocks") && doc.contains("two_operator"))
                throw config_error(source + ": give either 'blocks' or 'two_operator', not both.");
            if (doc.contains("blocks"))
            {
                const json &blocks = doc.at("blocks");
                if (!blocks.is_array())
                    throw config_error(source + ": 'blocks' must be an array.");
                BlockModel model;
                for (std::size_t i = 0; i < blocks.size(); ++i)
                {
                    const std::string where = source + ": blocks[" + std::to_string(i) + "]";
                    const json &b = blocks[i];
                    if (!b.is_object())
                        throw config_error(where + " must be an object.");
                    reject_unknown(b, {"operators", "density_per_km2"}, where);
                    if (!b.contains("operators") || !b.contains("density_per_km2"))
                        throw config_error(where + " needs 'operators' and 'density_per_km2'.");
                    const OperatorSet set = parse_operator_list(b.at("operators"), where);
                    if (model.densities.count(set))
                        throw config_error(where + ": block {" + set.to_string() + "} listed twice.");
                    const double density = number(b, "density_per_km2", where);
                    if (density < 0.0)
                        throw config_error(where + ": density must be >= 0.");
                    model.densities[set] = density * per_km2;
                }
                cfg.scenario = model;
            }
            if (doc.contains("two_operator"))
                cfg.scenario = parse_two_operator(doc.at("two_operator"), source + ": two_operator");

            p.validate();
        }
        catch (const config_error &)
        {
            throw;
        }
        catch (const json::exception &e)
        {
            throw config_error(source + ": " + e.what());
        }
        catch (const std::invalid_argument &e)
        {
            throw config_error(source + ": " + e.what());
        }
        return cfg;
    }

    ScenarioConfig load_config(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw config_error("Cannot open config file '" + path.string() + "'");
        std::ostringstream text;
        text << in.rdbuf();
        return parse_config(text.str(), path.string());
    }

    BlockModel read_blocks_csv(std::istream &in, const std::string &source)
    {
        BlockModel model;
        std::string line;
        std::size_t row = 0;
        bool have_header = false;
        auto fail = [&](const std::string &what)
        { throw data_error(source + ":" + std::to_string(row) + ": " + what); };

        while (std::getline(in, line))
        {
            ++row;
            std::string_view text = trim(line);
            if (text.empty() || text.starts_with('#'))
                continue;
            auto fields = split_fields(text);
            if (!have_header)
            {
                if (fields.size() != 2 || trim(fields[0]) != "operators" || trim(fields[1]) != "density_per_km2")
                    fail("expected header 'operators,density_per_km2'");
                have_header = true;
                continue;
            }
            if (fields.size() != 2)
                fail("expected 2 columns, found " + std::to_string(fields.size()));
            OperatorSet set;
            try
            {
                set = OperatorSet::parse(trim(fields[0]));
            }
            catch (const std::invalid_argument &e)
            {
                fail(std::string("column 'operators': ") + e.what());
            }
            if (set.empty())
                fail("column 'operators': empty operator list");
            auto density = parse_double(fields[1]);
            if (!density || !std::isfinite(*density) || *density < 0.0)
                fail("column 'density_per_km2': '" + std::string(trim(fields[1])) + "' is not a non-negative number");
            if (model.densities.count(set))
                fail("block {" + set.to_string() + "} listed twice");
            model.densities[set] = *density * per_km2;
        }
        if (!have_header)
            throw data_error(source + ": missing header 'operators,density_per_km2'");
        return model;
    }

    BlockModel load_blocks_csv(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw data_error("Cannot open blocks file '" + path.string() + "'");
        return read_blocks_csv(in, path.string());
    }

    std::string params_to_json(const SystemParams &p, int indent)
    {
        nlohmann::ordered_json doc;
        doc["carrier_freq_ghz"] = p.carrier_freq_hz / 1e9;
        doc["bandwidth_mhz"] = p.bandwidth_hz / 1e6;
        doc["tx_power_dbm"] = linear_to_db(p.tx_power_w) + 30.0;
        doc["noise_psd_dbm_per_hz"] = linear_to_db(p.noise_psd_w_per_hz) + 30.0;
        doc["noise_figure_db"] = p.noise_figure_db;
        doc["beta_per_m"] = p.beta_per_m;
        doc["c_los_db"] = linear_to_db(p.c_los);
        doc["c_nlos_db"] = linear_to_db(p.c_nlos);
        doc["alpha_los"] = p.alpha_los;
        doc["alpha_nlos"] = p.alpha_nlos;
        doc["gain_main_db"] = linear_to_db(p.gain_main);
        doc["gain_side_db"] = linear_to_db(p.gain_side);
        doc["half_beamwidth_deg"] = p.half_beamwidth_rad * 180.0 / pi;
        doc["user_density_per_km2"] = p.user_density_per_m2 / per_km2;
        nlohmann::ordered_json fading;
        if (p.fading.kind == FadingKind::rayleigh)
            fading["kind"] = "rayleigh";
        else
        {
            fading["kind"] = "nakagami_lognormal";
            fading["m_los"] = p.fading.nakagami_m_los;
            fading["m_nlos"] = p.fading.nakagami_m_nlos;
            fading["shadow_sigma_db_los"] = p.fading.shadow_sigma_db_los;
            fading["shadow_sigma_db_nlos"] = p.fading.shadow_sigma_db_nlos;
        }
        doc["fading"] = fading;
        return doc.dump(indent);
    }
}
