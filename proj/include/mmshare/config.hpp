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

#include "mmshare/model.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace mmshare
{
    // Named parameter sets. Only "paper-sec5" exists. Throws config_error for unknown names.
    SystemParams preset_params(const std::string &name);

    struct ScenarioConfig
    {
        SystemParams params;
        std::optional<Scenario> scenario;
    };

    // JSON configuration (decibel quantities in dB / dBm, densities per km^2):
    //
    //   {
    //     "preset": "paper-sec5",                     optional base; other keys override it
    //     "carrier_freq_ghz": 28, "bandwidth_mhz": 200, "tx_power_dbm": 26,
    //     "noise_psd_dbm_per_hz": -174, "noise_figure_db": 10, "beta_per_m": 0.007,
    //     "c_los_db": -60, "c_nlos_db": -70, "alpha_los": 2, "alpha_nlos": 4,
    //     "gain_main_db": 18, "gain_side_db": -2, "half_beamwidth_deg": 10,
    //     "user_density_per_km2": 200,
    //     "fading": {"kind": "rayleigh"} |
    //               {"kind": "nakagami_lognormal", "m_los": 2, "m_nlos": 3,
    //                "shadow_sigma_db_los": 5.2, "shadow_sigma_db_nlos": 7.6},
    //     "blocks": [{"operators": [1, 2], "density_per_km2": 10}, ...]       optional, or
    //     "two_operator": {"scheme": "fid" | "fcd", "lambda0_per_km2": 30, "rho": 0.4}
    //                   | {"lambda_total_per_km2": 100, "a": 0.7, "b": 0.2}
    //                   | {"lambda1_per_km2": 30, "lambda2_per_km2": 30, "rho": 0.4}
    //   }
    //
    // Without "preset" every radio key is required. Unknown keys are rejected.
    ScenarioConfig parse_config(const std::string &text, const std::string &source = "<config>");
    ScenarioConfig load_config(const std::filesystem::path &path);

    // Block densities as CSV `operators,density_per_km2`, e.g. `1;2,12.5`.
    BlockModel read_blocks_csv(std::istream &in, const std::string &source = "<stream>");
    BlockModel load_blocks_csv(const std::filesystem::path &path);

    // Parameters in the units of the JSON configuration, for reports.
    std::string params_to_json(const SystemParams &params, int indent = 2);
}
