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

#include <filesystem>
#include <iosfwd>
#include <string>

namespace mmshare
{
    // Deployment CSV:
    //
    //   # window: x_min,x_max,y_min,y_max        (optional, meters)
    //   site_id,x_m,y_m,operators
    //   0,-125.5,310.25,1;2
    //
    // `operators` is a ';'-separated list of 1-based operator indices. Without the window line the
    // bounding box of the sites is used. Numbers are written in shortest round-trip form.
    void write_deployment_csv(std::ostream &out, const Deployment &dep);
    Deployment read_deployment_csv(std::istream &in, const std::string &source = "<stream>");

    void save_deployment_csv(const std::filesystem::path &path, const Deployment &dep);
    Deployment load_deployment_csv(const std::filesystem::path &path);
}
