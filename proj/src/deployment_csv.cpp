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

#include "mmshare/deployment_csv.hpp"
#include "mmshare/errors.hpp"
#include "mmshare/text.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

namespace mmshare
{
    static constexpr std::string_view header_line = "site_id,x_m,y_m,operators";
    static constexpr std::string_view window_prefix = "# window:";

    void write_deployment_csv(std::ostream &out, const Deployment &dep)
    {
        const auto &w = dep.window;
        out << window_prefix << ' ' << format_double(w.x_min) << ',' << format_double(w.x_max) << ','
            << format_double(w.y_min) << ',' << format_double(w.y_max) << '\n';
        out << header_line << '\n';
        for (const auto &site : dep.sites)
        {
            out << site.id << ',' << format_double(site.position.x) << ',' << format_double(site.position.y) << ','
                << site.occupants.to_string() << '\n';
        }
    }

    Deployment read_deployment_csv(std::istream &in, const std::string &source)
    {
        Deployment dep;
        bool have_window = false;
        bool have_header = false;
        std::string line;
        std::size_t row = 0;

        auto fail = [&](const std::string &what)
        {
            throw data_error(source + ":" + std::to_string(row) + ": " + what);
        };

        while (std::getline(in, line))
        {
            ++row;
            std::string_view text = trim(line);
            if (text.empty())
                continue;

            if (text.starts_with('#'))
            {
                if (text.starts_with(window_prefix))
                {
                    auto fields = split_fields(text.substr(window_prefix.size()));
                    if (fields.size() != 4)
                        fail("window line needs 4 values x_min,x_max,y_min,y_max");
                    double v[4];
                    for (int i = 0; i < 4; ++i)
                    {
                        auto parsed = parse_double(fields[i]);
                        if (!parsed)
                            fail("window value " + std::to_string(i + 1) + " is not a number");
                        v[i] = *parsed;
                    }
                    dep.window = {v[0], v[1], v[2], v[3]};
                    try
                    {
                        dep.window.validate();
                    }
                    catch (const std::invalid_argument &e)
                    {
                        fail(e.what());
                    }
                    have_window = true;
                }
                continue;
            }

            if (!have_header)
            {
                auto columns = split_fields(text);
                std::vector<std::string_view> expected = split_fields(header_line);
                if (columns.size() != expected.size())
                    fail("expected header '" + std::string(header_line) + "'");
                for (std::size_t i = 0; i < columns.size(); ++i)
                    if (trim(columns[i]) != expected[i])
                        fail("column " + std::to_string(i + 1) + " is '" + std::string(trim(columns[i])) +
                             "', expected '" + std::string(expected[i]) + "'");
                have_header = true;
                continue;
            }

            auto fields = split_fields(text);
            if (fields.size() != 4)
                fail("expected 4 columns, found " + std::to_string(fields.size()));

            Site site;
            auto id_text = trim(fields[0]);
            auto [ptr, ec] = std::from_chars(id_text.data(), id_text.data() + id_text.size(), site.id);
            if (id_text.empty() || ec != std::errc() || ptr != id_text.data() + id_text.size())
                fail("column 'site_id': '" + std::string(id_text) + "' is not a non-negative integer");
            auto x = parse_double(fields[1]);
            if (!x || !std::isfinite(*x))
                fail("column 'x_m': '" + std::string(trim(fields[1])) + "' is not a number");
            auto y = parse_double(fields[2]);
            if (!y || !std::isfinite(*y))
                fail("column 'y_m': '" + std::string(trim(fields[2])) + "' is not a number");
            try
            {
                site.occupants = OperatorSet::parse(trim(fields[3]));
            }
            catch (const std::invalid_argument &e)
            {
                fail(std::string("column 'operators': ") + e.what());
            }
            if (site.occupants.empty())
                fail("column 'operators': empty operator list");
            site.position = {*x, *y};
            dep.sites.push_back(site);
        }

        if (!have_header)
            throw data_error(source + ": missing header '" + std::string(header_line) + "'");

        if (!have_window)
        {
            if (dep.sites.empty())
                throw data_error(source + ": no sites and no window line; cannot infer the window");
            double inf = std::numeric_limits<double>::infinity();
            Window box{inf, -inf, inf, -inf};
            for (const auto &s : dep.sites)
            {
                box.x_min = std::min(box.x_min, s.position.x);
                box.x_max = std::max(box.x_max, s.position.x);
                box.y_min = std::min(box.y_min, s.position.y);
                box.y_max = std::max(box.y_max, s.position.y);
            }
            if (!(box.x_max > box.x_min) || !(box.y_max > box.y_min))
                throw data_error(source + ": sites span a degenerate bounding box; add a '# window:' line");
            dep.window = box;
        }
        else
        {
            for (const auto &s : dep.sites)
                if (!dep.window.contains(s.position))
                    throw data_error(source + ": site " + std::to_string(s.id) + " lies outside the declared window");
        }
        return dep;
    }

    void save_deployment_csv(const std::filesystem::path &path, const Deployment &dep)
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw data_error("Cannot open '" + path.string() + "' for writing");
        write_deployment_csv(out, dep);
        if (!out)
            throw data_error("Failed writing '" + path.string() + "'");
    }

    Deployment load_deployment_csv(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw data_error("Cannot open deployment file '" + path.string() + "'");
        return read_deployment_csv(in, path.string());
    }
}
