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

#include "mmshare/curve.hpp"
#include "mmshare/errors.hpp"
#include "mmshare/text.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace mmshare
{
    static const char *unit_column(ThresholdUnit unit)
    {
        return unit == ThresholdUnit::sinr_db ? "threshold_db" : "rate_bps";
    }

    void CoverageCurve::validate() const
    {
        if (probabilities.size() != thresholds.size())
            throw std::invalid_argument("CoverageCurve: thresholds and probabilities differ in length.");
        if (has_ci() && ci_halfwidth.size() != thresholds.size())
            throw std::invalid_argument("CoverageCurve: confidence half-widths differ in length.");
        for (std::size_t i = 0; i < thresholds.size(); ++i)
        {
            if (i > 0 && !(thresholds[i] > thresholds[i - 1]))
                throw std::invalid_argument("CoverageCurve: thresholds must be strictly ascending.");
            if (!(probabilities[i] >= 0.0 && probabilities[i] <= 1.0))
                throw std::invalid_argument("CoverageCurve: probability outside [0, 1].");
        }
    }

    double CoverageCurve::max_increase() const
    {
        double worst = 0.0;
        for (std::size_t i = 1; i < probabilities.size(); ++i)
            worst = std::max(worst, probabilities[i] - probabilities[i - 1]);
        return worst;
    }

    double wilson_halfwidth(std::size_t successes, std::size_t trials, double z)
    {
        if (trials == 0)
            throw std::invalid_argument("wilson_halfwidth: no trials.");
        const double n = double(trials);
        const double p = double(successes) / n;
        const double z2 = z * z;
        return z / (1.0 + z2 / n) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    }

    std::vector<double> make_grid(double lo, double step, double hi)
    {
        if (!(step > 0.0) || !(hi >= lo) || !std::isfinite(lo) || !std::isfinite(hi))
            throw std::invalid_argument("Grid needs step > 0 and hi >= lo.");
        const auto count = std::size_t(std::floor((hi - lo) / step + 1e-9)) + 1;
        if (count > 1000000)
            throw std::invalid_argument("Grid has more than 10^6 points.");
        std::vector<double> grid(count);
        for (std::size_t i = 0; i < count; ++i)
            grid[i] = lo + double(i) * step;
        return grid;
    }

    void write_curve_csv(std::ostream &out, const CoverageCurve &curve)
    {
        curve.validate();
        out << unit_column(curve.unit) << ",probability";
        if (curve.has_ci())
            out << ",ci_halfwidth";
        out << '\n';
        for (std::size_t i = 0; i < curve.size(); ++i)
        {
            out << format_double(curve.thresholds[i]) << ',' << format_double(curve.probabilities[i]);
            if (curve.has_ci())
                out << ',' << format_double(curve.ci_halfwidth[i]);
            out << '\n';
        }
    }

    CoverageCurve read_curve_csv(std::istream &in, const std::string &source)
    {
        CoverageCurve curve;
        std::string line;
        std::size_t row = 0;
        bool have_header = false;
        std::size_t columns = 0;
        auto fail = [&](const std::string &what)
        { throw data_error(source + ":" + std::to_string(row) + ": " + what); };

        while (std::getline(in, line))
        {
            ++row;
            std::string_view text = trim(line);
            if (text.empty())
                continue;
            auto fields = split_fields(text);
            if (!have_header)
            {
                if (fields.size() < 2 || fields.size() > 3 || trim(fields[1]) != "probability" ||
                    (fields.size() == 3 && trim(fields[2]) != "ci_halfwidth"))
                    fail("expected header '<threshold_db|rate_bps>,probability[,ci_halfwidth]'");
                if (trim(fields[0]) == "threshold_db")
                    curve.unit = ThresholdUnit::sinr_db;
                else if (trim(fields[0]) == "rate_bps")
                    curve.unit = ThresholdUnit::rate_bps;
                else
                    fail("unknown threshold column '" + std::string(trim(fields[0])) + "'");
                columns = fields.size();
                curve.kind = columns == 3 ? CurveKind::empirical : CurveKind::analytic;
                have_header = true;
                continue;
            }
            if (fields.size() != columns)
                fail("expected " + std::to_string(columns) + " columns, found " + std::to_string(fields.size()));
            static const char *names[] = {"threshold", "probability", "ci_halfwidth"};
            double values[3] = {0, 0, 0};
            for (std::size_t c = 0; c < columns; ++c)
            {
                auto v = parse_double(fields[c]);
                if (!v)
                    fail(std::string("column '") + names[c] + "': '" + std::string(trim(fields[c])) +
                         "' is not a number");
                values[c] = *v;
            }
            curve.thresholds.push_back(values[0]);
            curve.probabilities.push_back(values[1]);
            if (columns == 3)
                curve.ci_halfwidth.push_back(values[2]);
        }
        if (!have_header)
            throw data_error(source + ": missing curve header");
        try
        {
            curve.validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw data_error(source + ": " + e.what());
        }
        return curve;
    }

    void save_curve_csv(const std::filesystem::path &path, const CoverageCurve &curve)
    {
        std::ofstream out(path, std::ios::binary);
        if (!out)
            throw data_error("Cannot open '" + path.string() + "' for writing");
        write_curve_csv(out, curve);
    }

    CoverageCurve load_curve_csv(const std::filesystem::path &path)
    {
        std::ifstream in(path, std::ios::binary);
        if (!in)
            throw data_error("Cannot open curve file '" + path.string() + "'");
        return read_curve_csv(in, path.string());
    }
}
