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

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

namespace mmshare
{
    struct QuadOptions
    {
        double abs_tol = 1e-9;
        double rel_tol = 1e-7;
        int max_intervals = 4000;
    };

    struct QuadResult
    {
        double value = 0.0;
        double error = 0.0;
        int intervals = 0;
        bool converged = false;
    };

    // Globally adaptive Gauss-Kronrod (21-point) integration of f over [points.front(), points.back()]
    // starting from the partition given by the ascending breakpoints. The piece with the largest
    // error estimate is bisected until the summed estimate meets max(abs_tol, rel_tol * |value|)
    // or max_intervals is reached.
    template <class F>
    QuadResult integrate(F &&f, const std::vector<double> &points, const QuadOptions &opts = {})
    {
        using rule = boost::math::quadrature::gauss_kronrod<double, 21>;
        QuadResult out;

        struct Piece
        {
            double a, b, value, error;
            bool operator<(const Piece &other) const { return error < other.error; }
        };
        auto evaluate = [&](double lo, double hi)
        {
            double err = 0.0;
            double v = rule::integrate(f, lo, hi, 0, 0.0, &err);
            return Piece{lo, hi, v, err};
        };

        std::vector<Piece> pieces;
        for (std::size_t i = 0; i + 1 < points.size(); ++i)
            if (points[i + 1] > points[i])
                pieces.push_back(evaluate(points[i], points[i + 1]));
        if (pieces.empty())
        {
            out.converged = true;
            return out;
        }

        double total = 0.0;
        double total_err = 0.0;
        for (const auto &p : pieces)
        {
            total += p.value;
            total_err += p.error;
        }
        int intervals = int(pieces.size());
        std::priority_queue<Piece> queue(std::less<Piece>(), std::move(pieces));

        auto target = [&]
        { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };

        while (total_err > target() && intervals < opts.max_intervals)
        {
            Piece worst = queue.top();
            const double mid = 0.5 * (worst.a + worst.b);
            if (!(mid > worst.a && mid < worst.b))
                break; // interval exhausted in floating point
            queue.pop();
            Piece left = evaluate(worst.a, mid);
            Piece right = evaluate(mid, worst.b);
            total += left.value + right.value - worst.value;
            total_err += left.error + right.error - worst.error;
            queue.push(left);
            queue.push(right);
            ++intervals;

            // re-sum periodically to keep cancellation error out of the running totals
            if (intervals % 64 == 0)
            {
                auto copy = queue;
                total = 0.0;
                total_err = 0.0;
                while (!copy.empty())
                {
                    total += copy.top().value;
                    total_err += copy.top().error;
                    copy.pop();
                }
            }
        }

        out.value = total;
        out.error = total_err;
        out.intervals = intervals;
        out.converged = total_err <= target();
        return out;
    }

    template <class F>
    QuadResult integrate(F &&f, double a, double b, const QuadOptions &opts = {})
    {
        return integrate(std::forward<F>(f), std::vector<double>{a, b}, opts);
    }

    // Integral of f over [lo, inf) through t = lo + scale * v / (1 - v), v in [0, 1), starting from
    // `pieces` equal parts in v. The scale should match the length over which f decays.
    template <class F>
    QuadResult integrate_to_infinity(F &&f, double lo, double scale, const QuadOptions &opts = {}, int pieces = 8)
    {
        auto mapped = [&](double v) -> double
        {
            const double w = 1.0 - v;
            if (w <= 0.0)
                return 0.0;
            const double t = lo + scale * v / w;
            if (!std::isfinite(t))
                return 0.0;
            return f(t) * scale / (w * w);
        };
        std::vector<double> points(std::size_t(std::max(pieces, 1)) + 1);
        for (std::size_t i = 0; i < points.size(); ++i)
            points[i] = double(i) / double(points.size() - 1);
        return integrate(mapped, points, opts);
    }
}
