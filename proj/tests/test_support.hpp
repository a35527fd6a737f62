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

#include "mmshare/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace test_support
{
    // |a - b| <= tol * max(|a|, |b|), with exact equality accepted.
    inline bool rel_close(double a, double b, double tol)
    {
        if (a == b)
            return true;
        return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
    }

    inline mmshare::Rng rng(std::uint64_t seed)
    {
        return mmshare::make_stream(seed, mmshare::StreamTag::test);
    }

    inline double uniform(mmshare::Rng &r, double lo, double hi)
    {
        return lo + (hi - lo) * mmshare::uniform01(r);
    }

    inline double log_uniform(mmshare::Rng &r, double lo, double hi)
    {
        return std::exp(uniform(r, std::log(lo), std::log(hi)));
    }
}
