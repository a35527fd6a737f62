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

#include <cstdint>
#include <initializer_list>
#include <random>

namespace mmshare
{
    using Rng = std::mt19937_64;

    // Stream purposes. Every random draw in the library comes from a stream keyed by
    // (user seed, purpose, indices...), so results never depend on evaluation order.
    enum class StreamTag : std::uint64_t
    {
        block = 1,
        mother = 2,
        blockage = 3,
        radio = 4,
        replication = 5,
        user_position = 6,
        clusters = 7,
        test = 99
    };

    // SplitMix64 finalizer.
    constexpr std::uint64_t mix64(std::uint64_t z)
    {
        z += 0x9e3779b97f4a7c15ull;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Derives a child key from a parent key and a path of indices.
    constexpr std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> path)
    {
        std::uint64_t key = mix64(seed);
        for (std::uint64_t step : path)
            key = mix64(key ^ mix64(step + 0x632be59bd9b4e019ull));
        return key;
    }

    inline Rng make_stream(std::uint64_t seed, StreamTag tag, std::initializer_list<std::uint64_t> path = {})
    {
        std::uint64_t key = derive_seed(seed, {static_cast<std::uint64_t>(tag)});
        for (std::uint64_t step : path)
            key = derive_seed(key, {step});
        return Rng(key);
    }

    // Uniform double in [0, 1) with 53 random bits.
    inline double uniform01(Rng &rng)
    {
        return double(rng() >> 11) * 0x1.0p-53;
    }
}
