/* Copyright 2026 The Capalloc Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

/*! \file capalloc/math/rng.hpp
    \brief Seeded, partition-stable random streams.

    Simulations are split into fixed-size scenario blocks; every block draws
    from its own substream keyed on (seed, block index).  Results therefore do
    not depend on how blocks are assigned to worker threads.
*/

#pragma once

#include <cstdint>
#include <random>

#include "capalloc/math/normal.hpp"

namespace capalloc::math {

//! splitmix64 finalizer; good avalanche, cheap.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

//! Deterministic substream seed for a (seed, stream) pair.
inline std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
    return mix64(mix64(seed) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

//! Uniform/normal draws for one substream.  Normals come from the inverse
//! distribution function so the sequence is pinned by this library, not by
//! the standard library's unspecified normal_distribution.
class RandomStream {
public:
    RandomStream(std::uint64_t seed, std::uint64_t stream)
        : engine_(substream_seed(seed, stream)) {}

    //! Uniform draw strictly inside (0, 1).
    double uniform() {
        const std::uint64_t r = engine_() >> 11; // 53 bits
        return (static_cast<double>(r) + 0.5) * 0x1p-53;
    }

    double normal() { return norm_ppf(uniform()); }

private:
    std::mt19937_64 engine_;
};

} // namespace capalloc::math
