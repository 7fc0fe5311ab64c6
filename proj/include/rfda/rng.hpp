// SPDX-License-Identifier: Apache-2.0
//
// rfda - random frequency diverse array modelling and processing library
// Copyright (C) 2026 The rfda authors
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

#ifndef RFDA_RNG_HPP
#define RFDA_RNG_HPP

#include <cstdint>
#include <random>

namespace rfda
{
    using Engine = std::mt19937_64;

    // Independent stream families derived from one root seed. Values are part
    // of the on-disk reproducibility contract; do not renumber.
    enum class StreamPurpose : std::uint64_t
    {
        frequency_draw = 1,
        noise = 2,
        scene = 3,
        amplitude = 4,
        offsets = 5,
    };

    std::uint64_t splitmix64(std::uint64_t x);

    /// Seed of stream `index` in family `purpose` under `root`. Streams for
    /// distinct (purpose, index) pairs are statistically independent, so Monte
    /// Carlo trials can be evaluated in any order.
    std::uint64_t derive_seed(std::uint64_t root, StreamPurpose purpose, std::uint64_t index);

    Engine make_engine(std::uint64_t seed);

    inline Engine make_stream(std::uint64_t root, StreamPurpose purpose, std::uint64_t index)
    {
        return make_engine(derive_seed(root, purpose, index));
    }
}

#endif
