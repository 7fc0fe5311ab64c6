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

#ifndef RFDA_REFERENCE_HPP
#define RFDA_REFERENCE_HPP

#include <span>
#include <vector>

#include "rfda/bounds.hpp"
#include "rfda/processing.hpp"
#include "rfda/statistics.hpp"

// Plain serial implementations of the parallel kernels. They follow the
// defining formulas directly and are used to check the optimized versions.
namespace rfda::reference
{
    RVector matched_filter(const EchoMatrix &echo, const ObservingMatrix &obs);

    std::vector<EmpiricalStats> monte_carlo_stats(const FrequencyDistribution &dist, const ArrayConfig &cfg,
                                                  std::span<const NormalizedOffset> offsets,
                                                  const MonteCarloOptions &options);

    CoherenceReport mutual_coherence(const ObservingMatrix &obs);
}

#endif
