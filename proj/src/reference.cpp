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

#include "rfda/reference.hpp"

#include <cmath>
#include <stdexcept>

namespace rfda::reference
{
    RVector matched_filter(const EchoMatrix &echo, const ObservingMatrix &obs)
    {
        if (echo.n_elements() != obs.n_rows())
            throw std::invalid_argument("reference::matched_filter: dimension mismatch");
        const double n = static_cast<double>(obs.n_rows());
        const double l = static_cast<double>(echo.n_snapshots());
        RVector out(obs.columns.cols());
        for (Eigen::Index i = 0; i < obs.columns.cols(); ++i)
        {
            double power = 0.0;
            for (Eigen::Index s = 0; s < echo.samples.cols(); ++s)
                power += std::norm(obs.columns.col(i).dot(echo.samples.col(s)));
            out[i] = std::sqrt(power / l) / n;
        }
        return out;
    }

    std::vector<EmpiricalStats> monte_carlo_stats(const FrequencyDistribution &dist, const ArrayConfig &cfg,
                                                  std::span<const NormalizedOffset> offsets,
                                                  const MonteCarloOptions &options)
    {
        if (options.n_trials < 2)
            throw std::invalid_argument("reference::monte_carlo_stats: at least two trials required");
        std::vector<FrequencyDraw> draws;
        for (std::size_t t = 0; t < options.n_trials; ++t)
            draws.push_back(sample_frequencies(dist, cfg.n_elements(),
                                               derive_seed(options.seed, StreamPurpose::frequency_draw, t)));
        std::vector<EmpiricalStats> out;
        for (const NormalizedOffset &o : offsets)
        {
            std::vector<cplx> rhos;
            for (const FrequencyDraw &draw : draws)
                rhos.push_back(std::polar(1.0, -o.alpha()) * beampattern_value(cfg, draw, o));
            out.push_back(summarize_trials(rhos, o.alpha(), options.retain_samples));
        }
        return out;
    }

    CoherenceReport mutual_coherence(const ObservingMatrix &obs)
    {
        const Eigen::Index n_cols = obs.columns.cols();
        if (n_cols < 2)
            throw std::invalid_argument("reference::mutual_coherence: fewer than two columns");
        CoherenceReport out;
        out.mu = -1.0;
        for (Eigen::Index i = 0; i < n_cols; ++i)
            for (Eigen::Index h = i + 1; h < n_cols; ++h)
            {
                const double v = std::abs(obs.columns.col(i).dot(obs.columns.col(h))) /
                                 (obs.columns.col(i).norm() * obs.columns.col(h).norm());
                if (v > out.mu)
                {
                    out.mu = v;
                    out.column_a = static_cast<std::size_t>(i);
                    out.column_b = static_cast<std::size_t>(h);
                }
            }
        out.mu = std::min(out.mu, 1.0);
        out.n_rows = obs.n_rows();
        out.n_ranges = obs.grid.n_ranges();
        return out;
    }
}
