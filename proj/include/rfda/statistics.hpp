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

#ifndef RFDA_STATISTICS_HPP
#define RFDA_STATISTICS_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rfda/array_model.hpp"

namespace rfda
{
    // Normalized direction/range offset between a target and a beam position.
    //   q = 2 (sin th1 - sin th2) f_c d / c,  p = 2 (r1 - r2) df / c
    struct NormalizedOffset
    {
        double q = 0;
        double p = 0;
        double delta = 0; // df / f_c

        static NormalizedOffset from_physical(const ArrayConfig &cfg, double theta1, double r1, double theta2,
                                              double r2);
        static NormalizedOffset normalized(const ArrayConfig &cfg, double q, double p)
        {
            return {q, p, cfg.delta()};
        }

        double alpha() const { return 2.0 * kPi * p / delta; }
    };

    struct BeampatternMoments
    {
        Eigen::Vector2d mean;       // (Re, Im) of E{beta}
        Eigen::Matrix2d covariance; // M_beta
        double sigma_r2 = 0;        // variance of Re rho
        double sigma_i2 = 0;        // variance of Im rho
        cplx rho_square_centered;   // E{(rho - E rho)^2}
    };

    struct EmpiricalStats
    {
        std::size_t n_trials = 0;
        cplx mean_est;              // sample mean of beta
        double mean_se = 0;         // standard error of mean_est, sqrt(var_est / n)
        double var_est = 0;         // unbiased E{|beta - mean|^2}
        cplx square_centered_est;   // unbiased E{(rho - mean rho)^2}
        double square_centered_se = 0;
        double rho_re_var = 0;
        double rho_im_var = 0;
        double rho_cross_cov = 0;   // covariance of Re rho and Im rho
        std::vector<std::pair<double, double>> samples; // (Re rho, Im rho) when retained
    };

    // How Monte Carlo trials treat the frequency draw.
    struct MonteCarloOptions
    {
        std::size_t n_trials = 2000;
        std::uint64_t seed = 1;
        bool retain_samples = false;
        int threads = 0; // 0 = OpenMP default, 1 = serial
    };

    struct KsResult
    {
        double statistic = 0;
        double threshold = 0;
        bool pass = false;
    };

    cplx beampattern_value(const ArrayConfig &cfg, const FrequencyDraw &draw, const NormalizedOffset &offset);

    cplx lfda_beampattern(const ArrayConfig &cfg, const NormalizedOffset &offset);

    cplx mean_beampattern(const FrequencyDistribution &dist, const ArrayConfig &cfg, const NormalizedOffset &offset);

    double variance_beampattern(const FrequencyDistribution &dist, const ArrayConfig &cfg, double p);

    BeampatternMoments asymptotic_moments(const FrequencyDistribution &dist, const ArrayConfig &cfg,
                                          const NormalizedOffset &offset);

    /// Pr{|beta(q, p)| > r} from the asymptotic Gaussian law (Rician magnitude).
    /// At p = 0 the pattern is deterministic and the result is the indicator
    /// |Sa_N(q)| / N > r.
    double sidelobe_ccdf(const FrequencyDistribution &dist, const ArrayConfig &cfg, const NormalizedOffset &offset,
                         double r);

    /// Per-offset Monte Carlo estimates over independent frequency draws. Trial t
    /// uses the draw seeded by stream t of `options.seed`, and every reduction runs
    /// in trial order, so the result does not depend on the thread count.
    std::vector<EmpiricalStats> monte_carlo_stats(const FrequencyDistribution &dist, const ArrayConfig &cfg,
                                                  std::span<const NormalizedOffset> offsets,
                                                  const MonteCarloOptions &options);

    /// Reduce per-trial values of rho = exp(-j alpha) beta, in trial order.
    EmpiricalStats summarize_trials(std::span<const cplx> rhos, double alpha, bool retain_samples);

    double ks_critical_coefficient(double alpha);

    /// One-sample KS test of standardized samples against N(0, 1), asymptotic threshold.
    KsResult ks_normality_test(std::span<const double> samples, double alpha = 0.05);

    /// Shift and scale to zero sample mean and unit sample standard deviation.
    std::vector<double> standardize(std::span<const double> samples);
}

#endif
