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

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "rfda/statistics.hpp"

using namespace rfda;

namespace
{
    ArrayConfig quarter_wave(std::size_t n)
    {
        return ArrayConfig(n, 0.025, 3e9, 1e6);
    }

    std::vector<NormalizedOffset> grid_offsets(const ArrayConfig &cfg, int nq, double q0, double dq, int np,
                                               double p0, double dp)
    {
        std::vector<NormalizedOffset> out;
        for (int i = 0; i < nq; ++i)
            for (int j = 0; j < np; ++j)
                out.push_back(NormalizedOffset::normalized(cfg, q0 + i * dq, p0 + j * dp));
        return out;
    }
}

TEST(Beampattern, UnityAtOrigin)
{
    const ArrayConfig cfg = quarter_wave(64);
    const FrequencyDraw draw = sample_frequencies(FrequencyDistribution::discrete_uniform(32), 64, 4);
    const cplx b = beampattern_value(cfg, draw, NormalizedOffset::normalized(cfg, 0.0, 0.0));
    EXPECT_NEAR(std::abs(b - cplx(1.0, 0.0)), 0.0, 1e-14);
}

TEST(Beampattern, ZeroRangeOffsetIsDirichletOverN)
{
    const ArrayConfig cfg = quarter_wave(64);
    const FrequencyDraw draw = sample_frequencies(FrequencyDistribution::gaussian(5.0), 64, 4);
    for (double q : {-0.77, -0.2, 0.013, 0.25, 0.5})
    {
        const cplx b = beampattern_value(cfg, draw, NormalizedOffset::normalized(cfg, q, 0.0));
        EXPECT_NEAR(std::abs(b - cplx(dirichlet_kernel(64, q) / 64.0, 0.0)), 0.0, 1e-13);
    }
}

TEST(Beampattern, EqualsNormalizedSteeringInnerProduct)
{
    const ArrayConfig cfg = quarter_wave(128);
    const FrequencyDraw draw = sample_frequencies(FrequencyDistribution::discrete_uniform(64), 128, 8);
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> angle(-kPi / 2, kPi / 2);
    std::uniform_real_distribution<double> range(0.0, 10.0);
    for (int trial = 0; trial < 100; ++trial)
    {
        const double t1 = angle(rng), r1 = range(rng), t2 = angle(rng), r2 = range(rng);
        const CVector b1 = steering_vector(cfg, draw, t1, r1);
        const CVector b2 = steering_vector(cfg, draw, t2, r2);
        const cplx inner = b1.dot(b2) / 128.0;
        const cplx beta = beampattern_value(cfg, draw, NormalizedOffset::from_physical(cfg, t1, r1, t2, r2));
        EXPECT_LT(std::abs(inner - beta), 1e-12) << "trial " << trial;
    }
}

TEST(Beampattern, ConjugateSymmetry)
{
    const ArrayConfig cfg = quarter_wave(32);
    const FrequencyDraw draw = sample_frequencies(FrequencyDistribution::continuous_uniform(16.0), 32, 5);
    for (double q : {-0.3, 0.11, 0.4})
        for (double p : {-0.2, 0.03, 0.31})
        {
            const cplx a = beampattern_value(cfg, draw, NormalizedOffset::normalized(cfg, q, p));
            const cplx b = beampattern_value(cfg, draw, NormalizedOffset::normalized(cfg, -q, -p));
            EXPECT_NEAR(std::abs(a - std::conj(b)), 0.0, 1e-12);
        }
}

TEST(LfdaBeampattern, RidgeAlongAntiDiagonal)
{
    const ArrayConfig cfg = quarter_wave(64);
    for (double q : {-0.4, 0.0, 0.1, 0.37})
    {
        EXPECT_NEAR(std::abs(lfda_beampattern(cfg, NormalizedOffset::normalized(cfg, q, -q))), 1.0, 1e-12);
        EXPECT_NEAR(std::abs(lfda_beampattern(cfg, NormalizedOffset::normalized(cfg, q, 1.0 / 64.0 - q))), 0.0,
                    1e-12);
    }
    const double a = std::abs(lfda_beampattern(cfg, NormalizedOffset::normalized(cfg, 0.2, 0.05)));
    const double b = std::abs(lfda_beampattern(cfg, NormalizedOffset::normalized(cfg, -0.15, 0.4)));
    EXPECT_NEAR(a, b, 1e-12);
    const cplx via_draw = beampattern_value(cfg, linear_fda_draw(64), NormalizedOffset::normalized(cfg, 0.2, 0.05));
    EXPECT_NEAR(std::abs(via_draw - lfda_beampattern(cfg, NormalizedOffset::normalized(cfg, 0.2, 0.05))), 0.0,
                1e-12);
}

TEST(MeanBeampattern, GaussianMagnitudeClosedForm)
{
    const ArrayConfig cfg = quarter_wave(64);
    const auto dist = FrequencyDistribution::gaussian(5.0);
    const auto o = NormalizedOffset::normalized(cfg, 0.01, 0.1);
    const double expected = std::abs(dirichlet_kernel(64, 0.01)) / 64.0 * 0.007191883355826366;
    EXPECT_NEAR(std::abs(mean_beampattern(dist, cfg, o)), expected, 1e-15);
}

TEST(MeanBeampattern, MonteCarloWithinThreeStandardErrors)
{
    const ArrayConfig cfg = quarter_wave(64);
    const auto dist = FrequencyDistribution::discrete_uniform(32);
    const NormalizedOffset o = NormalizedOffset::normalized(cfg, 0.2, 0.05);
    MonteCarloOptions opt;
    opt.n_trials = 10000;
    opt.seed = 17;
    const auto stats = monte_carlo_stats(dist, cfg, std::span(&o, 1), opt);
    EXPECT_LT(std::abs(stats[0].mean_est - mean_beampattern(dist, cfg, o)), 3.0 * stats[0].mean_se);
}

TEST(VarianceBeampattern, Values)
{
    const ArrayConfig cfg = quarter_wave(64);
    const auto du = FrequencyDistribution::discrete_uniform(32);
    EXPECT_EQ(variance_beampattern(du, cfg, 0.0), 0.0);
    EXPECT_NEAR(variance_beampattern(du, cfg, 1.0 / 32.0), 1.0 / 64.0, 1e-15);
    EXPECT_NEAR(variance_beampattern(du, cfg, 3.0 / 32.0), 1.0 / 64.0, 1e-15);
}

TEST(VarianceBeampattern, MonteCarloWithinTenPercent)
{
    const ArrayConfig cfg = quarter_wave(64);
    const auto dist = FrequencyDistribution::discrete_uniform(32);
    const NormalizedOffset o = NormalizedOffset::normalized(cfg, 0.3, 0.05);
    MonteCarloOptions opt;
    opt.n_trials = 10000;
    opt.seed = 21;
    const auto stats = monte_carlo_stats(dist, cfg, std::span(&o, 1), opt);
    const double th = variance_beampattern(dist, cfg, 0.05);
    EXPECT_NEAR(stats[0].var_est, th, 0.1 * th);
}

TEST(AsymptoticMoments, DegenerateAtZeroRangeOffset)
{
    const ArrayConfig cfg = quarter_wave(64);
    const auto m = asymptotic_moments(FrequencyDistribution::gaussian(5.0), cfg,
                                      NormalizedOffset::normalized(cfg, 0.3, 0.0));
    EXPECT_NEAR(m.covariance.norm(), 0.0, 1e-15);
    EXPECT_NEAR(m.sigma_r2, 0.0, 1e-15);
    EXPECT_NEAR(m.sigma_i2, 0.0, 1e-15);
    EXPECT_NEAR(std::abs(m.rho_square_centered), 0.0, 1e-15);
}

TEST(AsymptoticMoments, CircularWhenCharacteristicFunctionVanishes)
{
    const ArrayConfig cfg = quarter_wave(64);
    const auto du = FrequencyDistribution::discrete_uniform(32);
    // Phi(1/32) = Phi(2/32) = 0
    const auto m = asymptotic_moments(du, cfg, NormalizedOffset::normalized(cfg, 0.0, 1.0 / 32.0));
    EXPECT_NEAR(m.sigma_r2, 1.0 / 128.0, 1e-15);
    EXPECT_NEAR(m.sigma_i2, 1.0 / 128.0, 1e-15);
    EXPECT_NEAR(std::abs(m.rho_square_centered), 0.0, 1e-15);
}

TEST(AsymptoticMoments, CovarianceIsPsdWithVarianceTrace)
{
    const ArrayConfig cfg = quarter_wave(64);
    const FrequencyDistribution laws[] = {FrequencyDistribution::gaussian(5.0),
                                          FrequencyDistribution::continuous_uniform(32.0),
                                          FrequencyDistribution::discrete_uniform(32)};
    for (const auto &dist : laws)
        for (const auto &o : grid_offsets(cfg, 11, -0.5, 0.1, 11, -0.1, 0.02))
        {
            const auto m = asymptotic_moments(dist, cfg, o);
            EXPECT_NEAR(m.covariance.trace(), variance_beampattern(dist, cfg, o.p), 1e-14);
            Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m.covariance);
            EXPECT_GE(es.eigenvalues().minCoeff(), -1e-15);
            EXPECT_NEAR(m.covariance(0, 1), m.covariance(1, 0), 1e-18);
        }
}

TEST(AsymptoticMoments, SquareCenteredMatchesMonteCarlo)
{
    const ArrayConfig cfg = quarter_wave(32);
    const auto dist = FrequencyDistribution::discrete_uniform(16);
    const auto offsets = grid_offsets(cfg, 20, -0.5, 0.05, 20, -0.25, 0.025);
    MonteCarloOptions opt;
    opt.n_trials = 10000;
    opt.seed = 5;
    const auto stats = monte_carlo_stats(dist, cfg, offsets, opt);
    int failures = 0;
    for (std::size_t k = 0; k < offsets.size(); ++k)
    {
        const cplx th = asymptotic_moments(dist, cfg, offsets[k]).rho_square_centered;
        const double tol = std::max(3.0 * stats[k].square_centered_se, 1e-12);
        if (std::abs(stats[k].square_centered_est - th) > tol)
            ++failures;
    }
    EXPECT_EQ(failures, 0);
}

TEST(AsymptoticMoments, ComponentsNearlyUncorrelated)
{
    const ArrayConfig cfg = quarter_wave(64);
    const auto dist = FrequencyDistribution::gaussian(5.0);
    const auto offsets = grid_offsets(cfg, 3, 0.13, 0.2, 3, 0.05, 0.1);
    MonteCarloOptions opt;
    opt.n_trials = 10000;
    const auto stats = monte_carlo_stats(dist, cfg, offsets, opt);
    for (const auto &s : stats)
        EXPECT_LT(std::abs(s.rho_cross_cov), 1e-2);
}

TEST(SidelobeCcdf, Limits)
{
    const ArrayConfig cfg = quarter_wave(64);
    const auto du = FrequencyDistribution::discrete_uniform(32);
    const auto o = NormalizedOffset::normalized(cfg, 0.3, 0.07);
    EXPECT_NEAR(sidelobe_ccdf(du, cfg, o, 0.0), 1.0, 1e-12);
    // Phi = 0: Rayleigh tail
    const auto z = NormalizedOffset::normalized(cfg, 0.3, 1.0 / 32.0);
    for (double r : {0.05, 0.1, 0.2, 0.3})
        EXPECT_NEAR(sidelobe_ccdf(du, cfg, z, r), std::exp(-64.0 * r * r), 1e-10);
    // deterministic at p = 0
    const auto d = NormalizedOffset::normalized(cfg, 0.0, 0.0);
    EXPECT_EQ(sidelobe_ccdf(du, cfg, d, 0.5), 1.0);
    EXPECT_EQ(sidelobe_ccdf(du, cfg, NormalizedOffset::normalized(cfg, 1.0 / 64.0, 0.0), 0.5), 0.0);
    EXPECT_THROW(sidelobe_ccdf(du, cfg, o, -0.1), std::invalid_argument);
}

TEST(SidelobeCcdf, MatchesEmpiricalExceedance)
{
    const ArrayConfig cfg = quarter_wave(64);
    const auto dist = FrequencyDistribution::discrete_uniform(32);
    const auto o = NormalizedOffset::normalized(cfg, 1.0 / 128.0, 0.031);
    MonteCarloOptions opt;
    opt.n_trials = 10000;
    opt.seed = 3;
    opt.retain_samples = true;
    const auto stats = monte_carlo_stats(dist, cfg, std::span(&o, 1), opt);
    for (double r : {0.3, 0.4, 0.5, 0.6})
    {
        int above = 0;
        for (const auto &[re, im] : stats[0].samples)
            above += std::hypot(re, im) > r;
        const double emp = above / 10000.0;
        const double th = sidelobe_ccdf(dist, cfg, o, r);
        const double se = std::sqrt(th * (1.0 - th) / 10000.0);
        EXPECT_NEAR(emp, th, 3.0 * se + 1e-12) << "r=" << r;
    }
}

TEST(MonteCarloStats, SingleLevelHasNoSpread)
{
    const ArrayConfig cfg = quarter_wave(16);
    const auto offsets = grid_offsets(cfg, 3, -0.2, 0.2, 3, -0.1, 0.1);
    MonteCarloOptions opt;
    opt.n_trials = 50;
    const auto stats = monte_carlo_stats(FrequencyDistribution::discrete_uniform(1), cfg, offsets, opt);
    for (const auto &s : stats)
        EXPECT_LT(s.var_est, 1e-28);
}

TEST(MonteCarloStats, ZeroRangeOffsetMeanIsDirichlet)
{
    const ArrayConfig cfg = quarter_wave(64);
    const NormalizedOffset o = NormalizedOffset::normalized(cfg, 0.17, 0.0);
    MonteCarloOptions opt;
    opt.n_trials = 200;
    const auto stats = monte_carlo_stats(FrequencyDistribution::gaussian(5.0), cfg, std::span(&o, 1), opt);
    EXPECT_NEAR(std::abs(stats[0].mean_est - dirichlet_kernel(64, 0.17) / 64.0), 0.0, 1e-14);
}

TEST(MonteCarloStats, RejectsSingleTrial)
{
    const ArrayConfig cfg = quarter_wave(8);
    const NormalizedOffset o = NormalizedOffset::normalized(cfg, 0.1, 0.1);
    MonteCarloOptions opt;
    opt.n_trials = 1;
    EXPECT_THROW(monte_carlo_stats(FrequencyDistribution::gaussian(1.0), cfg, std::span(&o, 1), opt),
                 std::invalid_argument);
}

TEST(KsTest, CriticalCoefficient)
{
    EXPECT_NEAR(ks_critical_coefficient(0.05), 1.3581, 5e-5);
    EXPECT_THROW(ks_critical_coefficient(0.0), std::invalid_argument);
    EXPECT_THROW(ks_critical_coefficient(1.0), std::invalid_argument);
}

TEST(KsTest, NominalPassRateOnNormalSamples)
{
    std::mt19937_64 rng(77);
    std::normal_distribution<double> normal;
    int passes = 0;
    const int runs = 400;
    for (int r = 0; r < runs; ++r)
    {
        std::vector<double> x(10000);
        for (auto &v : x)
            v = normal(rng);
        passes += ks_normality_test(x, 0.05).pass;
    }
    const double rate = static_cast<double>(passes) / runs;
    EXPECT_GT(rate, 0.92);
    EXPECT_LT(rate, 0.98);
}

TEST(KsTest, RejectsUniformSamples)
{
    std::mt19937_64 rng(78);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> x(10000);
    for (auto &v : x)
        v = u(rng);
    EXPECT_FALSE(ks_normality_test(standardize(x), 0.05).pass);
    EXPECT_THROW(ks_normality_test(std::vector<double>(49, 0.0)), std::invalid_argument);
}

TEST(Standardize, ZeroMeanUnitDeviation)
{
    const std::vector<double> x{1.0, 2.0, 4.0, 8.0, 16.0};
    const auto z = standardize(x);
    double mean = 0.0, ss = 0.0;
    for (double v : z)
        mean += v;
    mean /= 5.0;
    for (double v : z)
        ss += (v - mean) * (v - mean);
    EXPECT_NEAR(mean, 0.0, 1e-15);
    EXPECT_NEAR(ss / 4.0, 1.0, 1e-14);
    EXPECT_THROW(standardize(std::vector<double>{3.0, 3.0}), std::invalid_argument);
}
