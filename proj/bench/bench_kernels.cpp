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

// Serial reference implementations against the OpenMP kernels, and the
// zero-padding FFT against direct bin-by-bin correlation.

#include <benchmark/benchmark.h>

#include <vector>

#include "rfda/bounds.hpp"
#include "rfda/processing.hpp"
#include "rfda/reference.hpp"
#include "rfda/statistics.hpp"

using namespace rfda;

namespace
{
    ArrayConfig quarter_wave(std::size_t n)
    {
        return ArrayConfig(n, 0.025, 3e9, 1e6);
    }

    struct MfFixture
    {
        ObservingMatrix obs;
        EchoMatrix echo;
    };

    const MfFixture &mf_fixture()
    {
        static const MfFixture f = [] {
            const ArrayConfig cfg = quarter_wave(128);
            const FrequencyDraw draw = sample_frequencies(FrequencyDistribution::discrete_uniform(64), 128, 1);
            TargetScene scene(4);
            scene.add({0.3, 50.0, {1.0, 1.0, 1.0, 1.0}});
            return MfFixture{build_observing_matrix(cfg, draw, DirectionRangeGrid::canonical(cfg, 64)),
                             synthesize_echoes(cfg, draw, scene, 1.0, 2)};
        }();
        return f;
    }

    std::vector<NormalizedOffset> moment_offsets(const ArrayConfig &cfg)
    {
        std::vector<NormalizedOffset> out;
        for (int i = -10; i <= 10; ++i)
            for (int j = -10; j <= 10; ++j)
                out.push_back(NormalizedOffset::normalized(cfg, 0.05 * i, 0.01 * j));
        return out;
    }
}

static void BM_MatchedFilterReference(benchmark::State &state)
{
    const auto &f = mf_fixture();
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::matched_filter(f.echo, f.obs));
}
BENCHMARK(BM_MatchedFilterReference)->Unit(benchmark::kMillisecond);

static void BM_MatchedFilterParallel(benchmark::State &state)
{
    const auto &f = mf_fixture();
    for (auto _ : state)
        benchmark::DoNotOptimize(matched_filter(f.echo, f.obs, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_MatchedFilterParallel)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

static void BM_MonteCarloReference(benchmark::State &state)
{
    const ArrayConfig cfg = quarter_wave(64);
    const auto offsets = moment_offsets(cfg);
    MonteCarloOptions opt;
    opt.n_trials = 200;
    for (auto _ : state)
        benchmark::DoNotOptimize(
            reference::monte_carlo_stats(FrequencyDistribution::discrete_uniform(32), cfg, offsets, opt));
}
BENCHMARK(BM_MonteCarloReference)->Unit(benchmark::kMillisecond);

static void BM_MonteCarloParallel(benchmark::State &state)
{
    const ArrayConfig cfg = quarter_wave(64);
    const auto offsets = moment_offsets(cfg);
    MonteCarloOptions opt;
    opt.n_trials = 200;
    opt.threads = static_cast<int>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(monte_carlo_stats(FrequencyDistribution::discrete_uniform(32), cfg, offsets, opt));
}
BENCHMARK(BM_MonteCarloParallel)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

static void BM_MutualCoherenceReference(benchmark::State &state)
{
    const auto &f = mf_fixture();
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::mutual_coherence(f.obs));
}
BENCHMARK(BM_MutualCoherenceReference)->Unit(benchmark::kMillisecond)->Iterations(1);

static void BM_MutualCoherenceParallel(benchmark::State &state)
{
    const auto &f = mf_fixture();
    for (auto _ : state)
        benchmark::DoNotOptimize(mutual_coherence(f.obs, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_MutualCoherenceParallel)->Arg(1)->Arg(0)->Unit(benchmark::kMillisecond);

static void BM_MutualCoherenceCanonicalFft(benchmark::State &state)
{
    const ArrayConfig cfg = quarter_wave(128);
    const auto &f = mf_fixture();
    for (auto _ : state)
        benchmark::DoNotOptimize(canonical_grid_coherence(cfg, f.obs.draw, 64));
}
BENCHMARK(BM_MutualCoherenceCanonicalFft)->Unit(benchmark::kMicrosecond);

static void BM_ZeroPaddingFft(benchmark::State &state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const int m = static_cast<int>(n / 2);
    const FrequencyDraw draw = sample_frequencies(FrequencyDistribution::discrete_uniform(m), n, 3);
    const CVector y = CVector::Random(static_cast<Eigen::Index>(n));
    for (auto _ : state)
        benchmark::DoNotOptimize(zero_padding_2dfft(y, draw, m));
}
BENCHMARK(BM_ZeroPaddingFft)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

static void BM_DirectBinCorrelation(benchmark::State &state)
{
    const auto n = static_cast<std::size_t>(state.range(0));
    const int m = static_cast<int>(n / 2);
    const FrequencyDraw draw = sample_frequencies(FrequencyDistribution::discrete_uniform(m), n, 3);
    const CVector y = CVector::Random(static_cast<Eigen::Index>(n));
    for (auto _ : state)
        benchmark::DoNotOptimize(direct_bin_correlation(y, draw, m));
}
BENCHMARK(BM_DirectBinCorrelation)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
