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

#ifndef RFDA_EXPERIMENTS_HPP
#define RFDA_EXPERIMENTS_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rfda/array_model.hpp"
#include "rfda/table_io.hpp"

namespace rfda
{
    enum class Scenario
    {
        beampattern,
        moments,
        ks,
        detect_example,
        detect_sweep,
        crb_mse,
        coherence,
    };

    std::string scenario_name(Scenario s);
    Scenario parse_scenario(const std::string &name);

    struct ArraySection
    {
        std::size_t elements = 64;
        double spacing_m = 0.025;
        double carrier_hz = 3e9;
        double increment_hz = 1e6;
        bool operator==(const ArraySection &) const = default;
    };

    // law: discrete_uniform | continuous_uniform | gaussian. `levels` is also the
    // number of range cells of the canonical search grid for every law.
    struct DistributionSection
    {
        std::string law = "discrete_uniform";
        int levels = 32;
        double sigma = 5.0;
        double span = 32.0;
        bool operator==(const DistributionSection &) const = default;
    };

    struct BeampatternParams
    {
        double q_min = -1.0, q_max = 1.0;
        int q_points = 101;
        double p_min = -1.0, p_max = 1.0;
        int p_points = 101;
        bool operator==(const BeampatternParams &) const = default;
    };

    // q = i q_step for |i| <= q_half, p = j p_step for |j| <= p_half
    struct MomentsParams
    {
        int q_half = 10;
        double q_step = 0.05;
        int p_half = 10;
        double p_step = 0.01;
        bool operator==(const MomentsParams &) const = default;
    };

    // Random (q, p) pairs with q uniform on [-1/2, 1/2] and p_min_abs <= |p| <= 1/2.
    struct KsParams
    {
        int pairs = 100;
        double alpha = 0.05;
        double p_min_abs = 0.02;
        bool operator==(const KsParams &) const = default;
    };

    struct TargetSpec
    {
        double direction_deg = 0;
        double range_m = 0;
        double power_db = 0; // relative to the unit reference amplitude
        bool operator==(const TargetSpec &) const = default;
    };

    // Targets are moved to their nearest canonical grid point.
    struct DetectExampleParams
    {
        std::vector<TargetSpec> targets = {{-30.0, 10.0, 10.0}, {5.0, 70.0, 10.0}, {60.0, 120.0, 0.0}};
        bool operator==(const DetectExampleParams &) const = default;
    };

    struct DetectSweepParams
    {
        int targets = 2;
        int snapshots = 8; // snapshots used by GSP and M-FOCUSS; SP and FOCUSS use the first
        bool operator==(const DetectSweepParams &) const = default;
    };

    struct CrbParams
    {
        double direction_deg = 20.0;
        double range_m = 50.0;
        int snapshots = 1;
        bool operator==(const CrbParams &) const = default;
    };

    struct CoherenceParams
    {
        std::vector<double> r_values = {0.25, 0.3, 0.35, 0.4};
        double epsilon = 0.01;
        int targets = 2; // noiseless on-grid SP recovery per draw
        bool operator==(const CoherenceParams &) const = default;
    };

    // SNR is per element, in dB, for a unit-amplitude target: noise power 10^(-snr/10).
    struct ExperimentConfig
    {
        Scenario scenario = Scenario::moments;
        std::size_t trials = 2000;
        std::uint64_t seed = 1;
        std::vector<double> snr_db;     // empty: scenario default
        bool redraw_frequencies = false; // false: one draw shared by all noise trials
        ArraySection array;
        DistributionSection distribution;
        BeampatternParams beampattern;
        MomentsParams moments;
        KsParams ks;
        DetectExampleParams detect_example;
        DetectSweepParams detect_sweep;
        CrbParams crb_mse;
        CoherenceParams coherence;

        bool operator==(const ExperimentConfig &) const = default;

        ArrayConfig array_config() const;
        FrequencyDistribution frequency_distribution() const;
        std::vector<double> snr_points() const;

        /// Throws std::invalid_argument naming the offending field.
        void validate() const;
    };

    nlohmann::json config_to_json(const ExperimentConfig &cfg);
    ExperimentConfig config_from_json(const nlohmann::json &j);

    /// Applies a dotted-path override such as "array.elements=128". The value is
    /// read as JSON when it parses, otherwise as a string.
    void apply_override(nlohmann::json &j, const std::string &assignment);

    struct RunOptions
    {
        int threads = 0; // 0 = OpenMP default
    };

    struct CampaignResult
    {
        std::vector<Table> tables;
        nlohmann::json metadata; // config echo, seed, version
        double wall_time_s = 0;

        const Table &table(const std::string &name) const;
    };

    CampaignResult run(const ExperimentConfig &cfg, const RunOptions &options = {});

    /// One file per table plus metadata.json; wall time goes to timing.json so
    /// that the other files depend only on configuration and seed.
    std::vector<std::filesystem::path> emit(const CampaignResult &result, const std::filesystem::path &dir,
                                            TableFormat format);

    std::string version_string();
}

#endif
