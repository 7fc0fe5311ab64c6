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

#ifndef RFDA_ARRAY_MODEL_HPP
#define RFDA_ARRAY_MODEL_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "rfda/rng.hpp"

namespace rfda
{
    using cplx = std::complex<double>;
    using CVector = Eigen::VectorXcd;
    using CMatrix = Eigen::MatrixXcd;
    using RVector = Eigen::VectorXd;
    using RMatrix = Eigen::MatrixXd;

    inline constexpr double kPi = 3.14159265358979323846;
    inline constexpr double kSpeedOfLight = 2.99792458e8;

    // Linear array with N elements at spacing d, carrier f_n = f_c + m_n * df.
    class ArrayConfig
    {
    public:
        ArrayConfig(std::size_t n_elements, double spacing, double center_freq, double freq_increment,
                    double wave_speed = kSpeedOfLight);

        std::size_t n_elements() const { return n_; }
        double spacing() const { return spacing_; }
        double center_freq() const { return fc_; }
        double freq_increment() const { return df_; }
        double wave_speed() const { return c_; }

        double delta() const { return df_ / fc_; } // relative frequency increment df / f_c
        double wavelength() const { return c_ / fc_; }
        double unambiguous_range() const { return c_ / (2.0 * df_); }

        // (n - (N-1)/2), the element index centred on the phase centre
        double centred_index(std::size_t n) const { return static_cast<double>(n) - 0.5 * static_cast<double>(n_ - 1); }

        bool operator==(const ArrayConfig &) const = default;

    private:
        std::size_t n_;
        double spacing_;
        double fc_;
        double df_;
        double c_;
    };

    struct GaussianLaw
    {
        double sigma;
        bool operator==(const GaussianLaw &) const = default;
    };
    struct ContinuousUniformLaw
    {
        double m_span;
        bool operator==(const ContinuousUniformLaw &) const = default;
    };
    struct DiscreteUniformLaw
    {
        int m_levels;
        bool operator==(const DiscreteUniformLaw &) const = default;
    };

    // Law g(m) of the per-element frequency multiplier. Every variant is even in m.
    class FrequencyDistribution
    {
    public:
        using Law = std::variant<GaussianLaw, ContinuousUniformLaw, DiscreteUniformLaw>;

        static FrequencyDistribution gaussian(double sigma);
        static FrequencyDistribution continuous_uniform(double m_span);
        static FrequencyDistribution discrete_uniform(int m_levels);

        const Law &law() const { return law_; }
        bool is_discrete_uniform() const { return std::holds_alternative<DiscreteUniformLaw>(law_); }
        std::string name() const;

        double sample(Engine &engine) const;

        bool operator==(const FrequencyDistribution &) const = default;

    private:
        explicit FrequencyDistribution(Law law) : law_(law) {}
        Law law_;
    };

    // One realisation m of the random frequency multipliers.
    struct FrequencyDraw
    {
        std::vector<double> offsets;
        std::uint64_t seed = 0;

        std::size_t size() const { return offsets.size(); }
    };

    // m_n = n - (N-1)/2: the linear FDA as a degenerate draw.
    FrequencyDraw linear_fda_draw(std::size_t n_elements);

    struct Target
    {
        double direction;                // rad
        double range;                    // m
        std::vector<cplx> amplitudes;    // one per snapshot
    };

    class TargetScene
    {
    public:
        explicit TargetScene(std::size_t n_snapshots, std::vector<Target> targets = {});

        std::size_t n_snapshots() const { return n_snapshots_; }
        std::size_t size() const { return targets_.size(); }
        bool empty() const { return targets_.empty(); }
        const std::vector<Target> &targets() const { return targets_; }
        const Target &operator[](std::size_t i) const { return targets_[i]; }

        void add(Target target);

    private:
        std::size_t n_snapshots_;
        std::vector<Target> targets_;
    };

    struct EchoMatrix
    {
        CMatrix samples;         // N rows (elements) x L columns (snapshots)
        double noise_power = 0;  // total complex variance per sample

        std::size_t n_elements() const { return static_cast<std::size_t>(samples.rows()); }
        std::size_t n_snapshots() const { return static_cast<std::size_t>(samples.cols()); }
        CVector column(std::size_t l) const { return samples.col(static_cast<Eigen::Index>(l)); }
    };

    enum class BasebandModel
    {
        approximate, // cross term m_n df x_n sin(theta) dropped
        exact,
    };

    RVector element_positions(const ArrayConfig &cfg);

    FrequencyDraw sample_frequencies(const FrequencyDistribution &dist, std::size_t n, std::uint64_t seed);

    // sin(n pi x) / sin(pi x), with the limit value n (-1)^{k(n-1)} at x = k.
    double dirichlet_kernel(int n, double x);

    // Phi(x) = E{exp(j 2 pi m x)}; real because g is even.
    double moment_generating(const FrequencyDistribution &dist, double x);

    CVector steering_vector(const ArrayConfig &cfg, const FrequencyDraw &draw, double theta, double range,
                            BasebandModel model = BasebandModel::approximate);

    EchoMatrix synthesize_echoes(const ArrayConfig &cfg, const FrequencyDraw &draw, const TargetScene &scene,
                                 double noise_power, std::uint64_t seed,
                                 BasebandModel model = BasebandModel::approximate);

    // Noise power for a per-element SNR of `snr_db` relative to amplitude magnitude `amplitude`.
    double noise_power_for_snr(double snr_db, double amplitude = 1.0);
}

#endif
