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

#include "rfda/array_model.hpp"

#include <cmath>
#include <stdexcept>

namespace rfda
{
    ArrayConfig::ArrayConfig(std::size_t n_elements, double spacing, double center_freq, double freq_increment,
                             double wave_speed)
        : n_(n_elements), spacing_(spacing), fc_(center_freq), df_(freq_increment), c_(wave_speed)
    {
        if (n_ < 2)
            throw std::invalid_argument("ArrayConfig: at least 2 elements required");
        if (!(spacing_ > 0.0))
            throw std::invalid_argument("ArrayConfig: element spacing must be positive");
        if (!(fc_ > 0.0))
            throw std::invalid_argument("ArrayConfig: center frequency must be positive");
        if (!(df_ > 0.0))
            throw std::invalid_argument("ArrayConfig: frequency increment must be positive");
        if (!(df_ < fc_))
            throw std::invalid_argument("ArrayConfig: frequency increment must be below the center frequency");
        if (!(c_ > 0.0))
            throw std::invalid_argument("ArrayConfig: wave speed must be positive");
    }

    FrequencyDistribution FrequencyDistribution::gaussian(double sigma)
    {
        if (!(sigma > 0.0))
            throw std::invalid_argument("Gaussian frequency law: sigma must be positive");
        return FrequencyDistribution(GaussianLaw{sigma});
    }

    FrequencyDistribution FrequencyDistribution::continuous_uniform(double m_span)
    {
        if (!(m_span > 0.0))
            throw std::invalid_argument("continuous uniform frequency law: span M must be positive");
        return FrequencyDistribution(ContinuousUniformLaw{m_span});
    }

    FrequencyDistribution FrequencyDistribution::discrete_uniform(int m_levels)
    {
        if (m_levels < 1)
            throw std::invalid_argument("discrete uniform frequency law: M must be a positive integer");
        return FrequencyDistribution(DiscreteUniformLaw{m_levels});
    }

    std::string FrequencyDistribution::name() const
    {
        struct Visitor
        {
            std::string operator()(const GaussianLaw &) const { return "gaussian"; }
            std::string operator()(const ContinuousUniformLaw &) const { return "continuous_uniform"; }
            std::string operator()(const DiscreteUniformLaw &) const { return "discrete_uniform"; }
        };
        return std::visit(Visitor{}, law_);
    }

    double FrequencyDistribution::sample(Engine &engine) const
    {
        struct Visitor
        {
            Engine &engine;
            double operator()(const GaussianLaw &g) const
            {
                std::normal_distribution<double> dist(0.0, g.sigma);
                return dist(engine);
            }
            double operator()(const ContinuousUniformLaw &u) const
            {
                std::uniform_real_distribution<double> dist(-0.5 * u.m_span, 0.5 * u.m_span);
                return dist(engine);
            }
            double operator()(const DiscreteUniformLaw &u) const
            {
                std::uniform_int_distribution<int> dist(0, u.m_levels - 1);
                return static_cast<double>(dist(engine)) - 0.5 * static_cast<double>(u.m_levels - 1);
            }
        };
        return std::visit(Visitor{engine}, law_);
    }

    FrequencyDraw linear_fda_draw(std::size_t n_elements)
    {
        FrequencyDraw draw;
        draw.offsets.resize(n_elements);
        for (std::size_t n = 0; n < n_elements; ++n)
            draw.offsets[n] = static_cast<double>(n) - 0.5 * static_cast<double>(n_elements - 1);
        return draw;
    }

    TargetScene::TargetScene(std::size_t n_snapshots, std::vector<Target> targets) : n_snapshots_(n_snapshots)
    {
        if (n_snapshots_ < 1)
            throw std::invalid_argument("TargetScene: at least one snapshot required");
        for (auto &t : targets)
            add(std::move(t));
    }

    void TargetScene::add(Target target)
    {
        if (target.amplitudes.size() != n_snapshots_)
            throw std::invalid_argument("TargetScene: amplitude vector length differs from snapshot count");
        if (!(std::abs(target.direction) <= 0.5 * kPi))
            throw std::invalid_argument("TargetScene: direction outside [-pi/2, pi/2]");
        if (!(target.range >= 0.0))
            throw std::invalid_argument("TargetScene: range must be non-negative");
        targets_.push_back(std::move(target));
    }

    RVector element_positions(const ArrayConfig &cfg)
    {
        RVector x(static_cast<Eigen::Index>(cfg.n_elements()));
        for (std::size_t n = 0; n < cfg.n_elements(); ++n)
            x[static_cast<Eigen::Index>(n)] = cfg.centred_index(n) * cfg.spacing();
        return x;
    }

    FrequencyDraw sample_frequencies(const FrequencyDistribution &dist, std::size_t n, std::uint64_t seed)
    {
        if (n < 1)
            throw std::invalid_argument("sample_frequencies: n must be at least 1");
        Engine engine = make_engine(seed);
        FrequencyDraw draw;
        draw.seed = seed;
        draw.offsets.resize(n);
        for (auto &m : draw.offsets)
            m = dist.sample(engine);
        return draw;
    }

    double dirichlet_kernel(int n, double x)
    {
        const double k = std::nearbyint(x);
        const double eps = x - k;
        // (-1)^{k (n-1)}
        const bool odd = (n % 2 == 0) && (std::fmod(std::abs(k), 2.0) == 1.0);
        const double sign = odd ? -1.0 : 1.0;
        if (std::abs(eps) < 1e-7)
        {
            const double a = kPi * eps;
            return sign * n * (1.0 - (static_cast<double>(n) * n - 1.0) * a * a / 6.0);
        }
        return sign * std::sin(n * kPi * eps) / std::sin(kPi * eps);
    }

    double moment_generating(const FrequencyDistribution &dist, double x)
    {
        struct Visitor
        {
            double x;
            double operator()(const GaussianLaw &g) const
            {
                return std::exp(-2.0 * kPi * kPi * g.sigma * g.sigma * x * x);
            }
            double operator()(const ContinuousUniformLaw &u) const
            {
                const double a = u.m_span * kPi * x;
                if (std::abs(a) < 1e-6)
                    return 1.0 - a * a / 6.0;
                return std::sin(a) / a;
            }
            double operator()(const DiscreteUniformLaw &u) const
            {
                return dirichlet_kernel(u.m_levels, x) / u.m_levels;
            }
        };
        return std::visit(Visitor{x}, dist.law());
    }

    CVector steering_vector(const ArrayConfig &cfg, const FrequencyDraw &draw, double theta, double range,
                            BasebandModel model)
    {
        const std::size_t n_el = cfg.n_elements();
        if (draw.size() != n_el)
            throw std::invalid_argument("steering_vector: frequency draw length differs from element count");
        const double k = 4.0 * kPi / cfg.wave_speed();
        const double s = std::sin(theta);
        const double fc = cfg.center_freq();
        const double df = cfg.freq_increment();
        const double d = cfg.spacing();

        CVector b(static_cast<Eigen::Index>(n_el));
        for (std::size_t n = 0; n < n_el; ++n)
        {
            const double cn = cfg.centred_index(n);
            const double m = draw.offsets[n];
            double phase;
            if (model == BasebandModel::approximate)
                phase = -k * (fc * range + cn * fc * d * s + m * df * range);
            else
                phase = -k * (fc + m * df) * (range + cn * d * s);
            b[static_cast<Eigen::Index>(n)] = std::polar(1.0, phase);
        }
        return b;
    }

    EchoMatrix synthesize_echoes(const ArrayConfig &cfg, const FrequencyDraw &draw, const TargetScene &scene,
                                 double noise_power, std::uint64_t seed, BasebandModel model)
    {
        if (!(noise_power >= 0.0))
            throw std::invalid_argument("synthesize_echoes: noise power must be non-negative");
        const auto n_el = static_cast<Eigen::Index>(cfg.n_elements());
        const auto n_snap = static_cast<Eigen::Index>(scene.n_snapshots());

        EchoMatrix echo;
        echo.noise_power = noise_power;
        echo.samples = CMatrix::Zero(n_el, n_snap);
        for (const auto &target : scene.targets())
        {
            const CVector b = steering_vector(cfg, draw, target.direction, target.range, model);
            for (Eigen::Index l = 0; l < n_snap; ++l)
                echo.samples.col(l) += target.amplitudes[static_cast<std::size_t>(l)] * b;
        }
        if (noise_power > 0.0)
        {
            Engine engine = make_engine(seed);
            std::normal_distribution<double> normal(0.0, std::sqrt(0.5 * noise_power));
            for (Eigen::Index l = 0; l < n_snap; ++l)
                for (Eigen::Index n = 0; n < n_el; ++n)
                {
                    const double re = normal(engine);
                    const double im = normal(engine);
                    echo.samples(n, l) += cplx(re, im);
                }
        }
        return echo;
    }

    double noise_power_for_snr(double snr_db, double amplitude)
    {
        return amplitude * amplitude * std::pow(10.0, -snr_db / 10.0);
    }
}
