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

#include "rfda/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <omp.h>

#include "rfda/special_functions.hpp"

namespace rfda
{
    NormalizedOffset NormalizedOffset::from_physical(const ArrayConfig &cfg, double theta1, double r1, double theta2,
                                                     double r2)
    {
        const double c = cfg.wave_speed();
        NormalizedOffset o;
        o.q = 2.0 * (std::sin(theta1) - std::sin(theta2)) * cfg.center_freq() * cfg.spacing() / c;
        o.p = 2.0 * (r1 - r2) * cfg.freq_increment() / c;
        o.delta = cfg.delta();
        return o;
    }

    cplx beampattern_value(const ArrayConfig &cfg, const FrequencyDraw &draw, const NormalizedOffset &offset)
    {
        const std::size_t n_el = cfg.n_elements();
        if (draw.size() != n_el)
            throw std::invalid_argument("beampattern_value: frequency draw length differs from element count");
        cplx sum = 0.0;
        for (std::size_t n = 0; n < n_el; ++n)
            sum += std::polar(1.0, 2.0 * kPi * (cfg.centred_index(n) * offset.q + draw.offsets[n] * offset.p));
        return std::polar(1.0, offset.alpha()) * sum / static_cast<double>(n_el);
    }

    cplx lfda_beampattern(const ArrayConfig &cfg, const NormalizedOffset &offset)
    {
        const std::size_t n_el = cfg.n_elements();
        cplx sum = 0.0;
        for (std::size_t n = 0; n < n_el; ++n)
            sum += std::polar(1.0, 2.0 * kPi * (offset.p + offset.q) * cfg.centred_index(n));
        return std::polar(1.0, offset.alpha()) * sum / static_cast<double>(n_el);
    }

    cplx mean_beampattern(const FrequencyDistribution &dist, const ArrayConfig &cfg, const NormalizedOffset &offset)
    {
        const int n = static_cast<int>(cfg.n_elements());
        const double magnitude = dirichlet_kernel(n, offset.q) * moment_generating(dist, offset.p) / n;
        return std::polar(1.0, offset.alpha()) * magnitude;
    }

    double variance_beampattern(const FrequencyDistribution &dist, const ArrayConfig &cfg, double p)
    {
        const double phi = moment_generating(dist, p);
        return (1.0 - phi * phi) / static_cast<double>(cfg.n_elements());
    }

    BeampatternMoments asymptotic_moments(const FrequencyDistribution &dist, const ArrayConfig &cfg,
                                          const NormalizedOffset &offset)
    {
        const int n = static_cast<int>(cfg.n_elements());
        const double nn = n;
        const double phi = moment_generating(dist, offset.p);
        const double phi2p = moment_generating(dist, 2.0 * offset.p);
        const double sa_q = dirichlet_kernel(n, offset.q);
        const double sa_2q = dirichlet_kernel(n, 2.0 * offset.q);
        const double alpha = offset.alpha();
        const double ca = std::cos(alpha);
        const double sn = std::sin(alpha);

        BeampatternMoments out;
        const double mean_rho = sa_q * phi / nn;
        out.mean = Eigen::Vector2d(mean_rho * ca, mean_rho * sn);

        const double coupling = sa_2q / nn * (phi * phi - phi2p);
        out.sigma_r2 = (1.0 - phi * phi - coupling) / (2.0 * nn);
        out.sigma_i2 = (1.0 - phi * phi + coupling) / (2.0 * nn);
        out.rho_square_centered = sa_2q * (phi2p - phi * phi) / (nn * nn);

        const double sr = out.sigma_r2;
        const double si = out.sigma_i2;
        out.covariance << sr * ca * ca + si * sn * sn, (sr - si) * sn * ca,
            (sr - si) * sn * ca, sr * sn * sn + si * ca * ca;
        return out;
    }

    double sidelobe_ccdf(const FrequencyDistribution &dist, const ArrayConfig &cfg, const NormalizedOffset &offset,
                         double r)
    {
        if (!(r >= 0.0))
            throw std::invalid_argument("sidelobe_ccdf: magnitude threshold must be non-negative");
        const int n = static_cast<int>(cfg.n_elements());
        const double phi = moment_generating(dist, offset.p);
        const double a = std::abs(dirichlet_kernel(n, offset.q) * phi) / n;
        const double spread = 1.0 - phi * phi;
        if (!(spread > 0.0))
            return a > r ? 1.0 : 0.0;
        const double tau = std::sqrt(spread / (2.0 * n));
        return marcum_q1(a / tau, r / tau);
    }

    EmpiricalStats summarize_trials(std::span<const cplx> rhos, double alpha, bool retain_samples)
    {
        const std::size_t n = rhos.size();
        if (n < 2)
            throw std::invalid_argument("summarize_trials: at least two trials required");
        const double nd = static_cast<double>(n);

        cplx mean = 0.0;
        for (const cplx &r : rhos)
            mean += r;
        mean /= nd;

        double abs2 = 0.0;
        cplx sq = 0.0;
        double vre = 0.0, vim = 0.0, cov = 0.0;
        for (const cplx &r : rhos)
        {
            const cplx e = r - mean;
            abs2 += std::norm(e);
            sq += e * e;
            vre += e.real() * e.real();
            vim += e.imag() * e.imag();
            cov += e.real() * e.imag();
        }

        EmpiricalStats s;
        s.n_trials = n;
        s.mean_est = std::polar(1.0, alpha) * mean;
        s.var_est = abs2 / (nd - 1.0);
        s.mean_se = std::sqrt(s.var_est / nd);
        s.square_centered_est = sq / (nd - 1.0);
        s.rho_re_var = vre / (nd - 1.0);
        s.rho_im_var = vim / (nd - 1.0);
        s.rho_cross_cov = cov / (nd - 1.0);

        const cplx wbar = sq / nd;
        double wvar = 0.0;
        for (const cplx &r : rhos)
        {
            const cplx e = r - mean;
            wvar += std::norm(e * e - wbar);
        }
        s.square_centered_se = std::sqrt(wvar / (nd - 1.0) / nd);

        if (retain_samples)
        {
            s.samples.reserve(n);
            for (const cplx &r : rhos)
                s.samples.emplace_back(r.real(), r.imag());
        }
        return s;
    }

    std::vector<EmpiricalStats> monte_carlo_stats(const FrequencyDistribution &dist, const ArrayConfig &cfg,
                                                  std::span<const NormalizedOffset> offsets,
                                                  const MonteCarloOptions &options)
    {
        if (options.n_trials < 2)
            throw std::invalid_argument("monte_carlo_stats: at least two trials required");
        const std::size_t n_el = cfg.n_elements();
        const auto n_trials = static_cast<long>(options.n_trials);
        const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();

        std::vector<double> m(options.n_trials * n_el);
#pragma omp parallel for schedule(static) num_threads(threads)
        for (long t = 0; t < n_trials; ++t)
        {
            const auto seed = derive_seed(options.seed, StreamPurpose::frequency_draw, static_cast<std::uint64_t>(t));
            const FrequencyDraw draw = sample_frequencies(dist, n_el, seed);
            std::copy(draw.offsets.begin(), draw.offsets.end(), m.begin() + t * static_cast<long>(n_el));
        }

        std::vector<EmpiricalStats> out(offsets.size());
        const auto n_off = static_cast<long>(offsets.size());
#pragma omp parallel for schedule(dynamic) num_threads(threads)
        for (long k = 0; k < n_off; ++k)
        {
            const NormalizedOffset &o = offsets[static_cast<std::size_t>(k)];
            std::vector<cplx> steer(n_el);
            for (std::size_t n = 0; n < n_el; ++n)
                steer[n] = std::polar(1.0, 2.0 * kPi * cfg.centred_index(n) * o.q);

            std::vector<cplx> rhos(options.n_trials);
            for (long t = 0; t < n_trials; ++t)
            {
                const double *mt = m.data() + t * static_cast<long>(n_el);
                cplx sum = 0.0;
                for (std::size_t n = 0; n < n_el; ++n)
                    sum += steer[n] * std::polar(1.0, 2.0 * kPi * mt[n] * o.p);
                rhos[static_cast<std::size_t>(t)] = sum / static_cast<double>(n_el);
            }
            out[static_cast<std::size_t>(k)] = summarize_trials(rhos, o.alpha(), options.retain_samples);
        }
        return out;
    }

    double ks_critical_coefficient(double alpha)
    {
        if (!(alpha > 0.0 && alpha < 1.0))
            throw std::invalid_argument("ks_critical_coefficient: significance must lie in (0, 1)");
        return std::sqrt(-0.5 * std::log(0.5 * alpha));
    }

    KsResult ks_normality_test(std::span<const double> samples, double alpha)
    {
        if (samples.size() < 50)
            throw std::invalid_argument("ks_normality_test: at least 50 samples required");
        std::vector<double> sorted(samples.begin(), samples.end());
        std::sort(sorted.begin(), sorted.end());
        const double n = static_cast<double>(sorted.size());
        double d = 0.0;
        for (std::size_t i = 0; i < sorted.size(); ++i)
        {
            const double f = standard_normal_cdf(sorted[i]);
            const double di = static_cast<double>(i);
            d = std::max({d, f - di / n, (di + 1.0) / n - f});
        }
        KsResult r;
        r.statistic = d;
        r.threshold = ks_critical_coefficient(alpha) / std::sqrt(n);
        r.pass = d <= r.threshold;
        return r;
    }

    std::vector<double> standardize(std::span<const double> samples)
    {
        const double n = static_cast<double>(samples.size());
        if (samples.size() < 2)
            throw std::invalid_argument("standardize: at least two samples required");
        const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
        double ss = 0.0;
        for (double x : samples)
            ss += (x - mean) * (x - mean);
        const double sd = std::sqrt(ss / (n - 1.0));
        if (!(sd > 0.0))
            throw std::invalid_argument("standardize: samples have zero spread");
        std::vector<double> out(samples.size());
        std::transform(samples.begin(), samples.end(), out.begin(), [&](double x) { return (x - mean) / sd; });
        return out;
    }
}
