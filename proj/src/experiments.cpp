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

#include "rfda/experiments.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include <omp.h>

#include "rfda/bounds.hpp"
#include "rfda/processing.hpp"
#include "rfda/recovery.hpp"
#include "rfda/statistics.hpp"

#ifndef RFDA_VERSION
#define RFDA_VERSION "unknown"
#endif

namespace rfda
{
    using nlohmann::json;

    namespace
    {
        constexpr double kDeg = kPi / 180.0;
        constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

        const std::vector<std::pair<Scenario, const char *>> kScenarioNames = {
            {Scenario::beampattern, "beampattern"},   {Scenario::moments, "moments"},
            {Scenario::ks, "ks"},                     {Scenario::detect_example, "detect_example"},
            {Scenario::detect_sweep, "detect_sweep"}, {Scenario::crb_mse, "crb_mse"},
            {Scenario::coherence, "coherence"},
        };

        void check_keys(const json &j, const std::string &where, std::initializer_list<const char *> allowed)
        {
            if (!j.is_object())
                throw std::invalid_argument("config: '" + where + "' must be an object");
            for (const auto &item : j.items())
                if (std::none_of(allowed.begin(), allowed.end(), [&](const char *k) { return item.key() == k; }))
                    throw std::invalid_argument("config: unknown key '" + (where.empty() ? "" : where + ".") +
                                                item.key() + "'");
        }

        template <class T>
        void read(const json &j, const char *key, T &dst, const std::string &where)
        {
            if (!j.contains(key))
                return;
            try
            {
                dst = j.at(key).get<T>();
            }
            catch (const json::exception &)
            {
                throw std::invalid_argument("config: '" + (where.empty() ? "" : where + ".") + key +
                                            "' has the wrong type");
            }
        }

        std::uint64_t trial_index(std::size_t point, std::size_t trial)
        {
            return (static_cast<std::uint64_t>(point) << 32) | static_cast<std::uint64_t>(trial);
        }

        int thread_count(const RunOptions &options)
        {
            return options.threads > 0 ? options.threads : omp_get_max_threads();
        }

        FrequencyDraw draw_for(const ExperimentConfig &cfg, std::size_t trial)
        {
            const std::size_t index = cfg.redraw_frequencies ? trial : 0;
            return sample_frequencies(cfg.frequency_distribution(), cfg.array.elements,
                                      derive_seed(cfg.seed, StreamPurpose::frequency_draw, index));
        }

        double median(std::vector<double> v)
        {
            if (v.empty())
                return kNaN;
            std::sort(v.begin(), v.end());
            const std::size_t h = v.size() / 2;
            return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
        }

        double binomial_se(double rate, std::size_t n) { return std::sqrt(rate * (1.0 - rate) / static_cast<double>(n)); }

        // Distinct grid cells with unit-modulus random-phase amplitudes.
        TargetScene random_grid_scene(const DirectionRangeGrid &grid, std::size_t n_targets, std::size_t n_snapshots,
                                      std::uint64_t root, std::uint64_t index, std::vector<std::size_t> &cells)
        {
            Engine scene_rng = make_stream(root, StreamPurpose::scene, index);
            Engine amp_rng = make_stream(root, StreamPurpose::amplitude, index);
            std::uniform_int_distribution<std::size_t> pick(0, grid.size() - 1);
            std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
            cells.clear();
            while (cells.size() < n_targets)
            {
                const std::size_t c = pick(scene_rng);
                if (std::find(cells.begin(), cells.end(), c) == cells.end())
                    cells.push_back(c);
            }
            TargetScene scene(n_snapshots);
            for (std::size_t c : cells)
            {
                Target t{grid.direction_at(c), grid.range_at(c), {}};
                for (std::size_t l = 0; l < n_snapshots; ++l)
                    t.amplitudes.push_back(std::polar(1.0, phase(amp_rng)));
                scene.add(std::move(t));
            }
            std::sort(cells.begin(), cells.end());
            return scene;
        }

        std::vector<Table> run_beampattern(const ExperimentConfig &cfg)
        {
            const ArrayConfig array = cfg.array_config();
            const FrequencyDistribution dist = cfg.frequency_distribution();
            const FrequencyDraw draw = draw_for(cfg, 0);
            const BeampatternParams &bp = cfg.beampattern;
            auto axis = [](double lo, double hi, int n, int i) {
                return n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
            };

            Table pattern("beampattern", {"q", "p", "rfda_abs", "lfda_abs", "mean_abs"});
            for (int i = 0; i < bp.q_points; ++i)
                for (int k = 0; k < bp.p_points; ++k)
                {
                    const auto o = NormalizedOffset::normalized(array, axis(bp.q_min, bp.q_max, bp.q_points, i),
                                                                axis(bp.p_min, bp.p_max, bp.p_points, k));
                    pattern.add_row({o.q, o.p, std::abs(beampattern_value(array, draw, o)),
                                     std::abs(lfda_beampattern(array, o)), std::abs(mean_beampattern(dist, array, o))});
                }

            Table ridge("ridge", {"q", "p", "rfda_abs", "lfda_abs"});
            for (int i = 0; i < bp.q_points; ++i)
            {
                const double q = axis(bp.q_min, bp.q_max, bp.q_points, i);
                const auto o = NormalizedOffset::normalized(array, q, -q);
                ridge.add_row({o.q, o.p, std::abs(beampattern_value(array, draw, o)), std::abs(lfda_beampattern(array, o))});
            }
            return {pattern, ridge};
        }

        std::vector<Table> run_moments(const ExperimentConfig &cfg, const RunOptions &options)
        {
            const ArrayConfig array = cfg.array_config();
            const FrequencyDistribution dist = cfg.frequency_distribution();
            const MomentsParams &mp = cfg.moments;
            std::vector<NormalizedOffset> offsets;
            for (int i = -mp.q_half; i <= mp.q_half; ++i)
                for (int k = -mp.p_half; k <= mp.p_half; ++k)
                    offsets.push_back(NormalizedOffset::normalized(array, i * mp.q_step, k * mp.p_step));

            MonteCarloOptions mc;
            mc.n_trials = cfg.trials;
            mc.seed = cfg.seed;
            mc.threads = thread_count(options);
            const std::vector<EmpiricalStats> stats = monte_carlo_stats(dist, array, offsets, mc);

            Table t("moments", {"q", "p", "mean_re", "mean_im", "mean_se", "mean_re_theory", "mean_im_theory", "var",
                                "var_theory", "sq_re", "sq_im", "sq_se", "sq_re_theory", "sq_im_theory", "rho_re_var",
                                "rho_im_var", "sigma_r2_theory", "sigma_i2_theory"});
            for (std::size_t k = 0; k < offsets.size(); ++k)
            {
                const NormalizedOffset &o = offsets[k];
                const EmpiricalStats &s = stats[k];
                const BeampatternMoments th = asymptotic_moments(dist, array, o);
                t.add_row({o.q, o.p, s.mean_est.real(), s.mean_est.imag(), s.mean_se, th.mean[0], th.mean[1], s.var_est,
                           variance_beampattern(dist, array, o.p), s.square_centered_est.real(),
                           s.square_centered_est.imag(), s.square_centered_se, th.rho_square_centered.real(),
                           th.rho_square_centered.imag(), s.rho_re_var, s.rho_im_var, th.sigma_r2, th.sigma_i2});
            }
            return {t};
        }

        std::vector<Table> run_ks(const ExperimentConfig &cfg, const RunOptions &options)
        {
            const ArrayConfig array = cfg.array_config();
            const FrequencyDistribution dist = cfg.frequency_distribution();
            const KsParams &kp = cfg.ks;
            Engine rng = make_stream(cfg.seed, StreamPurpose::offsets, 0);
            std::uniform_real_distribution<double> uq(-0.5, 0.5);
            std::uniform_real_distribution<double> up(kp.p_min_abs, 0.5);
            std::bernoulli_distribution sign(0.5);
            std::vector<NormalizedOffset> offsets;
            for (int i = 0; i < kp.pairs; ++i)
            {
                const double q = uq(rng);
                const double p = up(rng);
                offsets.push_back(NormalizedOffset::normalized(array, q, sign(rng) ? p : -p));
            }

            MonteCarloOptions mc;
            mc.n_trials = cfg.trials;
            mc.seed = cfg.seed;
            mc.retain_samples = true;
            mc.threads = thread_count(options);
            const std::vector<EmpiricalStats> stats = monte_carlo_stats(dist, array, offsets, mc);

            Table t("ks", {"q", "p", "d_re", "d_im", "threshold", "pass_re", "pass_im"});
            std::size_t pass_both = 0, pass_re = 0, pass_im = 0;
            for (std::size_t k = 0; k < offsets.size(); ++k)
            {
                std::vector<double> re, im;
                for (const auto &[a, b] : stats[k].samples)
                {
                    re.push_back(a);
                    im.push_back(b);
                }
                const KsResult kr = ks_normality_test(standardize(re), kp.alpha);
                const KsResult ki = ks_normality_test(standardize(im), kp.alpha);
                pass_re += kr.pass;
                pass_im += ki.pass;
                pass_both += kr.pass && ki.pass;
                t.add_row({offsets[k].q, offsets[k].p, kr.statistic, ki.statistic, kr.threshold, double(kr.pass),
                           double(ki.pass)});
            }
            const double n = static_cast<double>(offsets.size());
            Table summary("ks_summary", {"pairs", "trials", "pass_fraction", "pass_fraction_re", "pass_fraction_im"});
            summary.add_row({n, static_cast<double>(cfg.trials), pass_both / n, pass_re / n, pass_im / n});
            return {t, summary};
        }

        std::vector<Table> run_detect_example(const ExperimentConfig &cfg, const RunOptions &options)
        {
            const ArrayConfig array = cfg.array_config();
            const DirectionRangeGrid grid = DirectionRangeGrid::canonical(array, cfg.distribution.levels);
            const double noise_power = noise_power_for_snr(cfg.snr_points().front());
            const auto &specs = cfg.detect_example.targets;

            std::vector<std::size_t> cells;
            std::vector<double> magnitudes;
            for (const TargetSpec &s : specs)
            {
                cells.push_back(grid.nearest(s.direction_deg * kDeg, s.range_m));
                magnitudes.push_back(std::pow(10.0, s.power_db / 20.0));
            }
            std::vector<std::size_t> truth = cells;
            std::sort(truth.begin(), truth.end());
            if (std::adjacent_find(truth.begin(), truth.end()) != truth.end())
                throw std::invalid_argument("detect_example: two targets share a grid cell");
            const std::size_t weak = static_cast<std::size_t>(
                std::min_element(magnitudes.begin(), magnitudes.end()) - magnitudes.begin());

            const ObservingMatrix shared = build_observing_matrix(array, draw_for(cfg, 0), grid);
            const std::size_t n_trials = cfg.trials;
            std::vector<double> success(n_trials), weak_mf(n_trials), sidelobe(n_trials);
            RVector map0;
            RecoveryResult sp0;
            const int nt = thread_count(options);
#pragma omp parallel for schedule(dynamic) num_threads(nt)
            for (long tl = 0; tl < static_cast<long>(n_trials); ++tl)
            {
                const auto t = static_cast<std::size_t>(tl);
                std::optional<ObservingMatrix> local;
                if (cfg.redraw_frequencies)
                    local = build_observing_matrix(array, draw_for(cfg, t), grid);
                const ObservingMatrix &obs = local ? *local : shared;
                Engine amp_rng = make_stream(cfg.seed, StreamPurpose::amplitude, t);
                std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
                TargetScene scene(1);
                for (std::size_t i = 0; i < cells.size(); ++i)
                    scene.add({grid.direction_at(cells[i]), grid.range_at(cells[i]),
                               {std::polar(magnitudes[i], phase(amp_rng))}});
                const EchoMatrix echo = synthesize_echoes(array, obs.draw, scene, noise_power,
                                                          derive_seed(cfg.seed, StreamPurpose::noise, t));
                const RVector mf = matched_filter(echo, obs, 1);
                double side = 0.0;
                for (Eigen::Index i = 0; i < mf.size(); ++i)
                    if (std::find(cells.begin(), cells.end(), static_cast<std::size_t>(i)) == cells.end())
                        side = std::max(side, mf[i]);
                const RecoveryResult sp = sp_recover(obs, echo.column(0), cells.size());
                success[t] = detection_success(sp, truth);
                weak_mf[t] = mf[static_cast<Eigen::Index>(cells[weak])];
                sidelobe[t] = side;
                if (t == 0)
                {
                    map0 = mf;
                    sp0 = sp;
                }
            }

            Table targets("targets", {"direction_deg", "range_m", "amplitude", "grid_index"});
            for (std::size_t i = 0; i < cells.size(); ++i)
                targets.add_row({grid.direction_at(cells[i]) / kDeg, grid.range_at(cells[i]), magnitudes[i],
                                 static_cast<double>(cells[i])});
            Table map("mf_map", {"direction_deg", "range_m", "mf"});
            for (std::size_t i = 0; i < grid.size(); ++i)
                map.add_row({grid.direction_at(i) / kDeg, grid.range_at(i), map0[static_cast<Eigen::Index>(i)]});
            Table support("sp_support", {"direction_deg", "range_m", "amplitude_abs"});
            for (std::size_t k = 0; k < sp0.support.size(); ++k)
                support.add_row({grid.direction_at(sp0.support[k]) / kDeg, grid.range_at(sp0.support[k]),
                                 std::abs(sp0.amplitudes(static_cast<Eigen::Index>(k), 0))});
            Table trials("detect_trials", {"trial", "sp_success", "weak_mf", "max_sidelobe_mf"});
            for (std::size_t t = 0; t < n_trials; ++t)
                trials.add_row({static_cast<double>(t), success[t], weak_mf[t], sidelobe[t]});

            double rate = 0.0;
            for (double s : success)
                rate += s;
            rate /= static_cast<double>(n_trials);
            const double wm = median(weak_mf);
            const double sm = median(sidelobe);
            Table summary("detect_summary",
                          {"trials", "snr_db", "sp_success_rate", "weak_mf_median", "sidelobe_median", "masked"});
            summary.add_row({static_cast<double>(n_trials), cfg.snr_points().front(), rate, wm, sm, double(wm < sm)});
            return {targets, map, support, trials, summary};
        }

        std::vector<Table> run_detect_sweep(const ExperimentConfig &cfg, const RunOptions &options)
        {
            const ArrayConfig array = cfg.array_config();
            const DirectionRangeGrid grid = DirectionRangeGrid::canonical(array, cfg.distribution.levels);
            const auto n_targets = static_cast<std::size_t>(cfg.detect_sweep.targets);
            const auto n_snap = static_cast<std::size_t>(cfg.detect_sweep.snapshots);
            const ObservingMatrix shared = build_observing_matrix(array, draw_for(cfg, 0), grid);
            const std::vector<double> snrs = cfg.snr_points();
            const std::size_t n_trials = cfg.trials;
            const int nt = thread_count(options);

            Table t("detection", {"snr_db", "trials", "sp", "sp_se", "focuss", "focuss_se", "gsp", "gsp_se", "mfocuss",
                                  "mfocuss_se"});
            for (std::size_t s = 0; s < snrs.size(); ++s)
            {
                const double noise_power = noise_power_for_snr(snrs[s]);
                std::vector<std::array<double, 4>> hits(n_trials);
#pragma omp parallel for schedule(dynamic) num_threads(nt)
                for (long tl = 0; tl < static_cast<long>(n_trials); ++tl)
                {
                    const auto tr = static_cast<std::size_t>(tl);
                    std::optional<ObservingMatrix> local;
                    if (cfg.redraw_frequencies)
                        local = build_observing_matrix(array, draw_for(cfg, tr), grid);
                    const ObservingMatrix &obs = local ? *local : shared;
                    const std::uint64_t idx = trial_index(s, tr);
                    std::vector<std::size_t> cells;
                    const TargetScene scene = random_grid_scene(grid, n_targets, n_snap, cfg.seed, idx, cells);
                    const EchoMatrix echo = synthesize_echoes(array, obs.draw, scene, noise_power,
                                                              derive_seed(cfg.seed, StreamPurpose::noise, idx));
                    const CVector y1 = echo.column(0);
                    const std::size_t n = obs.n_rows();
                    hits[tr] = {
                        double(detection_success(sp_recover(obs, y1, n_targets), cells)),
                        double(detection_success(
                            focuss_recover(obs, y1, default_noise_tolerance(n, 1, noise_power)), cells)),
                        double(detection_success(gsp_recover(obs, echo.samples, n_targets), cells)),
                        double(detection_success(
                            mfocuss_recover(obs, echo.samples, default_noise_tolerance(n, n_snap, noise_power)),
                            cells)),
                    };
                }
                std::array<double, 4> rate{};
                for (const auto &h : hits)
                    for (std::size_t a = 0; a < 4; ++a)
                        rate[a] += h[a];
                std::vector<double> row = {snrs[s], static_cast<double>(n_trials)};
                for (std::size_t a = 0; a < 4; ++a)
                {
                    rate[a] /= static_cast<double>(n_trials);
                    row.push_back(rate[a]);
                    row.push_back(binomial_se(rate[a], n_trials));
                }
                t.add_row(row);
            }
            return {t};
        }

        std::vector<Table> run_crb_mse(const ExperimentConfig &cfg, const RunOptions &options)
        {
            const ArrayConfig array = cfg.array_config();
            const DirectionRangeGrid grid = DirectionRangeGrid::canonical(array, cfg.distribution.levels);
            const double theta = cfg.crb_mse.direction_deg * kDeg;
            const double range = cfg.crb_mse.range_m;
            const auto n_snap = static_cast<std::size_t>(cfg.crb_mse.snapshots);
            const ObservingMatrix shared = build_observing_matrix(array, draw_for(cfg, 0), grid);
            const TargetScene scene(n_snap, {Target{theta, range, std::vector<cplx>(n_snap, cplx(1.0, 0.0))}});
            const std::vector<double> snrs = cfg.snr_points();
            const std::size_t n_trials = cfg.trials;
            const int nt = thread_count(options);

            Table t("crb_mse", {"snr_db", "trials", "mse_theta", "crb_theta", "ratio_theta", "ratio_theta_se",
                                "mse_range", "crb_range", "ratio_range", "ratio_range_se", "crb_theta_fim",
                                "crb_range_fim", "bias_theta", "bias_range"});
            for (std::size_t s = 0; s < snrs.size(); ++s)
            {
                const double noise_power = noise_power_for_snr(snrs[s]);
                std::vector<std::array<double, 6>> out(n_trials);
#pragma omp parallel for schedule(dynamic) num_threads(nt)
                for (long tl = 0; tl < static_cast<long>(n_trials); ++tl)
                {
                    const auto tr = static_cast<std::size_t>(tl);
                    std::optional<ObservingMatrix> local;
                    if (cfg.redraw_frequencies)
                        local = build_observing_matrix(array, draw_for(cfg, tr), grid);
                    const ObservingMatrix &obs = local ? *local : shared;
                    const EchoMatrix echo =
                        synthesize_echoes(array, obs.draw, scene, noise_power,
                                          derive_seed(cfg.seed, StreamPurpose::noise, trial_index(s, tr)));
                    const MlEstimate est = ml_estimate(array, obs, echo);
                    const UncorrelatedCrb crb = crb_uncorrelated(array, obs.draw, scene, 0, noise_power, n_snap, 1.0);
                    const FimReport f = fim(array, obs.draw, scene, CMatrix::Ones(1, 1), noise_power, n_snap);
                    out[tr] = {est.direction - theta, est.range - range, crb.crb_theta, crb.crb_range,
                               f.crb_available ? f.per_target[0].first : kNaN,
                               f.crb_available ? f.per_target[0].second : kNaN};
                }
                const double n = static_cast<double>(n_trials);
                double se2[2] = {0, 0}, se4[2] = {0, 0}, bias[2] = {0, 0}, crb[4] = {0, 0, 0, 0};
                for (const auto &o : out)
                    for (int k = 0; k < 2; ++k)
                    {
                        bias[k] += o[k];
                        se2[k] += o[k] * o[k];
                        se4[k] += o[k] * o[k] * o[k] * o[k];
                        crb[k] += o[2 + k];
                        crb[2 + k] += o[4 + k];
                    }
                std::vector<double> mse(2), ratio(2), ratio_se(2);
                for (int k = 0; k < 2; ++k)
                {
                    mse[k] = se2[k] / n;
                    crb[k] /= n;
                    crb[2 + k] /= n;
                    bias[k] /= n;
                    const double var_sq = std::max(0.0, se4[k] / n - mse[k] * mse[k]) * n / (n - 1.0);
                    ratio[k] = mse[k] / crb[k];
                    ratio_se[k] = std::sqrt(var_sq / n) / crb[k];
                }
                t.add_row({snrs[s], n, mse[0], crb[0], ratio[0], ratio_se[0], mse[1], crb[1], ratio[1], ratio_se[1],
                           crb[2], crb[3], bias[0], bias[1]});
            }
            return {t};
        }

        std::vector<Table> run_coherence(const ExperimentConfig &cfg, const RunOptions &options)
        {
            const ArrayConfig array = cfg.array_config();
            const int levels = cfg.distribution.levels;
            const DirectionRangeGrid grid = DirectionRangeGrid::canonical(array, levels);
            const FrequencyDistribution dist = cfg.frequency_distribution();
            const bool fft_route = dist.is_discrete_uniform() && grid.n_directions() == array.n_elements();
            const auto n_targets = static_cast<std::size_t>(cfg.coherence.targets);
            const std::size_t n_trials = cfg.trials;
            std::vector<double> mu(n_trials), success(n_trials);
            const int nt = thread_count(options);
#pragma omp parallel for schedule(dynamic) num_threads(nt)
            for (long tl = 0; tl < static_cast<long>(n_trials); ++tl)
            {
                const auto tr = static_cast<std::size_t>(tl);
                const FrequencyDraw draw = sample_frequencies(
                    dist, array.n_elements(), derive_seed(cfg.seed, StreamPurpose::frequency_draw, tr));
                const ObservingMatrix obs = build_observing_matrix(array, draw, grid);
                mu[tr] = fft_route ? canonical_grid_coherence(array, draw, levels).mu : mutual_coherence(obs, 1).mu;
                std::vector<std::size_t> cells;
                const TargetScene scene = random_grid_scene(grid, n_targets, 1, cfg.seed, tr, cells);
                const EchoMatrix echo = synthesize_echoes(array, draw, scene, 0.0, 0);
                success[tr] = detection_success(sp_recover(obs, echo.column(0), n_targets), cells);
            }

            Table draws("coherence_draws", {"trial", "mu", "sp_success"});
            for (std::size_t t = 0; t < n_trials; ++t)
                draws.add_row({static_cast<double>(t), mu[t], success[t]});

            const auto m = static_cast<std::size_t>(levels);
            const std::size_t n = array.n_elements();
            Table bound("coherence_bound", {"r", "empirical_prob", "bound"});
            for (double r : cfg.coherence.r_values)
            {
                const double below = static_cast<double>(std::count_if(mu.begin(), mu.end(), [&](double v) { return v < r; }));
                bound.add_row({r, below / static_cast<double>(n_trials), coherence_prob_bound(m, n, r)});
            }

            Table guarantees("guarantees", {"M", "N", "epsilon", "k_exact", "k_bound", "eta", "qcbp_factor"});
            const double eps = cfg.coherence.epsilon;
            const int k = exact_recovery_sparsity(m, n, eps);
            double factor = kNaN;
            try
            {
                if (k >= 1)
                    factor = qcbp_error_bound(k, m, n, eps, 1.0, 0.0);
            }
            catch (const std::domain_error &)
            {
            }
            guarantees.add_row({static_cast<double>(m), static_cast<double>(n), eps, static_cast<double>(k),
                                exact_recovery_bound(m, n, eps), coherence_eta(m, n, eps), factor});

            double below = 0.0, below_ok = 0.0, ok = 0.0, mu_sum = 0.0;
            for (std::size_t t = 0; t < n_trials; ++t)
            {
                mu_sum += mu[t];
                ok += success[t];
                if (mu[t] < 1.0 / 3.0)
                {
                    below += 1.0;
                    below_ok += success[t];
                }
            }
            Table summary("coherence_summary",
                          {"draws", "mu_mean", "draws_below_third", "sp_success_below_third", "sp_success_rate"});
            summary.add_row({static_cast<double>(n_trials), mu_sum / static_cast<double>(n_trials), below,
                             below > 0 ? below_ok / below : kNaN, ok / static_cast<double>(n_trials)});
            return {draws, bound, guarantees, summary};
        }
    }

    std::string scenario_name(Scenario s)
    {
        for (const auto &[v, name] : kScenarioNames)
            if (v == s)
                return name;
        throw std::invalid_argument("scenario_name: invalid scenario");
    }

    Scenario parse_scenario(const std::string &name)
    {
        for (const auto &[v, n] : kScenarioNames)
            if (name == n)
                return v;
        throw std::invalid_argument("unknown scenario '" + name + "'");
    }

    ArrayConfig ExperimentConfig::array_config() const
    {
        return ArrayConfig(array.elements, array.spacing_m, array.carrier_hz, array.increment_hz);
    }

    FrequencyDistribution ExperimentConfig::frequency_distribution() const
    {
        if (distribution.law == "discrete_uniform")
            return FrequencyDistribution::discrete_uniform(distribution.levels);
        if (distribution.law == "continuous_uniform")
            return FrequencyDistribution::continuous_uniform(distribution.span);
        if (distribution.law == "gaussian")
            return FrequencyDistribution::gaussian(distribution.sigma);
        throw std::invalid_argument("config: distribution.law must be discrete_uniform, continuous_uniform or gaussian");
    }

    std::vector<double> ExperimentConfig::snr_points() const
    {
        if (!snr_db.empty())
            return snr_db;
        switch (scenario)
        {
        case Scenario::detect_sweep:
        {
            std::vector<double> v;
            for (int s = -24; s <= 6; s += 3)
                v.push_back(s);
            return v;
        }
        case Scenario::crb_mse:
            return {0.0, 5.0, 10.0, 15.0, 20.0};
        default:
            return {0.0};
        }
    }

    void ExperimentConfig::validate() const
    {
        auto require = [](bool ok, const std::string &what) {
            if (!ok)
                throw std::invalid_argument("config: " + what);
        };
        require(trials >= 1, "trials must be at least 1");
        if (scenario == Scenario::moments || scenario == Scenario::ks)
            require(trials >= 2, "trials must be at least 2 for moment statistics");
        if (scenario == Scenario::ks)
            require(trials >= 50, "trials must be at least 50 for the KS test");
        array_config();
        require(distribution.levels >= 2, "distribution.levels must be at least 2");
        frequency_distribution();
        for (double s : snr_db)
            require(std::isfinite(s), "snr_db entries must be finite");
        require(beampattern.q_points >= 1 && beampattern.p_points >= 1, "beampattern point counts must be positive");
        require(moments.q_half >= 0 && moments.p_half >= 0, "moments half widths must be non-negative");
        require(ks.pairs >= 1, "ks.pairs must be positive");
        require(ks.alpha > 0 && ks.alpha < 1, "ks.alpha must lie in (0, 1)");
        require(ks.p_min_abs >= 0 && ks.p_min_abs < 0.5, "ks.p_min_abs must lie in [0, 0.5)");
        require(!detect_example.targets.empty(), "detect_example.targets must not be empty");
        for (const TargetSpec &t : detect_example.targets)
            require(std::abs(t.direction_deg) <= 90.0 && t.range_m >= 0.0, "detect_example target out of range");
        const std::size_t cells = array.elements * static_cast<std::size_t>(distribution.levels);
        require(detect_sweep.targets >= 1 && static_cast<std::size_t>(detect_sweep.targets) < array.elements &&
                    static_cast<std::size_t>(detect_sweep.targets) <= cells,
                "detect_sweep.targets must lie in [1, N)");
        require(detect_sweep.snapshots >= 1, "detect_sweep.snapshots must be positive");
        require(std::abs(crb_mse.direction_deg) < 90.0 && crb_mse.range_m >= 0.0, "crb_mse target out of range");
        require(crb_mse.snapshots >= 1, "crb_mse.snapshots must be positive");
        require(coherence.epsilon > 0 && coherence.epsilon < 1, "coherence.epsilon must lie in (0, 1)");
        require(coherence.targets >= 1 && static_cast<std::size_t>(coherence.targets) < array.elements,
                "coherence.targets must lie in [1, N)");
    }

    json config_to_json(const ExperimentConfig &c)
    {
        json targets = json::array();
        for (const TargetSpec &t : c.detect_example.targets)
            targets.push_back({{"direction_deg", t.direction_deg}, {"range_m", t.range_m}, {"power_db", t.power_db}});
        return {
            {"scenario", scenario_name(c.scenario)},
            {"trials", c.trials},
            {"seed", c.seed},
            {"snr_db", c.snr_db},
            {"redraw_frequencies", c.redraw_frequencies},
            {"array",
             {{"elements", c.array.elements},
              {"spacing_m", c.array.spacing_m},
              {"carrier_hz", c.array.carrier_hz},
              {"increment_hz", c.array.increment_hz}}},
            {"distribution",
             {{"law", c.distribution.law},
              {"levels", c.distribution.levels},
              {"sigma", c.distribution.sigma},
              {"span", c.distribution.span}}},
            {"beampattern",
             {{"q_min", c.beampattern.q_min},
              {"q_max", c.beampattern.q_max},
              {"q_points", c.beampattern.q_points},
              {"p_min", c.beampattern.p_min},
              {"p_max", c.beampattern.p_max},
              {"p_points", c.beampattern.p_points}}},
            {"moments",
             {{"q_half", c.moments.q_half},
              {"q_step", c.moments.q_step},
              {"p_half", c.moments.p_half},
              {"p_step", c.moments.p_step}}},
            {"ks", {{"pairs", c.ks.pairs}, {"alpha", c.ks.alpha}, {"p_min_abs", c.ks.p_min_abs}}},
            {"detect_example", {{"targets", targets}}},
            {"detect_sweep", {{"targets", c.detect_sweep.targets}, {"snapshots", c.detect_sweep.snapshots}}},
            {"crb_mse",
             {{"direction_deg", c.crb_mse.direction_deg},
              {"range_m", c.crb_mse.range_m},
              {"snapshots", c.crb_mse.snapshots}}},
            {"coherence",
             {{"r_values", c.coherence.r_values},
              {"epsilon", c.coherence.epsilon},
              {"targets", c.coherence.targets}}},
        };
    }

    ExperimentConfig config_from_json(const json &j)
    {
        ExperimentConfig c;
        check_keys(j, "", {"scenario", "trials", "seed", "snr_db", "redraw_frequencies", "array", "distribution",
                           "beampattern", "moments", "ks", "detect_example", "detect_sweep", "crb_mse", "coherence"});
        if (j.contains("scenario"))
        {
            if (!j.at("scenario").is_string())
                throw std::invalid_argument("config: 'scenario' must be a string");
            c.scenario = parse_scenario(j.at("scenario").get<std::string>());
        }
        if (j.contains("trials") && !(j.at("trials").is_number_integer() && j.at("trials").get<long long>() >= 1))
            throw std::invalid_argument("config: 'trials' must be a positive integer");
        read(j, "trials", c.trials, "");
        read(j, "seed", c.seed, "");
        read(j, "snr_db", c.snr_db, "");
        read(j, "redraw_frequencies", c.redraw_frequencies, "");

        if (j.contains("array"))
        {
            const json &a = j.at("array");
            check_keys(a, "array", {"elements", "spacing_m", "carrier_hz", "increment_hz"});
            read(a, "elements", c.array.elements, "array");
            read(a, "spacing_m", c.array.spacing_m, "array");
            read(a, "carrier_hz", c.array.carrier_hz, "array");
            read(a, "increment_hz", c.array.increment_hz, "array");
        }
        if (j.contains("distribution"))
        {
            const json &d = j.at("distribution");
            check_keys(d, "distribution", {"law", "levels", "sigma", "span"});
            read(d, "law", c.distribution.law, "distribution");
            read(d, "levels", c.distribution.levels, "distribution");
            read(d, "sigma", c.distribution.sigma, "distribution");
            read(d, "span", c.distribution.span, "distribution");
        }
        if (j.contains("beampattern"))
        {
            const json &b = j.at("beampattern");
            check_keys(b, "beampattern", {"q_min", "q_max", "q_points", "p_min", "p_max", "p_points"});
            read(b, "q_min", c.beampattern.q_min, "beampattern");
            read(b, "q_max", c.beampattern.q_max, "beampattern");
            read(b, "q_points", c.beampattern.q_points, "beampattern");
            read(b, "p_min", c.beampattern.p_min, "beampattern");
            read(b, "p_max", c.beampattern.p_max, "beampattern");
            read(b, "p_points", c.beampattern.p_points, "beampattern");
        }
        if (j.contains("moments"))
        {
            const json &m = j.at("moments");
            check_keys(m, "moments", {"q_half", "q_step", "p_half", "p_step"});
            read(m, "q_half", c.moments.q_half, "moments");
            read(m, "q_step", c.moments.q_step, "moments");
            read(m, "p_half", c.moments.p_half, "moments");
            read(m, "p_step", c.moments.p_step, "moments");
        }
        if (j.contains("ks"))
        {
            const json &k = j.at("ks");
            check_keys(k, "ks", {"pairs", "alpha", "p_min_abs"});
            read(k, "pairs", c.ks.pairs, "ks");
            read(k, "alpha", c.ks.alpha, "ks");
            read(k, "p_min_abs", c.ks.p_min_abs, "ks");
        }
        if (j.contains("detect_example"))
        {
            const json &d = j.at("detect_example");
            check_keys(d, "detect_example", {"targets"});
            if (d.contains("targets"))
            {
                if (!d.at("targets").is_array())
                    throw std::invalid_argument("config: 'detect_example.targets' must be an array");
                c.detect_example.targets.clear();
                for (const json &t : d.at("targets"))
                {
                    check_keys(t, "detect_example.targets[]", {"direction_deg", "range_m", "power_db"});
                    TargetSpec s;
                    read(t, "direction_deg", s.direction_deg, "detect_example.targets[]");
                    read(t, "range_m", s.range_m, "detect_example.targets[]");
                    read(t, "power_db", s.power_db, "detect_example.targets[]");
                    c.detect_example.targets.push_back(s);
                }
            }
        }
        if (j.contains("detect_sweep"))
        {
            const json &d = j.at("detect_sweep");
            check_keys(d, "detect_sweep", {"targets", "snapshots"});
            read(d, "targets", c.detect_sweep.targets, "detect_sweep");
            read(d, "snapshots", c.detect_sweep.snapshots, "detect_sweep");
        }
        if (j.contains("crb_mse"))
        {
            const json &d = j.at("crb_mse");
            check_keys(d, "crb_mse", {"direction_deg", "range_m", "snapshots"});
            read(d, "direction_deg", c.crb_mse.direction_deg, "crb_mse");
            read(d, "range_m", c.crb_mse.range_m, "crb_mse");
            read(d, "snapshots", c.crb_mse.snapshots, "crb_mse");
        }
        if (j.contains("coherence"))
        {
            const json &d = j.at("coherence");
            check_keys(d, "coherence", {"r_values", "epsilon", "targets"});
            read(d, "r_values", c.coherence.r_values, "coherence");
            read(d, "epsilon", c.coherence.epsilon, "coherence");
            read(d, "targets", c.coherence.targets, "coherence");
        }
        c.validate();
        return c;
    }

    void apply_override(json &j, const std::string &assignment)
    {
        const auto eq = assignment.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument("override '" + assignment + "' is not of the form key=value");
        const std::string path = assignment.substr(0, eq);
        const std::string text = assignment.substr(eq + 1);
        json value;
        try
        {
            value = json::parse(text);
        }
        catch (const json::parse_error &)
        {
            value = text;
        }
        json *node = &j;
        std::size_t start = 0;
        while (true)
        {
            const auto dot = path.find('.', start);
            const std::string key = path.substr(start, dot - start);
            if (key.empty())
                throw std::invalid_argument("override '" + assignment + "' has an empty key");
            if (!node->is_object())
                *node = json::object();
            if (dot == std::string::npos)
            {
                (*node)[key] = value;
                return;
            }
            node = &(*node)[key];
            start = dot + 1;
        }
    }

    const Table &CampaignResult::table(const std::string &name) const
    {
        for (const Table &t : tables)
            if (t.name == name)
                return t;
        throw std::out_of_range("CampaignResult: no table '" + name + "'");
    }

    CampaignResult run(const ExperimentConfig &cfg, const RunOptions &options)
    {
        cfg.validate();
        const auto start = std::chrono::steady_clock::now();
        CampaignResult result;
        switch (cfg.scenario)
        {
        case Scenario::beampattern:
            result.tables = run_beampattern(cfg);
            break;
        case Scenario::moments:
            result.tables = run_moments(cfg, options);
            break;
        case Scenario::ks:
            result.tables = run_ks(cfg, options);
            break;
        case Scenario::detect_example:
            result.tables = run_detect_example(cfg, options);
            break;
        case Scenario::detect_sweep:
            result.tables = run_detect_sweep(cfg, options);
            break;
        case Scenario::crb_mse:
            result.tables = run_crb_mse(cfg, options);
            break;
        case Scenario::coherence:
            result.tables = run_coherence(cfg, options);
            break;
        }
        result.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        json names = json::array();
        for (const Table &t : result.tables)
            names.push_back(t.name);
        result.metadata = {{"config", config_to_json(cfg)},
                           {"scenario", scenario_name(cfg.scenario)},
                           {"seed", cfg.seed},
                           {"version", version_string()},
                           {"tables", names}};
        return result;
    }

    std::vector<std::filesystem::path> emit(const CampaignResult &result, const std::filesystem::path &dir,
                                            TableFormat format)
    {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec)
            throw std::runtime_error("cannot create output directory " + dir.string() + ": " + ec.message());
        std::vector<std::filesystem::path> paths;
        for (const Table &t : result.tables)
            paths.push_back(write_table(t, dir, format));
        paths.push_back(dir / "metadata.json");
        write_text_file(paths.back(), result.metadata.dump(2) + "\n");
        paths.push_back(dir / "timing.json");
        write_text_file(paths.back(), json{{"wall_time_s", result.wall_time_s}}.dump(2) + "\n");
        return paths;
    }

    std::string version_string() { return RFDA_VERSION; }
}
