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

// Acceptance checks. Each criterion prints one line "ACn PASS|FAIL <detail>".
// Usage: rfda_acceptance [--only ACn]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "rfda/bounds.hpp"
#include "rfda/experiments.hpp"
#include "rfda/processing.hpp"

using namespace rfda;
namespace fs = std::filesystem;

namespace
{
    struct Outcome
    {
        bool pass = false;
        std::string detail;
    };

    std::string fmt(const char *f, auto... args)
    {
        char buf[512];
        std::snprintf(buf, sizeof buf, f, args...);
        return buf;
    }

    ExperimentConfig moments_config(const std::string &law)
    {
        ExperimentConfig c;
        c.scenario = Scenario::moments;
        c.trials = 2000;
        c.seed = 1;
        c.array.elements = 64;
        c.distribution.law = law;
        c.distribution.levels = 32;
        c.distribution.sigma = 5.0;
        c.distribution.span = 32.0;
        return c;
    }

    const char *kLaws[] = {"discrete_uniform", "gaussian", "continuous_uniform"};

    // Shared by AC1-AC3.
    const std::vector<Table> &moments_tables()
    {
        static const std::vector<Table> tables = [] {
            std::vector<Table> out;
            for (const char *law : kLaws)
                out.push_back(run(moments_config(law)).table("moments"));
            return out;
        }();
        return tables;
    }

    Outcome ac1()
    {
        const auto start = std::chrono::steady_clock::now();
        const auto &tables = moments_tables();
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool ok = true;
        std::string detail;
        for (std::size_t d = 0; d < 3; ++d)
        {
            const Table &t = tables[d];
            double worst = 0.0;
            for (std::size_t i = 0; i < t.n_rows(); ++i)
            {
                const double dev = std::hypot(t.column("mean_re")[i] - t.column("mean_re_theory")[i],
                                              t.column("mean_im")[i] - t.column("mean_im_theory")[i]);
                const double se = std::max(t.column("mean_se")[i], 1e-15);
                worst = std::max(worst, dev / se);
            }
            ok = ok && worst < 3.0;
            detail += fmt("%s max|dev|/SE=%.3f over %zu points; ", kLaws[d], worst, t.n_rows());
        }
        ok = ok && secs < 120.0;
        return {ok, detail + fmt("runtime %.1f s", secs)};
    }

    Outcome ac2()
    {
        const auto &tables = moments_tables();
        bool ok = true;
        std::string detail;
        for (std::size_t d = 0; d < 3; ++d)
        {
            const Table &t = tables[d];
            double worst_rel = 0.0, worst_zero = 0.0;
            std::size_t checked = 0;
            for (std::size_t i = 0; i < t.n_rows(); ++i)
            {
                const double th = t.column("var_theory")[i];
                const double mc = t.column("var")[i];
                if (t.column("p")[i] == 0.0)
                    worst_zero = std::max(worst_zero, mc);
                else if (th > 0.2 / 64.0)
                {
                    worst_rel = std::max(worst_rel, std::abs(mc - th) / th);
                    ++checked;
                }
            }
            ok = ok && worst_rel < 0.10 && worst_zero < 1e-20;
            detail += fmt("%s max rel=%.4f (%zu pts), max var at p=0 %.2e; ", kLaws[d], worst_rel, checked, worst_zero);
        }
        return {ok, detail};
    }

    Outcome ac3()
    {
        const auto &tables = moments_tables();
        bool ok = true;
        std::string detail;
        for (std::size_t d = 0; d < 3; ++d)
        {
            const Table &t = tables[d];
            double worst = 0.0;
            for (std::size_t i = 0; i < t.n_rows(); ++i)
            {
                const double dev = std::hypot(t.column("sq_re")[i] - t.column("sq_re_theory")[i],
                                              t.column("sq_im")[i] - t.column("sq_im_theory")[i]);
                const double se = std::max(t.column("sq_se")[i], 1e-15);
                worst = std::max(worst, dev / se);
            }
            ok = ok && worst < 3.0;
            detail += fmt("%s max|dev|/SE=%.3f; ", kLaws[d], worst);
        }
        return {ok, detail};
    }

    Outcome ac4()
    {
        bool ok = true;
        std::string detail;
        for (const char *law : kLaws)
        {
            ExperimentConfig c;
            c.scenario = Scenario::ks;
            c.trials = 10000;
            c.array.elements = 128;
            c.distribution.law = law;
            c.distribution.levels = 64;
            c.distribution.span = 64.0;
            const Table s = run(c).table("ks_summary");
            const double frac = s.column("pass_fraction")[0];
            ok = ok && frac >= 0.95;
            detail += fmt("%s pass %.3f of %g pairs; ", law, frac, s.column("pairs")[0]);
        }
        return {ok, detail};
    }

    Outcome ac5()
    {
        ExperimentConfig c;
        c.scenario = Scenario::detect_example;
        c.trials = 200;
        c.array.elements = 128;
        c.distribution.levels = 64;
        c.snr_db = {0.0};
        const Table s = run(c).table("detect_summary");
        const double rate = s.column("sp_success_rate")[0];
        const double weak = s.column("weak_mf_median")[0];
        const double side = s.column("sidelobe_median")[0];
        const bool ok = rate >= 0.90 && s.column("masked")[0] == 1.0;
        return {ok, fmt("SP exact-support rate %.3f; weak-target MF median %.4f vs sidelobe median %.4f", rate, weak,
                        side)};
    }

    Outcome ac6()
    {
        ExperimentConfig c;
        c.scenario = Scenario::detect_sweep;
        c.trials = 500;
        c.array.elements = 64;
        c.distribution.levels = 32;
        c.detect_sweep.targets = 2;
        c.detect_sweep.snapshots = 8;
        const Table t = run(c).table("detection");
        const char *algs[] = {"sp", "focuss", "gsp", "mfocuss"};
        auto se = [&](const char *a, std::size_t i) { return t.column(std::string(a) + "_se")[i]; };
        auto val = [&](const char *a, std::size_t i) { return t.column(a)[i]; };
        bool mono = true, order = true, top = true;
        std::string detail;
        const std::size_t n = t.n_rows();
        for (const char *a : algs)
        {
            for (std::size_t i = 1; i < n; ++i)
                if (val(a, i) < val(a, i - 1) - 2.0 * std::hypot(se(a, i), se(a, i - 1)))
                {
                    mono = false;
                    detail += fmt("%s drops at %g dB; ", a, t.column("snr_db")[i]);
                }
            top = top && val(a, n - 1) >= 0.99;
        }
        for (std::size_t i = 0; i < n; ++i)
        {
            if (val("gsp", i) < val("sp", i) - 2.0 * std::hypot(se("gsp", i), se("sp", i)))
                order = false;
            if (val("mfocuss", i) < val("focuss", i) - 2.0 * std::hypot(se("mfocuss", i), se("focuss", i)))
                order = false;
        }
        detail += "rates (sp/focuss/gsp/mfocuss):";
        for (std::size_t i = 0; i < n; ++i)
            detail += fmt(" %g:%.3f/%.3f/%.3f/%.3f", t.column("snr_db")[i], val("sp", i), val("focuss", i),
                          val("gsp", i), val("mfocuss", i));
        detail += fmt("; monotone=%d ordering=%d top>=0.99=%d", mono, order, top);
        return {mono && order && top, detail};
    }

    Outcome ac7()
    {
        ExperimentConfig c;
        c.scenario = Scenario::crb_mse;
        c.trials = 1000;
        c.array.elements = 64;
        c.distribution.levels = 32;
        c.snr_db = {0.0, 5.0, 10.0, 15.0, 20.0};
        const Table t = run(c).table("crb_mse");
        bool in_range = true, closed = true;
        std::string detail;
        for (std::size_t i = 0; i < t.n_rows(); ++i)
        {
            const double rt = t.column("ratio_theta")[i], rr = t.column("ratio_range")[i];
            in_range = in_range && rt >= 1.0 && rt <= 3.0 && rr >= 1.0 && rr <= 3.0;
            const double et = std::abs(t.column("crb_theta")[i] / t.column("crb_theta_fim")[i] - 1.0);
            const double er = std::abs(t.column("crb_range")[i] / t.column("crb_range_fim")[i] - 1.0);
            closed = closed && et < 1e-9 && er < 1e-9;
            detail += fmt("%g dB: MSE/CRB theta %.3f+-%.3f range %.3f+-%.3f; ", t.column("snr_db")[i], rt,
                          t.column("ratio_theta_se")[i], rr, t.column("ratio_range_se")[i]);
        }
        detail += fmt("ratios in [1,3]=%d, closed form vs FIM within 1e-9=%d", in_range, closed);
        return {in_range && closed, detail};
    }

    Outcome ac8()
    {
        ExperimentConfig c;
        c.scenario = Scenario::coherence;
        c.trials = 500;
        c.array.elements = 64;
        c.distribution.levels = 32;
        c.coherence.r_values = {0.25, 0.3, 0.35, 0.4};
        c.coherence.targets = 2;
        const CampaignResult r = run(c);
        const Table &b = r.table("coherence_bound");
        bool dominates = true;
        std::string detail;
        for (std::size_t i = 0; i < b.n_rows(); ++i)
        {
            dominates = dominates && b.column("empirical_prob")[i] >= b.column("bound")[i];
            detail += fmt("r=%.2f emp %.3f bound %.4f; ", b.column("r")[i], b.column("empirical_prob")[i],
                          b.column("bound")[i]);
        }
        const int k = exact_recovery_sparsity(64, 128, 0.01);
        const Table &d = r.table("coherence_draws");
        std::size_t below = 0, recovered = 0;
        for (std::size_t i = 0; i < d.n_rows(); ++i)
            if (d.column("mu")[i] < 1.0 / 3.0)
            {
                ++below;
                recovered += d.column("sp_success")[i] == 1.0;
            }
        const double rate = below ? static_cast<double>(recovered) / below : 0.0;
        detail += fmt("k_exact(64,128,0.01)=%d; SP success %zu/%zu where mu<1/3", k, recovered, below);
        return {dominates && k == 2 && below > 0 && rate >= 0.99, detail};
    }

    Outcome ac9()
    {
        // zero-padding FFT against the direct matched filter
        const ArrayConfig cfg(128, 0.025, 3e9, 1e6);
        const FrequencyDraw draw = sample_frequencies(FrequencyDistribution::discrete_uniform(64), 128, 2026);
        const DirectionRangeGrid grid = DirectionRangeGrid::canonical(cfg, 64);
        const ObservingMatrix obs = build_observing_matrix(cfg, draw, grid);
        TargetScene scene(1);
        scene.add({grid.direction_at(grid.index(20, 5)), grid.range_at(grid.index(20, 5)), {cplx(1.0, 0.5)}});
        scene.add({0.31, 47.3, {cplx(-0.4, 0.9)}});
        scene.add({-1.05, 111.0, {cplx(0.2, -0.3)}});
        const EchoMatrix echo = synthesize_echoes(cfg, draw, scene, 0.0, 1);
        const RVector mf = matched_filter(echo, obs);
        const CMatrix f = zero_padding_2dfft(echo.column(0), draw, 64);
        double dev = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
        {
            const auto [r, k] = fft_bin(cfg, 64, grid.direction_at(i), grid.range_at(i));
            const double v = std::abs(f(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k))) / 128.0;
            dev = std::max(dev, std::abs(v - mf[static_cast<Eigen::Index>(i)]));
        }
        const double fft_rel = dev / mf.maxCoeff();

        // derivatives against central differences, carrier phase held fixed
        const ArrayConfig cfg64(64, 0.025, 3e9, 1e6);
        const FrequencyDraw d64 = sample_frequencies(FrequencyDistribution::discrete_uniform(32), 64, 7);
        const double kc = 4.0 * kPi * cfg64.center_freq() / cfg64.wave_speed();
        double fd_rel = 0.0;
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> ang(-1.3, 1.3), rng_m(0.0, 140.0);
        for (int trial = 0; trial < 20; ++trial)
        {
            const double th = ang(rng), r = rng_m(rng);
            const auto [dt, dr] = steering_derivatives(cfg64, d64, th, r);
            const double ht = 1e-6, hr = 1e-4;
            const CVector ft =
                (steering_vector(cfg64, d64, th + ht, r) - steering_vector(cfg64, d64, th - ht, r)) / (2.0 * ht);
            const CVector fr = (steering_vector(cfg64, d64, th, r + hr) * std::polar(1.0, kc * hr) -
                                steering_vector(cfg64, d64, th, r - hr) * std::polar(1.0, -kc * hr)) /
                               (2.0 * hr);
            fd_rel = std::max({fd_rel, (ft - dt).norm() / dt.norm(), (fr - dr).norm() / dr.norm()});
        }

        // linear FDA draw: direction and range coupled
        TargetScene one(1);
        one.add({0.35, 50.0, {1.0}});
        const FrequencyDraw lfda = linear_fda_draw(64);
        const FimReport rep = fim(cfg64, lfda, one, CMatrix::Identity(1, 1), 1.0, 1);
        bool flagged = false;
        try
        {
            crb_uncorrelated(cfg64, lfda, one, 0, 1.0, 1, 1.0);
        }
        catch (const std::domain_error &)
        {
            flagged = true;
        }
        const double gamma = coupling_gamma(cfg64, lfda, one, 0);
        const bool ok = fft_rel < 1e-9 && fd_rel < 1e-5 && flagged && !rep.crb_available;
        return {ok, fmt("FFT vs MF max rel dev %.2e; FD max rel err %.2e; LFDA gamma %.2e, closed form rejected=%d, "
                        "FIM cond %.2e crb_available=%d",
                        fft_rel, fd_rel, gamma, flagged, rep.condition, rep.crb_available)};
    }

    ExperimentConfig determinism_config(Scenario s)
    {
        ExperimentConfig c;
        c.scenario = s;
        c.seed = 20260101;
        c.array.elements = 32;
        c.distribution.levels = 16;
        c.trials = 40;
        c.moments.q_half = 3;
        c.moments.p_half = 3;
        c.ks.pairs = 5;
        c.beampattern.q_points = 15;
        c.beampattern.p_points = 15;
        if (s == Scenario::ks)
            c.trials = 200;
        if (s == Scenario::detect_example)
        {
            c.distribution.levels = 32;
            c.trials = 10;
        }
        if (s == Scenario::detect_sweep)
            c.snr_db = {-6.0, 0.0, 6.0};
        return c;
    }

    Outcome ac10()
    {
        const Scenario all[] = {Scenario::beampattern,  Scenario::moments, Scenario::ks,       Scenario::detect_example,
                                Scenario::detect_sweep, Scenario::crb_mse, Scenario::coherence};
        const fs::path root = fs::temp_directory_path() / "rfda_acceptance_determinism";
        fs::remove_all(root);
        bool identical = true, threads_equal = true;
        std::size_t files = 0;
        std::string detail;
        for (Scenario s : all)
        {
            const ExperimentConfig c = determinism_config(s);
            for (TableFormat f : {TableFormat::csv, TableFormat::json})
            {
                const fs::path a = root / (scenario_name(s) + "_a"), b = root / (scenario_name(s) + "_b");
                const auto pa = emit(run(c, RunOptions{0}), a, f);
                const auto pb = emit(run(c, RunOptions{0}), b, f);
                for (std::size_t i = 0; i < pa.size(); ++i)
                {
                    if (pa[i].filename() == "timing.json")
                        continue;
                    ++files;
                    if (read_text_file(pa[i]) != read_text_file(pb[i]))
                    {
                        identical = false;
                        detail += "differs: " + pa[i].filename().string() + "; ";
                    }
                }
                fs::remove_all(a);
                fs::remove_all(b);
            }
            const CampaignResult serial = run(c, RunOptions{1});
            const CampaignResult parallel = run(c, RunOptions{4});
            if (serial.tables != parallel.tables)
            {
                threads_equal = false;
                detail += "serial/parallel differ: " + scenario_name(s) + "; ";
            }
        }
        fs::remove_all(root);
        detail += fmt("%zu emitted files compared across reruns, 7 scenarios serial vs 4 threads", files);
        return {identical && threads_equal, detail};
    }
}

int main(int argc, char **argv)
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
        {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10},
    };
    std::string only;
    for (int i = 1; i < argc; ++i)
    {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc)
            only = argv[++i];
        else
        {
            std::fprintf(stderr, "usage: %s [--only ACn]\n", argv[0]);
            return 2;
        }
    }
    int failures = 0, ran = 0;
    for (const auto &[name, fn] : criteria)
    {
        if (!only.empty() && name != only)
            continue;
        ++ran;
        Outcome o;
        try
        {
            o = fn();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        std::printf("%s %s %s\n", name.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
        failures += !o.pass;
    }
    if (ran == 0)
    {
        std::fprintf(stderr, "unknown criterion '%s'\n", only.c_str());
        return 2;
    }
    return failures == 0 ? 0 : 1;
}
