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

#include "rfda/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <omp.h>

#include "rfda/dft.hpp"

namespace rfda
{
    namespace
    {
        struct PairMax
        {
            double value = -1.0;
            std::size_t a = 0;
            std::size_t b = 0;

            void offer(double v, std::size_t i, std::size_t h)
            {
                if (v > value || (v == value && (i < a || (i == a && h < b))))
                {
                    value = v;
                    a = i;
                    b = h;
                }
            }
        };

        CVector weighted(const CVector &b, const RVector &w)
        {
            return (b.array() * w.array().cast<cplx>()).matrix();
        }

        RVector centred_indices(const ArrayConfig &cfg)
        {
            RVector n(static_cast<Eigen::Index>(cfg.n_elements()));
            for (std::size_t i = 0; i < cfg.n_elements(); ++i)
                n[static_cast<Eigen::Index>(i)] = cfg.centred_index(i);
            return n;
        }

        RVector offsets_vector(const FrequencyDraw &draw)
        {
            return Eigen::Map<const RVector>(draw.offsets.data(), static_cast<Eigen::Index>(draw.size()));
        }

        CMatrix scene_steering(const ArrayConfig &cfg, const FrequencyDraw &draw, const TargetScene &scene)
        {
            CMatrix a(static_cast<Eigen::Index>(cfg.n_elements()), static_cast<Eigen::Index>(scene.size()));
            for (std::size_t i = 0; i < scene.size(); ++i)
                a.col(static_cast<Eigen::Index>(i)) = steering_vector(cfg, draw, scene[i].direction, scene[i].range);
            return a;
        }

        void check_scene(const ArrayConfig &cfg, const FrequencyDraw &draw, const TargetScene &scene)
        {
            if (draw.size() != cfg.n_elements())
                throw std::invalid_argument("bounds: frequency draw length differs from element count");
            if (scene.empty())
                throw std::invalid_argument("bounds: scene has no targets");
        }

        double snapshot_objective(const ArrayConfig &cfg, const FrequencyDraw &draw, const EchoMatrix &echo,
                                  double theta, double range)
        {
            const CVector b = steering_vector(cfg, draw, theta, range);
            return (b.adjoint() * echo.samples).squaredNorm();
        }

        template <class F>
        double golden_section_max(F &&f, double lo, double hi, double tol)
        {
            const double invphi = 0.5 * (std::sqrt(5.0) - 1.0);
            double x1 = hi - invphi * (hi - lo);
            double x2 = lo + invphi * (hi - lo);
            double f1 = f(x1);
            double f2 = f(x2);
            while (hi - lo > tol)
            {
                if (f1 >= f2)
                {
                    hi = x2;
                    x2 = x1;
                    f2 = f1;
                    x1 = hi - invphi * (hi - lo);
                    f1 = f(x1);
                }
                else
                {
                    lo = x1;
                    x1 = x2;
                    f1 = f2;
                    x2 = lo + invphi * (hi - lo);
                    f2 = f(x2);
                }
            }
            return f1 >= f2 ? x1 : x2;
        }
    }

    std::pair<CVector, CVector> steering_derivatives(const ArrayConfig &cfg, const FrequencyDraw &draw,
                                                     double theta, double range)
    {
        const CVector b = steering_vector(cfg, draw, theta, range);
        const double c = cfg.wave_speed();
        const cplx k_theta(0.0, -4.0 * kPi * cfg.center_freq() * cfg.spacing() * std::cos(theta) / c);
        const cplx k_range(0.0, -4.0 * kPi * cfg.freq_increment() / c);
        return {k_theta * weighted(b, centred_indices(cfg)), k_range * weighted(b, offsets_vector(draw))};
    }

    CMatrix orthogonal_projector(const CMatrix &a)
    {
        const Eigen::Index n = a.rows();
        CMatrix p = CMatrix::Identity(n, n);
        if (a.cols() == 0)
            return p;
        const Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU);
        const RVector &s = svd.singularValues();
        const double tol = 1e-10 * s[0];
        Eigen::Index rank = 0;
        while (rank < s.size() && s[rank] > tol)
            ++rank;
        if (rank < a.cols())
            throw std::domain_error("orthogonal_projector: steering vectors are linearly dependent "
                                    "(coincident targets)");
        const CMatrix u = svd.matrixU().leftCols(rank);
        p.noalias() -= u * u.adjoint();
        return p;
    }

    FimReport fim(const ArrayConfig &cfg, const FrequencyDraw &draw, const TargetScene &scene,
                  const CMatrix &amplitude_corr, double noise_power, std::size_t n_snapshots)
    {
        check_scene(cfg, draw, scene);
        const auto np = static_cast<Eigen::Index>(scene.size());
        if (amplitude_corr.rows() != np || amplitude_corr.cols() != np)
            throw std::invalid_argument("fim: amplitude correlation must be P x P");
        if (!(noise_power > 0.0))
            throw std::invalid_argument("fim: noise power must be positive");
        if (n_snapshots < 1)
            throw std::invalid_argument("fim: at least one snapshot required");
        const double s_scale = std::max(amplitude_corr.cwiseAbs().maxCoeff(), 1e-300);
        if ((amplitude_corr - amplitude_corr.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * s_scale)
            throw std::invalid_argument("fim: amplitude correlation is not Hermitian");
        const Eigen::SelfAdjointEigenSolver<CMatrix> s_eig(amplitude_corr, Eigen::EigenvaluesOnly);
        if (s_eig.eigenvalues().minCoeff() < -1e-10 * s_scale)
            throw std::invalid_argument("fim: amplitude correlation is not positive semi-definite");

        const CMatrix a = scene_steering(cfg, draw, scene);
        CMatrix d(a.rows(), 2 * np);
        for (Eigen::Index i = 0; i < np; ++i)
        {
            const auto [dt, dr] = steering_derivatives(cfg, draw, scene[static_cast<std::size_t>(i)].direction,
                                                       scene[static_cast<std::size_t>(i)].range);
            d.col(2 * i) = dt;
            d.col(2 * i + 1) = dr;
        }
        const CMatrix pd = orthogonal_projector(a) * d;
        const CMatrix c = pd.adjoint() * pd;

        const double scale = 2.0 * static_cast<double>(n_snapshots) / noise_power;
        FimReport out;
        out.fim.resize(2 * np, 2 * np);
        for (Eigen::Index col = 0; col < 2 * np; ++col)
            for (Eigen::Index row = 0; row < 2 * np; ++row)
                out.fim(row, col) = scale * std::real(c(row, col) * amplitude_corr(col / 2, row / 2));
        out.fim = 0.5 * (out.fim + out.fim.transpose()).eval();

        const Eigen::SelfAdjointEigenSolver<RMatrix> eig(out.fim, Eigen::EigenvaluesOnly);
        const double lmin = eig.eigenvalues().minCoeff();
        const double lmax = eig.eigenvalues().maxCoeff();
        out.condition = lmin > 0.0 ? lmax / lmin : std::numeric_limits<double>::infinity();
        if (out.condition <= 1e12)
        {
            const Eigen::LLT<RMatrix> llt(out.fim);
            if (llt.info() == Eigen::Success)
            {
                out.crb = llt.solve(RMatrix::Identity(2 * np, 2 * np));
                out.crb = 0.5 * (out.crb + out.crb.transpose()).eval();
                out.crb_available = true;
                for (Eigen::Index i = 0; i < np; ++i)
                    out.per_target.emplace_back(out.crb(2 * i, 2 * i), out.crb(2 * i + 1, 2 * i + 1));
            }
        }
        return out;
    }

    double coupling_gamma(const ArrayConfig &cfg, const FrequencyDraw &draw, const TargetScene &scene,
                          std::size_t index)
    {
        check_scene(cfg, draw, scene);
        if (index >= scene.size())
            throw std::out_of_range("coupling_gamma: target index out of range");
        const CMatrix proj = orthogonal_projector(scene_steering(cfg, draw, scene));
        const CVector b = steering_vector(cfg, draw, scene[index].direction, scene[index].range);
        const CVector pm = proj * weighted(b, offsets_vector(draw));
        const CVector pn = proj * weighted(b, centred_indices(cfg));
        const cplx x = pm.dot(pn);
        return pm.squaredNorm() * pn.squaredNorm() - 0.5 * std::norm(x) - 0.5 * std::real(x * x);
    }

    UncorrelatedCrb crb_uncorrelated(const ArrayConfig &cfg, const FrequencyDraw &draw, const TargetScene &scene,
                                     std::size_t index, double noise_power, std::size_t n_snapshots,
                                     double power)
    {
        check_scene(cfg, draw, scene);
        if (index >= scene.size())
            throw std::out_of_range("crb_uncorrelated: target index out of range");
        if (!(noise_power > 0.0) || !(power > 0.0) || n_snapshots < 1)
            throw std::invalid_argument("crb_uncorrelated: noise power, target power and snapshots must be positive");

        const CMatrix proj = orthogonal_projector(scene_steering(cfg, draw, scene));
        const Target &t = scene[index];
        const CVector b = steering_vector(cfg, draw, t.direction, t.range);
        const CVector pm = proj * weighted(b, offsets_vector(draw));
        const CVector pn = proj * weighted(b, centred_indices(cfg));
        const cplx x = pm.dot(pn);
        const double pm2 = pm.squaredNorm();
        const double pn2 = pn.squaredNorm();
        const double gamma = pm2 * pn2 - 0.5 * std::norm(x) - 0.5 * std::real(x * x);
        if (!(gamma > 1e-12 * pm2 * pn2))
            throw std::domain_error("crb_uncorrelated: gamma vanishes; direction and range are coupled "
                                    "(linear frequency increments), CRB unbounded");

        const double c = cfg.wave_speed();
        const double common = noise_power * c * c / (2.0 * static_cast<double>(n_snapshots) * power * gamma);
        const double kt = 4.0 * kPi * cfg.center_freq() * cfg.spacing() * std::cos(t.direction);
        const double kr = 4.0 * kPi * cfg.freq_increment();
        UncorrelatedCrb out;
        out.crb_theta = common / (kt * kt) * pm2;
        out.crb_range = common / (kr * kr) * pn2;
        out.gamma = gamma;
        return out;
    }

    double CoherenceReport::bound_prob(double r) const { return coherence_prob_bound(n_ranges, n_rows, r); }

    int CoherenceReport::k_exact(double epsilon) const { return exact_recovery_sparsity(n_ranges, n_rows, epsilon); }

    double CoherenceReport::qcbp_error(int sparsity, double epsilon, double sigma_l, double sigma_n) const
    {
        return qcbp_error_bound(sparsity, n_ranges, n_rows, epsilon, sigma_l, sigma_n);
    }

    CoherenceReport mutual_coherence(const ObservingMatrix &obs, int threads)
    {
        const Eigen::Index n_cols = obs.columns.cols();
        if (n_cols < 2)
            throw std::invalid_argument("mutual_coherence: fewer than two columns");
        CMatrix q = obs.columns;
        for (Eigen::Index i = 0; i < n_cols; ++i)
        {
            const double norm = q.col(i).norm();
            if (!(norm > 0.0))
                throw std::invalid_argument("mutual_coherence: zero column");
            q.col(i) /= norm;
        }

        constexpr Eigen::Index block = 128;
        const long n_blocks = static_cast<long>((n_cols + block - 1) / block);
        std::vector<PairMax> partial(static_cast<std::size_t>(n_blocks));
        const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
        for (long k = 0; k < n_blocks; ++k)
        {
            const Eigen::Index start = k * block;
            const Eigen::Index width = std::min(block, n_cols - start);
            const CMatrix g = q.leftCols(start + width).adjoint() * q.middleCols(start, width);
            PairMax best;
            for (Eigen::Index j = 0; j < width; ++j)
                for (Eigen::Index i = 0; i < start + j; ++i)
                    best.offer(std::abs(g(i, j)), static_cast<std::size_t>(i), static_cast<std::size_t>(start + j));
            partial[static_cast<std::size_t>(k)] = best;
        }
        PairMax best;
        for (const PairMax &p : partial)
            if (p.value >= 0.0)
                best.offer(p.value, p.a, p.b);

        CoherenceReport out;
        out.mu = std::min(best.value, 1.0);
        out.column_a = best.a;
        out.column_b = best.b;
        out.n_rows = obs.n_rows();
        out.n_ranges = obs.grid.n_ranges();
        return out;
    }

    CoherenceReport canonical_grid_coherence(const ArrayConfig &cfg, const FrequencyDraw &draw, int m_levels)
    {
        if (draw.size() != cfg.n_elements())
            throw std::invalid_argument("canonical_grid_coherence: frequency draw length differs from element count");
        const DirectionRangeGrid grid = DirectionRangeGrid::canonical(cfg, m_levels);
        if (grid.n_directions() != cfg.n_elements())
            throw std::invalid_argument("canonical_grid_coherence: element spacing leaves part of the direction "
                                        "lattice outside the visible region");
        const auto n = static_cast<Eigen::Index>(cfg.n_elements());
        const double half = 0.5 * (m_levels - 1);
        CMatrix occupancy = CMatrix::Zero(m_levels, n);
        for (Eigen::Index col = 0; col < n; ++col)
        {
            const double row = draw.offsets[static_cast<std::size_t>(col)] + half;
            const double rounded = std::nearbyint(row);
            if (std::abs(row - rounded) > 1e-9 || rounded < 0.0 || rounded > m_levels - 1)
                throw std::invalid_argument("canonical_grid_coherence: frequency draw is not on the discrete support");
            occupancy(static_cast<Eigen::Index>(rounded), col) = 1.0;
        }
        const CMatrix spectrum = dft2(occupancy, DftSign::forward);

        PairMax best;
        for (Eigen::Index k = 0; k < n; ++k)
            for (Eigen::Index i = 0; i < m_levels; ++i)
            {
                if (i == 0 && k == 0)
                    continue;
                best.offer(std::abs(spectrum(i, k)) / static_cast<double>(n), 0,
                           grid.index(static_cast<std::size_t>(k), static_cast<std::size_t>(i)));
            }
        CoherenceReport out;
        out.mu = std::min(best.value, 1.0);
        out.column_a = best.a;
        out.column_b = best.b;
        out.n_rows = cfg.n_elements();
        out.n_ranges = static_cast<std::size_t>(m_levels);
        return out;
    }

    double coherence_prob_bound(std::size_t m, std::size_t n, double r)
    {
        if (m < 1 || n < 1)
            throw std::invalid_argument("coherence_prob_bound: M and N must be positive");
        if (!(r >= 0.0))
            throw std::invalid_argument("coherence_prob_bound: r must be non-negative");
        const double nd = static_cast<double>(n);
        const double v = 1.0 - static_cast<double>(m - 1) * nd * std::exp(-nd * r * r);
        return std::clamp(v, 0.0, 1.0);
    }

    double exact_recovery_bound(std::size_t m, std::size_t n, double epsilon)
    {
        if (!(epsilon > 0.0 && epsilon < 1.0))
            throw std::invalid_argument("exact_recovery_sparsity: epsilon must lie in (0, 1)");
        if (m < 2 || n < 1)
            throw std::invalid_argument("exact_recovery_sparsity: requires M >= 2 and N >= 1");
        const double nd = static_cast<double>(n);
        const double denom = std::log(static_cast<double>(m * n - n)) - std::log(epsilon);
        return 0.5 * (1.0 + std::sqrt(nd / denom));
    }

    int exact_recovery_sparsity(std::size_t m, std::size_t n, double epsilon)
    {
        return static_cast<int>(std::floor(exact_recovery_bound(m, n, epsilon)));
    }

    double coherence_eta(std::size_t m, std::size_t n, double epsilon)
    {
        if (!(epsilon > 0.0 && epsilon < 1.0))
            throw std::invalid_argument("coherence_eta: epsilon must lie in (0, 1)");
        if (m < 2 || n < 1)
            throw std::invalid_argument("coherence_eta: requires M >= 2 and N >= 1");
        const double nd = static_cast<double>(n);
        return std::sqrt((std::log(nd) + std::log(static_cast<double>(m - 1)) - std::log(epsilon)) / nd);
    }

    double qcbp_error_bound(int sparsity, std::size_t m, std::size_t n, double epsilon, double sigma_l,
                            double sigma_n)
    {
        if (sparsity < 1)
            throw std::invalid_argument("qcbp_error_bound: sparsity must be positive");
        if (!(sigma_l >= 0.0) || !(sigma_n >= 0.0))
            throw std::invalid_argument("qcbp_error_bound: tolerances must be non-negative");
        const double eta = coherence_eta(m, n, epsilon);
        const double denom = 1.0 - (2.0 * sparsity - 1.0) * eta;
        if (!(denom > 0.0))
            throw std::domain_error("qcbp_error_bound: (2K - 1) eta >= 1, bound does not apply");
        return std::sqrt(3.0 * (1.0 + eta)) / denom * (sigma_l + sigma_n);
    }

    MlEstimate ml_estimate(const ArrayConfig &cfg, const ObservingMatrix &obs, const EchoMatrix &echo)
    {
        if (echo.n_elements() != cfg.n_elements() || obs.n_rows() != cfg.n_elements())
            throw std::invalid_argument("ml_estimate: dimensions differ from the array");
        const RVector mf = matched_filter(echo, obs, 1);
        Eigen::Index peak = 0;
        mf.maxCoeff(&peak);

        const DirectionRangeGrid &grid = obs.grid;
        const auto [i_dir, i_rng] = grid.split(static_cast<std::size_t>(peak));
        const std::vector<double> &dirs = grid.directions();
        const std::vector<double> &rngs = grid.ranges();

        const double s0 = std::sin(dirs[i_dir]);
        const double s_step = dirs.size() > 1
                                  ? (i_dir + 1 < dirs.size() ? std::sin(dirs[i_dir + 1]) - s0 : s0 - std::sin(dirs[i_dir - 1]))
                                  : 0.1;
        const double s_lo = std::max(-1.0, i_dir > 0 ? std::sin(dirs[i_dir - 1]) : s0 - s_step);
        const double s_hi = std::min(1.0, i_dir + 1 < dirs.size() ? std::sin(dirs[i_dir + 1]) : s0 + s_step);
        const double t_lo = std::asin(s_lo);
        const double t_hi = std::asin(s_hi);

        const double r0 = rngs[i_rng];
        const double r_step = rngs.size() > 1
                                  ? (i_rng + 1 < rngs.size() ? rngs[i_rng + 1] - r0 : r0 - rngs[i_rng - 1])
                                  : 1.0;
        const double r_lo = std::max(0.0, i_rng > 0 ? rngs[i_rng - 1] : r0 - r_step);
        const double r_hi = i_rng + 1 < rngs.size() ? rngs[i_rng + 1] : r0 + r_step;

        const FrequencyDraw &draw = obs.draw;
        double theta = dirs[i_dir];
        double range = r0;
        for (int pass = 0; pass < 2; ++pass)
        {
            theta = golden_section_max(
                [&](double t) { return snapshot_objective(cfg, draw, echo, t, range); }, t_lo, t_hi, 1e-6);
            range = golden_section_max(
                [&](double r) { return snapshot_objective(cfg, draw, echo, theta, r); }, r_lo, r_hi, 1e-4);
        }

        MlEstimate out;
        out.direction = theta;
        out.range = range;
        out.objective = snapshot_objective(cfg, draw, echo, theta, range);
        out.coarse_index = static_cast<std::size_t>(peak);
        return out;
    }

    MlEstimate ml_estimate(const ArrayConfig &cfg, const FrequencyDraw &draw, const EchoMatrix &echo, int m_levels)
    {
        const ObservingMatrix obs = build_observing_matrix(cfg, draw, DirectionRangeGrid::canonical(cfg, m_levels));
        return ml_estimate(cfg, obs, echo);
    }
}
