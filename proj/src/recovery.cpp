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

#include "rfda/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rfda
{
    namespace
    {
        // Indices of the k largest scores, ties broken by lower index; returned ascending.
        std::vector<std::size_t> top_k(const RVector &scores, std::size_t k)
        {
            std::vector<std::size_t> idx(static_cast<std::size_t>(scores.size()));
            std::iota(idx.begin(), idx.end(), 0);
            k = std::min(k, idx.size());
            std::partial_sort(idx.begin(), idx.begin() + static_cast<long>(k), idx.end(),
                              [&](std::size_t a, std::size_t b) {
                                  const double sa = scores[static_cast<Eigen::Index>(a)];
                                  const double sb = scores[static_cast<Eigen::Index>(b)];
                                  return sa > sb || (sa == sb && a < b);
                              });
            idx.resize(k);
            std::sort(idx.begin(), idx.end());
            return idx;
        }

        CMatrix gather_columns(const CMatrix &dictionary, std::span<const std::size_t> support)
        {
            CMatrix a(dictionary.rows(), static_cast<Eigen::Index>(support.size()));
            for (std::size_t j = 0; j < support.size(); ++j)
                a.col(static_cast<Eigen::Index>(j)) = dictionary.col(static_cast<Eigen::Index>(support[j]));
            return a;
        }

        RVector correlation_scores(const CMatrix &dictionary, const RVector &col_norms, const CMatrix &residual)
        {
            const CMatrix c = dictionary.adjoint() * residual;
            RVector s = c.rowwise().norm();
            for (Eigen::Index i = 0; i < s.size(); ++i)
                s[i] = col_norms[i] > 0.0 ? s[i] / col_norms[i] : 0.0;
            return s;
        }

        // lambda > 0 with || lambda (G + lambda I)^{-1} y ||^2 = target, found by
        // bisection in log(lambda); the residual norm is increasing in lambda.
        // `outside` is the energy of y orthogonal to the range of G.
        double discrepancy_lambda(const RVector &ev, const RVector &energy, double outside, double target)
        {
            auto residual = [&](double lambda) {
                double r = outside;
                for (Eigen::Index k = 0; k < ev.size(); ++k)
                {
                    const double d = std::max(ev[k], 0.0) + lambda;
                    r += d > 0.0 ? energy[k] * (lambda / d) * (lambda / d) : energy[k];
                }
                return r;
            };
            const double scale = std::max(ev.maxCoeff(), 1e-300);
            double lo = 1e-14 * scale;
            double hi = 1e14 * scale;
            if (residual(lo) >= target)
                return lo;
            for (int it = 0; it < 200 && hi / lo > 1.0 + 1e-12; ++it)
            {
                const double mid = std::sqrt(lo * hi);
                (residual(mid) < target ? lo : hi) = mid;
            }
            return std::sqrt(lo * hi);
        }

        void validate_measurements(const CMatrix &dictionary, const CMatrix &y)
        {
            if (y.rows() != dictionary.rows())
                throw std::invalid_argument("sparse recovery: measurement rows differ from dictionary rows");
            if (y.cols() < 1)
                throw std::invalid_argument("sparse recovery: no snapshots");
        }
    }

    double default_noise_tolerance(std::size_t n_rows, std::size_t n_snapshots, double noise_power)
    {
        const double k = static_cast<double>(n_rows * n_snapshots);
        return std::sqrt(k + 2.0 * std::sqrt(2.0 * k)) * std::sqrt(noise_power);
    }

    CMatrix restricted_least_squares(const CMatrix &dictionary, std::span<const std::size_t> support,
                                     const CMatrix &y)
    {
        const CMatrix a = gather_columns(dictionary, support);
        CMatrix gram = a.adjoint() * a;
        const CMatrix rhs = a.adjoint() * y;
        const Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram, Eigen::EigenvaluesOnly);
        const double lmax = eig.eigenvalues().maxCoeff();
        const double lmin = eig.eigenvalues().minCoeff();
        if (!(lmin > 1e-12 * lmax))
            gram.diagonal().array() += 1e-10 * static_cast<double>(dictionary.rows());
        return gram.ldlt().solve(rhs);
    }

    RecoveryResult subspace_pursuit(const CMatrix &dictionary, const CMatrix &y, std::size_t sparsity,
                                    const SubspacePursuitOptions &options)
    {
        validate_measurements(dictionary, y);
        if (sparsity < 1 || sparsity >= static_cast<std::size_t>(dictionary.rows()) ||
            sparsity > static_cast<std::size_t>(dictionary.cols()))
            throw std::invalid_argument("subspace pursuit: sparsity must satisfy 1 <= K < rows");

        const RVector col_norms = dictionary.colwise().norm().transpose();
        auto residual_of = [&](const std::vector<std::size_t> &t, const CMatrix &x) {
            return CMatrix(y - gather_columns(dictionary, t) * x);
        };

        std::vector<std::size_t> support = top_k(correlation_scores(dictionary, col_norms, y), sparsity);
        CMatrix x = restricted_least_squares(dictionary, support, y);
        CMatrix residual = residual_of(support, x);
        double rnorm = residual.norm();

        RecoveryResult out;
        out.residual_history.push_back(rnorm);
        bool converged = false;
        int it = 0;
        while (it < options.max_iterations)
        {
            if (rnorm == 0.0)
            {
                converged = true;
                break;
            }
            ++it;
            std::vector<std::size_t> candidate = top_k(correlation_scores(dictionary, col_norms, residual), sparsity);
            candidate.insert(candidate.end(), support.begin(), support.end());
            std::sort(candidate.begin(), candidate.end());
            candidate.erase(std::unique(candidate.begin(), candidate.end()), candidate.end());

            const CMatrix x_wide = restricted_least_squares(dictionary, candidate, y);
            const RVector row_norms = x_wide.rowwise().norm();
            std::vector<std::size_t> keep;
            for (std::size_t j : top_k(row_norms, sparsity))
                keep.push_back(candidate[j]);

            const CMatrix x_new = restricted_least_squares(dictionary, keep, y);
            const CMatrix r_new = residual_of(keep, x_new);
            const double rn_new = r_new.norm();
            if (!(rn_new < rnorm))
            {
                converged = true;
                break;
            }
            support = std::move(keep);
            x = x_new;
            residual = r_new;
            rnorm = rn_new;
            out.residual_history.push_back(rnorm);
        }

        out.support = std::move(support);
        out.amplitudes = std::move(x);
        out.residual_norm = rnorm;
        out.iterations = it;
        out.converged = converged;
        return out;
    }

    RecoveryResult focuss(const CMatrix &dictionary, const CMatrix &y, double noise_tolerance,
                          const FocussOptions &options)
    {
        validate_measurements(dictionary, y);
        if (!(noise_tolerance >= 0.0))
            throw std::invalid_argument("focuss: noise tolerance must be non-negative");
        const Eigen::Index n_rows = dictionary.rows();
        const Eigen::Index n_cols = dictionary.cols();
        const Eigen::Index n_snap = y.cols();
        const RVector col_norms = dictionary.colwise().norm().transpose();
        if (!(col_norms.minCoeff() > 0.0))
            throw std::invalid_argument("focuss: dictionary has a zero column");

        RecoveryResult out;
        const double y_energy = y.squaredNorm();
        const double fixed_lambda = noise_tolerance * noise_tolerance / static_cast<double>(n_rows * n_snap);
        const double target_residual = noise_tolerance * noise_tolerance;
        const double exponent = 1.0 - 0.5 * options.p;

        std::vector<std::size_t> active(static_cast<std::size_t>(n_cols));
        std::iota(active.begin(), active.end(), 0);
        RVector weights = RVector::Ones(n_cols);
        CMatrix x = CMatrix::Zero(n_cols, n_snap); // rows follow `active`, unit-norm column scale

        bool converged = false;
        int it = 0;
        const bool nothing_to_fit = y_energy == 0.0 ||
                                    (options.regularization == FocussRegularization::discrepancy &&
                                     y_energy <= target_residual);
        while (!nothing_to_fit && it < options.max_iterations)
        {
            ++it;
            const auto n_act = static_cast<Eigen::Index>(active.size());
            CMatrix phi_w(n_rows, n_act);
            for (Eigen::Index j = 0; j < n_act; ++j)
            {
                const auto a = static_cast<Eigen::Index>(active[static_cast<std::size_t>(j)]);
                phi_w.col(j) = dictionary.col(a) * (weights[j] / col_norms[a]);
            }

            // Spectral form of (Phi_w Phi_w^H + lambda I)^{-1}, from whichever Gram is smaller.
            const bool wide = n_act > n_rows;
            CMatrix gram = CMatrix::Zero(wide ? n_rows : n_act, wide ? n_rows : n_act);
            if (wide)
                gram.selfadjointView<Eigen::Lower>().rankUpdate(phi_w);
            else
                gram.selfadjointView<Eigen::Lower>().rankUpdate(phi_w.adjoint());
            const Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram.selfadjointView<Eigen::Lower>());
            const RVector ev = eig.eigenvalues().cwiseMax(0.0);
            const CMatrix proj_y = wide ? CMatrix(y) : CMatrix(phi_w.adjoint() * y);
            const CMatrix coeff = eig.eigenvectors().adjoint() * proj_y;
            RVector energy = coeff.rowwise().squaredNorm();
            const double ev_floor = 1e-12 * std::max(ev.maxCoeff(), 1e-300);
            if (!wide)
                for (Eigen::Index k = 0; k < ev.size(); ++k)
                    energy[k] = ev[k] > ev_floor ? energy[k] / ev[k] : 0.0;
            const double outside = std::max(0.0, y_energy - energy.sum());

            double lambda = fixed_lambda;
            if (options.regularization == FocussRegularization::discrepancy)
                lambda = discrepancy_lambda(ev, energy, outside, target_residual);
            RVector inv(ev.size());
            for (Eigen::Index k = 0; k < ev.size(); ++k)
                inv[k] = ev[k] + lambda > ev_floor ? 1.0 / (ev[k] + lambda) : 0.0;
            const CMatrix solved = eig.eigenvectors() * (inv.asDiagonal() * coeff);
            CMatrix x_new = wide ? CMatrix(phi_w.adjoint() * solved) : solved;
            for (Eigen::Index j = 0; j < n_act; ++j)
                x_new.row(j) *= weights[j];

            const double prev = x.norm();
            const double change = prev > 0.0 ? (x_new - x).norm() / prev : 1.0;
            x = std::move(x_new);

            const RVector row_norms = x.rowwise().norm();
            const double largest = row_norms.maxCoeff();
            if (!(largest > 0.0))
                break;
            if (change < options.tolerance)
            {
                converged = true;
                break;
            }

            // Rows with vanishing weight cannot re-enter; drop them from the active set.
            std::vector<std::size_t> kept_active;
            std::vector<Eigen::Index> kept_rows;
            for (Eigen::Index j = 0; j < n_act; ++j)
                if (row_norms[j] > options.prune_fraction * largest)
                {
                    kept_active.push_back(active[static_cast<std::size_t>(j)]);
                    kept_rows.push_back(j);
                }
            CMatrix x_kept(static_cast<Eigen::Index>(kept_rows.size()), n_snap);
            RVector w_kept(static_cast<Eigen::Index>(kept_rows.size()));
            for (std::size_t j = 0; j < kept_rows.size(); ++j)
            {
                x_kept.row(static_cast<Eigen::Index>(j)) = x.row(kept_rows[j]);
                w_kept[static_cast<Eigen::Index>(j)] = std::pow(row_norms[kept_rows[j]], exponent);
            }
            active = std::move(kept_active);
            x = std::move(x_kept);
            weights = std::move(w_kept);
        }
        if (nothing_to_fit)
        {
            x = CMatrix::Zero(0, n_snap);
            active.clear();
            converged = true;
        }

        const RVector row_norms = x.rowwise().norm();
        const double largest = row_norms.size() > 0 ? row_norms.maxCoeff() : 0.0;
        std::vector<Eigen::Index> rows;
        for (Eigen::Index j = 0; j < row_norms.size(); ++j)
            if (largest > 0.0 && row_norms[j] > options.support_fraction * largest)
            {
                out.support.push_back(active[static_cast<std::size_t>(j)]);
                rows.push_back(j);
            }
        out.amplitudes.resize(static_cast<Eigen::Index>(rows.size()), n_snap);
        for (std::size_t j = 0; j < rows.size(); ++j)
            out.amplitudes.row(static_cast<Eigen::Index>(j)) =
                x.row(rows[j]) / col_norms[static_cast<Eigen::Index>(out.support[j])];

        CMatrix fitted = CMatrix::Zero(n_rows, n_snap);
        for (std::size_t j = 0; j < active.size(); ++j)
        {
            const auto a = static_cast<Eigen::Index>(active[j]);
            fitted += dictionary.col(a) * (x.row(static_cast<Eigen::Index>(j)) / col_norms[a]);
        }
        out.residual_norm = (y - fitted).norm();
        out.residual_history.push_back(out.residual_norm);
        out.iterations = it;
        out.converged = converged;
        return out;
    }

    RecoveryResult sp_recover(const ObservingMatrix &obs, const CVector &y, std::size_t sparsity,
                              const SubspacePursuitOptions &options)
    {
        return subspace_pursuit(obs.columns, CMatrix(y), sparsity, options);
    }

    RecoveryResult gsp_recover(const ObservingMatrix &obs, const CMatrix &y, std::size_t sparsity,
                               const SubspacePursuitOptions &options)
    {
        return subspace_pursuit(obs.columns, y, sparsity, options);
    }

    RecoveryResult focuss_recover(const ObservingMatrix &obs, const CVector &y, double noise_tolerance,
                                  const FocussOptions &options)
    {
        return focuss(obs.columns, CMatrix(y), noise_tolerance, options);
    }

    RecoveryResult mfocuss_recover(const ObservingMatrix &obs, const CMatrix &y, double noise_tolerance,
                                   const FocussOptions &options)
    {
        return focuss(obs.columns, y, noise_tolerance, options);
    }

    bool detection_success(const RecoveryResult &result, std::span<const std::size_t> truth)
    {
        std::vector<std::size_t> a = result.support;
        std::vector<std::size_t> b(truth.begin(), truth.end());
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        a.erase(std::unique(a.begin(), a.end()), a.end());
        b.erase(std::unique(b.begin(), b.end()), b.end());
        return a == b;
    }
}
