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

#ifndef RFDA_BOUNDS_HPP
#define RFDA_BOUNDS_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "rfda/array_model.hpp"
#include "rfda/processing.hpp"

namespace rfda
{
    // Fisher information for xi = [theta_1, r_1, ..., theta_P, r_P].
    struct FimReport
    {
        RMatrix fim;                 // 2P x 2P
        RMatrix crb;                 // inverse of fim; empty when unavailable
        bool crb_available = false;
        double condition = 0;        // largest / smallest eigenvalue of fim (inf when singular)
        std::vector<std::pair<double, double>> per_target; // (CRB_theta, CRB_r)
    };

    struct UncorrelatedCrb
    {
        double crb_theta = 0;
        double crb_range = 0;
        double gamma = 0;
    };

    struct CoherenceReport
    {
        double mu = 0;
        std::size_t column_a = 0; // argmax pair, column_a < column_b
        std::size_t column_b = 0;
        std::size_t n_rows = 0;   // N
        std::size_t n_ranges = 0; // M

        double bound_prob(double r) const;
        int k_exact(double epsilon) const;
        double qcbp_error(int sparsity, double epsilon, double sigma_l, double sigma_n) const;
    };

    struct MlEstimate
    {
        double direction = 0;
        double range = 0;
        double objective = 0;       // sum over snapshots of |b^H r(l)|^2 at the estimate
        std::size_t coarse_index = 0;
    };

    /// Derivatives of the steering vector in direction and range. The carrier term
    /// exp(-j 4 pi f_c r / c) is common to all elements and is held fixed in the
    /// range derivative (it belongs to the target amplitude), giving
    ///   db/dtheta = -j (4 pi f_c d cos(theta) / c) (n . b),  db/dr = -j (4 pi df / c) (m . b).
    std::pair<CVector, CVector> steering_derivatives(const ArrayConfig &cfg, const FrequencyDraw &draw,
                                                     double theta, double range);

    /// I - A A^+ from a rank-revealing SVD (tolerance 1e-10 sigma_max). Throws
    /// std::domain_error when A has dependent columns.
    CMatrix orthogonal_projector(const CMatrix &a);

    /// J = (2L / sigma_n^2) Re{C .* (S^T kron ones(2, 2))}, C = D^H P_A^perp D.
    FimReport fim(const ArrayConfig &cfg, const FrequencyDraw &draw, const TargetScene &scene,
                  const CMatrix &amplitude_corr, double noise_power, std::size_t n_snapshots);

    /// Closed-form bounds for target `index` when amplitudes of distinct targets
    /// are uncorrelated. Throws std::domain_error when gamma vanishes.
    UncorrelatedCrb crb_uncorrelated(const ArrayConfig &cfg, const FrequencyDraw &draw, const TargetScene &scene,
                                     std::size_t index, double noise_power, std::size_t n_snapshots,
                                     double power);

    // gamma = |P m.b|^2 |P n.b|^2 - |x|^2 / 2 - Re{x^2} / 2 with x = (m.b)^H P (n.b).
    double coupling_gamma(const ArrayConfig &cfg, const FrequencyDraw &draw, const TargetScene &scene,
                          std::size_t index);

    /// Brute force over column pairs, parallel over column blocks.
    CoherenceReport mutual_coherence(const ObservingMatrix &obs, int threads = 0);

    /// Same quantity for the canonical grid of a discrete uniform draw with M
    /// levels, from one M x N FFT of the occupancy pattern: the inner product of
    /// two grid columns depends only on their grid offset.
    CoherenceReport canonical_grid_coherence(const ArrayConfig &cfg, const FrequencyDraw &draw, int m_levels);

    /// max(0, 1 - (M - 1) N exp(-N r^2)), clamped to [0, 1].
    double coherence_prob_bound(std::size_t m, std::size_t n, double r);

    /// Real-valued sparsity limit (1 + sqrt(N / (ln(MN - N) - ln eps))) / 2.
    double exact_recovery_bound(std::size_t m, std::size_t n, double epsilon);
    int exact_recovery_sparsity(std::size_t m, std::size_t n, double epsilon);

    /// sqrt((ln N + ln(M - 1) - ln eps) / N)
    double coherence_eta(std::size_t m, std::size_t n, double epsilon);

    /// sqrt(3 (1 + eta)) / (1 - (2K - 1) eta) (sigma_l + sigma_n). Throws
    /// std::domain_error when (2K - 1) eta >= 1.
    double qcbp_error_bound(int sparsity, std::size_t m, std::size_t n, double epsilon, double sigma_l,
                            double sigma_n);

    /// Single-target maximum likelihood: coarse scan of the matched filter over
    /// obs.grid, then two rounds of golden-section refinement in direction and
    /// in range (to 1e-6 rad and 1e-4 m) within one grid cell of the peak.
    MlEstimate ml_estimate(const ArrayConfig &cfg, const ObservingMatrix &obs, const EchoMatrix &echo);
    MlEstimate ml_estimate(const ArrayConfig &cfg, const FrequencyDraw &draw, const EchoMatrix &echo, int m_levels);
}

#endif
