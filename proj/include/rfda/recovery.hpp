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

#ifndef RFDA_RECOVERY_HPP
#define RFDA_RECOVERY_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "rfda/array_model.hpp"
#include "rfda/processing.hpp"

namespace rfda
{
    struct RecoveryResult
    {
        std::vector<std::size_t> support; // ascending grid indices
        CMatrix amplitudes;               // |support| x L
        double residual_norm = 0;         // Frobenius norm of R - Phi X
        int iterations = 0;
        bool converged = false;
        std::vector<double> residual_history;
    };

    struct SubspacePursuitOptions
    {
        int max_iterations = 50;
    };

    enum class FocussRegularization
    {
        discrepancy, // lambda chosen every iteration so that ||R - Phi X||_F = noise tolerance
        fixed,       // lambda = tolerance^2 / (rows * snapshots)
    };

    // Iterates are kept in the scale of unit-norm dictionary columns.
    struct FocussOptions
    {
        FocussRegularization regularization = FocussRegularization::discrepancy;
        double p = 0.8;                 // diversity measure exponent
        double tolerance = 1e-6;        // relative iterate change
        int max_iterations = 100;
        double support_fraction = 0.1;  // keep rows above this fraction of the largest
        double prune_fraction = 1e-8;   // drop rows below this fraction of the largest
    };

    /// sqrt(K + 2 sqrt(2K)) sigma_n with K = rows * snapshots: a high-probability
    /// bound on the Frobenius norm of the noise.
    double default_noise_tolerance(std::size_t n_rows, std::size_t n_snapshots, double noise_power);

    /// Least squares on a column subset, ridge 1e-10 N when the Gram is ill-conditioned.
    CMatrix restricted_least_squares(const CMatrix &dictionary, std::span<const std::size_t> support,
                                     const CMatrix &y);

    RecoveryResult sp_recover(const ObservingMatrix &obs, const CVector &y, std::size_t sparsity,
                              const SubspacePursuitOptions &options = {});
    RecoveryResult gsp_recover(const ObservingMatrix &obs, const CMatrix &y, std::size_t sparsity,
                               const SubspacePursuitOptions &options = {});

    RecoveryResult focuss_recover(const ObservingMatrix &obs, const CVector &y, double noise_tolerance,
                                  const FocussOptions &options = {});
    RecoveryResult mfocuss_recover(const ObservingMatrix &obs, const CMatrix &y, double noise_tolerance,
                                   const FocussOptions &options = {});

    // Dictionary-level entry points used by the wrappers above.
    RecoveryResult subspace_pursuit(const CMatrix &dictionary, const CMatrix &y, std::size_t sparsity,
                                    const SubspacePursuitOptions &options = {});
    RecoveryResult focuss(const CMatrix &dictionary, const CMatrix &y, double noise_tolerance,
                          const FocussOptions &options = {});

    bool detection_success(const RecoveryResult &result, std::span<const std::size_t> truth);
}

#endif
