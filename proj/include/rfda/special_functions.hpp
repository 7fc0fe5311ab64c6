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

#ifndef RFDA_SPECIAL_FUNCTIONS_HPP
#define RFDA_SPECIAL_FUNCTIONS_HPP

namespace rfda
{
    /// Regularized upper incomplete gamma Q(s, x) = Gamma(s, x) / Gamma(s), s > 0, x >= 0.
    double regularized_gamma_q(double s, double x);

    /// First-order Marcum Q-function Q_1(a, b) for a, b >= 0, absolute accuracy
    /// better than 1e-10. Evaluated as the Poisson mixture
    ///   Q_1(a, b) = sum_k Pois(k; a^2/2) * Pr{Pois(b^2/2) <= k},
    /// summed outward from the mode of the mixing weights until the weights fall
    /// below 1e-18 (so the dropped tail is far below the target tolerance).
    double marcum_q1(double a, double b);

    double standard_normal_cdf(double x);
}

#endif
