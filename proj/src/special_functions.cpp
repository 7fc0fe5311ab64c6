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

#include "rfda/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace rfda
{
    namespace
    {
        constexpr double kEps = 1e-16;
        constexpr int kMaxIter = 100000;

        // P(s, x) by its power series, valid for x < s + 1.
        double gamma_p_series(double s, double x)
        {
            double ap = s;
            double sum = 1.0 / s;
            double del = sum;
            for (int n = 0; n < kMaxIter; ++n)
            {
                ap += 1.0;
                del *= x / ap;
                sum += del;
                if (std::abs(del) < std::abs(sum) * kEps)
                    break;
            }
            return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
        }

        // Q(s, x) by the modified Lentz continued fraction, valid for x >= s + 1.
        double gamma_q_fraction(double s, double x)
        {
            constexpr double tiny = std::numeric_limits<double>::min() / kEps;
            double b = x + 1.0 - s;
            double c = 1.0 / tiny;
            double d = 1.0 / b;
            double h = d;
            for (int i = 1; i < kMaxIter; ++i)
            {
                const double an = -i * (i - s);
                b += 2.0;
                d = an * d + b;
                if (std::abs(d) < tiny)
                    d = tiny;
                c = b + an / c;
                if (std::abs(c) < tiny)
                    c = tiny;
                d = 1.0 / d;
                const double del = d * c;
                h *= del;
                if (std::abs(del - 1.0) < kEps)
                    break;
            }
            return std::exp(-x + s * std::log(x) - std::lgamma(s)) * h;
        }

        double log_poisson(double k, double mean)
        {
            return -mean + k * std::log(mean) - std::lgamma(k + 1.0);
        }
    }

    double regularized_gamma_q(double s, double x)
    {
        if (!(s > 0.0) || !(x >= 0.0))
            throw std::invalid_argument("regularized_gamma_q: requires s > 0 and x >= 0");
        if (x == 0.0)
            return 1.0;
        if (x < s + 1.0)
            return 1.0 - gamma_p_series(s, x);
        return gamma_q_fraction(s, x);
    }

    double marcum_q1(double a, double b)
    {
        if (!(a >= 0.0) || !(b >= 0.0))
            throw std::invalid_argument("marcum_q1: arguments must be non-negative");
        if (b == 0.0)
            return 1.0;
        const double mu = 0.5 * b * b;
        if (a == 0.0)
            return std::exp(-mu);
        const double lambda = 0.5 * a * a;
        constexpr double stop = 1e-18;

        // Mixing weights w_k = Pois(k; lambda); cumulative F_k = Pr{Pois(mu) <= k}.
        const double k0 = std::floor(lambda);
        const double w0 = std::exp(log_poisson(k0, lambda));
        const double f0 = regularized_gamma_q(k0 + 1.0, mu);

        double sum = w0 * f0;

        // Upward from the mode.
        double w = w0;
        double f = f0;
        for (double k = k0 + 1.0;; k += 1.0)
        {
            w *= lambda / k;
            f += std::exp(log_poisson(k, mu));
            f = std::min(f, 1.0);
            sum += w * f;
            if (w < stop)
                break;
        }

        // Downward from the mode.
        w = w0;
        f = f0;
        for (double k = k0 - 1.0; k >= 0.0; k -= 1.0)
        {
            w *= (k + 1.0) / lambda;
            f -= std::exp(log_poisson(k + 1.0, mu));
            f = std::max(f, 0.0);
            sum += w * f;
            if (w < stop)
                break;
        }
        return std::clamp(sum, 0.0, 1.0);
    }

    double standard_normal_cdf(double x)
    {
        return 0.5 * std::erfc(-x / std::sqrt(2.0));
    }
}
