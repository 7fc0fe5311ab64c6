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

#include "rfda/processing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <omp.h>

#include "rfda/dft.hpp"

namespace rfda
{
    namespace
    {
        void check_strictly_increasing(const std::vector<double> &v, const char *what)
        {
            for (std::size_t i = 1; i < v.size(); ++i)
                if (!(v[i] > v[i - 1]))
                    throw std::invalid_argument(std::string("DirectionRangeGrid: ") + what +
                                                " must be strictly increasing");
        }

        long positive_mod(long a, long n)
        {
            const long r = a % n;
            return r < 0 ? r + n : r;
        }

        void check_on_support(const FrequencyDraw &draw, int m_levels)
        {
            const double half = 0.5 * (m_levels - 1);
            for (double m : draw.offsets)
            {
                const double row = m + half;
                if (std::abs(row - std::nearbyint(row)) > 1e-9 || row < -1e-9 || row > m_levels - 1 + 1e-9)
                    throw std::invalid_argument("zero_padding_2dfft: frequency draw is not on the discrete support");
            }
        }
    }

    DirectionRangeGrid::DirectionRangeGrid(std::vector<double> directions, std::vector<double> ranges)
        : directions_(std::move(directions)), ranges_(std::move(ranges))
    {
        if (directions_.empty() || ranges_.empty())
            throw std::invalid_argument("DirectionRangeGrid: empty axis");
        check_strictly_increasing(directions_, "directions");
        check_strictly_increasing(ranges_, "ranges");
        for (double t : directions_)
            if (!(std::abs(t) <= 0.5 * kPi))
                throw std::invalid_argument("DirectionRangeGrid: direction outside [-pi/2, pi/2]");
        for (double r : ranges_)
            if (!(r >= 0.0))
                throw std::invalid_argument("DirectionRangeGrid: negative range");
    }

    DirectionRangeGrid DirectionRangeGrid::canonical(const ArrayConfig &cfg, int m_levels)
    {
        if (m_levels < 1)
            throw std::invalid_argument("DirectionRangeGrid::canonical: M must be positive");
        const long n = static_cast<long>(cfg.n_elements());
        const double sine_per_bin = cfg.wave_speed() / (2.0 * cfg.center_freq() * cfg.spacing() * n);
        const long k_lo = -(n / 2);
        std::vector<double> directions;
        for (long k = k_lo; k < k_lo + n; ++k)
        {
            double s = sine_per_bin * k;
            if (std::abs(s) > 1.0 + 1e-12)
                continue;
            s = std::clamp(s, -1.0, 1.0);
            directions.push_back(std::asin(s));
        }
        std::vector<double> ranges(static_cast<std::size_t>(m_levels));
        const double bin = cfg.wave_speed() / (2.0 * m_levels * cfg.freq_increment());
        for (int i = 0; i < m_levels; ++i)
            ranges[static_cast<std::size_t>(i)] = bin * i;
        return DirectionRangeGrid(std::move(directions), std::move(ranges));
    }

    std::size_t DirectionRangeGrid::nearest(double theta, double range) const
    {
        const double s = std::sin(theta);
        std::size_t best_dir = 0;
        for (std::size_t i = 1; i < directions_.size(); ++i)
            if (std::abs(std::sin(directions_[i]) - s) < std::abs(std::sin(directions_[best_dir]) - s))
                best_dir = i;
        std::size_t best_rng = 0;
        for (std::size_t i = 1; i < ranges_.size(); ++i)
            if (std::abs(ranges_[i] - range) < std::abs(ranges_[best_rng] - range))
                best_rng = i;
        return index(best_dir, best_rng);
    }

    ObservingMatrix build_observing_matrix(const ArrayConfig &cfg, const FrequencyDraw &draw,
                                           const DirectionRangeGrid &grid, BasebandModel model)
    {
        if (draw.size() != cfg.n_elements())
            throw std::invalid_argument("build_observing_matrix: frequency draw length differs from element count");
        CMatrix columns(static_cast<Eigen::Index>(cfg.n_elements()), static_cast<Eigen::Index>(grid.size()));
        for (std::size_t i = 0; i < grid.size(); ++i)
            columns.col(static_cast<Eigen::Index>(i)) =
                steering_vector(cfg, draw, grid.direction_at(i), grid.range_at(i), model);
        return ObservingMatrix{std::move(columns), grid, draw};
    }

    RVector matched_filter(const EchoMatrix &echo, const ObservingMatrix &obs, int threads)
    {
        if (echo.n_elements() != obs.n_rows())
            throw std::invalid_argument("matched_filter: echo rows differ from observing matrix rows");
        if (echo.n_snapshots() < 1)
            throw std::invalid_argument("matched_filter: no snapshots");
        const auto n_cols = static_cast<long>(obs.n_columns());
        const Eigen::Index n_rows = obs.columns.rows();
        const Eigen::Index n_snap = echo.samples.cols();
        const double inv_n = 1.0 / static_cast<double>(n_rows);
        const int nt = threads > 0 ? threads : omp_get_max_threads();

        // Fixed column blocks, so the arithmetic does not depend on the thread count.
        constexpr long kBlock = 256;
        const long n_blocks = (n_cols + kBlock - 1) / kBlock;
        RVector out(n_cols);
#pragma omp parallel for schedule(static) num_threads(nt)
        for (long b = 0; b < n_blocks; ++b)
        {
            const long first = b * kBlock;
            const long width = std::min(kBlock, n_cols - first);
            const CMatrix prod = obs.columns.middleCols(first, width).adjoint() * echo.samples;
            out.segment(first, width) =
                (prod.rowwise().squaredNorm() / static_cast<double>(n_snap)).cwiseSqrt() * inv_n;
        }
        return out;
    }

    CMatrix zero_padding_2dfft(const CVector &echo, const FrequencyDraw &draw, int m_levels, int os_range,
                               int os_direction)
    {
        if (m_levels < 1 || os_range < 1 || os_direction < 1)
            throw std::invalid_argument("zero_padding_2dfft: sizes must be positive");
        if (static_cast<std::size_t>(echo.size()) != draw.size())
            throw std::invalid_argument("zero_padding_2dfft: echo length differs from draw length");
        check_on_support(draw, m_levels);

        const Eigen::Index n = echo.size();
        CMatrix padded = CMatrix::Zero(static_cast<Eigen::Index>(m_levels) * os_range, n * os_direction);
        const double half = 0.5 * (m_levels - 1);
        for (Eigen::Index col = 0; col < n; ++col)
        {
            const auto row = static_cast<Eigen::Index>(std::lround(draw.offsets[static_cast<std::size_t>(col)] + half));
            padded(row, col) = echo[col];
        }
        return dft2(padded, DftSign::backward);
    }

    std::pair<std::size_t, std::size_t> fft_bin(const ArrayConfig &cfg, int m_levels, double theta, double range,
                                                int os_range, int os_direction)
    {
        const long rows = static_cast<long>(m_levels) * os_range;
        const long cols = static_cast<long>(cfg.n_elements()) * os_direction;
        const double u = 2.0 * cfg.center_freq() * cfg.spacing() * std::sin(theta) / cfg.wave_speed();
        const double p = 2.0 * cfg.freq_increment() * range / cfg.wave_speed();
        const long row = positive_mod(std::lround(p * static_cast<double>(rows)), rows);
        const long col = positive_mod(std::lround(u * static_cast<double>(cols)), cols);
        return {static_cast<std::size_t>(row), static_cast<std::size_t>(col)};
    }

    CMatrix direct_bin_correlation(const CVector &echo, const FrequencyDraw &draw, int m_levels, int os_range,
                                   int os_direction)
    {
        check_on_support(draw, m_levels);
        const Eigen::Index n = echo.size();
        const Eigen::Index rows = static_cast<Eigen::Index>(m_levels) * os_range;
        const Eigen::Index cols = n * os_direction;
        const double half = 0.5 * (m_levels - 1);
        CMatrix out(rows, cols);
        for (Eigen::Index i = 0; i < rows; ++i)
            for (Eigen::Index k = 0; k < cols; ++k)
            {
                cplx acc = 0.0;
                for (Eigen::Index e = 0; e < n; ++e)
                {
                    const auto row = std::lround(draw.offsets[static_cast<std::size_t>(e)] + half);
                    const double phase =
                        2.0 * kPi * (static_cast<double>((row * i) % rows) / static_cast<double>(rows) +
                                     static_cast<double>((e * k) % cols) / static_cast<double>(cols));
                    acc += echo[e] * std::polar(1.0, phase);
                }
                out(i, k) = acc;
            }
        return out;
    }
}
