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

#ifndef RFDA_PROCESSING_HPP
#define RFDA_PROCESSING_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "rfda/array_model.hpp"

namespace rfda
{
    // Direction-range search lattice, flattened range-major: i = i_rng * P_dir + i_dir.
    class DirectionRangeGrid
    {
    public:
        DirectionRangeGrid(std::vector<double> directions, std::vector<double> ranges);

        /// N directions with sin(theta_k) = c k / (2 f_c d N), k centred on zero, and
        /// M ranges r_i = c i / (2 M df). On this lattice Sa_N takes only the values
        /// 0 and N, and Phi of a discrete (or continuous) uniform law of size M takes
        /// only 0 and 1 (up to sign), over every pair of grid points. Directions whose
        /// sine would leave [-1, 1] (element spacing below a quarter wavelength) are
        /// omitted.
        static DirectionRangeGrid canonical(const ArrayConfig &cfg, int m_levels);

        std::size_t n_directions() const { return directions_.size(); }
        std::size_t n_ranges() const { return ranges_.size(); }
        std::size_t size() const { return directions_.size() * ranges_.size(); }

        const std::vector<double> &directions() const { return directions_; }
        const std::vector<double> &ranges() const { return ranges_; }

        std::size_t index(std::size_t i_dir, std::size_t i_rng) const { return i_rng * directions_.size() + i_dir; }
        std::pair<std::size_t, std::size_t> split(std::size_t index) const
        {
            return {index % directions_.size(), index / directions_.size()};
        }
        double direction_at(std::size_t index) const { return directions_[split(index).first]; }
        double range_at(std::size_t index) const { return ranges_[split(index).second]; }

        /// Grid point closest in direction sine and in range.
        std::size_t nearest(double theta, double range) const;

    private:
        std::vector<double> directions_;
        std::vector<double> ranges_;
    };

    struct ObservingMatrix
    {
        CMatrix columns; // N x grid.size(); column i is the steering vector of grid point i
        DirectionRangeGrid grid;
        FrequencyDraw draw;

        std::size_t n_rows() const { return static_cast<std::size_t>(columns.rows()); }
        std::size_t n_columns() const { return static_cast<std::size_t>(columns.cols()); }
    };

    ObservingMatrix build_observing_matrix(const ArrayConfig &cfg, const FrequencyDraw &draw,
                                           const DirectionRangeGrid &grid,
                                           BasebandModel model = BasebandModel::approximate);

    /// |<column_i, r>| / N per grid point; with several snapshots the squared
    /// magnitudes are averaged before the root. Parallel over grid columns.
    RVector matched_filter(const EchoMatrix &echo, const ObservingMatrix &obs, int threads = 0);

    /// Zero-padding 2D FFT evaluation of the matched filter for discrete uniform
    /// draws: b_n is placed at row m_n + (M-1)/2, column n of an M x N matrix,
    /// zero padded to (M os_r) x (N os_d), and transformed. Entry (i, k) equals,
    /// up to a unit-modulus factor, the inner product with the steering vector at
    /// p = i / (M os_r), q-sine index k / (N os_d).
    CMatrix zero_padding_2dfft(const CVector &echo, const FrequencyDraw &draw, int m_levels, int os_range = 1,
                               int os_direction = 1);

    /// Row (range bin) and column (direction bin) of the zero-padding 2D FFT output
    /// that corresponds to the point (theta, range).
    std::pair<std::size_t, std::size_t> fft_bin(const ArrayConfig &cfg, int m_levels, double theta, double range,
                                                int os_range = 1, int os_direction = 1);

    /// Direct matched-filter evaluation of every zero-padding FFT bin, O(M N^2)
    /// per snapshot; the baseline the FFT path replaces.
    CMatrix direct_bin_correlation(const CVector &echo, const FrequencyDraw &draw, int m_levels, int os_range = 1,
                                   int os_direction = 1);
}

#endif
