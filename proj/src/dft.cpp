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

#include "rfda/dft.hpp"

#include <mutex>
#include <stdexcept>

#include <fftw3.h>

namespace rfda
{
    namespace
    {
        std::mutex &planner_mutex()
        {
            static std::mutex m;
            return m;
        }
    }

    CMatrix dft2(const CMatrix &in, DftSign sign)
    {
        if (in.size() == 0)
            return in;
        CMatrix src = in;
        CMatrix dst(in.rows(), in.cols());
        auto *src_ptr = reinterpret_cast<fftw_complex *>(src.data());
        auto *dst_ptr = reinterpret_cast<fftw_complex *>(dst.data());

        // Eigen is column-major: the buffer is a row-major (cols x rows) array,
        // and the 2D DFT is the same transform in either index order.
        fftw_plan plan;
        {
            std::lock_guard<std::mutex> lock(planner_mutex());
            plan = fftw_plan_dft_2d(static_cast<int>(in.cols()), static_cast<int>(in.rows()), src_ptr, dst_ptr,
                                    sign == DftSign::forward ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
        }
        if (plan == nullptr)
            throw std::runtime_error("dft2: FFTW planning failed");
        fftw_execute(plan);
        {
            std::lock_guard<std::mutex> lock(planner_mutex());
            fftw_destroy_plan(plan);
        }
        return dst;
    }
}
