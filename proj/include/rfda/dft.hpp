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

#ifndef RFDA_DFT_HPP
#define RFDA_DFT_HPP

#include "rfda/array_model.hpp"

namespace rfda
{
    enum class DftSign
    {
        forward = -1,  // exp(-j 2 pi k n / K)
        backward = +1, // exp(+j 2 pi k n / K)
    };

    // Unnormalized 2D DFT of any size (FFTW, mixed radix / Bluestein as needed).
    CMatrix dft2(const CMatrix &in, DftSign sign);
}

#endif
