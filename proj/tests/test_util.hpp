// Copyright 2026 The nosig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>

#include "nosig/linalg.hpp"
#include "nosig/random.hpp"

namespace nosig::testing {

inline constexpr double kMatrixEq = 1e-10;

inline linalg::ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, quantum::Rng &rng) {
    linalg::ComplexMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m(r, c) = rng.complex_normal();
        }
    }
    return m;
}

inline linalg::ComplexMatrix pauli_x() { return linalg::ComplexMatrix{{0, 1}, {1, 0}}; }

}  // namespace nosig::testing
