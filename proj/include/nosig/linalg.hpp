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

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace nosig::linalg {

using complex_t = std::complex<double>;

/// Dense complex matrix stored row-major.
///
/// Sized for desk-scale Hilbert spaces (dimension <= 64); no attempt is made at
/// blocking or vectorisation. Every entry is finite; construction from data that
/// contains NaN or Inf throws std::invalid_argument.
class ComplexMatrix {
   public:
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<complex_t> entries);
    /// Row-by-row literal, e.g. {{1, 0}, {0, 1}}.
    ComplexMatrix(std::initializer_list<std::initializer_list<complex_t>> rows);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
    static ComplexMatrix diagonal(std::span<const complex_t> diag);
    static ComplexMatrix column(std::span<const complex_t> entries);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    std::span<const complex_t> entries() const noexcept { return entries_; }

    const complex_t &operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    complex_t &operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(complex_t scalar);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, complex_t s) { return a *= s; }
    friend ComplexMatrix operator*(complex_t s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);

    bool operator==(const ComplexMatrix &) const = default;

   private:
    void check_finite() const;

    std::size_t rows_;
    std::size_t cols_;
    std::vector<complex_t> entries_;
};

/// Normalized pure state. The squared magnitudes sum to one within 1e-12.
class StateVector {
   public:
    static constexpr double kNormTolerance = 1e-12;

    explicit StateVector(std::vector<complex_t> amplitudes);
    StateVector(std::initializer_list<complex_t> amplitudes);

    std::size_t dim() const noexcept { return amplitudes_.size(); }
    std::span<const complex_t> amplitudes() const noexcept { return amplitudes_; }
    const complex_t &operator[](std::size_t i) const { return amplitudes_[i]; }

    /// The ket as a dim x 1 matrix.
    ComplexMatrix as_column() const;
    /// |psi><psi|.
    ComplexMatrix projector() const;

    bool operator==(const StateVector &) const = default;

   private:
    std::vector<complex_t> amplitudes_;
};

/// Kronecker product with the first factor indexing the outer blocks:
/// (a (x) b)[(i, k), (j, l)] = a[i, j] * b[k, l], composite row i * b.rows() + k.
ComplexMatrix tensor_product(const ComplexMatrix &a, const ComplexMatrix &b);
StateVector tensor_product(const StateVector &a, const StateVector &b);

ComplexMatrix dagger(const ComplexMatrix &a);

complex_t trace(const ComplexMatrix &a);

/// Trace over the first factor of a (dim1 * dim2)-square operator.
ComplexMatrix partial_trace_first(const ComplexMatrix &rho, std::size_t dim1, std::size_t dim2);
/// Trace over the second factor of a (dim1 * dim2)-square operator.
ComplexMatrix partial_trace_second(const ComplexMatrix &rho, std::size_t dim1, std::size_t dim2);

/// Largest entrywise modulus of a - b. Shapes must agree.
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);
double max_abs(const ComplexMatrix &a);

/// max |a - a^dagger|.
double hermiticity_error(const ComplexMatrix &a);
/// max |u^dagger u - I|.
double unitarity_error(const ComplexMatrix &u);

/// Eigenvalues of a Hermitian matrix in ascending order. Only the Hermitian part
/// (a + a^dagger) / 2 is read.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix &a);

/// Orthonormalizes the columns of a square matrix with modified Gram-Schmidt
/// (two passes). The implied R factor has a positive real diagonal, so a complex
/// Gaussian input yields a Haar-distributed unitary. Throws on rank deficiency.
ComplexMatrix orthonormalize_columns(const ComplexMatrix &a);

}  // namespace nosig::linalg
