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

#include "nosig/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

namespace nosig::linalg {

namespace {

void require_same_shape(const ComplexMatrix &a, const ComplexMatrix &b, const char *what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        std::ostringstream msg;
        msg << what << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x"
            << b.cols();
        throw std::invalid_argument(msg.str());
    }
}

void require_square(const ComplexMatrix &a, const char *what) {
    if (!a.is_square()) {
        std::ostringstream msg;
        msg << what << ": expected a square matrix, got " << a.rows() << "x" << a.cols();
        throw std::invalid_argument(msg.str());
    }
}

void require_bipartite(const ComplexMatrix &rho, std::size_t dim1, std::size_t dim2, const char *what) {
    require_square(rho, what);
    if (dim1 == 0 || dim2 == 0 || rho.rows() != dim1 * dim2) {
        std::ostringstream msg;
        msg << what << ": matrix of size " << rho.rows() << " does not factor as " << dim1 << " x " << dim2;
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
    }
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<complex_t> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
    }
    if (entries_.size() != rows * cols) {
        throw std::invalid_argument("ComplexMatrix: entry count does not match rows * cols");
    }
    check_finite();
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<complex_t>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
    if (rows_ == 0 || cols_ == 0) {
        throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
    }
    entries_.reserve(rows_ * cols_);
    for (const auto &row : rows) {
        if (row.size() != cols_) {
            throw std::invalid_argument("ComplexMatrix: ragged initializer");
        }
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
    check_finite();
}

void ComplexMatrix::check_finite() const {
    for (const auto &z : entries_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw std::invalid_argument("ComplexMatrix: non-finite entry");
        }
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) { return ComplexMatrix(rows, cols); }

ComplexMatrix ComplexMatrix::diagonal(std::span<const complex_t> diag) {
    ComplexMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) {
        m(i, i) = diag[i];
    }
    m.check_finite();
    return m;
}

ComplexMatrix ComplexMatrix::column(std::span<const complex_t> entries) {
    return ComplexMatrix(entries.size(), 1, std::vector<complex_t>(entries.begin(), entries.end()));
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    require_same_shape(*this, other, "operator+");
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        entries_[k] += other.entries_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    require_same_shape(*this, other, "operator-");
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        entries_[k] -= other.entries_[k];
    }
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(complex_t scalar) {
    for (auto &z : entries_) {
        z *= scalar;
    }
    check_finite();
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        std::ostringstream msg;
        msg << "operator*: inner dimensions differ (" << a.cols() << " vs " << b.rows() << ")";
        throw std::invalid_argument(msg.str());
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const complex_t aik = a(i, k);
            if (aik == complex_t{}) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

StateVector::StateVector(std::vector<complex_t> amplitudes) : amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.empty()) {
        throw std::invalid_argument("StateVector: dimension must be positive");
    }
    double norm2 = 0.0;
    for (const auto &a : amplitudes_) {
        if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) {
            throw std::invalid_argument("StateVector: non-finite amplitude");
        }
        norm2 += std::norm(a);
    }
    if (std::abs(norm2 - 1.0) > kNormTolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "StateVector: not normalized (squared norm " << norm2 << ")";
        throw std::invalid_argument(msg.str());
    }
}

StateVector::StateVector(std::initializer_list<complex_t> amplitudes)
    : StateVector(std::vector<complex_t>(amplitudes)) {}

ComplexMatrix StateVector::as_column() const { return ComplexMatrix::column(amplitudes_); }

ComplexMatrix StateVector::projector() const {
    const std::size_t d = dim();
    ComplexMatrix p(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            p(i, j) = amplitudes_[i] * std::conj(amplitudes_[j]);
        }
    }
    return p;
}

ComplexMatrix tensor_product(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const complex_t aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

StateVector tensor_product(const StateVector &a, const StateVector &b) {
    std::vector<complex_t> amps;
    amps.reserve(a.dim() * b.dim());
    for (const auto &x : a.amplitudes()) {
        for (const auto &y : b.amplitudes()) {
            amps.push_back(x * y);
        }
    }
    return StateVector(std::move(amps));
}

ComplexMatrix dagger(const ComplexMatrix &a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(j, i) = std::conj(a(i, j));
        }
    }
    return out;
}

complex_t trace(const ComplexMatrix &a) {
    require_square(a, "trace");
    complex_t t{};
    for (std::size_t i = 0; i < a.rows(); ++i) {
        t += a(i, i);
    }
    return t;
}

ComplexMatrix partial_trace_first(const ComplexMatrix &rho, std::size_t dim1, std::size_t dim2) {
    require_bipartite(rho, dim1, dim2, "partial_trace_first");
    ComplexMatrix out(dim2, dim2);
    for (std::size_t j = 0; j < dim2; ++j) {
        for (std::size_t l = 0; l < dim2; ++l) {
            complex_t acc{};
            for (std::size_t i = 0; i < dim1; ++i) {
                acc += rho(i * dim2 + j, i * dim2 + l);
            }
            out(j, l) = acc;
        }
    }
    return out;
}

ComplexMatrix partial_trace_second(const ComplexMatrix &rho, std::size_t dim1, std::size_t dim2) {
    require_bipartite(rho, dim1, dim2, "partial_trace_second");
    ComplexMatrix out(dim1, dim1);
    for (std::size_t i = 0; i < dim1; ++i) {
        for (std::size_t k = 0; k < dim1; ++k) {
            complex_t acc{};
            for (std::size_t j = 0; j < dim2; ++j) {
                acc += rho(i * dim2 + j, k * dim2 + j);
            }
            out(i, k) = acc;
        }
    }
    return out;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_shape(a, b, "max_abs_diff");
    double worst = 0.0;
    const auto ea = a.entries();
    const auto eb = b.entries();
    for (std::size_t k = 0; k < ea.size(); ++k) {
        worst = std::max(worst, std::abs(ea[k] - eb[k]));
    }
    return worst;
}

double max_abs(const ComplexMatrix &a) {
    double worst = 0.0;
    for (const auto &z : a.entries()) {
        worst = std::max(worst, std::abs(z));
    }
    return worst;
}

double hermiticity_error(const ComplexMatrix &a) {
    require_square(a, "hermiticity_error");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = i; j < a.cols(); ++j) {
            worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
        }
    }
    return worst;
}

double unitarity_error(const ComplexMatrix &u) {
    require_square(u, "unitarity_error");
    return max_abs_diff(dagger(u) * u, ComplexMatrix::identity(u.rows()));
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix &a) {
    require_square(a, "hermitian_eigenvalues");
    const auto n = static_cast<Eigen::Index>(a.rows());
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const auto ui = static_cast<std::size_t>(i);
            const auto uj = static_cast<std::size_t>(j);
            m(i, j) = 0.5 * (a(ui, uj) + std::conj(a(uj, ui)));
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eigenvalues: eigen-solver did not converge");
    }
    const auto &ev = solver.eigenvalues();
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

ComplexMatrix orthonormalize_columns(const ComplexMatrix &a) {
    require_square(a, "orthonormalize_columns");
    const std::size_t n = a.rows();
    ComplexMatrix q = a;
    for (std::size_t c = 0; c < n; ++c) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t p = 0; p < c; ++p) {
                complex_t overlap{};
                for (std::size_t r = 0; r < n; ++r) {
                    overlap += std::conj(q(r, p)) * q(r, c);
                }
                for (std::size_t r = 0; r < n; ++r) {
                    q(r, c) -= overlap * q(r, p);
                }
            }
        }
        double norm2 = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            norm2 += std::norm(q(r, c));
        }
        const double norm = std::sqrt(norm2);
        if (!(norm > 1e-12)) {
            throw std::invalid_argument("orthonormalize_columns: columns are linearly dependent");
        }
        for (std::size_t r = 0; r < n; ++r) {
            q(r, c) /= norm;
        }
    }
    return q;
}

}  // namespace nosig::linalg
