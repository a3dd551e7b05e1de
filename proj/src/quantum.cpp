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

#include "nosig/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "nosig/random.hpp"

namespace nosig::quantum {

using linalg::dagger;
using linalg::max_abs;
using linalg::max_abs_diff;
using linalg::tensor_product;

namespace {

std::string fmt_double(double x) {
    std::ostringstream s;
    s.precision(6);
    s << x;
    return s.str();
}

std::vector<std::string> default_labels(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(std::to_string(i));
    }
    return labels;
}

ComplexMatrix embed(const ComplexMatrix &op, Subsystem subsystem, const Dims &dims) {
    if (op.rows() != dims.of(subsystem)) {
        std::ostringstream msg;
        msg << "operator of size " << op.rows() << " does not act on subsystem of dimension "
            << dims.of(subsystem);
        throw std::invalid_argument(msg.str());
    }
    if (subsystem == Subsystem::first) {
        return tensor_product(op, ComplexMatrix::identity(dims.second));
    }
    return tensor_product(ComplexMatrix::identity(dims.first), op);
}

void require_measurement_fits(const DensityOperator &rho, const ProjectiveMeasurement &m, const char *what) {
    if (m.dim() != rho.dims().of(m.subsystem())) {
        std::ostringstream msg;
        msg << what << ": measurement of dimension " << m.dim() << " does not match "
            << (m.subsystem() == Subsystem::first ? "first" : "second") << " subsystem of dimension "
            << rho.dims().of(m.subsystem());
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace

DensityOperator::DensityOperator(ComplexMatrix matrix, Dims dims) : matrix_(std::move(matrix)), dims_(dims) {
    if (!matrix_.is_square()) {
        throw std::invalid_argument("DensityOperator: matrix is not square");
    }
    if (dims_.first == 0 || dims_.second == 0 || dims_.total() != matrix_.rows()) {
        throw std::invalid_argument("DensityOperator: dims do not multiply to the matrix size");
    }
    const double herm = linalg::hermiticity_error(matrix_);
    if (herm > kValidationTolerance) {
        throw std::invalid_argument("DensityOperator: not Hermitian (deviation " + fmt_double(herm) + ")");
    }
    const double tr_err = std::abs(linalg::trace(matrix_) - 1.0);
    if (tr_err > kValidationTolerance) {
        throw std::invalid_argument("DensityOperator: trace differs from 1 by " + fmt_double(tr_err));
    }
    const double min_eig = linalg::hermitian_eigenvalues(matrix_).front();
    if (min_eig < -kValidationTolerance) {
        throw std::invalid_argument("DensityOperator: negative eigenvalue " + fmt_double(min_eig));
    }
}

DensityOperator::DensityOperator(ComplexMatrix matrix) : DensityOperator(matrix, Dims{matrix.rows(), 1}) {}

DensityOperator DensityOperator::maximally_mixed(Dims dims) {
    return DensityOperator(ComplexMatrix::identity(dims.total()) * complex_t(1.0 / double(dims.total())), dims);
}

double DensityOperator::purity() const { return linalg::trace(matrix_ * matrix_).real(); }

std::vector<double> DensityOperator::eigenvalues() const { return linalg::hermitian_eigenvalues(matrix_); }

DensityOperator DensityOperator::reduced_first() const {
    return DensityOperator(linalg::partial_trace_second(matrix_, dims_.first, dims_.second), Dims{dims_.first, 1});
}

DensityOperator DensityOperator::reduced_second() const {
    return DensityOperator(linalg::partial_trace_first(matrix_, dims_.first, dims_.second),
                           Dims{dims_.second, 1});
}

ProjectiveMeasurement::ProjectiveMeasurement(Subsystem subsystem, std::vector<ComplexMatrix> projectors,
                                             std::vector<std::string> labels)
    : subsystem_(subsystem), projectors_(std::move(projectors)), labels_(std::move(labels)) {
    if (projectors_.empty()) {
        throw std::invalid_argument("ProjectiveMeasurement: empty projector family");
    }
    if (labels_.empty()) {
        labels_ = default_labels(projectors_.size());
    }
    if (labels_.size() != projectors_.size()) {
        throw std::invalid_argument("ProjectiveMeasurement: label count does not match projector count");
    }
    const std::size_t d = projectors_.front().rows();
    ComplexMatrix sum = ComplexMatrix::zeros(d, d);
    for (std::size_t i = 0; i < projectors_.size(); ++i) {
        const auto &p = projectors_[i];
        if (!p.is_square() || p.rows() != d) {
            throw std::invalid_argument("ProjectiveMeasurement: projectors differ in shape");
        }
        if (linalg::hermiticity_error(p) > kValidationTolerance) {
            throw std::invalid_argument("ProjectiveMeasurement: projector " + std::to_string(i) +
                                        " is not Hermitian");
        }
        if (max_abs_diff(p * p, p) > kValidationTolerance) {
            throw std::invalid_argument("ProjectiveMeasurement: projector " + std::to_string(i) +
                                        " is not idempotent");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (max_abs(p * projectors_[j]) > kValidationTolerance) {
                throw std::invalid_argument("ProjectiveMeasurement: projectors " + std::to_string(j) + " and " +
                                            std::to_string(i) + " are not orthogonal");
            }
        }
        sum += p;
    }
    if (max_abs_diff(sum, ComplexMatrix::identity(d)) > kValidationTolerance) {
        throw std::invalid_argument("ProjectiveMeasurement: projectors do not sum to the identity");
    }
}

ProjectiveMeasurement ProjectiveMeasurement::from_basis(Subsystem subsystem, const ComplexMatrix &unitary,
                                                        std::vector<std::string> labels) {
    if (!unitary.is_square() || linalg::unitarity_error(unitary) > kValidationTolerance) {
        throw std::invalid_argument("ProjectiveMeasurement::from_basis: basis matrix is not unitary");
    }
    const std::size_t d = unitary.rows();
    std::vector<ComplexMatrix> projectors;
    projectors.reserve(d);
    for (std::size_t c = 0; c < d; ++c) {
        ComplexMatrix p(d, d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                p(i, j) = unitary(i, c) * std::conj(unitary(j, c));
            }
        }
        projectors.push_back(std::move(p));
    }
    return ProjectiveMeasurement(subsystem, std::move(projectors), std::move(labels));
}

ComplexMatrix ProjectiveMeasurement::embedded(std::size_t i, const Dims &dims) const {
    return embed(projectors_.at(i), subsystem_, dims);
}

ProjectiveMeasurement ProjectiveMeasurement::on(Subsystem subsystem) const {
    ProjectiveMeasurement copy = *this;
    copy.subsystem_ = subsystem;
    return copy;
}

OutcomeDistribution::OutcomeDistribution(std::vector<double> probabilities, std::vector<std::string> labels)
    : probabilities_(std::move(probabilities)), labels_(std::move(labels)) {
    if (probabilities_.empty()) {
        throw std::invalid_argument("OutcomeDistribution: no outcomes");
    }
    if (labels_.empty()) {
        labels_ = default_labels(probabilities_.size());
    }
    if (labels_.size() != probabilities_.size()) {
        throw std::invalid_argument("OutcomeDistribution: label count does not match outcome count");
    }
    double total = 0.0;
    for (double p : probabilities_) {
        if (!std::isfinite(p) || p < -1e-12) {
            throw std::invalid_argument("OutcomeDistribution: invalid probability " + fmt_double(p));
        }
        total += p;
    }
    if (std::abs(total - 1.0) > kValidationTolerance) {
        throw std::invalid_argument("OutcomeDistribution: probabilities sum to " + fmt_double(total));
    }
}

std::vector<double> OutcomeDistribution::clamped() const {
    std::vector<double> out = probabilities_;
    for (double &p : out) {
        p = std::max(p, 0.0);
    }
    return out;
}

DensityOperator density_from_state(const StateVector &psi, Dims dims) {
    return DensityOperator(psi.projector(), dims);
}

DensityOperator density_from_state(const StateVector &psi) { return density_from_state(psi, Dims{psi.dim(), 1}); }

DensityOperator lueders_channel(const DensityOperator &rho, const ProjectiveMeasurement &m) {
    require_measurement_fits(rho, m, "lueders_channel");
    const std::size_t n = rho.dim();
    ComplexMatrix out = ComplexMatrix::zeros(n, n);
    for (std::size_t i = 0; i < m.size(); ++i) {
        const ComplexMatrix p = m.embedded(i, rho.dims());
        out += p * rho.matrix() * p;
    }
    return DensityOperator(std::move(out), rho.dims());
}

OutcomeDistribution born_probabilities(const DensityOperator &rho, const ProjectiveMeasurement &m) {
    require_measurement_fits(rho, m, "born_probabilities");
    std::vector<double> probs;
    probs.reserve(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        probs.push_back(linalg::trace(m.embedded(i, rho.dims()) * rho.matrix()).real());
    }
    return OutcomeDistribution(std::move(probs), m.labels());
}

DensityOperator apply_local_unitary(const DensityOperator &rho, const ComplexMatrix &u, Subsystem subsystem) {
    if (!u.is_square()) {
        throw std::invalid_argument("apply_local_unitary: operator is not square");
    }
    if (linalg::unitarity_error(u) > kValidationTolerance) {
        throw std::invalid_argument("apply_local_unitary: operator is not unitary");
    }
    const ComplexMatrix full = embed(u, subsystem, rho.dims());
    return DensityOperator(full * rho.matrix() * dagger(full), rho.dims());
}

double trace_distance(const DensityOperator &rho, const DensityOperator &sigma) {
    if (rho.dim() != sigma.dim()) {
        throw std::invalid_argument("trace_distance: dimension mismatch");
    }
    const auto eig = linalg::hermitian_eigenvalues(rho.matrix() - sigma.matrix());
    double sum = 0.0;
    for (double e : eig) {
        sum += std::abs(e);
    }
    return std::clamp(0.5 * sum, 0.0, 1.0);
}

StateVector random_pure_state(std::size_t dim, std::uint64_t seed) {
    if (dim == 0) {
        throw std::invalid_argument("random_pure_state: dim must be positive");
    }
    Rng rng(seed);
    std::vector<complex_t> amps(dim);
    double norm2 = 0.0;
    for (auto &a : amps) {
        a = rng.complex_normal();
        norm2 += std::norm(a);
    }
    const double norm = std::sqrt(norm2);
    for (auto &a : amps) {
        a /= norm;
    }
    return StateVector(std::move(amps));
}

DensityOperator random_density(Dims dims, std::size_t rank, std::uint64_t seed) {
    const std::size_t dim = dims.total();
    if (dim == 0 || rank == 0 || rank > dim) {
        throw std::invalid_argument("random_density: need 1 <= rank <= dim");
    }
    Rng rng(seed);
    ComplexMatrix g(dim, rank);
    for (std::size_t c = 0; c < rank; ++c) {
        for (std::size_t r = 0; r < dim; ++r) {
            g(r, c) = rng.complex_normal();
        }
    }
    ComplexMatrix rho = g * dagger(g);
    const double tr = linalg::trace(rho).real();
    rho *= complex_t(1.0 / tr);
    return DensityOperator(std::move(rho), dims);
}

DensityOperator random_density(std::size_t dim, std::size_t rank, std::uint64_t seed) {
    return random_density(Dims{dim, 1}, rank, seed);
}

ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed) {
    if (dim == 0) {
        throw std::invalid_argument("random_unitary: dim must be positive");
    }
    Rng rng(seed);
    ComplexMatrix g(dim, dim);
    for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t r = 0; r < dim; ++r) {
            g(r, c) = rng.complex_normal();
        }
    }
    return linalg::orthonormalize_columns(g);
}

ProjectiveMeasurement random_projective_measurement(std::size_t dim, std::span<const std::size_t> ranks,
                                                    std::uint64_t seed, Subsystem subsystem) {
    if (ranks.empty() || std::find(ranks.begin(), ranks.end(), std::size_t{0}) != ranks.end()) {
        throw std::invalid_argument("random_projective_measurement: ranks must be positive");
    }
    const std::size_t total = std::accumulate(ranks.begin(), ranks.end(), std::size_t{0});
    if (total != dim) {
        throw std::invalid_argument("random_projective_measurement: ranks sum to " + std::to_string(total) +
                                    ", expected " + std::to_string(dim));
    }
    if (ranks.size() == 1) {
        // U U^dagger would only be I up to round-off.
        return ProjectiveMeasurement(subsystem, {ComplexMatrix::identity(dim)});
    }
    const ComplexMatrix u = random_unitary(dim, seed);
    std::vector<ComplexMatrix> projectors;
    projectors.reserve(ranks.size());
    std::size_t col = 0;
    for (std::size_t rank : ranks) {
        ComplexMatrix p(dim, dim);
        for (std::size_t c = col; c < col + rank; ++c) {
            for (std::size_t i = 0; i < dim; ++i) {
                for (std::size_t j = 0; j < dim; ++j) {
                    p(i, j) += u(i, c) * std::conj(u(j, c));
                }
            }
        }
        col += rank;
        projectors.push_back(std::move(p));
    }
    return ProjectiveMeasurement(subsystem, std::move(projectors));
}

}  // namespace nosig::quantum
