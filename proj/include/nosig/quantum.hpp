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

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nosig/linalg.hpp"

namespace nosig::quantum {

using linalg::complex_t;
using linalg::ComplexMatrix;
using linalg::StateVector;

/// Tolerance used by every construction-time invariant check.
inline constexpr double kValidationTolerance = 1e-10;

enum class Subsystem { first, second };

/// Bipartite dimension annotation. second == 1 describes a single system.
struct Dims {
    std::size_t first = 1;
    std::size_t second = 1;

    std::size_t total() const noexcept { return first * second; }
    std::size_t of(Subsystem s) const noexcept { return s == Subsystem::first ? first : second; }
    bool operator==(const Dims &) const = default;
};

/// Hermitian, positive semi-definite, unit-trace operator.
///
/// Invariants are checked on construction with tolerance 1e-10 and violations
/// throw std::invalid_argument. Nothing is renormalized or symmetrized.
class DensityOperator {
   public:
    DensityOperator(ComplexMatrix matrix, Dims dims);
    /// Single system: dims = (rows, 1).
    explicit DensityOperator(ComplexMatrix matrix);

    static DensityOperator maximally_mixed(Dims dims);

    const ComplexMatrix &matrix() const noexcept { return matrix_; }
    const Dims &dims() const noexcept { return dims_; }
    std::size_t dim() const noexcept { return matrix_.rows(); }

    /// trace(rho^2).
    double purity() const;
    std::vector<double> eigenvalues() const;

    DensityOperator reduced_first() const;   // traces out the second factor
    DensityOperator reduced_second() const;  // traces out the first factor

    bool operator==(const DensityOperator &) const = default;

   private:
    ComplexMatrix matrix_;
    Dims dims_;
};

/// Complete family of mutually orthogonal projectors acting on one factor.
class ProjectiveMeasurement {
   public:
    ProjectiveMeasurement(Subsystem subsystem, std::vector<ComplexMatrix> projectors,
                          std::vector<std::string> labels = {});

    /// Rank-one projectors onto the columns of a unitary.
    static ProjectiveMeasurement from_basis(Subsystem subsystem, const ComplexMatrix &unitary,
                                            std::vector<std::string> labels = {});

    Subsystem subsystem() const noexcept { return subsystem_; }
    std::size_t dim() const noexcept { return projectors_.front().rows(); }
    std::size_t size() const noexcept { return projectors_.size(); }
    const std::vector<ComplexMatrix> &projectors() const noexcept { return projectors_; }
    const std::vector<std::string> &labels() const noexcept { return labels_; }

    /// P_i (x) I or I (x) P_i on the composite space described by dims.
    ComplexMatrix embedded(std::size_t i, const Dims &dims) const;

    /// Same projectors re-tagged onto another subsystem.
    ProjectiveMeasurement on(Subsystem subsystem) const;

   private:
    Subsystem subsystem_;
    std::vector<ComplexMatrix> projectors_;
    std::vector<std::string> labels_;
};

/// Outcome probabilities summing to one within 1e-10.
class OutcomeDistribution {
   public:
    OutcomeDistribution(std::vector<double> probabilities, std::vector<std::string> labels);

    const std::vector<double> &raw() const noexcept { return probabilities_; }
    /// Probabilities with round-off negatives replaced by zero.
    std::vector<double> clamped() const;
    const std::vector<std::string> &labels() const noexcept { return labels_; }
    std::size_t size() const noexcept { return probabilities_.size(); }
    double operator[](std::size_t i) const { return probabilities_[i]; }

   private:
    std::vector<double> probabilities_;
    std::vector<std::string> labels_;
};

DensityOperator density_from_state(const StateVector &psi, Dims dims);
DensityOperator density_from_state(const StateVector &psi);

/// Non-selective measurement: rho -> sum_i P_i rho P_i, projectors embedded on
/// the factor the measurement is tagged with.
DensityOperator lueders_channel(const DensityOperator &rho, const ProjectiveMeasurement &m);

/// p_i = Re trace(P_i rho).
OutcomeDistribution born_probabilities(const DensityOperator &rho, const ProjectiveMeasurement &m);

/// (U (x) I) rho (U (x) I)^dagger or the mirror on the second factor.
DensityOperator apply_local_unitary(const DensityOperator &rho, const ComplexMatrix &u, Subsystem subsystem);

/// Half the sum of absolute eigenvalues of rho - sigma.
double trace_distance(const DensityOperator &rho, const DensityOperator &sigma);

StateVector random_pure_state(std::size_t dim, std::uint64_t seed);
/// G G^dagger / trace(G G^dagger) for a dim x rank complex Gaussian G.
DensityOperator random_density(std::size_t dim, std::size_t rank, std::uint64_t seed);
DensityOperator random_density(Dims dims, std::size_t rank, std::uint64_t seed);
/// Haar unitary from Gram-Schmidt on a complex Gaussian matrix.
ComplexMatrix random_unitary(std::size_t dim, std::uint64_t seed);
/// Projectors built from consecutive column groups of a Haar unitary, one group per rank.
ProjectiveMeasurement random_projective_measurement(std::size_t dim, std::span<const std::size_t> ranks,
                                                    std::uint64_t seed, Subsystem subsystem = Subsystem::first);

}  // namespace nosig::quantum
