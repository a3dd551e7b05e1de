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

#include "nosig/optics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace nosig::optics {

using linalg::complex_t;
using quantum::Dims;
using quantum::Subsystem;

namespace {

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

void require_finite(double x, const char *what) {
    if (!std::isfinite(x)) {
        throw std::invalid_argument(std::string(what) + ": phase must be finite");
    }
}

}  // namespace

StateVector PolarizationBasis::ket_h() { return StateVector{1.0, 0.0}; }
StateVector PolarizationBasis::ket_v() { return StateVector{0.0, 1.0}; }

std::string_view to_string(Bit bit) { return bit == Bit::bit0 ? "bit0" : "bit1"; }

std::string_view to_string(InterferenceInput input) {
    return input == InterferenceInput::single_photon_superposition ? "single_photon_superposition"
                                                                    : "entangled_receiver";
}

Scenario::Scenario(Bit b, double theta) : Scenario(b, PhaseSettings::symmetric(theta)) {}

Scenario::Scenario(Bit b, PhaseSettings p) : bit(b), phases(p) {
    require_finite(p.phase_h, "Scenario");
    require_finite(p.phase_v, "Scenario");
}

StateVector epr_state() {
    return StateVector{0.0, kInvSqrt2, kInvSqrt2, 0.0};
}

ProjectiveMeasurement hv_measurement(Subsystem subsystem) {
    return ProjectiveMeasurement(subsystem, {PolarizationBasis::ket_h().projector(), PolarizationBasis::ket_v().projector()},
                                 {"H", "V"});
}

ProjectiveMeasurement diagonal_measurement(Subsystem subsystem) {
    const ComplexMatrix basis{{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}};
    return ProjectiveMeasurement::from_basis(subsystem, basis, {"D", "A"});
}

ComplexMatrix phase_shifter_unitary(double theta) { return phase_shifter_unitary(PhaseSettings::symmetric(theta)); }

ComplexMatrix phase_shifter_unitary(const PhaseSettings &phases) {
    require_finite(phases.phase_h, "phase_shifter_unitary");
    require_finite(phases.phase_v, "phase_shifter_unitary");
    const std::vector<complex_t> diag{std::polar(1.0, phases.phase_h), std::polar(1.0, phases.phase_v)};
    return ComplexMatrix::diagonal(diag);
}

ScenarioStates run_scenario(const Scenario &s) {
    const Dims dims{2, 2};
    DensityOperator joint = quantum::density_from_state(epr_state(), dims);
    if (s.bit == Bit::bit1) {
        joint = quantum::lueders_channel(joint, hv_measurement(Subsystem::first));
    }
    joint = quantum::apply_local_unitary(joint, phase_shifter_unitary(s.phases), Subsystem::second);
    DensityOperator receiver = joint.reduced_second();
    return ScenarioStates{std::move(joint), std::move(receiver)};
}

OutcomeDistribution interference_probabilities(InterferenceInput input, double theta) {
    return interference_probabilities(input, PhaseSettings::symmetric(theta));
}

OutcomeDistribution interference_probabilities(InterferenceInput input, const PhaseSettings &phases) {
    if (input == InterferenceInput::entangled_receiver) {
        const auto states = run_scenario(Scenario(Bit::bit0, phases));
        return quantum::born_probabilities(states.receiver, diagonal_measurement(Subsystem::first));
    }
    const StateVector plus{kInvSqrt2, kInvSqrt2};
    const DensityOperator shifted = quantum::apply_local_unitary(quantum::density_from_state(plus),
                                                                 phase_shifter_unitary(phases), Subsystem::first);
    return quantum::born_probabilities(shifted, diagonal_measurement(Subsystem::first));
}

double fringe_visibility(std::span<const double> outcome0_probabilities) {
    if (outcome0_probabilities.empty()) {
        throw std::invalid_argument("fringe_visibility: empty fringe");
    }
    const auto [lo, hi] = std::minmax_element(outcome0_probabilities.begin(), outcome0_probabilities.end());
    const double sum = *hi + *lo;
    if (sum <= 0.0) {
        return 0.0;
    }
    return (*hi - *lo) / sum;
}

double visibility(InterferenceInput input, std::span<const double> theta_grid) {
    if (theta_grid.empty()) {
        throw std::invalid_argument("visibility: empty theta grid");
    }
    const auto [lo, hi] = std::minmax_element(theta_grid.begin(), theta_grid.end());
    if (*hi - *lo < std::numbers::pi - 1e-12) {
        throw std::invalid_argument("visibility: theta grid must span at least [0, pi]");
    }
    std::vector<double> fringe;
    fringe.reserve(theta_grid.size());
    for (double theta : theta_grid) {
        fringe.push_back(interference_probabilities(input, theta).clamped()[0]);
    }
    return fringe_visibility(fringe);
}

std::vector<double> theta_grid(std::size_t n) {
    std::vector<double> grid(n);
    for (std::size_t k = 0; k < n; ++k) {
        grid[k] = 2.0 * std::numbers::pi * double(k) / double(n);
    }
    return grid;
}

}  // namespace nosig::optics
