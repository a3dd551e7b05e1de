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

#include <span>
#include <string_view>
#include <vector>

#include "nosig/quantum.hpp"

// Two-photon polarization experiment: an entangled source, a sender who either
// leaves photon 1 alone (bit 0) or measures its H/V polarization (bit 1), and a
// receiver whose beam splitter and phase shifters act on photon 2 only.
//
// The beam splitter routing is folded into a single diagonal phase unitary on
// the polarization space; spatial modes are not modelled.

namespace nosig::optics {

using linalg::ComplexMatrix;
using linalg::StateVector;
using quantum::DensityOperator;
using quantum::OutcomeDistribution;
using quantum::ProjectiveMeasurement;

/// Basis index convention: H -> 0, V -> 1.
struct PolarizationBasis {
    static constexpr std::size_t H = 0;
    static constexpr std::size_t V = 1;

    static StateVector ket_h();
    static StateVector ket_v();
};

enum class Bit { bit0, bit1 };

std::string_view to_string(Bit bit);

/// Phases attached by the receiver optics to the H and V components.
struct PhaseSettings {
    double phase_h = 0.0;
    double phase_v = 0.0;

    /// H picks up e^{-i theta}, V picks up e^{+i theta}.
    static PhaseSettings symmetric(double theta) { return {-theta, theta}; }
    bool operator==(const PhaseSettings &) const = default;
};

struct Scenario {
    Bit bit = Bit::bit0;
    PhaseSettings phases;

    Scenario(Bit b, double theta);
    Scenario(Bit b, PhaseSettings p);
};

struct ScenarioStates {
    DensityOperator joint;     // dims (2, 2)
    DensityOperator receiver;  // partial trace of joint over photon 1
};

/// (|H>|V> + |V>|H>) / sqrt(2), amplitudes (0, 1/sqrt2, 1/sqrt2, 0).
StateVector epr_state();

/// H/V measurement on the chosen photon.
ProjectiveMeasurement hv_measurement(quantum::Subsystem subsystem = quantum::Subsystem::first);
/// Measurement in the diagonal basis (|H> +- |V>) / sqrt(2).
ProjectiveMeasurement diagonal_measurement(quantum::Subsystem subsystem = quantum::Subsystem::second);

/// diag(e^{-i theta}, e^{+i theta}) in (H, V) order.
ComplexMatrix phase_shifter_unitary(double theta);
/// diag(e^{i phase_h}, e^{i phase_v}).
ComplexMatrix phase_shifter_unitary(const PhaseSettings &phases);

/// bit0: phase shifter on photon 2 applied to the source state.
/// bit1: H/V Lueders channel on photon 1, then the same receiver optics.
ScenarioStates run_scenario(const Scenario &s);

enum class InterferenceInput { single_photon_superposition, entangled_receiver };

std::string_view to_string(InterferenceInput input);

/// Phase shifter followed by recombination, modelled as a measurement in the
/// diagonal basis. Outcome 0 is the (|H> + |V>) / sqrt(2) port.
OutcomeDistribution interference_probabilities(InterferenceInput input, double theta);
OutcomeDistribution interference_probabilities(InterferenceInput input, const PhaseSettings &phases);

/// (p_max - p_min) / (p_max + p_min) of a fringe; 0 for an all-zero fringe.
double fringe_visibility(std::span<const double> outcome0_probabilities);

/// Visibility of outcome 0 over a theta grid. The grid must be non-empty and
/// span at least [0, pi]; otherwise std::invalid_argument.
double visibility(InterferenceInput input, std::span<const double> theta_grid);

/// n equally spaced points on [0, 2 pi).
std::vector<double> theta_grid(std::size_t n);

}  // namespace nosig::optics
