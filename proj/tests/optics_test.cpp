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

#include <cmath>
#include <limits>
#include <numbers>

#include "gtest/gtest.h"

#include "nosig/random.hpp"
#include "oracles.hpp"

using namespace nosig;
using namespace nosig::optics;
using linalg::complex_t;
using linalg::max_abs_diff;
using quantum::Subsystem;

namespace {

constexpr double kPi = std::numbers::pi;
const double kH = std::numbers::sqrt2 / 2.0;

linalg::ComplexMatrix half_identity() { return linalg::ComplexMatrix::identity(2) * complex_t(0.5); }

}  // namespace

TEST(polarization_basis, convention) {
    ASSERT_EQ(PolarizationBasis::H, 0u);
    ASSERT_EQ(PolarizationBasis::V, 1u);
    ASSERT_EQ(PolarizationBasis::ket_h()[PolarizationBasis::H], complex_t(1.0));
    ASSERT_EQ(PolarizationBasis::ket_v()[PolarizationBasis::V], complex_t(1.0));
}

TEST(epr_state, amplitudes_and_marginals) {
    const auto phi = epr_state();
    ASSERT_EQ(phi.dim(), 4u);
    EXPECT_EQ(phi[0], complex_t(0.0));
    EXPECT_NEAR(phi[1].real(), kH, 1e-16);
    EXPECT_NEAR(phi[2].real(), kH, 1e-16);
    EXPECT_EQ(phi[3], complex_t(0.0));

    double norm2 = 0.0;
    for (const auto &a : phi.amplitudes()) {
        norm2 += std::norm(a);
    }
    EXPECT_NEAR(norm2, 1.0, 1e-15);

    const auto grid = oracle::to_grid(phi.projector());
    EXPECT_LE(oracle::max_abs_diff(oracle::trace_out_first(grid, 2, 2), half_identity()), 1e-15);
    EXPECT_LE(oracle::max_abs_diff(oracle::trace_out_second(grid, 2, 2), half_identity()), 1e-15);

    const auto probs = quantum::born_probabilities(quantum::density_from_state(phi, {2, 2}), hv_measurement());
    EXPECT_NEAR(probs[0], 0.5, 1e-15);
    EXPECT_NEAR(probs[1], 0.5, 1e-15);
    EXPECT_EQ(probs.labels()[0], "H");
}

TEST(phase_shifter_unitary, examples) {
    ASSERT_LE(max_abs_diff(phase_shifter_unitary(0.0), linalg::ComplexMatrix::identity(2)), 0.0);

    const auto quarter = phase_shifter_unitary(kPi / 2.0);
    EXPECT_LE(std::abs(quarter(0, 0) - complex_t(0.0, -1.0)), 1e-15);
    EXPECT_LE(std::abs(quarter(1, 1) - complex_t(0.0, 1.0)), 1e-15);
    EXPECT_EQ(quarter(0, 1), complex_t(0.0));

    for (double theta : {0.1, 0.9, 2.2, -1.7}) {
        const auto u = phase_shifter_unitary(theta);
        EXPECT_LE(linalg::unitarity_error(u), 1e-12);
        const auto out = u * linalg::StateVector{kH, kH}.as_column();
        EXPECT_LE(std::abs(out(0, 0) - kH * std::polar(1.0, -theta)), 1e-15);
        EXPECT_LE(std::abs(out(1, 0) - kH * std::polar(1.0, theta)), 1e-15);
    }
    ASSERT_THROW(phase_shifter_unitary(std::numeric_limits<double>::infinity()), std::invalid_argument);
}

TEST(phase_shifter_unitary, independent_phases) {
    const auto u = phase_shifter_unitary(PhaseSettings{0.3, -1.1});
    EXPECT_LE(std::abs(u(0, 0) - std::polar(1.0, 0.3)), 1e-15);
    EXPECT_LE(std::abs(u(1, 1) - std::polar(1.0, -1.1)), 1e-15);
    EXPECT_EQ(PhaseSettings::symmetric(0.4), (PhaseSettings{-0.4, 0.4}));
}

TEST(run_scenario, bit1_at_zero_is_measured_mixture) {
    const auto s = run_scenario(Scenario(Bit::bit1, 0.0));
    ASSERT_LE(max_abs_diff(s.joint.matrix(), oracle::measured_mixture()), 1e-12);
    ASSERT_LE(max_abs_diff(s.receiver.matrix(), half_identity()), 1e-12);
    ASSERT_EQ(s.joint.dims(), (quantum::Dims{2, 2}));
}

TEST(run_scenario, bit0_carries_double_phase) {
    for (double theta : {0.0, 0.2, 0.7, 1.9, 4.0}) {
        const auto s = run_scenario(Scenario(Bit::bit0, theta));
        ASSERT_LE(max_abs_diff(s.joint.matrix(), oracle::phased_pair_projector(theta)), 1e-12) << theta;
        ASSERT_LE(max_abs_diff(s.receiver.matrix(), half_identity()), 1e-12);
    }
}

TEST(run_scenario, sender_choice_invisible_at_theta_07) {
    const auto r0 = run_scenario(Scenario(Bit::bit0, 0.7)).receiver;
    const auto r1 = run_scenario(Scenario(Bit::bit1, 0.7)).receiver;
    ASSERT_LE(quantum::trace_distance(r0, r1), 1e-12);
}

TEST(run_scenario, receiver_half_identity_on_fine_grid) {
    for (double theta : theta_grid(256)) {
        for (const auto &phases : {PhaseSettings::symmetric(theta), PhaseSettings{theta, 0.37 - 2.0 * theta}}) {
            const auto r0 = run_scenario(Scenario(Bit::bit0, phases)).receiver.matrix();
            const auto r1 = run_scenario(Scenario(Bit::bit1, phases)).receiver.matrix();
            ASSERT_LE(max_abs_diff(r0, half_identity()), 1e-12);
            ASSERT_LE(max_abs_diff(r1, half_identity()), 1e-12);
        }
    }
}

TEST(run_scenario, purity_of_joint_states) {
    for (double theta : theta_grid(32)) {
        EXPECT_NEAR(run_scenario(Scenario(Bit::bit0, theta)).joint.purity(), 1.0, 1e-12);
        EXPECT_NEAR(run_scenario(Scenario(Bit::bit1, theta)).joint.purity(), 0.5, 1e-12);
    }
}

TEST(run_scenario, measurement_and_receiver_optics_commute) {
    const auto source = quantum::density_from_state(epr_state(), {2, 2});
    const auto measure = hv_measurement(Subsystem::first);
    for (double theta : theta_grid(64)) {
        for (const auto &phases : {PhaseSettings::symmetric(theta), PhaseSettings{1.3 * theta, -0.2}}) {
            const auto u = phase_shifter_unitary(phases);
            const auto measure_first =
                quantum::apply_local_unitary(quantum::lueders_channel(source, measure), u, Subsystem::second);
            const auto optics_first =
                quantum::lueders_channel(quantum::apply_local_unitary(source, u, Subsystem::second), measure);
            ASSERT_LE(max_abs_diff(measure_first.matrix(), optics_first.matrix()), 1e-12);
            ASSERT_LE(max_abs_diff(measure_first.matrix(), run_scenario(Scenario(Bit::bit1, phases)).joint.matrix()),
                      1e-12);
        }
    }
}

TEST(run_scenario, any_receiver_basis_sees_same_statistics) {
    const std::size_t ranks[] = {1, 1};
    quantum::Rng rng(100);
    for (int b = 0; b < 100; ++b) {
        const auto basis = quantum::random_projective_measurement(2, ranks, rng.next_u64());
        for (double theta : theta_grid(16)) {
            const auto p0 = quantum::born_probabilities(run_scenario(Scenario(Bit::bit0, theta)).receiver, basis);
            const auto p1 = quantum::born_probabilities(run_scenario(Scenario(Bit::bit1, theta)).receiver, basis);
            ASSERT_NEAR(p0[0], p1[0], 1e-12);
            ASSERT_NEAR(p0[1], p1[1], 1e-12);
        }
    }
}

TEST(interference_probabilities, single_photon_fringe) {
    const auto at_zero = interference_probabilities(InterferenceInput::single_photon_superposition, 0.0);
    EXPECT_NEAR(at_zero[0], 1.0, 1e-15);
    EXPECT_NEAR(at_zero[1], 0.0, 1e-15);
    const auto at_quarter = interference_probabilities(InterferenceInput::single_photon_superposition, kPi / 4.0);
    EXPECT_NEAR(at_quarter[0], 0.5, 1e-15);
    EXPECT_NEAR(at_quarter[1], 0.5, 1e-15);

    // Amplitude (e^{-i theta} + e^{i theta}) / 2 = cos(theta) onto the + port.
    for (double theta : theta_grid(40)) {
        const auto p = interference_probabilities(InterferenceInput::single_photon_superposition, theta);
        ASSERT_NEAR(p[0], std::cos(theta) * std::cos(theta), 1e-14);
        ASSERT_NEAR(p[1], std::sin(theta) * std::sin(theta), 1e-14);
    }
}

TEST(interference_probabilities, entangled_receiver_flat) {
    for (int k = 0; k <= 8; ++k) {
        const double theta = kPi * k / 8.0;
        const auto p = interference_probabilities(InterferenceInput::entangled_receiver, theta);
        ASSERT_NEAR(p[0], 0.5, 1e-12);
        ASSERT_NEAR(p[1], 0.5, 1e-12);
        const auto q = interference_probabilities(InterferenceInput::entangled_receiver, PhaseSettings{theta, 0.5});
        ASSERT_NEAR(q[0], 0.5, 1e-12);
    }
}

TEST(visibility, contrast) {
    const auto grid = theta_grid(64);
    EXPECT_NEAR(visibility(InterferenceInput::single_photon_superposition, grid), 1.0, 1e-10);
    EXPECT_NEAR(visibility(InterferenceInput::entangled_receiver, grid), 0.0, 1e-10);

    const std::vector<double> flat(17, 0.5);
    EXPECT_EQ(fringe_visibility(flat), 0.0);
    const std::vector<double> zeros(3, 0.0);
    EXPECT_EQ(fringe_visibility(zeros), 0.0);
}

TEST(visibility, grid_errors) {
    ASSERT_THROW(visibility(InterferenceInput::entangled_receiver, std::vector<double>{}), std::invalid_argument);
    ASSERT_THROW(visibility(InterferenceInput::entangled_receiver, std::vector<double>{0.0, 1.0}),
                 std::invalid_argument);
    ASSERT_NO_THROW(visibility(InterferenceInput::entangled_receiver, std::vector<double>{0.0, kPi}));
    ASSERT_THROW(fringe_visibility(std::vector<double>{}), std::invalid_argument);
}

TEST(theta_grid, spacing) {
    const auto g = theta_grid(4);
    ASSERT_EQ(g.size(), 4u);
    EXPECT_EQ(g[0], 0.0);
    EXPECT_NEAR(g[1], kPi / 2.0, 1e-15);
    EXPECT_NEAR(g[3], 3.0 * kPi / 2.0, 1e-15);
}
