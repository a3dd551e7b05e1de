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
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nosig/optics.hpp"
#include "nosig/quantum.hpp"

namespace nosig::verify {

using quantum::DensityOperator;
using quantum::OutcomeDistribution;
using quantum::ProjectiveMeasurement;

using Partition = std::vector<std::size_t>;

/// Rejected configuration value. field() names the offending setting.
class ConfigError : public std::invalid_argument {
   public:
    ConfigError(std::string field, const std::string &message)
        : std::invalid_argument(field + ": " + message), field_(std::move(field)) {}

    const std::string &field() const noexcept { return field_; }

   private:
    std::string field_;
};

struct VerifyConfig {
    std::size_t trials = 1000;
    std::size_t dim1 = 2;
    std::size_t dim2 = 2;
    /// Rank partitions of dim1 cycled over the trials. Empty means every partition of dim1.
    std::vector<Partition> rank_partitions;
    std::uint64_t seed = 0;
    double tolerance = 1e-9;

    bool operator==(const VerifyConfig &) const = default;
};

/// Throws ConfigError on the first invalid field.
void validate(const VerifyConfig &cfg);

/// Every partition of n into positive parts, each in non-increasing order,
/// listed in reverse lexicographic order ({n} first, {1,...,1} last).
std::vector<Partition> integer_partitions(std::size_t n);

struct TrialRecord {
    std::size_t index = 0;
    std::uint64_t seed = 0;
    std::size_t dim1 = 0;
    std::size_t dim2 = 0;
    Partition partition;
    std::size_t state_rank = 0;
    /// max |Tr_1[sum_i P_i rho P_i] - Tr_1[rho]| entrywise.
    double max_deviation = 0.0;
    /// Trace distance between the receiver states with and without the measurement.
    double trace_distance = 0.0;
    /// I(measured?; outcome) in bits for a random rank-one decoder on system 2.
    double mutual_information = 0.0;

    bool operator==(const TrialRecord &) const = default;
};

struct VerificationReport {
    VerifyConfig config;  // rank_partitions resolved
    std::vector<TrialRecord> trials;
    double max_deviation = 0.0;
    double trace_distance_max = 0.0;
    double mutual_information_max = 0.0;
    bool pass = false;

    bool operator==(const VerificationReport &) const = default;
};

/// Entrywise deviation between the system-2 reduced states before and after
/// the Lueders channel of a measurement on system 1. Zero in exact arithmetic.
double check_identity(const DensityOperator &rho, const ProjectiveMeasurement &m);

/// Seeded randomized sweep of check_identity. Deterministic in cfg. Trials are
/// spread over `workers` threads (0 = hardware concurrency); the report does not
/// depend on the worker count.
VerificationReport run_sweep(const VerifyConfig &cfg, unsigned workers = 0);

/// I(X; Y) in bits for X uniform over the rows of `conditionals`, with
/// conditionals[x][y] = P(y | x). Uses 0 log 0 = 0 and clamps negatives to 0.
double mutual_information(std::span<const std::vector<double>> conditionals);

/// Information the receiver's decoder extracts about the sender's bit, with a
/// uniform prior on the bit. The decoder acts on the receiver's 2-dim space.
double receiver_mutual_information(double theta, const ProjectiveMeasurement &decoder);
double receiver_mutual_information(const optics::PhaseSettings &phases, const ProjectiveMeasurement &decoder);

/// Max of receiver_mutual_information over random rank-(1,1) decoders and the
/// theta grid. Only projective decoders are sampled.
double adversarial_decoder_search(std::span<const double> theta_grid, std::size_t decoder_samples,
                                  std::uint64_t seed);

/// Selective collapse onto outcome `outcome` of a first-subsystem measurement,
/// renormalized: P rho P / trace(P rho). This is post-selection, not a physical
/// non-selective measurement, and it can change the receiver state.
DensityOperator post_selected_collapse(const DensityOperator &rho, const ProjectiveMeasurement &m,
                                       std::size_t outcome = 0);

/// check_identity with the Lueders channel replaced by post_selected_collapse.
double post_selected_deviation(const DensityOperator &rho, const ProjectiveMeasurement &m,
                               std::size_t outcome = 0);

struct NonVacuitySurvey {
    quantum::Dims dims;
    std::uint64_t seed = 0;
    std::vector<double> deviations;
    double threshold = 0.1;

    /// Fraction of deviations strictly above threshold.
    double detection_rate() const;
    double min_deviation() const;
    double max_deviation() const;
};

/// Sample k of the non-vacuity ensemble: a random pure state on dims and a
/// random rank-one complete measurement on system 1.
std::pair<DensityOperator, ProjectiveMeasurement> non_vacuity_instance(quantum::Dims dims, std::uint64_t seed,
                                                                       std::size_t k);

/// post_selected_deviation on `samples` random pure states with random
/// rank-one measurements on system 1. Sample k uses child seed k of `seed`.
NonVacuitySurvey non_vacuity_survey(std::size_t samples, quantum::Dims dims, std::uint64_t seed,
                                    double threshold = 0.1);

}  // namespace nosig::verify
