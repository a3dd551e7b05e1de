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

// Report model shared by the CLI subcommands, with its JSON mapping.
// The layout is documented in docs/report-schema.md and docs/report.schema.json.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nosig/linalg.hpp"
#include "nosig/verifier.hpp"

namespace nosig::report {

inline constexpr const char *kVersion = "0.1.0";
inline constexpr int kSchemaVersion = 1;

struct RunManifest {
    std::string command;
    nlohmann::json config;  // full flag echo
    std::uint64_t seed = 0;
    std::string version = kVersion;
    /// Omitted from JSON unless timing was requested, so reports stay byte-stable.
    std::optional<double> wall_clock_seconds;

    bool operator==(const RunManifest &) const = default;
};

struct ThetaResult {
    double theta = 0.0;
    linalg::ComplexMatrix receiver_bit0 = linalg::ComplexMatrix::identity(2);
    linalg::ComplexMatrix receiver_bit1 = linalg::ComplexMatrix::identity(2);
    double trace_distance = 0.0;
    double receiver_max_deviation = 0.0;
    double mutual_information_hv = 0.0;
    double mutual_information_diagonal = 0.0;
    double joint_purity_bit0 = 0.0;
    double joint_purity_bit1 = 0.0;
    double single_photon_p0 = 0.0;
    double entangled_receiver_p0 = 0.0;

    bool operator==(const ThetaResult &) const = default;
};

struct ScenarioResults {
    std::size_t theta_steps = 0;
    std::vector<ThetaResult> per_theta;
    double visibility_single_photon = 0.0;
    double visibility_entangled_receiver = 0.0;
    /// Largest receiver deviation between bit0 and bit1 under independent (phase_h, phase_v) settings.
    double asymmetric_phase_max_deviation = 0.0;
    std::size_t decoder_samples = 0;
    double adversarial_mutual_information = 0.0;

    bool operator==(const ScenarioResults &) const = default;
};

struct DecoderSearchResult {
    std::size_t decoder_samples = 0;
    std::size_t theta_steps = 0;
    std::uint64_t seed = 0;
    std::string decoder_class = "projective rank-(1,1)";
    double max_mutual_information = 0.0;

    bool operator==(const DecoderSearchResult &) const = default;
};

struct SweepResults {
    verify::VerificationReport sweep;
    DecoderSearchResult decoder_search;

    bool operator==(const SweepResults &) const = default;
};

struct CounterexampleResults {
    std::string channel = "post-selected collapse P0 rho P0 / trace(P0 rho)";
    std::string note;
    std::size_t dim1 = 0;
    std::size_t dim2 = 0;
    std::uint64_t seed = 0;
    double threshold = 0.0;
    std::vector<double> deviations;
    double example_deviation = 0.0;
    double lueders_deviation = 0.0;
    double detection_rate = 0.0;

    bool operator==(const CounterexampleResults &) const = default;
};

/// One asserted property: pass iff value <= threshold (upper) or value >= threshold (lower).
struct Check {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool upper_bound = true;
    bool pass = false;

    static Check at_most(std::string name, double value, double threshold);
    static Check at_least(std::string name, double value, double threshold);
    bool operator==(const Check &) const = default;
};

struct Verdict {
    bool pass = false;
    std::vector<Check> checks;

    static Verdict from_checks(std::vector<Check> checks);
    bool operator==(const Verdict &) const = default;
};

struct Report {
    RunManifest manifest;
    std::optional<ScenarioResults> scenario_results;
    std::optional<SweepResults> sweep_results;
    std::optional<CounterexampleResults> counterexample_results;
    std::map<std::string, double> aggregates;
    Verdict verdict;

    bool operator==(const Report &) const = default;
};

nlohmann::json to_json(const Report &report);
Report from_json(const nlohmann::json &j);

/// Indented JSON with a trailing newline. Doubles use the shortest decimal that
/// round-trips exactly (at most 17 significant digits).
std::string emit(const Report &report);
Report parse(const std::string &text);

}  // namespace nosig::report
