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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "nosig/report.hpp"
#include "nosig/verifier.hpp"

namespace nosig::cli {

enum ExitCode : int {
    kExitPass = 0,
    kExitAssertionFailure = 1,
    kExitUsage = 2,
};

enum class Format { text, json };

struct OutputOptions {
    Format format = Format::text;
    std::optional<std::string> output_path;
    bool record_timing = false;
};

struct ReproduceOptions {
    std::size_t theta_steps = 64;
    std::size_t decoder_samples = 100;
    std::uint64_t seed = 0;
};

struct VerifyOptions {
    verify::VerifyConfig config;
    std::size_t decoder_samples = 500;
    std::size_t decoder_theta_steps = 32;
    unsigned workers = 0;
};

struct CounterexampleOptions {
    std::size_t dim1 = 4;
    std::size_t dim2 = 4;
    std::size_t samples = 100;
    std::uint64_t seed = 0;
};

/// Builds the report for each subcommand. No I/O.
report::Report build_reproduce_report(const ReproduceOptions &opts);
report::Report build_verify_report(const VerifyOptions &opts);
report::Report build_counterexample_report(const CounterexampleOptions &opts);

void write_text(const report::Report &report, std::ostream &out);

/// Parses "2,2;3,1" into {{2,2},{3,1}}. Throws verify::ConfigError("partitions", ...).
std::vector<verify::Partition> parse_partitions(const std::string &text);

/// Entry point shared by the executable and the tests. Returns an ExitCode.
/// NOSIG_SEED, when set, overrides --seed.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace nosig::cli
