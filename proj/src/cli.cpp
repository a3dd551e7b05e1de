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

#include "nosig/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "nosig/optics.hpp"

namespace nosig::cli {

using report::Check;
using report::Report;
using report::Verdict;

namespace {

// Hand-built identities are exact up to a few roundings.
constexpr double kExactTolerance = 1e-12;
constexpr double kVisibilityTolerance = 1e-10;
// Contrast grid; it contains 0 and pi/2, so the cos^2 fringe reaches both extremes.
constexpr std::size_t kContrastGridSteps = 64;
constexpr double kNonVacuityThreshold = 0.1;
constexpr double kNonVacuityRate = 0.95;

const char *kCounterexampleNote =
    "UNPHYSICAL: selective post-selection onto outcome 0 of the sender's measurement, renormalized, "
    "without summing over outcomes. Reading its effect at the receiver requires knowing the sender's "
    "outcome, which only arrives over an ordinary channel. The non-selective Lueders channel leaves "
    "the receiver state unchanged.";

linalg::ComplexMatrix half_identity() { return linalg::ComplexMatrix::identity(2) * linalg::complex_t(0.5); }

std::optional<std::uint64_t> seed_from_env(std::ostream &err, bool &bad) {
    bad = false;
    const char *raw = std::getenv("NOSIG_SEED");
    if (raw == nullptr) {
        return std::nullopt;
    }
    const std::string text(raw);
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        err << "error: NOSIG_SEED must be an unsigned 64-bit integer, got '" << text << "'\n";
        bad = true;
        return std::nullopt;
    }
    return value;
}

std::string format_double(double x, int precision = 6) {
    std::ostringstream s;
    s << std::setprecision(precision) << x;
    return s.str();
}

void write_matrix(std::ostream &out, const linalg::ComplexMatrix &m, const std::string &indent) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
        out << indent << "[";
        for (std::size_t c = 0; c < m.cols(); ++c) {
            const auto z = m(r, c);
            std::ostringstream cell;
            cell << std::fixed << std::setprecision(6) << z.real() << (z.imag() < 0 ? " - " : " + ")
                 << std::abs(z.imag()) << "i";
            out << (c == 0 ? " " : ", ") << std::setw(22) << cell.str();
        }
        out << " ]\n";
    }
}

int emit_report(const Report &report, const OutputOptions &output, std::ostream &out, std::ostream &err) {
    std::string payload;
    if (output.format == Format::json) {
        Report shown = report;
        if (!output.record_timing) {
            shown.manifest.wall_clock_seconds.reset();
        }
        payload = report::emit(shown);
    } else {
        std::ostringstream text;
        write_text(report, text);
        payload = text.str();
    }
    if (output.output_path) {
        std::ofstream file(*output.output_path, std::ios::binary | std::ios::trunc);
        if (!file) {
            err << "error: cannot open output file '" << *output.output_path << "' for writing\n";
            return kExitUsage;
        }
        file << payload;
        file.flush();
        if (!file) {
            err << "error: failed writing output file '" << *output.output_path << "'\n";
            return kExitUsage;
        }
    } else {
        out << payload;
    }
    return report.verdict.pass ? kExitPass : kExitAssertionFailure;
}

template <typename Builder>
int run_command(Builder &&build, const OutputOptions &output, std::ostream &out, std::ostream &err) {
    const auto start = std::chrono::steady_clock::now();
    Report report;
    try {
        report = build();
    } catch (const verify::ConfigError &e) {
        err << "error: invalid configuration: " << e.what() << "\n";
        return kExitUsage;
    }
    report.manifest.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return emit_report(report, output, out, err);
}

void add_output_flags(CLI::App *cmd, OutputOptions &output, std::string &format) {
    cmd->add_option("--format", format, "Report format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();
    cmd->add_option("--output", output.output_path, "Write the report to this file instead of stdout");
    cmd->add_flag("--record-timing", output.record_timing, "Include wall-clock duration in JSON reports");
}

}  // namespace

std::vector<verify::Partition> parse_partitions(const std::string &text) {
    std::vector<verify::Partition> out;
    std::stringstream groups(text);
    std::string group;
    while (std::getline(groups, group, ';')) {
        verify::Partition p;
        std::stringstream parts(group);
        std::string part;
        while (std::getline(parts, part, ',')) {
            std::size_t value = 0;
            const auto first = part.find_first_not_of(' ');
            const auto last = part.find_last_not_of(' ');
            if (first == std::string::npos) {
                throw verify::ConfigError("partitions", "empty rank in '" + text + "'");
            }
            const std::string trimmed = part.substr(first, last - first + 1);
            const auto [ptr, ec] = std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), value);
            if (ec != std::errc{} || ptr != trimmed.data() + trimmed.size()) {
                throw verify::ConfigError("partitions", "'" + trimmed + "' is not a non-negative integer");
            }
            if (value == 0) {
                throw verify::ConfigError("partitions", "ranks must be positive in '" + text + "'");
            }
            p.push_back(value);
        }
        if (p.empty() || (!group.empty() && group.back() == ',')) {
            throw verify::ConfigError("partitions", "empty partition in '" + text + "'");
        }
        out.push_back(std::move(p));
    }
    const auto tail = text.find_last_not_of(' ');
    if (out.empty() || text[tail] == ';') {
        throw verify::ConfigError("partitions", "empty partition in '" + text + "'");
    }
    return out;
}

Report build_reproduce_report(const ReproduceOptions &opts) {
    using optics::Bit;
    using optics::InterferenceInput;
    using optics::Scenario;

    if (opts.theta_steps < 2) {
        throw verify::ConfigError("theta_steps", "must be at least 2");
    }
    if (opts.decoder_samples == 0) {
        throw verify::ConfigError("decoder_samples", "must be positive");
    }

    Report report;
    report.manifest.command = "reproduce";
    report.manifest.seed = opts.seed;
    report.manifest.config = {
        {"theta_steps", opts.theta_steps}, {"decoder_samples", opts.decoder_samples}, {"seed", opts.seed}};

    const auto grid = optics::theta_grid(opts.theta_steps);
    const auto hv = optics::hv_measurement(quantum::Subsystem::first);
    const auto diagonal = optics::diagonal_measurement(quantum::Subsystem::first);
    const auto half_id = half_identity();

    report::ScenarioResults results;
    results.theta_steps = opts.theta_steps;
    double max_trace_distance = 0.0;
    double max_receiver_deviation = 0.0;
    double max_from_half_identity = 0.0;
    double max_mi = 0.0;
    double bit0_purity_error = 0.0;
    double bit1_purity_error = 0.0;

    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double theta = grid[k];
        const auto s0 = optics::run_scenario(Scenario(Bit::bit0, theta));
        const auto s1 = optics::run_scenario(Scenario(Bit::bit1, theta));

        report::ThetaResult t;
        t.theta = theta;
        t.receiver_bit0 = s0.receiver.matrix();
        t.receiver_bit1 = s1.receiver.matrix();
        t.trace_distance = quantum::trace_distance(s0.receiver, s1.receiver);
        t.receiver_max_deviation = linalg::max_abs_diff(t.receiver_bit0, t.receiver_bit1);
        t.mutual_information_hv = verify::receiver_mutual_information(theta, hv);
        t.mutual_information_diagonal = verify::receiver_mutual_information(theta, diagonal);
        t.joint_purity_bit0 = s0.joint.purity();
        t.joint_purity_bit1 = s1.joint.purity();
        t.single_photon_p0 =
            optics::interference_probabilities(InterferenceInput::single_photon_superposition, theta).clamped()[0];
        t.entangled_receiver_p0 =
            optics::interference_probabilities(InterferenceInput::entangled_receiver, theta).clamped()[0];

        max_trace_distance = std::max(max_trace_distance, t.trace_distance);
        max_receiver_deviation = std::max(max_receiver_deviation, t.receiver_max_deviation);
        max_from_half_identity = std::max({max_from_half_identity, linalg::max_abs_diff(t.receiver_bit0, half_id),
                                           linalg::max_abs_diff(t.receiver_bit1, half_id)});
        max_mi = std::max({max_mi, t.mutual_information_hv, t.mutual_information_diagonal});
        bit0_purity_error = std::max(bit0_purity_error, std::abs(t.joint_purity_bit0 - 1.0));
        bit1_purity_error = std::max(bit1_purity_error, std::abs(t.joint_purity_bit1 - 0.5));

        // Independent phases on H and V: pair each grid point with a shifted one.
        const optics::PhaseSettings asym{theta, grid[(3 * k + 1) % grid.size()] + 0.25};
        const auto a0 = optics::run_scenario(Scenario(Bit::bit0, asym));
        const auto a1 = optics::run_scenario(Scenario(Bit::bit1, asym));
        results.asymmetric_phase_max_deviation =
            std::max(results.asymmetric_phase_max_deviation,
                     linalg::max_abs_diff(a0.receiver.matrix(), a1.receiver.matrix()));

        results.per_theta.push_back(std::move(t));
    }
    const auto contrast_grid = optics::theta_grid(kContrastGridSteps);
    results.visibility_single_photon =
        optics::visibility(InterferenceInput::single_photon_superposition, contrast_grid);
    results.visibility_entangled_receiver = optics::visibility(InterferenceInput::entangled_receiver, contrast_grid);
    results.decoder_samples = opts.decoder_samples;
    results.adversarial_mutual_information =
        verify::adversarial_decoder_search(grid, opts.decoder_samples, opts.seed);
    max_mi = std::max(max_mi, results.adversarial_mutual_information);

    report.aggregates = {
        {"max_trace_distance", max_trace_distance},
        {"max_receiver_deviation", max_receiver_deviation},
        {"max_receiver_deviation_from_half_identity", max_from_half_identity},
        {"max_mutual_information_bits", max_mi},
        {"visibility_single_photon", results.visibility_single_photon},
        {"visibility_entangled_receiver", results.visibility_entangled_receiver},
        {"asymmetric_phase_max_deviation", results.asymmetric_phase_max_deviation},
        {"bit0_joint_purity_error", bit0_purity_error},
        {"bit1_joint_purity_error", bit1_purity_error},
    };
    report.verdict = Verdict::from_checks({
        Check::at_most("max_trace_distance", max_trace_distance, kExactTolerance),
        Check::at_most("max_receiver_deviation_from_half_identity", max_from_half_identity, kExactTolerance),
        Check::at_most("max_mutual_information_bits", max_mi, kExactTolerance),
        Check::at_least("visibility_single_photon", results.visibility_single_photon, 1.0 - kVisibilityTolerance),
        Check::at_most("visibility_entangled_receiver", results.visibility_entangled_receiver, kVisibilityTolerance),
        Check::at_most("asymmetric_phase_max_deviation", results.asymmetric_phase_max_deviation, kExactTolerance),
        Check::at_most("bit0_joint_purity_error", bit0_purity_error, kExactTolerance),
        Check::at_most("bit1_joint_purity_error", bit1_purity_error, kExactTolerance),
    });
    report.scenario_results = std::move(results);
    return report;
}

Report build_verify_report(const VerifyOptions &opts) {
    verify::validate(opts.config);
    if (opts.decoder_samples == 0) {
        throw verify::ConfigError("decoder_samples", "must be positive");
    }
    if (opts.decoder_theta_steps == 0) {
        throw verify::ConfigError("decoder_theta_steps", "must be positive");
    }

    Report report;
    report.manifest.command = "verify";
    report.manifest.seed = opts.config.seed;

    report::SweepResults results;
    results.sweep = verify::run_sweep(opts.config, opts.workers);
    results.decoder_search.decoder_samples = opts.decoder_samples;
    results.decoder_search.theta_steps = opts.decoder_theta_steps;
    results.decoder_search.seed = opts.config.seed;
    results.decoder_search.max_mutual_information = verify::adversarial_decoder_search(
        optics::theta_grid(opts.decoder_theta_steps), opts.decoder_samples, opts.config.seed);

    const auto &cfg = results.sweep.config;
    report.manifest.config = {{"trials", cfg.trials},
                              {"dim1", cfg.dim1},
                              {"dim2", cfg.dim2},
                              {"partitions", cfg.rank_partitions},
                              {"seed", cfg.seed},
                              {"tolerance", cfg.tolerance},
                              {"decoder_samples", opts.decoder_samples},
                              {"decoder_theta_steps", opts.decoder_theta_steps}};

    const auto &sweep = results.sweep;
    report.aggregates = {
        {"max_deviation", sweep.max_deviation},
        {"trace_distance_max", sweep.trace_distance_max},
        {"mutual_information_max", sweep.mutual_information_max},
        {"decoder_search_max_mutual_information", results.decoder_search.max_mutual_information},
    };
    report.verdict = Verdict::from_checks({
        Check::at_most("max_deviation", sweep.max_deviation, cfg.tolerance),
        Check::at_most("trace_distance_max", sweep.trace_distance_max, cfg.tolerance),
        Check::at_most("mutual_information_max", sweep.mutual_information_max, cfg.tolerance),
        Check::at_most("decoder_search_max_mutual_information", results.decoder_search.max_mutual_information,
                       kExactTolerance),
    });
    report.sweep_results = std::move(results);
    return report;
}

Report build_counterexample_report(const CounterexampleOptions &opts) {
    if (opts.dim1 < 2) {
        throw verify::ConfigError("dim1", "must be at least 2");
    }
    if (opts.dim2 < 2) {
        throw verify::ConfigError("dim2", "must be at least 2");
    }
    if (opts.samples == 0) {
        throw verify::ConfigError("samples", "must be positive");
    }
    const quantum::Dims dims{opts.dim1, opts.dim2};
    Report report;
    report.manifest.command = "counterexample-demo";
    report.manifest.seed = opts.seed;
    report.manifest.config = {
        {"dim1", opts.dim1}, {"dim2", opts.dim2}, {"samples", opts.samples}, {"seed", opts.seed}};

    const auto survey = verify::non_vacuity_survey(opts.samples, dims, opts.seed, kNonVacuityThreshold);
    const auto [rho, m] = verify::non_vacuity_instance(dims, opts.seed, 0);

    report::CounterexampleResults results;
    results.note = kCounterexampleNote;
    results.dim1 = opts.dim1;
    results.dim2 = opts.dim2;
    results.seed = opts.seed;
    results.threshold = kNonVacuityThreshold;
    results.deviations = survey.deviations;
    results.example_deviation = survey.deviations.front();
    results.lueders_deviation = verify::check_identity(rho, m);
    results.detection_rate = survey.detection_rate();

    report.aggregates = {
        {"example_deviation", results.example_deviation},
        {"lueders_deviation", results.lueders_deviation},
        {"detection_rate", results.detection_rate},
        {"min_deviation", survey.min_deviation()},
    };
    report.verdict = Verdict::from_checks({
        Check::at_least("example_deviation", results.example_deviation, kNonVacuityThreshold),
        Check::at_least("detection_rate", results.detection_rate, kNonVacuityRate),
        Check::at_most("lueders_deviation", results.lueders_deviation, kExactTolerance),
    });
    report.counterexample_results = std::move(results);
    return report;
}

void write_text(const Report &report, std::ostream &out) {
    const auto &man = report.manifest;
    out << "nosig " << man.version << " -- " << man.command << " (seed " << man.seed << ")\n";
    out << "config: " << man.config.dump() << "\n";
    if (man.wall_clock_seconds) {
        out << "wall clock: " << format_double(*man.wall_clock_seconds, 4) << " s\n";
    }
    out << "\n";

    if (report.scenario_results) {
        const auto &s = *report.scenario_results;
        const auto &first = s.per_theta.front();
        out << "receiver state, bit 1 (sender measures H/V), theta = 0:\n";
        write_matrix(out, first.receiver_bit1, "  ");
        out << "receiver state, bit 0 (sender does nothing), theta = 0:\n";
        write_matrix(out, first.receiver_bit0, "  ");
        out << "\n"
            << std::setw(10) << "theta" << std::setw(14) << "trace_dist" << std::setw(14) << "I_hv(bits)"
            << std::setw(14) << "I_diag(bits)" << std::setw(14) << "p0_single" << std::setw(14) << "p0_entangled"
            << "\n";
        for (const auto &t : s.per_theta) {
            out << std::setw(10) << std::fixed << std::setprecision(5) << t.theta << std::defaultfloat
                << std::setw(14) << format_double(t.trace_distance, 3) << std::setw(14)
                << format_double(t.mutual_information_hv, 3) << std::setw(14)
                << format_double(t.mutual_information_diagonal, 3) << std::setw(14)
                << format_double(t.single_photon_p0, 4) << std::setw(14) << format_double(t.entangled_receiver_p0, 4)
                << "\n";
        }
        out << "\n";
    }

    if (report.sweep_results) {
        const auto &sw = report.sweep_results->sweep;
        out << "theorem sweep: " << sw.trials.size() << " trials at dims (" << sw.config.dim1 << ", "
            << sw.config.dim2 << "), " << sw.config.rank_partitions.size() << " rank partitions\n";
        const auto &ds = report.sweep_results->decoder_search;
        out << "decoder search: " << ds.decoder_samples << " " << ds.decoder_class << " decoders x "
            << ds.theta_steps << " theta values\n\n";
    }

    if (report.counterexample_results) {
        const auto &c = *report.counterexample_results;
        out << "channel: " << c.channel << "\n" << c.note << "\n";
        out << "dims (" << c.dim1 << ", " << c.dim2 << "), " << c.deviations.size() << " random pure inputs\n";
        out << "example receiver deviation (post-selected): " << format_double(c.example_deviation, 17) << "\n";
        out << "same input, Lueders channel:                " << format_double(c.lueders_deviation, 17) << "\n";
        out << "inputs with deviation > " << c.threshold << ": " << format_double(100.0 * c.detection_rate, 4)
            << "%\n\n";
    }

    out << "aggregates:\n";
    for (const auto &[name, value] : report.aggregates) {
        out << "  " << std::left << std::setw(44) << name << std::right << format_double(value, 17) << "\n";
    }
    out << "checks:\n";
    for (const auto &c : report.verdict.checks) {
        out << "  [" << (c.pass ? "PASS" : "FAIL") << "] " << c.name << " = " << format_double(c.value, 6)
            << (c.upper_bound ? " <= " : " >= ") << format_double(c.threshold, 12) << "\n";
    }
    out << "verdict: " << (report.verdict.pass ? "PASS" : "FAIL") << "\n";
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Density-operator checks of local-measurement no-signalling", "nosig"};
    app.require_subcommand(1);
    app.set_version_flag("--version", report::kVersion);

    OutputOptions reproduce_out;
    std::string reproduce_format = "text";
    ReproduceOptions reproduce_opts;
    auto *reproduce = app.add_subcommand("reproduce", "Two-photon scenario over a theta grid");
    reproduce->add_option("--theta-steps", reproduce_opts.theta_steps, "Grid points on [0, 2 pi)")
        ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()))
        ->capture_default_str();
    reproduce->add_option("--decoder-samples", reproduce_opts.decoder_samples, "Random receiver decoders to try")
        ->capture_default_str();
    reproduce->add_option("--seed", reproduce_opts.seed, "Seed for the decoder search")->capture_default_str();
    add_output_flags(reproduce, reproduce_out, reproduce_format);

    OutputOptions verify_out;
    std::string verify_format = "text";
    VerifyOptions verify_opts;
    std::string partitions;
    auto *verify_cmd = app.add_subcommand("verify", "Randomized sweep of the reduced-state identity");
    verify_cmd->add_option("--trials", verify_opts.config.trials, "Random (state, measurement) pairs")
        ->capture_default_str();
    verify_cmd->add_option("--dim1", verify_opts.config.dim1, "Dimension of the measured system")->capture_default_str();
    verify_cmd->add_option("--dim2", verify_opts.config.dim2, "Dimension of the receiver")->capture_default_str();
    verify_cmd->add_option("--seed", verify_opts.config.seed, "Master seed")->capture_default_str();
    verify_cmd->add_option("--tolerance", verify_opts.config.tolerance, "Pass threshold")->capture_default_str();
    verify_cmd->add_option("--partitions", partitions,
                           "Rank partitions of dim1, e.g. \"2,2;3,1\" (default: all partitions)");
    verify_cmd->add_option("--decoder-samples", verify_opts.decoder_samples, "Random decoders in the search")
        ->capture_default_str();
    verify_cmd->add_option("--decoder-theta-steps", verify_opts.decoder_theta_steps, "Theta values in the search")
        ->capture_default_str();
    verify_cmd->add_option("--workers", verify_opts.workers, "Worker threads (0 = all cores)")->capture_default_str();
    add_output_flags(verify_cmd, verify_out, verify_format);

    OutputOptions demo_out;
    std::string demo_format = "text";
    CounterexampleOptions demo_opts;
    auto *demo = app.add_subcommand("counterexample-demo",
                                    "Show that post-selected collapse would change the receiver state");
    demo->add_option("--dim1", demo_opts.dim1)->capture_default_str();
    demo->add_option("--dim2", demo_opts.dim2)->capture_default_str();
    demo->add_option("--samples", demo_opts.samples)->capture_default_str();
    demo->add_option("--seed", demo_opts.seed)->capture_default_str();
    add_output_flags(demo, demo_out, demo_format);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitUsage;
    }

    bool bad_env = false;
    const auto env_seed = seed_from_env(err, bad_env);
    if (bad_env) {
        return kExitUsage;
    }
    auto to_format = [](const std::string &f) { return f == "json" ? Format::json : Format::text; };

    if (*reproduce) {
        reproduce_out.format = to_format(reproduce_format);
        if (env_seed) {
            reproduce_opts.seed = *env_seed;
        }
        return run_command([&] { return build_reproduce_report(reproduce_opts); }, reproduce_out, out, err);
    }
    if (*verify_cmd) {
        verify_out.format = to_format(verify_format);
        if (env_seed) {
            verify_opts.config.seed = *env_seed;
        }
        return run_command(
            [&] {
                if (!partitions.empty()) {
                    verify_opts.config.rank_partitions = parse_partitions(partitions);
                }
                return build_verify_report(verify_opts);
            },
            verify_out, out, err);
    }
    demo_out.format = to_format(demo_format);
    if (env_seed) {
        demo_opts.seed = *env_seed;
    }
    return run_command([&] { return build_counterexample_report(demo_opts); }, demo_out, out, err);
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    std::vector<const char *> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("nosig");
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace nosig::cli
