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

#include "nosig/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "nosig/random.hpp"

namespace nosig::verify {

using linalg::ComplexMatrix;
using linalg::max_abs_diff;
using quantum::Dims;
using quantum::Rng;
using quantum::Subsystem;

namespace {

// Matrix dimensions above this are not what the dense layer is meant for.
constexpr std::size_t kMaxCompositeDim = 64;

void collect_partitions(std::size_t remaining, std::size_t largest, Partition &prefix,
                        std::vector<Partition> &out) {
    if (remaining == 0) {
        out.push_back(prefix);
        return;
    }
    for (std::size_t part = std::min(remaining, largest); part >= 1; --part) {
        prefix.push_back(part);
        collect_partitions(remaining - part, part, prefix, out);
        prefix.pop_back();
    }
}

void require_first_subsystem(const DensityOperator &rho, const ProjectiveMeasurement &m, const char *what) {
    if (m.subsystem() != Subsystem::first) {
        throw std::invalid_argument(std::string(what) + ": measurement must act on the first subsystem");
    }
    if (m.dim() != rho.dims().first) {
        throw std::invalid_argument(std::string(what) + ": measurement dimension does not match subsystem 1");
    }
}

TrialRecord run_trial(const VerifyConfig &cfg, std::size_t index) {
    TrialRecord rec;
    rec.index = index;
    rec.seed = quantum::derive_child_seed(cfg.seed, index);
    rec.dim1 = cfg.dim1;
    rec.dim2 = cfg.dim2;
    rec.partition = cfg.rank_partitions[index % cfg.rank_partitions.size()];

    const Dims dims{cfg.dim1, cfg.dim2};
    Rng rng(rec.seed);
    rec.state_rank = static_cast<std::size_t>(rng.uniform_int(1, dims.total()));
    const std::uint64_t state_seed = rng.next_u64();
    const std::uint64_t measurement_seed = rng.next_u64();
    const std::uint64_t decoder_seed = rng.next_u64();

    const DensityOperator rho = quantum::random_density(dims, rec.state_rank, state_seed);
    const ProjectiveMeasurement m =
        quantum::random_projective_measurement(cfg.dim1, rec.partition, measurement_seed, Subsystem::first);

    const DensityOperator after = quantum::lueders_channel(rho, m);
    const DensityOperator receiver_before = rho.reduced_second();
    const DensityOperator receiver_after = after.reduced_second();
    rec.max_deviation = max_abs_diff(receiver_after.matrix(), receiver_before.matrix());
    rec.trace_distance = quantum::trace_distance(receiver_before, receiver_after);

    const Partition rank_one(cfg.dim2, 1);
    const ProjectiveMeasurement decoder =
        quantum::random_projective_measurement(cfg.dim2, rank_one, decoder_seed, Subsystem::first);
    const std::vector<std::vector<double>> conditionals{
        quantum::born_probabilities(receiver_before, decoder).clamped(),
        quantum::born_probabilities(receiver_after, decoder).clamped()};
    rec.mutual_information = mutual_information(conditionals);
    return rec;
}

double information_between_receivers(const DensityOperator &r0, const DensityOperator &r1,
                                     const ProjectiveMeasurement &decoder) {
    const std::vector<std::vector<double>> conditionals{quantum::born_probabilities(r0, decoder).clamped(),
                                                        quantum::born_probabilities(r1, decoder).clamped()};
    return mutual_information(conditionals);
}

void require_receiver_decoder(const ProjectiveMeasurement &decoder) {
    if (decoder.dim() != 2 || decoder.subsystem() != Subsystem::first) {
        throw std::invalid_argument("receiver decoder must be a measurement on the 2-dim receiver space");
    }
}

}  // namespace

void validate(const VerifyConfig &cfg) {
    if (cfg.trials == 0) {
        throw ConfigError("trials", "must be a positive integer");
    }
    if (cfg.dim1 < 2) {
        throw ConfigError("dim1", "must be at least 2");
    }
    if (cfg.dim2 < 2) {
        throw ConfigError("dim2", "must be at least 2");
    }
    if (cfg.dim1 * cfg.dim2 > kMaxCompositeDim) {
        throw ConfigError("dim1", "dim1 * dim2 must not exceed " + std::to_string(kMaxCompositeDim));
    }
    if (!(cfg.tolerance > 0.0) || !std::isfinite(cfg.tolerance)) {
        throw ConfigError("tolerance", "must be a positive finite number");
    }
    for (const auto &p : cfg.rank_partitions) {
        if (p.empty() || std::find(p.begin(), p.end(), std::size_t{0}) != p.end()) {
            throw ConfigError("rank_partitions", "ranks must be positive");
        }
        if (std::accumulate(p.begin(), p.end(), std::size_t{0}) != cfg.dim1) {
            throw ConfigError("rank_partitions", "each partition must sum to dim1 = " + std::to_string(cfg.dim1));
        }
    }
}

std::vector<Partition> integer_partitions(std::size_t n) {
    std::vector<Partition> out;
    if (n == 0) {
        return out;
    }
    Partition prefix;
    collect_partitions(n, n, prefix, out);
    return out;
}

double check_identity(const DensityOperator &rho, const ProjectiveMeasurement &m) {
    require_first_subsystem(rho, m, "check_identity");
    const DensityOperator after = quantum::lueders_channel(rho, m);
    return max_abs_diff(linalg::partial_trace_first(after.matrix(), rho.dims().first, rho.dims().second),
                        linalg::partial_trace_first(rho.matrix(), rho.dims().first, rho.dims().second));
}

VerificationReport run_sweep(const VerifyConfig &cfg_in, unsigned requested_workers) {
    validate(cfg_in);
    VerificationReport report;
    report.config = cfg_in;
    if (report.config.rank_partitions.empty()) {
        report.config.rank_partitions = integer_partitions(cfg_in.dim1);
    }
    const VerifyConfig &cfg = report.config;

    report.trials.resize(cfg.trials);
    unsigned workers = requested_workers != 0 ? requested_workers : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, cfg.trials));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < cfg.trials; i = next++) {
            try {
                report.trials[i] = run_trial(cfg, i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                return;
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    for (const auto &t : report.trials) {
        report.max_deviation = std::max(report.max_deviation, t.max_deviation);
        report.trace_distance_max = std::max(report.trace_distance_max, t.trace_distance);
        report.mutual_information_max = std::max(report.mutual_information_max, t.mutual_information);
    }
    report.pass = report.max_deviation <= cfg.tolerance && report.trace_distance_max <= cfg.tolerance &&
                  report.mutual_information_max <= cfg.tolerance;
    return report;
}

double mutual_information(std::span<const std::vector<double>> conditionals) {
    if (conditionals.empty()) {
        throw std::invalid_argument("mutual_information: no conditional distributions");
    }
    const std::size_t outcomes = conditionals.front().size();
    for (const auto &c : conditionals) {
        if (c.size() != outcomes) {
            throw std::invalid_argument("mutual_information: conditionals differ in outcome count");
        }
    }
    const double prior = 1.0 / double(conditionals.size());
    std::vector<double> marginal(outcomes, 0.0);
    for (const auto &c : conditionals) {
        for (std::size_t y = 0; y < outcomes; ++y) {
            marginal[y] += prior * std::max(c[y], 0.0);
        }
    }
    double info = 0.0;
    for (const auto &c : conditionals) {
        for (std::size_t y = 0; y < outcomes; ++y) {
            const double p = std::max(c[y], 0.0);
            if (p > 0.0 && marginal[y] > 0.0) {
                info += prior * p * std::log2(p / marginal[y]);
            }
        }
    }
    return std::max(info, 0.0);
}

double receiver_mutual_information(double theta, const ProjectiveMeasurement &decoder) {
    return receiver_mutual_information(optics::PhaseSettings::symmetric(theta), decoder);
}

double receiver_mutual_information(const optics::PhaseSettings &phases, const ProjectiveMeasurement &decoder) {
    require_receiver_decoder(decoder);
    const auto bit0 = optics::run_scenario(optics::Scenario(optics::Bit::bit0, phases));
    const auto bit1 = optics::run_scenario(optics::Scenario(optics::Bit::bit1, phases));
    return information_between_receivers(bit0.receiver, bit1.receiver, decoder);
}

double adversarial_decoder_search(std::span<const double> theta_grid, std::size_t decoder_samples,
                                  std::uint64_t seed) {
    if (decoder_samples == 0) {
        throw std::invalid_argument("adversarial_decoder_search: need at least one decoder sample");
    }
    if (theta_grid.empty()) {
        throw std::invalid_argument("adversarial_decoder_search: empty theta grid");
    }
    std::vector<std::pair<DensityOperator, DensityOperator>> receivers;
    receivers.reserve(theta_grid.size());
    for (double theta : theta_grid) {
        receivers.emplace_back(optics::run_scenario(optics::Scenario(optics::Bit::bit0, theta)).receiver,
                               optics::run_scenario(optics::Scenario(optics::Bit::bit1, theta)).receiver);
    }
    const Partition rank_one{1, 1};
    double worst = 0.0;
    for (std::size_t s = 0; s < decoder_samples; ++s) {
        const ProjectiveMeasurement decoder = quantum::random_projective_measurement(
            2, rank_one, quantum::derive_child_seed(seed, s), Subsystem::first);
        for (const auto &[r0, r1] : receivers) {
            worst = std::max(worst, information_between_receivers(r0, r1, decoder));
        }
    }
    return worst;
}

DensityOperator post_selected_collapse(const DensityOperator &rho, const ProjectiveMeasurement &m,
                                       std::size_t outcome) {
    require_first_subsystem(rho, m, "post_selected_collapse");
    if (outcome >= m.size()) {
        throw std::invalid_argument("post_selected_collapse: outcome index out of range");
    }
    const ComplexMatrix p = m.embedded(outcome, rho.dims());
    ComplexMatrix collapsed = p * rho.matrix() * p;
    const double weight = linalg::trace(collapsed).real();
    if (!(weight > 1e-14)) {
        throw std::invalid_argument("post_selected_collapse: outcome has zero probability");
    }
    collapsed *= linalg::complex_t(1.0 / weight);
    return DensityOperator(std::move(collapsed), rho.dims());
}

double post_selected_deviation(const DensityOperator &rho, const ProjectiveMeasurement &m, std::size_t outcome) {
    const DensityOperator after = post_selected_collapse(rho, m, outcome);
    return max_abs_diff(linalg::partial_trace_first(after.matrix(), rho.dims().first, rho.dims().second),
                        linalg::partial_trace_first(rho.matrix(), rho.dims().first, rho.dims().second));
}

double NonVacuitySurvey::detection_rate() const {
    if (deviations.empty()) {
        return 0.0;
    }
    const auto hits = std::count_if(deviations.begin(), deviations.end(), [&](double d) { return d > threshold; });
    return double(hits) / double(deviations.size());
}

double NonVacuitySurvey::min_deviation() const {
    return deviations.empty() ? 0.0 : *std::min_element(deviations.begin(), deviations.end());
}

double NonVacuitySurvey::max_deviation() const {
    return deviations.empty() ? 0.0 : *std::max_element(deviations.begin(), deviations.end());
}

std::pair<DensityOperator, ProjectiveMeasurement> non_vacuity_instance(Dims dims, std::uint64_t seed,
                                                                       std::size_t k) {
    Rng rng(quantum::derive_child_seed(seed, k));
    const std::uint64_t state_seed = rng.next_u64();
    const std::uint64_t measurement_seed = rng.next_u64();
    const Partition rank_one(dims.first, 1);
    return {quantum::random_density(dims, 1, state_seed),
            quantum::random_projective_measurement(dims.first, rank_one, measurement_seed, Subsystem::first)};
}

NonVacuitySurvey non_vacuity_survey(std::size_t samples, Dims dims, std::uint64_t seed, double threshold) {
    if (samples == 0) {
        throw std::invalid_argument("non_vacuity_survey: need at least one sample");
    }
    NonVacuitySurvey survey{dims, seed, {}, threshold};
    survey.deviations.reserve(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        const auto [rho, m] = non_vacuity_instance(dims, seed, k);
        survey.deviations.push_back(post_selected_deviation(rho, m));
    }
    return survey;
}

}  // namespace nosig::verify
