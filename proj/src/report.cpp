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

#include "nosig/report.hpp"

#include <stdexcept>

namespace nosig::report {

using nlohmann::json;

namespace {

json matrix_to_json(const linalg::ComplexMatrix &m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

linalg::ComplexMatrix matrix_from_json(const json &j) {
    const std::size_t rows = j.size();
    const std::size_t cols = rows == 0 ? 0 : j.at(0).size();
    std::vector<linalg::complex_t> entries;
    entries.reserve(rows * cols);
    for (const auto &row : j) {
        if (row.size() != cols) {
            throw std::invalid_argument("report: ragged matrix");
        }
        for (const auto &z : row) {
            entries.emplace_back(z.at(0).get<double>(), z.at(1).get<double>());
        }
    }
    return linalg::ComplexMatrix(rows, cols, std::move(entries));
}

json manifest_to_json(const RunManifest &m) {
    json j = {{"command", m.command},
              {"config", m.config},
              {"seed", m.seed},
              {"version", m.version},
              {"schema_version", kSchemaVersion}};
    if (m.wall_clock_seconds) {
        j["wall_clock_seconds"] = *m.wall_clock_seconds;
    }
    return j;
}

RunManifest manifest_from_json(const json &j) {
    RunManifest m;
    m.command = j.at("command").get<std::string>();
    m.config = j.at("config");
    m.seed = j.at("seed").get<std::uint64_t>();
    m.version = j.at("version").get<std::string>();
    if (j.at("schema_version").get<int>() != kSchemaVersion) {
        throw std::invalid_argument("report: unsupported schema_version");
    }
    if (j.contains("wall_clock_seconds")) {
        m.wall_clock_seconds = j.at("wall_clock_seconds").get<double>();
    }
    return m;
}

json theta_to_json(const ThetaResult &t) {
    return {{"theta", t.theta},
            {"receiver_bit0", matrix_to_json(t.receiver_bit0)},
            {"receiver_bit1", matrix_to_json(t.receiver_bit1)},
            {"trace_distance", t.trace_distance},
            {"receiver_max_deviation", t.receiver_max_deviation},
            {"mutual_information_hv", t.mutual_information_hv},
            {"mutual_information_diagonal", t.mutual_information_diagonal},
            {"joint_purity_bit0", t.joint_purity_bit0},
            {"joint_purity_bit1", t.joint_purity_bit1},
            {"single_photon_p0", t.single_photon_p0},
            {"entangled_receiver_p0", t.entangled_receiver_p0}};
}

ThetaResult theta_from_json(const json &j) {
    ThetaResult t;
    t.theta = j.at("theta").get<double>();
    t.receiver_bit0 = matrix_from_json(j.at("receiver_bit0"));
    t.receiver_bit1 = matrix_from_json(j.at("receiver_bit1"));
    t.trace_distance = j.at("trace_distance").get<double>();
    t.receiver_max_deviation = j.at("receiver_max_deviation").get<double>();
    t.mutual_information_hv = j.at("mutual_information_hv").get<double>();
    t.mutual_information_diagonal = j.at("mutual_information_diagonal").get<double>();
    t.joint_purity_bit0 = j.at("joint_purity_bit0").get<double>();
    t.joint_purity_bit1 = j.at("joint_purity_bit1").get<double>();
    t.single_photon_p0 = j.at("single_photon_p0").get<double>();
    t.entangled_receiver_p0 = j.at("entangled_receiver_p0").get<double>();
    return t;
}

json scenario_to_json(const ScenarioResults &s) {
    json per_theta = json::array();
    for (const auto &t : s.per_theta) {
        per_theta.push_back(theta_to_json(t));
    }
    return {{"theta_steps", s.theta_steps},
            {"per_theta", std::move(per_theta)},
            {"visibility_single_photon", s.visibility_single_photon},
            {"visibility_entangled_receiver", s.visibility_entangled_receiver},
            {"asymmetric_phase_max_deviation", s.asymmetric_phase_max_deviation},
            {"decoder_samples", s.decoder_samples},
            {"adversarial_mutual_information", s.adversarial_mutual_information}};
}

ScenarioResults scenario_from_json(const json &j) {
    ScenarioResults s;
    s.theta_steps = j.at("theta_steps").get<std::size_t>();
    for (const auto &t : j.at("per_theta")) {
        s.per_theta.push_back(theta_from_json(t));
    }
    s.visibility_single_photon = j.at("visibility_single_photon").get<double>();
    s.visibility_entangled_receiver = j.at("visibility_entangled_receiver").get<double>();
    s.asymmetric_phase_max_deviation = j.at("asymmetric_phase_max_deviation").get<double>();
    s.decoder_samples = j.at("decoder_samples").get<std::size_t>();
    s.adversarial_mutual_information = j.at("adversarial_mutual_information").get<double>();
    return s;
}

json trial_to_json(const verify::TrialRecord &t) {
    return {{"index", t.index},
            {"seed", t.seed},
            {"dim1", t.dim1},
            {"dim2", t.dim2},
            {"partition", t.partition},
            {"state_rank", t.state_rank},
            {"max_deviation", t.max_deviation},
            {"trace_distance", t.trace_distance},
            {"mutual_information", t.mutual_information}};
}

verify::TrialRecord trial_from_json(const json &j) {
    verify::TrialRecord t;
    t.index = j.at("index").get<std::size_t>();
    t.seed = j.at("seed").get<std::uint64_t>();
    t.dim1 = j.at("dim1").get<std::size_t>();
    t.dim2 = j.at("dim2").get<std::size_t>();
    t.partition = j.at("partition").get<verify::Partition>();
    t.state_rank = j.at("state_rank").get<std::size_t>();
    t.max_deviation = j.at("max_deviation").get<double>();
    t.trace_distance = j.at("trace_distance").get<double>();
    t.mutual_information = j.at("mutual_information").get<double>();
    return t;
}

json sweep_to_json(const SweepResults &s) {
    const auto &r = s.sweep;
    json trials = json::array();
    for (const auto &t : r.trials) {
        trials.push_back(trial_to_json(t));
    }
    return {{"config",
             {{"trials", r.config.trials},
              {"dim1", r.config.dim1},
              {"dim2", r.config.dim2},
              {"rank_partitions", r.config.rank_partitions},
              {"seed", r.config.seed},
              {"tolerance", r.config.tolerance}}},
            {"trials", std::move(trials)},
            {"max_deviation", r.max_deviation},
            {"trace_distance_max", r.trace_distance_max},
            {"mutual_information_max", r.mutual_information_max},
            {"pass", r.pass},
            {"decoder_search",
             {{"decoder_samples", s.decoder_search.decoder_samples},
              {"theta_steps", s.decoder_search.theta_steps},
              {"seed", s.decoder_search.seed},
              {"decoder_class", s.decoder_search.decoder_class},
              {"max_mutual_information", s.decoder_search.max_mutual_information}}}};
}

SweepResults sweep_from_json(const json &j) {
    SweepResults s;
    auto &r = s.sweep;
    const auto &c = j.at("config");
    r.config.trials = c.at("trials").get<std::size_t>();
    r.config.dim1 = c.at("dim1").get<std::size_t>();
    r.config.dim2 = c.at("dim2").get<std::size_t>();
    r.config.rank_partitions = c.at("rank_partitions").get<std::vector<verify::Partition>>();
    r.config.seed = c.at("seed").get<std::uint64_t>();
    r.config.tolerance = c.at("tolerance").get<double>();
    for (const auto &t : j.at("trials")) {
        r.trials.push_back(trial_from_json(t));
    }
    r.max_deviation = j.at("max_deviation").get<double>();
    r.trace_distance_max = j.at("trace_distance_max").get<double>();
    r.mutual_information_max = j.at("mutual_information_max").get<double>();
    r.pass = j.at("pass").get<bool>();
    const auto &d = j.at("decoder_search");
    s.decoder_search.decoder_samples = d.at("decoder_samples").get<std::size_t>();
    s.decoder_search.theta_steps = d.at("theta_steps").get<std::size_t>();
    s.decoder_search.seed = d.at("seed").get<std::uint64_t>();
    s.decoder_search.decoder_class = d.at("decoder_class").get<std::string>();
    s.decoder_search.max_mutual_information = d.at("max_mutual_information").get<double>();
    return s;
}

json counterexample_to_json(const CounterexampleResults &c) {
    return {{"channel", c.channel},
            {"note", c.note},
            {"dim1", c.dim1},
            {"dim2", c.dim2},
            {"seed", c.seed},
            {"threshold", c.threshold},
            {"deviations", c.deviations},
            {"example_deviation", c.example_deviation},
            {"lueders_deviation", c.lueders_deviation},
            {"detection_rate", c.detection_rate}};
}

CounterexampleResults counterexample_from_json(const json &j) {
    CounterexampleResults c;
    c.channel = j.at("channel").get<std::string>();
    c.note = j.at("note").get<std::string>();
    c.dim1 = j.at("dim1").get<std::size_t>();
    c.dim2 = j.at("dim2").get<std::size_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.threshold = j.at("threshold").get<double>();
    c.deviations = j.at("deviations").get<std::vector<double>>();
    c.example_deviation = j.at("example_deviation").get<double>();
    c.lueders_deviation = j.at("lueders_deviation").get<double>();
    c.detection_rate = j.at("detection_rate").get<double>();
    return c;
}

json verdict_to_json(const Verdict &v) {
    json checks = json::array();
    for (const auto &c : v.checks) {
        checks.push_back({{"name", c.name},
                          {"value", c.value},
                          {"threshold", c.threshold},
                          {"bound", c.upper_bound ? "at_most" : "at_least"},
                          {"pass", c.pass}});
    }
    return {{"pass", v.pass}, {"checks", std::move(checks)}};
}

Verdict verdict_from_json(const json &j) {
    Verdict v;
    v.pass = j.at("pass").get<bool>();
    for (const auto &c : j.at("checks")) {
        Check check;
        check.name = c.at("name").get<std::string>();
        check.value = c.at("value").get<double>();
        check.threshold = c.at("threshold").get<double>();
        const auto bound = c.at("bound").get<std::string>();
        if (bound != "at_most" && bound != "at_least") {
            throw std::invalid_argument("report: unknown check bound '" + bound + "'");
        }
        check.upper_bound = bound == "at_most";
        check.pass = c.at("pass").get<bool>();
        v.checks.push_back(std::move(check));
    }
    return v;
}

}  // namespace

Check Check::at_most(std::string name, double value, double threshold) {
    return Check{std::move(name), value, threshold, true, value <= threshold};
}

Check Check::at_least(std::string name, double value, double threshold) {
    return Check{std::move(name), value, threshold, false, value >= threshold};
}

Verdict Verdict::from_checks(std::vector<Check> checks) {
    Verdict v;
    v.pass = !checks.empty();
    for (const auto &c : checks) {
        v.pass = v.pass && c.pass;
    }
    v.checks = std::move(checks);
    return v;
}

json to_json(const Report &report) {
    json j;
    j["manifest"] = manifest_to_json(report.manifest);
    if (report.scenario_results) {
        j["scenario_results"] = scenario_to_json(*report.scenario_results);
    }
    if (report.sweep_results) {
        j["sweep_results"] = sweep_to_json(*report.sweep_results);
    }
    if (report.counterexample_results) {
        j["counterexample_results"] = counterexample_to_json(*report.counterexample_results);
    }
    j["aggregates"] = report.aggregates;
    j["verdict"] = verdict_to_json(report.verdict);
    return j;
}

Report from_json(const json &j) {
    Report r;
    r.manifest = manifest_from_json(j.at("manifest"));
    if (j.contains("scenario_results")) {
        r.scenario_results = scenario_from_json(j.at("scenario_results"));
    }
    if (j.contains("sweep_results")) {
        r.sweep_results = sweep_from_json(j.at("sweep_results"));
    }
    if (j.contains("counterexample_results")) {
        r.counterexample_results = counterexample_from_json(j.at("counterexample_results"));
    }
    r.aggregates = j.at("aggregates").get<std::map<std::string, double>>();
    r.verdict = verdict_from_json(j.at("verdict"));
    return r;
}

std::string emit(const Report &report) { return to_json(report).dump(2) + "\n"; }

Report parse(const std::string &text) { return from_json(json::parse(text)); }

}  // namespace nosig::report
