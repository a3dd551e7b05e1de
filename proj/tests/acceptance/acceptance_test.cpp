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

// Standalone acceptance suite. Prints one [PASS]/[FAIL] line per criterion
// and exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nosig/cli.hpp"
#include "nosig/optics.hpp"
#include "nosig/quantum.hpp"
#include "nosig/random.hpp"
#include "nosig/verifier.hpp"
#include "oracles.hpp"

using namespace nosig;
using linalg::ComplexMatrix;
using linalg::max_abs_diff;
using quantum::Dims;
using quantum::Subsystem;

namespace {

struct Measurement {
    std::string what;
    double value;
    double bound;
    bool at_most;

    bool ok() const { return at_most ? value <= bound : value >= bound; }
};

class Criterion {
  public:
    explicit Criterion(std::string name) : name_(std::move(name)) {}

    void at_most(std::string what, double value, double bound) { items_.push_back({std::move(what), value, bound, true}); }
    void at_least(std::string what, double value, double bound) {
        items_.push_back({std::move(what), value, bound, false});
    }
    void within(std::string what, double value, double target, double tol) {
        at_most(std::move(what) + " |x - " + format(target) + "|", std::abs(value - target), tol);
    }

    bool report(std::ostream &out) const {
        const bool pass = std::all_of(items_.begin(), items_.end(), [](const Measurement &m) { return m.ok(); });
        out << (pass ? "[PASS] " : "[FAIL] ") << name_ << ":";
        for (std::size_t i = 0; i < items_.size(); ++i) {
            const auto &m = items_[i];
            out << (i == 0 ? " " : "; ") << m.what << " = " << format(m.value) << (m.at_most ? " <= " : " >= ")
                << format(m.bound) << (m.ok() ? "" : " (violated)");
        }
        out << "\n";
        return pass;
    }

    static std::string format(double x) {
        std::ostringstream s;
        s << std::setprecision(6) << x;
        return s.str();
    }

  private:
    std::string name_;
    std::vector<Measurement> items_;
};

// Median wall time in milliseconds over `reps` runs, after one untimed warm-up.
double median_ms(const std::function<void()> &body, int reps = 11) {
    body();
    std::vector<double> times;
    for (int r = 0; r < reps; ++r) {
        const auto start = std::chrono::steady_clock::now();
        body();
        times.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
    }
    std::nth_element(times.begin(), times.begin() + reps / 2, times.end());
    return times[reps / 2];
}

ComplexMatrix half_identity() { return ComplexMatrix::identity(2) * linalg::complex_t(0.5); }

double entropy_bits(const std::vector<double> &p) {
    double h = 0.0;
    for (double x : p) {
        if (x > 0.0) {
            h -= x * std::log2(x);
        }
    }
    return h;
}

Criterion measured_pair_mixture() {
    Criterion c("H/V measurement on the pair gives the two-term mixture, receiver sees I/2");
    const auto source = quantum::density_from_state(optics::epr_state(), Dims{2, 2});
    const auto measure = optics::hv_measurement(Subsystem::first);

    const auto after = quantum::lueders_channel(source, measure);
    const auto receiver = linalg::partial_trace_first(after.matrix(), 2, 2);
    c.at_most("joint vs hand-built mixture", max_abs_diff(after.matrix(), oracle::measured_mixture()), 1e-12);
    c.at_most("receiver vs I/2", max_abs_diff(receiver, half_identity()), 1e-12);

    volatile double sink = 0.0;
    const double ms = median_ms([&] {
        const auto r = linalg::partial_trace_first(quantum::lueders_channel(source, measure).matrix(), 2, 2);
        sink = sink + r(0, 0).real();
    });
    c.at_most("runtime ms", ms, 1.0);
    return c;
}

Criterion phased_pair() {
    Criterion c("bit0 joint state carries e^{+-2i theta} coherences, receiver sees I/2 at 64 theta");
    const auto grid = optics::theta_grid(64);
    double joint_err = 0.0;
    double receiver_err = 0.0;
    for (double theta : grid) {
        const auto s = optics::run_scenario(optics::Scenario(optics::Bit::bit0, theta));
        joint_err = std::max(joint_err, max_abs_diff(s.joint.matrix(), oracle::phased_pair_projector(theta)));
        receiver_err =
            std::max(receiver_err, max_abs_diff(linalg::partial_trace_first(s.joint.matrix(), 2, 2), half_identity()));
    }
    c.at_most("joint vs hand-built", joint_err, 1e-12);
    c.at_most("receiver vs I/2", receiver_err, 1e-12);

    volatile double sink = 0.0;
    const double ms = median_ms([&] {
        for (double theta : grid) {
            const auto s = optics::run_scenario(optics::Scenario(optics::Bit::bit0, theta));
            sink = sink + linalg::partial_trace_first(s.joint.matrix(), 2, 2)(0, 0).real();
        }
    });
    c.at_most("runtime ms", ms, 10.0);
    return c;
}

Criterion theorem_sweep() {
    Criterion c("random sweep over all rank partitions: (2,2) x1000, (4,4) x200, (8,4) x200");
    struct Block {
        std::size_t dim1;
        std::size_t dim2;
        std::size_t trials;
    };
    const std::vector<Block> blocks{{2, 2, 1000}, {4, 4, 200}, {8, 4, 200}};
    double worst = 0.0;
    bool all_partitions = true;
    std::size_t trials = 0;
    const auto start = std::chrono::steady_clock::now();
    for (const auto &b : blocks) {
        verify::VerifyConfig cfg;
        cfg.trials = b.trials;
        cfg.dim1 = b.dim1;
        cfg.dim2 = b.dim2;
        const auto report = verify::run_sweep(cfg);
        worst = std::max(worst, report.max_deviation);
        trials += report.trials.size();
        all_partitions = all_partitions && report.config.rank_partitions == verify::integer_partitions(b.dim1);
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.at_most("max deviation", worst, 1e-9);
    c.at_least("trials run", static_cast<double>(trials), 1400.0);
    c.at_least("all partitions covered", all_partitions ? 1.0 : 0.0, 1.0);
    c.at_most("runtime s", seconds, 30.0);
    return c;
}

Criterion oracle_equivalence() {
    Criterion c("channel and partial trace agree with explicit-loop oracle, 100 random (rho, m) at (4,4)");
    const std::vector<verify::Partition> partitions = verify::integer_partitions(4);
    quantum::Rng rng(20260101);
    double channel_err = 0.0;
    double trace_err = 0.0;
    for (int k = 0; k < 100; ++k) {
        const auto rho = quantum::random_density(Dims{4, 4}, 1 + rng.uniform_int(0, 15), rng.next_u64());
        const auto m = quantum::random_projective_measurement(4, partitions[k % partitions.size()], rng.next_u64());

        std::vector<oracle::Grid> projectors;
        for (const auto &p : m.projectors()) {
            projectors.push_back(oracle::to_grid(p));
        }
        const auto rho_grid = oracle::to_grid(rho.matrix());
        const auto after = quantum::lueders_channel(rho, m);
        channel_err = std::max(channel_err,
                               oracle::max_abs_diff(oracle::lueders_first(rho_grid, projectors, 4, 4), after.matrix()));
        trace_err = std::max(trace_err, oracle::max_abs_diff(oracle::trace_out_first(rho_grid, 4, 4),
                                                             linalg::partial_trace_first(rho.matrix(), 4, 4)));
        trace_err =
            std::max(trace_err, oracle::max_abs_diff(oracle::trace_out_first(oracle::to_grid(after.matrix()), 4, 4),
                                                     linalg::partial_trace_first(after.matrix(), 4, 4)));
    }
    c.at_most("lueders_channel", channel_err, 1e-12);
    c.at_most("partial_trace_first", trace_err, 1e-12);
    return c;
}

Criterion information_witness() {
    Criterion c("receiver mutual information: adversarial search 500 decoders x 32 theta, unequal sanity case");
    c.at_most("max I(bit; outcome) bits", verify::adversarial_decoder_search(optics::theta_grid(32), 500, 0), 1e-12);

    const std::vector<std::vector<double>> cond{{1.0, 0.0}, {0.5, 0.5}};
    const double direct = entropy_bits({0.75, 0.25}) - 0.5 * (entropy_bits(cond[0]) + entropy_bits(cond[1]));
    const double computed = verify::mutual_information(cond);
    c.within("sanity I bits", computed, 0.3113, 1e-4);
    c.at_most("sanity vs direct entropy", std::abs(computed - direct), 1e-12);
    return c;
}

Criterion interference_contrast() {
    Criterion c("fringe visibility over 64 theta: single photon 1, entangled receiver 0");
    const auto grid = optics::theta_grid(64);
    c.within("single photon", optics::visibility(optics::InterferenceInput::single_photon_superposition, grid), 1.0,
             1e-10);
    c.within("entangled receiver", optics::visibility(optics::InterferenceInput::entangled_receiver, grid), 0.0,
             1e-10);
    return c;
}

Criterion non_vacuity() {
    Criterion c("post-selected collapse is caught: deviation > 0.1 on >= 95% of 100 random inputs");
    const Dims dims{4, 4};
    std::size_t hits = 0;
    double worst_mismatch = 0.0;
    const auto survey = verify::non_vacuity_survey(100, dims, 0, 0.1);
    for (std::size_t k = 0; k < 100; ++k) {
        const auto [rho, m] = verify::non_vacuity_instance(dims, 0, k);
        const auto collapsed = verify::post_selected_collapse(rho, m, 0);
        const double dev = oracle::max_abs_diff(oracle::trace_out_first(oracle::to_grid(collapsed.matrix()), 4, 4),
                                                linalg::partial_trace_first(rho.matrix(), 4, 4));
        hits += dev > 0.1 ? 1 : 0;
        worst_mismatch = std::max(worst_mismatch, std::abs(dev - survey.deviations[k]));
    }
    c.at_least("fraction detected", static_cast<double>(hits) / 100.0, 0.95);
    c.at_least("survey detection rate", survey.detection_rate(), 0.95);
    c.at_most("survey vs oracle deviation", worst_mismatch, 1e-12);
    return c;
}

Criterion determinism() {
    Criterion c("two identical verify runs write byte-identical JSON");
    const auto dir = std::filesystem::temp_directory_path() / "nosig_acceptance";
    std::filesystem::create_directories(dir);
    std::vector<std::string> bodies;
    int worst_code = 0;
    for (const char *name : {"first.json", "second.json"}) {
        const auto path = (dir / name).string();
        std::ostringstream out;
        std::ostringstream err;
        worst_code = std::max(worst_code, cli::run({"verify", "--seed", "7", "--format", "json", "--output", path}, out, err));
        std::ifstream in(path, std::ios::binary);
        std::ostringstream body;
        body << in.rdbuf();
        bodies.push_back(body.str());
    }
    std::filesystem::remove_all(dir);
    c.at_most("exit code", worst_code, 0.0);
    c.at_least("report bytes", static_cast<double>(bodies[0].size()), 1.0);
    c.at_least("identical", bodies[0] == bodies[1] ? 1.0 : 0.0, 1.0);
    return c;
}

}  // namespace

int main() {
    const std::vector<std::function<Criterion()>> criteria{
        measured_pair_mixture, phased_pair,    theorem_sweep, oracle_equivalence, information_witness,
        interference_contrast, non_vacuity,    determinism,
    };
    std::size_t failed = 0;
    for (const auto &make : criteria) {
        try {
            failed += make().report(std::cout) ? 0 : 1;
        } catch (const std::exception &e) {
            std::cout << "[FAIL] criterion threw: " << e.what() << "\n";
            ++failed;
        }
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " acceptance criteria passed\n";
    return failed == 0 ? 0 : 1;
}
