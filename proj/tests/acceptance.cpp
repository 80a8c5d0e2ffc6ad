/**
 * Copyright 2026 The bosoncert Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Acceptance runner: one PASS/FAIL line per criterion.
//
// Usage: bosoncert_acceptance [--expect-fail N]...
// Exit status is nonzero when a criterion fails without being listed, or
// when a listed criterion passes.

#include "bosoncert/certify.hpp"
#include "bosoncert/cli.hpp"
#include "bosoncert/figures.hpp"
#include "bosoncert/io.hpp"
#include "bosoncert/linalg.hpp"
#include "bosoncert/permanent.hpp"
#include "bosoncert/samplers.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

using namespace bosoncert;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void check(bool ok, const std::string &what) {
        if (!ok) {
            pass = false;
        }
        if (!detail.empty()) {
            detail += "; ";
        }
        detail += (ok ? "" : "!") + what;
    }
};

std::string fmt(double x) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.4g", x);
    return buffer;
}

InputConfig first_modes(int n) {
    std::vector<Mode> modes;
    for (int r = 1; r <= n; ++r) {
        modes.push_back(r);
    }
    return InputConfig(std::move(modes));
}

Outcome suppression_exactness() {
    Outcome out;
    for (int n = 2; n <= 5; ++n) {
        const auto cyc = make_cyclic_input(n, 2);
        const auto u = make_fourier(cyc.m);
        double worst = 0.0;
        std::uint64_t checked = 0;
        EventEnumerator it(n, cyc.m);
        do {
            if (is_forbidden(it.current(), n)) {
                worst = std::max(worst, boson_probability(u, cyc.input, it.current()));
                ++checked;
            }
        } while (it.advance());
        out.check(worst <= 1e-10, "n=" + std::to_string(n) + " max P over " + std::to_string(checked) +
                                      " forbidden = " + fmt(worst));
    }
    return out;
}

Outcome normalization() {
    Outcome out;
    for (const auto &[n, m] : {std::pair{2, 4}, std::pair{3, 9}, std::pair{4, 16}}) {
        const auto cyc = make_cyclic_input(n, 2);
        const auto haar = make_haar_random(m, 100 + n);
        const auto haar_in = first_modes(n);
        const auto f = make_fourier(m);
        double worst = 0.0;
        for (const auto &[u, in] : {std::pair{&f, &cyc.input}, std::pair{&haar, &haar_in}}) {
            double b = 0.0;
            double c = 0.0;
            double mis = 0.0;
            for (const auto &e : enumerate_events(n, m, kDefaultEventCap)) {
                b += boson_probability(*u, *in, e);
                c += classical_probability(*u, *in, e);
                mis += misaligned_probability(*u, *in, n, e);
            }
            worst = std::max({worst, std::abs(b - 1.0), std::abs(c - 1.0), std::abs(mis - 1.0)});
        }
        out.check(worst <= 1e-9, "(" + std::to_string(n) + "," + std::to_string(m) + ") max |sum-1| = " + fmt(worst));
    }
    return out;
}

Outcome permanent_equivalence() {
    Outcome out;
    std::mt19937_64 engine(2026);
    std::normal_distribution<double> g(0.0, 1.0);
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (int n = 2; n <= 8; ++n) {
        for (int t = 0; t < 200; ++t) {
            Eigen::MatrixXcd a(n, n);
            for (int r = 0; r < n; ++r) {
                for (int c = 0; c < n; ++c) {
                    const double re = g(engine);
                    a(r, c) = Complex(re, g(engine));
                }
            }
            const Complex naive = permanent_naive(a);
            worst = std::max(worst, std::abs(permanent_ryser(a) - naive) / std::abs(naive));
        }
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    out.check(worst <= 1e-10, "max rel err = " + fmt(worst));
    out.check(seconds < 10.0, "runtime " + fmt(seconds) + " s");
    return out;
}

Outcome hong_ou_mandel() {
    Outcome out;
    const auto bs = make_fourier(2);
    const InputConfig in({1, 2});
    const double coinc = boson_probability(bs, in, OccupationEvent(std::vector<Mode>{1, 2}));
    const double b11 = boson_probability(bs, in, OccupationEvent(std::vector<Mode>{1, 1}));
    const double b22 = boson_probability(bs, in, OccupationEvent(std::vector<Mode>{2, 2}));
    const double cl = classical_probability(bs, in, OccupationEvent(std::vector<Mode>{1, 2}));
    out.check(std::abs(coinc) <= 1e-12, "boson (1,2) = " + fmt(coinc));
    out.check(std::abs(b11 - 0.5) <= 1e-12 && std::abs(b22 - 0.5) <= 1e-12,
              "boson (1,1),(2,2) = " + fmt(b11) + "," + fmt(b22));
    out.check(std::abs(cl - 0.5) <= 1e-12, "classical (1,2) = " + fmt(cl));
    return out;
}

Outcome classical_violation() {
    Outcome out;
    for (int n = 2; n <= 5; ++n) {
        const auto cyc = make_cyclic_input(n, 2);
        const auto u = make_fourier(cyc.m);
        const double target = (n - 1.0) / n;
        const double exact = expected_violation_exact(
            [&](const OccupationEvent &e) { return classical_probability(u, cyc.input, e); }, n, cyc.m);
        const std::uint64_t shots = 100'000;
        const auto sampled = violation(sample_classical(u, cyc.input, shots, 500 + n));
        const double sigma = std::sqrt(target * (1.0 - target) / shots);
        const double z = (sampled.violation - target) / sigma;
        out.check(std::abs(exact - target) <= 1e-10, "n=" + std::to_string(n) + " exact " + fmt(exact));
        out.check(std::abs(z) <= 4.0, "sampled " + fmt(sampled.violation) + " (z=" + fmt(z) + ")");
    }
    return out;
}

Outcome meanfield_mimicry() {
    Outcome out;
    const std::uint64_t ensemble = 100;
    const std::uint64_t draws = 10'000;
    for (int n : {3, 4}) {
        const Mode m = static_cast<Mode>(n) * n;
        const auto in = first_modes(n);
        double boson = 0.0;
        double meanfield = 0.0;
        for (std::uint64_t e = 0; e < ensemble; ++e) {
            const auto u = make_haar_random(m, derive_seed(9000 + n, e));
            boson += witnesses_exact([&](const OccupationEvent &ev) { return boson_probability(u, in, ev); }, n, m)
                         .p1.value;
            meanfield += witnesses_meanfield(u, in, draws, derive_seed(7000 + n, e)).p1.value;
        }
        boson /= ensemble;
        meanfield /= ensemble;
        out.check(std::abs(meanfield - boson) <= 0.05,
                  "n=" + std::to_string(n) + " P1 B=" + fmt(boson) + " MF=" + fmt(meanfield));
    }
    const auto walk = make_walk_matrix(8, 8);
    for (int n : {3, 4}) {
        const auto in = make_adjacent_input(n, 8);
        const double cb =
            witnesses_exact([&](const OccupationEvent &ev) { return boson_probability(walk, in, ev); }, n, 8)
                .clouding->value;
        const double cc =
            witnesses_exact([&](const OccupationEvent &ev) { return classical_probability(walk, in, ev); }, n, 8)
                .clouding->value;
        const double cm = witnesses_meanfield(walk, in, draws, 8100 + n).clouding->value;
        out.check(std::abs(cm - cb) <= 0.05 && cc < cb,
                  "n=" + std::to_string(n) + " C B=" + fmt(cb) + " MF=" + fmt(cm) + " cl=" + fmt(cc));
    }
    return out;
}

Outcome perturbation_estimate() {
    Outcome out;
    const auto cyc = make_cyclic_input(3, 2);
    const auto f = make_fourier(9);
    const std::uint64_t draws = 400;
    for (double dev : {0.005, 0.01, 0.02, 0.03}) {
        const auto numeric = v_dev_numeric(f, cyc.input, dev, draws, 0, derive_seed(31, static_cast<Seed>(dev * 1e4)));
        const double estimate = *v_dev_estimate(3, 9, dev).closed_form;
        const double z = (numeric.value - estimate) / numeric.std_error;
        out.check(std::abs(z) <= 2.0, "d=" + fmt(dev) + " num=" + fmt(numeric.value) + "+-" +
                                          fmt(numeric.std_error) + " est=" + fmt(estimate) + " z=" + fmt(z));
    }
    for (double dev : {0.3, 0.5}) {
        const auto numeric = v_dev_numeric(f, cyc.input, dev, draws, 0, derive_seed(37, static_cast<Seed>(dev * 1e4)));
        const double estimate = *v_dev_estimate(3, 9, dev).closed_form;
        out.check(estimate < numeric.value - 2.0 * numeric.std_error,
                  "d=" + fmt(dev) + " underpredicts: est=" + fmt(estimate) + " num=" + fmt(numeric.value));
    }
    return out;
}

Outcome distinguishability_bound() {
    Outcome out;
    const auto cyc = make_cyclic_input(3, 2);
    const auto f = make_fourier(9);
    Eigen::MatrixXcd overlaps = Eigen::MatrixXcd::Ones(3, 3);
    overlaps(0, 2) = overlaps(2, 0) = overlaps(1, 2) = overlaps(2, 1) = 0.0;
    const auto coeffs = distinguishability_coeffs(overlaps);
    const double bound = violation_bound_partial(coeffs, 3);
    const double v = expected_violation_exact(
        [&](const OccupationEvent &e) { return misaligned_probability(f, cyc.input, 3, e); }, 3, 9);
    out.check(indistinguishable_weight(coeffs) <= 1e-12, "weight = " + fmt(indistinguishable_weight(coeffs)));
    out.check(v <= bound + 1e-10, "misaligned V = " + fmt(v) + " <= bound " + fmt(bound));
    const double ideal = expected_violation_exact(
        [&](const OccupationEvent &e) { return boson_probability(f, cyc.input, e); }, 3, 9);
    out.check(std::abs(ideal) <= 1e-10, "indistinguishable V = " + fmt(ideal));
    return out;
}

Outcome confidence_arithmetic(const std::filesystem::path &dir) {
    Outcome out;
    out.check(required_runs(10, 1e-6) == 6, "required_runs(10, 1e-6) = " + std::to_string(required_runs(10, 1e-6)));

    // Six suppression-law compliant events for n = 10 on m = 100 modes.
    std::vector<OccupationEvent> events;
    std::uint64_t shot = 0;
    while (events.size() < 6) {
        const auto batch = sample_uniform(10, 100, 1, derive_seed(41, shot++));
        if (!is_forbidden(batch.events.front(), 10)) {
            events.push_back(batch.events.front());
        }
    }
    const auto path = dir / "clean_n10.jsonl";
    {
        std::ofstream file(path);
        write_events_jsonl(file, events);
    }
    std::ostringstream sout;
    std::ostringstream serr;
    const int rc = cli::run({"certify", path.string(), "--n", "10", "--model", "boson"}, sout, serr);
    const auto doc = nlohmann::json::parse(sout.str());
    const double fap = doc.at("false_accept_prob").get<double>();
    out.check(rc == 0 && std::abs(fap - 1e-6) <= 1e-18, "certify false_accept_prob = " + fmt(fap));

    // End-to-end boson batch through the driver.
    const auto batch_path = dir / "boson_n3.jsonl";
    std::ostringstream s1;
    const int rc1 = cli::run({"sample", "--model", "boson", "--fourier", "--n", "3", "--p", "2", "--shots", "6",
                              "--seed", "7", "--out", batch_path.string()},
                             s1, serr);
    std::ostringstream s2;
    const int rc2 = cli::run({"certify", batch_path.string()}, s2, serr);
    const auto report = nlohmann::json::parse(s2.str());
    const double fap3 = report.at("false_accept_prob").get<double>();
    out.check(rc1 == 0 && rc2 == 0 && std::abs(fap3 - std::pow(3.0, -6)) <= 1e-15,
              "boson n=3 R=6 false_accept_prob = " + fmt(fap3));
    return out;
}

Outcome figure_determinism(const std::filesystem::path &dir) {
    Outcome out;
    for (const char *which : {"fig2a", "fig2b", "fig3", "fig4"}) {
        std::string first;
        for (int attempt = 0; attempt < 2; ++attempt) {
            const auto path = dir / (std::string(which) + "_" + std::to_string(attempt) + ".csv");
            std::ostringstream sout;
            std::ostringstream serr;
            const int rc = cli::run({"figure", which, "--seed", "20260101", "--out", path.string()}, sout, serr);
            std::ifstream file(path, std::ios::binary);
            std::stringstream text;
            text << file.rdbuf();
            if (rc != 0) {
                out.check(false, std::string(which) + " exit " + std::to_string(rc));
                break;
            }
            if (attempt == 0) {
                first = text.str();
            } else {
                out.check(!first.empty() && text.str() == first,
                          std::string(which) + " " + std::to_string(first.size()) + " bytes identical");
            }
        }
    }
    return out;
}

}  // namespace

int main(int argc, char **argv) {
    std::set<int> expect_fail;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--expect-fail" && i + 1 < argc) {
            expect_fail.insert(std::stoi(argv[++i]));
        } else {
            std::cerr << "usage: " << argv[0] << " [--expect-fail N]...\n";
            return 2;
        }
    }
    const auto dir = std::filesystem::temp_directory_path() / "bosoncert_acceptance";
    std::filesystem::create_directories(dir);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"suppression law exactness", suppression_exactness},
        {"normalization", normalization},
        {"permanent oracle equivalence", permanent_equivalence},
        {"Hong-Ou-Mandel instance", hong_ou_mandel},
        {"classical violation", classical_violation},
        {"mean-field mimicry", meanfield_mimicry},
        {"perturbation estimate", perturbation_estimate},
        {"distinguishability bound", distinguishability_bound},
        {"confidence arithmetic", [&] { return confidence_arithmetic(dir); }},
        {"figure determinism", [&] { return figure_determinism(dir); }},
    };

    int unexpected = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        const auto start = std::chrono::steady_clock::now();
        Outcome result;
        try {
            result = criteria[i].second();
        } catch (const std::exception &e) {
            result.check(false, std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool expected = expect_fail.count(id) > 0;
        std::cout << (result.pass ? "PASS" : "FAIL") << " [" << id << "] " << criteria[i].first << " ("
                  << fmt(seconds) << " s): " << result.detail;
        if (expected) {
            std::cout << (result.pass ? " [listed as expected failure]" : " [expected failure]");
        }
        std::cout << std::endl;
        if (result.pass == expected) {
            ++unexpected;
        }
    }
    std::filesystem::remove_all(dir);
    return unexpected == 0 ? 0 : 1;
}
