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

#include "bosoncert/certify.hpp"
#include "bosoncert/errors.hpp"
#include "bosoncert/io.hpp"
#include "bosoncert/linalg.hpp"
#include "bosoncert/permanent.hpp"
#include "bosoncert/samplers.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>

using namespace bosoncert;

namespace {

double frequency(const SampleBatch &batch, const std::vector<Mode> &modes) {
    const OccupationEvent target(modes);
    std::uint64_t hits = 0;
    for (const auto &e : batch.events) {
        hits += (e == target) ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(batch.shots());
}

// Allowed deviation of an empirical frequency from p at 4 sigma.
double four_sigma(double p, std::uint64_t shots) {
    return 4.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(shots));
}

OccupationEvent ev(std::vector<Mode> k) {
    return OccupationEvent(std::move(k));
}

}  // namespace

TEST_CASE("uniform sampler") {
    const auto one = sample_uniform(1, 2, 100000, 1);
    CHECK(one.shots() == 100000);
    CHECK(std::abs(frequency(one, {1}) - 0.5) <= four_sigma(0.5, 100000));

    const auto two = sample_uniform(2, 2, 90000, 2);
    for (const auto &modes : {std::vector<Mode>{1, 1}, std::vector<Mode>{1, 2}, std::vector<Mode>{2, 2}}) {
        CHECK(std::abs(frequency(two, modes) - 1.0 / 3.0) <= four_sigma(1.0 / 3.0, 90000));
    }
    const auto again = sample_uniform(2, 2, 90000, 2);
    CHECK(again.events == two.events);
    CHECK(sample_uniform(2, 2, 3, 9).shots() == 3);
    CHECK_THROWS_AS(sample_uniform(2, 2, 0, 9), PreconditionError);
}

TEST_CASE("uniform sampler reaches the forbidden-multiset fraction") {
    const auto batch = sample_uniform(3, 9, 100000, 5);
    const double p = static_cast<double>(*forbidden_event_count(3, 9)) / 165.0;
    CHECK(std::abs(violation(batch).violation - p) <= four_sigma(p, 100000));
}

TEST_CASE("classical sampler") {
    const auto u = make_haar_random(4, 77);
    const auto single = sample_classical(u, InputConfig({2}), 100000, 3);
    for (Mode k = 1; k <= 4; ++k) {
        const double p = std::norm(u.at(2, k));
        CHECK(std::abs(frequency(single, {k}) - p) <= four_sigma(p, 100000));
    }
    const auto hom = sample_classical(make_fourier(2), InputConfig({1, 2}), 100000, 4);
    CHECK(std::abs(frequency(hom, {1, 2}) - 0.5) <= four_sigma(0.5, 100000));

    const auto cyc = make_cyclic_input(3, 2);
    const auto batch = sample_classical(make_fourier(9), cyc.input, 100000, 5);
    const auto summary = witnesses(batch);
    for (Mode q = 0; q < 9; ++q) {
        CHECK(std::abs(summary.mean_occupations[q] - 3.0 / 9.0) <= 4.0 * summary.mean_occupation_stderr[q]);
    }

    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2) * 1.5;
    CHECK_THROWS_AS(sample_classical(ModeUnitary(bad, MatrixLabel::perturbed), InputConfig({1}), 10, 1),
                    PreconditionError);
}

TEST_CASE("mean-field distribution sums to one and reduces to classical for n=1") {
    const auto u = make_haar_random(6, 8);
    const InputConfig in({1, 3, 4});
    std::mt19937_64 engine(1);
    for (int t = 0; t < 50; ++t) {
        const auto p = meanfield_distribution(u, in, draw_phases(3, engine));
        double s = 0.0;
        for (double x : p) {
            s += x;
        }
        CHECK(std::abs(s - 1.0) < 1e-10);
    }
    const std::vector<double> theta{1.234};
    const auto p1 = meanfield_distribution(u, InputConfig({5}), theta);
    for (Mode q = 1; q <= 6; ++q) {
        CHECK(p1[q - 1] == doctest::Approx(std::norm(u.at(5, q))).epsilon(1e-13));
    }
}

TEST_CASE("mean-field HOM coincidence equals the phase-averaged quadrature") {
    const auto bs = make_fourier(2);
    const InputConfig in({1, 2});
    // P1(theta1, theta2) depends on the difference only.
    const double expected = oracle::simpson(
                                [&](double delta) {
                                    const std::vector<double> phases{0.0, delta};
                                    const auto p = meanfield_distribution(bs, in, phases);
                                    return 2.0 * p[0] * p[1];
                                },
                                0.0, 2.0 * std::numbers::pi, 2000) /
                            (2.0 * std::numbers::pi);
    CHECK(expected == doctest::Approx(0.25).epsilon(1e-9));
    const std::uint64_t shots = 100000;
    const auto batch = sample_meanfield(bs, in, shots, 6);
    CHECK(std::abs(frequency(batch, {1, 2}) - expected) <= four_sigma(expected, shots));
    CHECK(witnesses_meanfield(bs, in, 20000, 6).p1.value == doctest::Approx(expected).epsilon(0.03));
}

TEST_CASE("mean-field with frozen phases is i.i.d. from one distribution") {
    const auto u = make_fourier(4);
    const InputConfig in({1, 3});
    const auto a = sample_meanfield(u, in, 2000, 10, true);
    const auto b = sample_meanfield(u, in, 2000, 10, true);
    CHECK(a.events == b.events);
    CHECK(a.events != sample_meanfield(u, in, 2000, 10, false).events);
}

TEST_CASE("boson sampler") {
    const auto bs = make_fourier(2);
    const auto hom = sample_boson(bs, InputConfig({1, 2}), 100000, 12);
    CHECK(frequency(hom, {1, 2}) == 0.0);
    CHECK(std::abs(frequency(hom, {1, 1}) - 0.5) <= four_sigma(0.5, 100000));

    const auto cyc = make_cyclic_input(3, 2);
    const auto batch = sample_boson(make_fourier(9), cyc.input, 100000, 13);
    CHECK(violation(batch).forbidden == 0);

    const auto u = make_haar_random(5, 2);
    const auto single = sample_boson(u, InputConfig({4}), 50000, 14);
    for (Mode k = 1; k <= 5; ++k) {
        const double p = std::norm(u.at(4, k));
        CHECK(std::abs(frequency(single, {k}) - p) <= four_sigma(p, 50000));
    }

    try {
        sample_boson(make_fourier(16), make_cyclic_input(4, 2).input, 10, 1, 100);
        FAIL("expected cap error");
    } catch (const CapExceededError &err) {
        CHECK(err.required() == 3876);
        CHECK(std::string(err.what()).find("reduce n or m") != std::string::npos);
    }
}

TEST_CASE("misaligned sampler") {
    const auto hom = sample_misaligned(make_fourier(2), InputConfig({1, 2}), 2, 100000, 15);
    CHECK(std::abs(frequency(hom, {1, 2}) - 0.5) <= four_sigma(0.5, 100000));

    const auto cyc = make_cyclic_input(3, 2);
    const auto f = make_fourier(9);
    const auto batch = sample_misaligned(f, cyc.input, 3, 100000, 16);
    const double exact = 2.0 / 3.0;
    CHECK(std::abs(violation(batch).violation - exact) <= four_sigma(exact, 100000));
    // Relabeling which identical particle is distinguishable does not change the table.
    for (const auto &e : enumerate_events(3, 9, 1000)) {
        const double p1 = misaligned_probability(f, cyc.input, 1, e);
        CHECK(misaligned_probability(f, cyc.input, 2, e) == doctest::Approx(p1).epsilon(1e-10).scale(1e-12));
    }
    CHECK_THROWS_AS(sample_misaligned(f, cyc.input, 0, 10, 1), PreconditionError);
}

TEST_CASE("batches do not depend on the thread count") {
    const auto u = make_haar_random(6, 21);
    const InputConfig in({1, 2, 3});
    CHECK(sample_uniform(3, 6, 5000, 1, 1).events == sample_uniform(3, 6, 5000, 1, 4).events);
    CHECK(sample_classical(u, in, 5000, 1, 1).events == sample_classical(u, in, 5000, 1, 3).events);
    CHECK(sample_meanfield(u, in, 5000, 1, false, 1).events == sample_meanfield(u, in, 5000, 1, false, 5).events);
    CHECK(sample_boson(u, in, 5000, 1, kDefaultEventCap, 1).events ==
          sample_boson(u, in, 5000, 1, kDefaultEventCap, 2).events);
}

TEST_CASE("models parse from text") {
    for (auto m : {Model::uniform, Model::classical, Model::meanfield, Model::boson, Model::misaligned}) {
        CHECK(parse_model(to_string(m)) == m);
    }
    CHECK_THROWS_AS(parse_model("fermion"), PreconditionError);
}

TEST_CASE("draw_index handles the edges") {
    const std::vector<double> cdf{0.25, 0.25, 1.0};
    CHECK(draw_index(cdf, 0.0) == 0);
    CHECK(draw_index(cdf, 0.25) == 2);
    CHECK(draw_index(cdf, 0.999999) == 2);
}
