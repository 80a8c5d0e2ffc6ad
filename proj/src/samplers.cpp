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

#include "bosoncert/samplers.hpp"

#include "bosoncert/errors.hpp"
#include "bosoncert/parallel.hpp"
#include "bosoncert/permanent.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

namespace bosoncert {

namespace {

constexpr std::uint64_t kFrozenPhaseStream = std::numeric_limits<std::uint64_t>::max();

void check_shots(std::uint64_t shots) {
    detail::require(shots >= 1, "at least one shot is required");
}

void check_input(const ModeUnitary &u, const InputConfig &input) {
    detail::require(input.particles() >= 1, "input must hold at least one particle");
    input.check_modes(u.dim());
}

// Inverse-CDF tables for each input particle's row |U(j, .)|^2.
std::vector<std::vector<double>> row_cumulatives(const ModeUnitary &u, const InputConfig &input) {
    std::vector<std::vector<double>> out;
    out.reserve(input.modes.size());
    for (Mode j : input.modes) {
        std::vector<double> cdf(static_cast<std::size_t>(u.dim()));
        double acc = 0.0;
        for (Mode q = 1; q <= u.dim(); ++q) {
            acc += std::norm(u.at(j, q));
            cdf[static_cast<std::size_t>(q - 1)] = acc;
        }
        if (std::abs(acc - 1.0) > kUnitarityTolerance) {
            throw PreconditionError("row " + std::to_string(j) + " of U is not normalized (norm^2 = " +
                                    std::to_string(acc) + ")");
        }
        out.push_back(std::move(cdf));
    }
    return out;
}

SampleBatch make_batch(Model model, Seed seed, int n, Mode m, std::optional<MatrixLabel> label,
                       std::vector<OccupationEvent> events) {
    SampleBatch batch;
    batch.model = model;
    batch.seed = seed;
    batch.n = n;
    batch.m = m;
    batch.matrix_label = label;
    batch.events = std::move(events);
    return batch;
}

// n i.i.d. draws from a single-particle cumulative distribution.
OccupationEvent draw_iid(std::span<const double> cumulative, int n, std::mt19937_64 &engine) {
    std::vector<Mode> modes(static_cast<std::size_t>(n));
    for (auto &k : modes) {
        k = static_cast<Mode>(draw_index(cumulative, uniform01(engine))) + 1;
    }
    return OccupationEvent(std::move(modes));
}

}  // namespace

std::string_view to_string(Model model) {
    switch (model) {
    case Model::uniform:
        return "uniform";
    case Model::classical:
        return "classical";
    case Model::meanfield:
        return "meanfield";
    case Model::boson:
        return "boson";
    case Model::misaligned:
        return "misaligned";
    }
    return "uniform";
}

Model parse_model(std::string_view text) {
    for (auto model : {Model::uniform, Model::classical, Model::meanfield, Model::boson, Model::misaligned}) {
        if (to_string(model) == text) {
            return model;
        }
    }
    throw PreconditionError("unknown model '" + std::string(text) + "'");
}

std::size_t draw_index(std::span<const double> cumulative, double u) {
    assert(!cumulative.empty());
    const double target = u * cumulative.back();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), target);
    const auto idx = static_cast<std::size_t>(it - cumulative.begin());
    return std::min(idx, cumulative.size() - 1);
}

const OccupationEvent &ProbabilityTable::draw(double u) const {
    return events[draw_index(cumulative, u)];
}

ProbabilityTable build_probability_table(const EventProbability &probability, int n, Mode m,
                                         std::uint64_t cap, unsigned threads) {
    ProbabilityTable table;
    try {
        table.events = enumerate_events(n, m, cap);
    } catch (const CapExceededError &err) {
        throw CapExceededError(std::string(err.what()) +
                                   "; exact sampling needs the full event space, reduce n or m",
                               err.required(), err.cap());
    }
    table.probabilities.resize(table.events.size());
    parallel_for(
        table.events.size(),
        [&](std::size_t i) { table.probabilities[i] = probability(table.events[i]); }, threads);
    table.cumulative.resize(table.events.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < table.events.size(); ++i) {
        acc += table.probabilities[i];
        table.cumulative[i] = acc;
    }
    return table;
}

std::vector<OccupationEvent> sample_from_table(const ProbabilityTable &table, std::uint64_t shots,
                                               Seed seed, unsigned threads) {
    check_shots(shots);
    detail::require(table.total() > 0.0, "probability table carries no mass");
    std::vector<OccupationEvent> out(shots);
    parallel_for(
        shots,
        [&](std::size_t s) {
            auto engine = stream_engine(seed, s);
            out[s] = table.draw(uniform01(engine));
        },
        threads);
    return out;
}

SampleBatch sample_uniform(int n, Mode m, std::uint64_t shots, Seed seed, unsigned threads) {
    check_shots(shots);
    detail::require(n >= 1 && m >= 1, "uniform sampler needs n >= 1 and m >= 1");
    const auto total = multiset_count(n, m);
    if (!total) {
        throw CapExceededError("event space too large to index in 64 bits",
                               std::numeric_limits<std::uint64_t>::max(),
                               std::numeric_limits<std::uint64_t>::max());
    }
    std::vector<OccupationEvent> events(shots);
    parallel_for(
        shots,
        [&](std::size_t s) {
            auto engine = stream_engine(seed, s);
            std::uniform_int_distribution<std::uint64_t> pick(0, *total - 1);
            events[s] = unrank_event(pick(engine), n, m);
        },
        threads);
    return make_batch(Model::uniform, seed, n, m, std::nullopt, std::move(events));
}

SampleBatch sample_classical(const ModeUnitary &u, const InputConfig &input, std::uint64_t shots,
                             Seed seed, unsigned threads) {
    check_shots(shots);
    check_input(u, input);
    const auto rows = row_cumulatives(u, input);
    std::vector<OccupationEvent> events(shots);
    parallel_for(
        shots,
        [&](std::size_t s) {
            auto engine = stream_engine(seed, s);
            std::vector<Mode> modes;
            modes.reserve(rows.size());
            for (const auto &cdf : rows) {
                modes.push_back(static_cast<Mode>(draw_index(cdf, uniform01(engine))) + 1);
            }
            events[s] = OccupationEvent(std::move(modes));
        },
        threads);
    return make_batch(Model::classical, seed, input.particles(), u.dim(), u.label(), std::move(events));
}

std::vector<double> draw_phases(int n, std::mt19937_64 &engine) {
    std::vector<double> phases(static_cast<std::size_t>(n));
    for (auto &theta : phases) {
        theta = 2.0 * std::numbers::pi * uniform01(engine);
    }
    return phases;
}

std::vector<double> meanfield_distribution(const ModeUnitary &u, const InputConfig &input,
                                           std::span<const double> phases) {
    detail::require(phases.size() == input.modes.size(), "one phase per input particle");
    const auto n = static_cast<double>(input.modes.size());
    std::vector<Complex> weights;
    weights.reserve(phases.size());
    for (double theta : phases) {
        weights.push_back(std::polar(1.0, theta));
    }
    std::vector<double> p(static_cast<std::size_t>(u.dim()));
    for (Mode q = 1; q <= u.dim(); ++q) {
        Complex amp(0.0, 0.0);
        for (std::size_t r = 0; r < weights.size(); ++r) {
            amp += weights[r] * u.at(input.modes[r], q);
        }
        p[static_cast<std::size_t>(q - 1)] = std::norm(amp) / n;
    }
    return p;
}

SampleBatch sample_meanfield(const ModeUnitary &u, const InputConfig &input, std::uint64_t shots,
                             Seed seed, bool freeze_phases, unsigned threads) {
    check_shots(shots);
    check_input(u, input);
    row_cumulatives(u, input);
    const int n = input.particles();

    std::vector<double> frozen_cdf;
    if (freeze_phases) {
        auto engine = stream_engine(seed, kFrozenPhaseStream);
        const auto p = meanfield_distribution(u, input, draw_phases(n, engine));
        frozen_cdf.resize(p.size());
        std::partial_sum(p.begin(), p.end(), frozen_cdf.begin());
    }

    std::vector<OccupationEvent> events(shots);
    parallel_for(
        shots,
        [&](std::size_t s) {
            auto engine = stream_engine(seed, s);
            if (freeze_phases) {
                events[s] = draw_iid(frozen_cdf, n, engine);
                return;
            }
            const auto p = meanfield_distribution(u, input, draw_phases(n, engine));
            std::vector<double> cdf(p.size());
            std::partial_sum(p.begin(), p.end(), cdf.begin());
            assert(std::abs(cdf.back() - 1.0) <= 1e-10);
            events[s] = draw_iid(cdf, n, engine);
        },
        threads);
    return make_batch(Model::meanfield, seed, n, u.dim(), u.label(), std::move(events));
}

SampleBatch sample_boson(const ModeUnitary &u, const InputConfig &input, std::uint64_t shots,
                         Seed seed, std::uint64_t cap, unsigned threads) {
    check_shots(shots);
    check_input(u, input);
    detail::require(input.indistinguishable(), "boson sampler needs identical particles");
    const auto table = build_probability_table(
        [&](const OccupationEvent &e) { return boson_probability(u, input, e); }, input.particles(),
        u.dim(), cap, threads);
    return make_batch(Model::boson, seed, input.particles(), u.dim(), u.label(),
                      sample_from_table(table, shots, seed, threads));
}

SampleBatch sample_misaligned(const ModeUnitary &u, const InputConfig &input, int bad,
                              std::uint64_t shots, Seed seed, std::uint64_t cap, unsigned threads) {
    check_shots(shots);
    check_input(u, input);
    detail::require(input.particles() >= 2, "misaligned model needs at least two particles");
    detail::require(bad >= 1 && bad <= input.particles(), "distinguishable particle index out of range");
    const auto table = build_probability_table(
        [&](const OccupationEvent &e) { return misaligned_probability(u, input, bad, e); },
        input.particles(), u.dim(), cap, threads);
    return make_batch(Model::misaligned, seed, input.particles(), u.dim(), u.label(),
                      sample_from_table(table, shots, seed, threads));
}

}  // namespace bosoncert
