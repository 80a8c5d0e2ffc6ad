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

#ifndef BOSONCERT_SAMPLERS_HPP
#define BOSONCERT_SAMPLERS_HPP

#include "bosoncert/events.hpp"
#include "bosoncert/linalg.hpp"
#include "bosoncert/rng.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

namespace bosoncert {

enum class Model { uniform, classical, meanfield, boson, misaligned };

std::string_view to_string(Model model);
Model parse_model(std::string_view text);

/// Default ceiling on exhaustively enumerated event spaces.
inline constexpr std::uint64_t kDefaultEventCap = 2'000'000;

/// A reproducible stream of output events from one model.
struct SampleBatch {
    Model model = Model::uniform;
    std::vector<OccupationEvent> events;
    Seed seed = 0;
    int n = 0;
    Mode m = 0;
    /// Absent for the uniform model, which ignores the interferometer.
    std::optional<MatrixLabel> matrix_label;

    std::uint64_t shots() const noexcept { return events.size(); }
};

using EventProbability = std::function<double(const OccupationEvent &)>;

/// Exact distribution over the full event space, stored for inverse-CDF draws.
struct ProbabilityTable {
    std::vector<OccupationEvent> events;
    std::vector<double> probabilities;
    /// Running sums of `probabilities`; the last entry is the total mass.
    std::vector<double> cumulative;

    double total() const noexcept { return cumulative.empty() ? 0.0 : cumulative.back(); }
    /// Event at quantile u in [0, 1) of the (total-normalized) distribution.
    const OccupationEvent &draw(double u) const;
};

/// Evaluates `probability` on every event; CapExceededError past `cap`.
ProbabilityTable build_probability_table(const EventProbability &probability, int n, Mode m,
                                         std::uint64_t cap, unsigned threads = 0);

/// Index drawn from cumulative weights by inverse CDF.
std::size_t draw_index(std::span<const double> cumulative, double u);

/// Every multiset equally likely; U and the input are not consulted.
SampleBatch sample_uniform(int n, Mode m, std::uint64_t shots, Seed seed, unsigned threads = 0);

/// Each particle routed independently with probability |U(j, k)|^2.
SampleBatch sample_classical(const ModeUnitary &u, const InputConfig &input, std::uint64_t shots,
                             Seed seed, unsigned threads = 0);

/// Single-particle distribution p_q = |sum_r e^{i theta_r} U(j_r, q)|^2 / n.
std::vector<double> meanfield_distribution(const ModeUnitary &u, const InputConfig &input,
                                           std::span<const double> phases);

/// Draws n phases uniformly on [0, 2 pi).
std::vector<double> draw_phases(int n, std::mt19937_64 &engine);

/// Mean-field sampler. Phases are redrawn every shot unless `freeze_phases`,
/// in which case one phase setting (from a dedicated stream) serves all shots.
SampleBatch sample_meanfield(const ModeUnitary &u, const InputConfig &input, std::uint64_t shots,
                             Seed seed, bool freeze_phases = false, unsigned threads = 0);

/// Exact boson sampler: enumerates the event space once, then draws by inverse CDF.
SampleBatch sample_boson(const ModeUnitary &u, const InputConfig &input, std::uint64_t shots,
                         Seed seed, std::uint64_t cap = kDefaultEventCap, unsigned threads = 0);

/// As sample_boson with particle `bad` (1-based) fully distinguishable.
SampleBatch sample_misaligned(const ModeUnitary &u, const InputConfig &input, int bad,
                              std::uint64_t shots, Seed seed, std::uint64_t cap = kDefaultEventCap,
                              unsigned threads = 0);

/// Draws `shots` events from a prebuilt table (stream s = shot s).
std::vector<OccupationEvent> sample_from_table(const ProbabilityTable &table, std::uint64_t shots,
                                               Seed seed, unsigned threads = 0);

}  // namespace bosoncert

#endif  // BOSONCERT_SAMPLERS_HPP
