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

#ifndef BOSONCERT_CERTIFY_HPP
#define BOSONCERT_CERTIFY_HPP

#include "bosoncert/events.hpp"
#include "bosoncert/linalg.hpp"
#include "bosoncert/samplers.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace bosoncert {

/// Value with one-standard-error uncertainty.
struct Estimate {
    double value = 0.0;
    double std_error = 0.0;
};

// ---------------------------------------------------------------------------
// Suppression law

/// True iff the mode-index sum is nonzero mod n, i.e. the event is forbidden
/// for the Fourier interferometer with cyclic input.
bool is_forbidden(const OccupationEvent &e, int n);

struct ViolationReport {
    std::uint64_t forbidden = 0;
    std::uint64_t runs = 0;
    /// forbidden / runs.
    double violation = 0.0;
    /// n^-runs; only reported when no forbidden event was observed.
    std::optional<double> false_accept_prob;
    /// Generating model, when known.
    std::optional<Model> model;
    int n = 0;
};

ViolationReport violation(std::span<const OccupationEvent> events, int n,
                          std::optional<Model> model = std::nullopt);
ViolationReport violation(const SampleBatch &batch);

/// Chance that `runs` events from a structureless sampler all pass: n^-runs.
double false_accept_probability(int n, std::uint64_t runs);

/// Smallest R with n^-R <= alpha, alpha in (0, 1].
std::uint64_t required_runs(int n, double alpha);

/// Number of n-particle events over m modes whose index sum is 0 mod n.
/// Nullopt when the count does not fit in 64 bits.
std::optional<std::uint64_t> allowed_event_count(int n, Mode m);
std::optional<std::uint64_t> forbidden_event_count(int n, Mode m);

/// `count` distinct forbidden events chosen uniformly at random; every
/// forbidden event when `count` reaches the forbidden total.
std::vector<OccupationEvent> random_forbidden_events(int n, Mode m, std::uint64_t count, Seed seed);

/// Infinite-shot violation: total probability of the forbidden events.
double expected_violation_exact(const EventProbability &probability, int n, Mode m,
                                std::uint64_t cap = kDefaultEventCap, unsigned threads = 0);

/// Violation estimated from `subset` random forbidden events, rescaled to the
/// full forbidden count.
Estimate expected_violation_sampled(const EventProbability &probability, int n, Mode m,
                                    std::uint64_t subset, Seed seed, unsigned threads = 0);

/// Phase-averaged violation of the mean-field model.
Estimate meanfield_violation(const ModeUnitary &u, const InputConfig &input, std::uint64_t phase_draws,
                             Seed seed, unsigned threads = 0);

// ---------------------------------------------------------------------------
// Coarse-grained witnesses

struct WitnessSummary {
    /// Probability of a collision-free outcome.
    Estimate p1;
    /// Probability that all particles leave in the same half; only for even m.
    std::optional<Estimate> clouding;
    std::vector<double> mean_occupations;
    std::vector<double> mean_occupation_stderr;
};

/// <n_k> = sum_l |U(j_l, k)|^2.
std::vector<double> mean_occupation_formula(const ModeUnitary &u, const InputConfig &input);

/// Empirical witnesses with binomial / sample standard errors.
WitnessSummary witnesses(const SampleBatch &batch);

/// Witnesses of an exactly known distribution (zero standard errors).
WitnessSummary witnesses_exact(const EventProbability &probability, int n, Mode m,
                               std::uint64_t cap = kDefaultEventCap, unsigned threads = 0);

/// Mean-field witnesses, exact for each phase setting and averaged over
/// `phase_draws` settings; standard errors reflect the phase average only.
WitnessSummary witnesses_meanfield(const ModeUnitary &u, const InputConfig &input,
                                   std::uint64_t phase_draws, Seed seed, unsigned threads = 0);

/// Probability that n i.i.d. draws from p are pairwise distinct.
double collision_free_probability(std::span<const double> p, int n);

// ---------------------------------------------------------------------------
// Partial distinguishability

/// Coefficients c(r, d) of each internal state |t_r> in the orthonormal basis
/// obtained by Gram-Schmidt from |t_1>, |t_2>, ...; `overlaps(r, s)` = <t_r|t_s>.
/// Lower triangular with unit row norms. Rejects non-Hermitian, non-unit-diagonal
/// or non-positive-semidefinite input.
Eigen::MatrixXcd distinguishability_coeffs(const Eigen::MatrixXcd &overlaps);

/// prod_{q >= 2} |c(q, 1)|^2: weight of the perfectly indistinguishable term.
double indistinguishable_weight(const Eigen::MatrixXcd &coeffs);

/// Upper-bound estimate (n-1)/n (1 - prod_{q >= 2} |c(q, 1)|^2).
double violation_bound_partial(const Eigen::MatrixXcd &coeffs, int n);
double violation_bound_partial(double indistinguishable_weight, int n);

// ---------------------------------------------------------------------------
// Matrix inaccuracies

/// The first-order estimate is trusted only for avg_dev < 1/n.
bool in_small_deviation_regime(int n, double avg_dev);

/// C(m+n-1, n) as a double.
double event_space_size(int n, Mode m);

/// First-order forbidden-event probability n n! / m^n * avg_dev^2.
double p_approx(int n, Mode m, double avg_dev);

struct DeviationEstimate {
    /// (n-1)/n * C(m+n-1, n) * p_approx.
    double general = 0.0;
    /// sqrt(e) (n-1) avg_dev^2, reported when m = n^2.
    std::optional<double> closed_form;
    bool small_deviation = true;
};

DeviationEstimate v_dev_estimate(int n, Mode m, double avg_dev);

/// V_partial + V_dev, treating both deteriorations as independent.
double total_violation_estimate(double v_partial, double v_dev);

/// Total probability of the forbidden events for a (possibly non-unitary)
/// matrix, over all of them when `subset` is 0 or covers the forbidden count,
/// otherwise over a random subset rescaled to the full count.
Estimate forbidden_mass(const ModeUnitary &w, const InputConfig &input, std::uint64_t subset, Seed seed,
                        std::uint64_t cap = kDefaultEventCap, unsigned threads = 0);

/// Mean forbidden mass over `draws` independent perturbations of `u` with
/// average deviation `avg_dev`; draw d uses seed derive_seed(seed, d).
Estimate v_dev_numeric(const ModeUnitary &u, const InputConfig &input, double avg_dev, std::uint64_t draws,
                       std::uint64_t subset, Seed seed, MagnitudeLaw law = MagnitudeLaw::half_normal,
                       std::uint64_t cap = kDefaultEventCap, unsigned threads = 0);

}  // namespace bosoncert

#endif  // BOSONCERT_CERTIFY_HPP
