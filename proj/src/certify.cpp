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
#include "bosoncert/parallel.hpp"
#include "bosoncert/permanent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <unordered_set>

namespace bosoncert {

namespace {

using Wide = unsigned __int128;
constexpr Wide kWideLimit = std::numeric_limits<std::uint64_t>::max();

// Mean and standard error of independent per-draw values, summed in index order.
Estimate mean_and_error(std::span<const double> values) {
    Estimate out;
    if (values.empty()) {
        return out;
    }
    const auto count = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) {
        sum += v;
    }
    out.value = sum / count;
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) {
            ss += (v - out.value) * (v - out.value);
        }
        out.std_error = std::sqrt(ss / (count - 1.0) / count);
    }
    return out;
}

// Number of modes q in 1..m with q = r (mod n).
std::uint64_t residue_class_size(Mode m, int n, int r) {
    if (r == 0) {
        return static_cast<std::uint64_t>(m / n);
    }
    return m >= r ? static_cast<std::uint64_t>((m - r) / n + 1) : 0;
}

// Distribution of (sum of n i.i.d. residues) mod n given per-residue weights.
std::vector<double> residue_sum_distribution(std::span<const double> residue_weights, int n) {
    std::vector<double> dist(static_cast<std::size_t>(n), 0.0);
    dist[0] = 1.0;
    std::vector<double> next(static_cast<std::size_t>(n));
    for (int particle = 0; particle < n; ++particle) {
        std::fill(next.begin(), next.end(), 0.0);
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                next[static_cast<std::size_t>((a + b) % n)] +=
                    dist[static_cast<std::size_t>(a)] * residue_weights[static_cast<std::size_t>(b)];
            }
        }
        dist.swap(next);
    }
    return dist;
}

// Elementary symmetric polynomial e_k(p).
double elementary_symmetric(std::span<const double> p, int k) {
    std::vector<double> e(static_cast<std::size_t>(k) + 1, 0.0);
    e[0] = 1.0;
    for (double x : p) {
        for (int j = k; j >= 1; --j) {
            e[static_cast<std::size_t>(j)] += x * e[static_cast<std::size_t>(j - 1)];
        }
    }
    return e[static_cast<std::size_t>(k)];
}

void require_forbidden_space(int n) {
    detail::require(n >= 2, "no event is forbidden for a single particle");
}

}  // namespace

bool is_forbidden(const OccupationEvent &e, int n) {
    detail::require(n >= 1, "is_forbidden needs n >= 1");
    std::int64_t residue = 0;
    for (Mode k : e.modes()) {
        residue = (residue + k % n) % n;
    }
    return residue != 0;
}

ViolationReport violation(std::span<const OccupationEvent> events, int n, std::optional<Model> model) {
    detail::require(!events.empty(), "cannot certify an empty batch");
    ViolationReport report;
    report.model = model;
    report.n = n;
    report.runs = events.size();
    for (const auto &e : events) {
        if (is_forbidden(e, n)) {
            ++report.forbidden;
        }
    }
    report.violation = static_cast<double>(report.forbidden) / static_cast<double>(report.runs);
    if (report.forbidden == 0) {
        report.false_accept_prob = false_accept_probability(n, report.runs);
    }
    return report;
}

ViolationReport violation(const SampleBatch &batch) {
    return violation(batch.events, batch.n, batch.model);
}

double false_accept_probability(int n, std::uint64_t runs) {
    detail::require(n >= 1, "false_accept_probability needs n >= 1");
    return std::pow(static_cast<double>(n), -static_cast<double>(runs));
}

std::uint64_t required_runs(int n, double alpha) {
    detail::require(n >= 2, "required_runs needs n >= 2");
    detail::require(alpha > 0.0 && alpha <= 1.0, "confidence level alpha must lie in (0, 1]");
    const double guess = std::floor(-std::log(alpha) / std::log(static_cast<double>(n)));
    auto runs = static_cast<std::uint64_t>(std::max(0.0, guess - 1.0));
    while (false_accept_probability(n, runs) > alpha) {
        ++runs;
    }
    return runs;
}

std::optional<std::uint64_t> allowed_event_count(int n, Mode m) {
    detail::require(n >= 1 && m >= 1, "allowed_event_count needs n >= 1 and m >= 1");
    // dp[size][residue] over residue classes; a class of c modes hosts t
    // particles in C(c + t - 1, t) ways.
    const auto width = static_cast<std::size_t>(n);
    std::vector<std::vector<Wide>> dp(width + 1, std::vector<Wide>(width, 0));
    dp[0][0] = 1;
    for (int r = 0; r < n; ++r) {
        const std::uint64_t c = residue_class_size(m, n, r);
        std::vector<std::vector<Wide>> next(width + 1, std::vector<Wide>(width, 0));
        for (int size = 0; size <= n; ++size) {
            for (int res = 0; res < n; ++res) {
                const Wide base = dp[static_cast<std::size_t>(size)][static_cast<std::size_t>(res)];
                if (base == 0) {
                    continue;
                }
                for (int t = 0; size + t <= n; ++t) {
                    const auto ways = t == 0   ? std::optional<std::uint64_t>(1)
                                      : c == 0 ? std::optional<std::uint64_t>(0)
                                               : binomial(c + static_cast<std::uint64_t>(t) - 1,
                                                          static_cast<std::uint64_t>(t));
                    if (!ways) {
                        return std::nullopt;
                    }
                    if (*ways == 0) {
                        continue;
                    }
                    const Wide add = base * *ways;
                    if (add / *ways != base || add > kWideLimit) {
                        return std::nullopt;
                    }
                    auto &slot = next[static_cast<std::size_t>(size + t)]
                                     [static_cast<std::size_t>((res + static_cast<std::int64_t>(t) * r) % n)];
                    slot += add;
                    if (slot > kWideLimit) {
                        return std::nullopt;
                    }
                }
            }
        }
        dp.swap(next);
    }
    return static_cast<std::uint64_t>(dp[width][0]);
}

std::optional<std::uint64_t> forbidden_event_count(int n, Mode m) {
    const auto total = multiset_count(n, m);
    const auto allowed = allowed_event_count(n, m);
    if (!total || !allowed) {
        return std::nullopt;
    }
    return *total - *allowed;
}

std::vector<OccupationEvent> random_forbidden_events(int n, Mode m, std::uint64_t count, Seed seed) {
    require_forbidden_space(n);
    const auto total = multiset_count(n, m);
    const auto forbidden = forbidden_event_count(n, m);
    detail::require(total && forbidden, "event space does not fit in 64 bits");
    detail::require(*forbidden > 0, "no forbidden events exist for these sizes");
    std::vector<OccupationEvent> out;
    if (count >= *forbidden) {
        EventEnumerator it(n, m);
        do {
            if (is_forbidden(it.current(), n)) {
                out.push_back(it.current());
            }
        } while (it.advance());
        return out;
    }
    auto engine = stream_engine(seed, 0);
    std::uniform_int_distribution<std::uint64_t> pick(0, *total - 1);
    std::unordered_set<std::uint64_t> taken;
    out.reserve(count);
    while (out.size() < count) {
        const std::uint64_t rank = pick(engine);
        if (taken.contains(rank)) {
            continue;
        }
        auto e = unrank_event(rank, n, m);
        if (!is_forbidden(e, n)) {
            continue;
        }
        taken.insert(rank);
        out.push_back(std::move(e));
    }
    return out;
}

double expected_violation_exact(const EventProbability &probability, int n, Mode m, std::uint64_t cap,
                                 unsigned threads) {
    const auto events = enumerate_events(n, m, cap);
    std::vector<double> mass(events.size(), 0.0);
    parallel_for(
        events.size(),
        [&](std::size_t i) {
            if (is_forbidden(events[i], n)) {
                mass[i] = probability(events[i]);
            }
        },
        threads);
    double total = 0.0;
    for (double v : mass) {
        total += v;
    }
    return total;
}

Estimate expected_violation_sampled(const EventProbability &probability, int n, Mode m, std::uint64_t subset,
                                    Seed seed, unsigned threads) {
    require_forbidden_space(n);
    detail::require(subset >= 1, "subset size must be positive");
    const auto forbidden = forbidden_event_count(n, m);
    detail::require(forbidden.has_value(), "forbidden event count does not fit in 64 bits");
    const auto events = random_forbidden_events(n, m, subset, seed);
    std::vector<double> mass(events.size());
    parallel_for(
        events.size(), [&](std::size_t i) { mass[i] = probability(events[i]); }, threads);
    const auto population = static_cast<double>(*forbidden);
    const auto sample = static_cast<double>(events.size());
    Estimate per_event = mean_and_error(mass);
    Estimate out;
    out.value = population * per_event.value;
    if (events.size() >= *forbidden) {
        out.value = 0.0;
        for (double v : mass) {
            out.value += v;
        }
        return out;
    }
    // Finite-population correction for sampling without replacement.
    out.std_error = population * per_event.std_error * std::sqrt(1.0 - sample / population);
    return out;
}

Estimate meanfield_violation(const ModeUnitary &u, const InputConfig &input, std::uint64_t phase_draws,
                             Seed seed, unsigned threads) {
    detail::require(phase_draws >= 1, "at least one phase draw is required");
    input.check_modes(u.dim());
    const int n = input.particles();
    require_forbidden_space(n);
    std::vector<double> values(phase_draws);
    parallel_for(
        phase_draws,
        [&](std::size_t d) {
            auto engine = stream_engine(seed, d);
            const auto p = meanfield_distribution(u, input, draw_phases(n, engine));
            std::vector<double> residue_weight(static_cast<std::size_t>(n), 0.0);
            for (Mode q = 1; q <= u.dim(); ++q) {
                residue_weight[static_cast<std::size_t>(q % n)] += p[static_cast<std::size_t>(q - 1)];
            }
            values[d] = 1.0 - residue_sum_distribution(residue_weight, n)[0];
        },
        threads);
    return mean_and_error(values);
}

std::vector<double> mean_occupation_formula(const ModeUnitary &u, const InputConfig &input) {
    input.check_modes(u.dim());
    std::vector<double> out(static_cast<std::size_t>(u.dim()), 0.0);
    for (Mode j : input.modes) {
        for (Mode k = 1; k <= u.dim(); ++k) {
            out[static_cast<std::size_t>(k - 1)] += std::norm(u.at(j, k));
        }
    }
    return out;
}

double collision_free_probability(std::span<const double> p, int n) {
    detail::require(n >= 0, "particle number must be nonnegative");
    double factorial = 1.0;
    for (int f = 2; f <= n; ++f) {
        factorial *= f;
    }
    return factorial * elementary_symmetric(p, n);
}

WitnessSummary witnesses(const SampleBatch &batch) {
    detail::require(!batch.events.empty(), "cannot summarize an empty batch");
    const auto runs = static_cast<double>(batch.events.size());
    const auto m = static_cast<std::size_t>(batch.m);
    std::uint64_t collision_free = 0;
    std::uint64_t clouded = 0;
    std::vector<double> sum(m, 0.0);
    std::vector<double> sum_sq(m, 0.0);
    const bool even = batch.m % 2 == 0;
    for (const auto &e : batch.events) {
        e.check_modes(batch.m);
        if (is_collision_free(e)) {
            ++collision_free;
        }
        if (even && same_half(e, batch.m)) {
            ++clouded;
        }
        for (const auto &[mode, count] : e.occupations()) {
            sum[static_cast<std::size_t>(mode - 1)] += count;
            sum_sq[static_cast<std::size_t>(mode - 1)] += static_cast<double>(count) * count;
        }
    }
    auto proportion = [runs](std::uint64_t hits) {
        const double p = static_cast<double>(hits) / runs;
        return Estimate{p, std::sqrt(p * (1.0 - p) / runs)};
    };
    WitnessSummary out;
    out.p1 = proportion(collision_free);
    if (even) {
        out.clouding = proportion(clouded);
    }
    out.mean_occupations.resize(m);
    out.mean_occupation_stderr.resize(m);
    for (std::size_t q = 0; q < m; ++q) {
        const double mean = sum[q] / runs;
        out.mean_occupations[q] = mean;
        const double var = runs > 1 ? std::max(0.0, (sum_sq[q] - runs * mean * mean) / (runs - 1.0)) : 0.0;
        out.mean_occupation_stderr[q] = std::sqrt(var / runs);
    }
    return out;
}

WitnessSummary witnesses_exact(const EventProbability &probability, int n, Mode m, std::uint64_t cap,
                               unsigned threads) {
    const auto events = enumerate_events(n, m, cap);
    std::vector<double> mass(events.size());
    parallel_for(
        events.size(), [&](std::size_t i) { mass[i] = probability(events[i]); }, threads);
    const bool even = m % 2 == 0;
    WitnessSummary out;
    out.mean_occupations.assign(static_cast<std::size_t>(m), 0.0);
    out.mean_occupation_stderr.assign(static_cast<std::size_t>(m), 0.0);
    double clouded = 0.0;
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (is_collision_free(events[i])) {
            out.p1.value += mass[i];
        }
        if (even && same_half(events[i], m)) {
            clouded += mass[i];
        }
        for (const auto &[mode, count] : events[i].occupations()) {
            out.mean_occupations[static_cast<std::size_t>(mode - 1)] += mass[i] * count;
        }
    }
    if (even) {
        out.clouding = Estimate{clouded, 0.0};
    }
    return out;
}

WitnessSummary witnesses_meanfield(const ModeUnitary &u, const InputConfig &input, std::uint64_t phase_draws,
                                   Seed seed, unsigned threads) {
    detail::require(phase_draws >= 1, "at least one phase draw is required");
    input.check_modes(u.dim());
    const int n = input.particles();
    const Mode m = u.dim();
    const bool even = m % 2 == 0;
    std::vector<double> p1(phase_draws);
    std::vector<double> cloud(phase_draws);
    std::vector<std::vector<double>> single(phase_draws);
    parallel_for(
        phase_draws,
        [&](std::size_t d) {
            auto engine = stream_engine(seed, d);
            auto p = meanfield_distribution(u, input, draw_phases(n, engine));
            p1[d] = collision_free_probability(p, n);
            if (even) {
                double lower = 0.0;
                for (Mode q = 1; q <= m / 2; ++q) {
                    lower += p[static_cast<std::size_t>(q - 1)];
                }
                const double upper = std::max(0.0, 1.0 - lower);
                cloud[d] = std::pow(lower, n) + std::pow(upper, n);
            }
            single[d] = std::move(p);
        },
        threads);
    WitnessSummary out;
    out.p1 = mean_and_error(p1);
    if (even) {
        out.clouding = mean_and_error(cloud);
    }
    out.mean_occupations.resize(static_cast<std::size_t>(m));
    out.mean_occupation_stderr.resize(static_cast<std::size_t>(m));
    std::vector<double> column(phase_draws);
    for (std::size_t q = 0; q < static_cast<std::size_t>(m); ++q) {
        for (std::size_t d = 0; d < phase_draws; ++d) {
            column[d] = n * single[d][q];
        }
        const auto est = mean_and_error(column);
        out.mean_occupations[q] = est.value;
        out.mean_occupation_stderr[q] = est.std_error;
    }
    return out;
}

Eigen::MatrixXcd distinguishability_coeffs(const Eigen::MatrixXcd &overlaps) {
    constexpr double kTol = 1e-10;
    detail::require(overlaps.rows() >= 1 && overlaps.rows() == overlaps.cols(),
                    "overlap matrix must be square and nonempty");
    const Eigen::Index n = overlaps.rows();
    detail::require((overlaps - overlaps.adjoint()).cwiseAbs().maxCoeff() <= kTol,
                    "overlap matrix must be Hermitian");
    for (Eigen::Index r = 0; r < n; ++r) {
        detail::require(std::abs(overlaps(r, r) - Complex(1.0, 0.0)) <= kTol,
                        "overlap matrix must have unit diagonal");
    }
    // |t_r> = sum_d c(r, d) |t~_d>  =>  <t_s|t_r> = sum_d c(r, d) conj(c(s, d)),
    // so C C^dagger equals the transposed overlap matrix: a semidefinite Cholesky
    // that leaves a zero column where |t_d> adds no new direction.
    const Eigen::MatrixXcd target = overlaps.transpose();
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index d = 0; d < n; ++d) {
        double pivot = target(d, d).real();
        for (Eigen::Index k = 0; k < d; ++k) {
            pivot -= std::norm(c(d, k));
        }
        if (pivot < -kTol) {
            throw PreconditionError("overlap matrix is not positive semidefinite");
        }
        const bool degenerate = pivot <= kTol;
        const double diag = degenerate ? 0.0 : std::sqrt(pivot);
        c(d, d) = diag;
        for (Eigen::Index r = d + 1; r < n; ++r) {
            Complex residual = target(r, d);
            for (Eigen::Index k = 0; k < d; ++k) {
                residual -= c(r, k) * std::conj(c(d, k));
            }
            if (degenerate) {
                if (std::abs(residual) > 1e-8) {
                    throw PreconditionError("overlap matrix is not positive semidefinite");
                }
                continue;
            }
            c(r, d) = residual / diag;
        }
    }
    return c;
}

double indistinguishable_weight(const Eigen::MatrixXcd &coeffs) {
    double weight = 1.0;
    for (Eigen::Index q = 1; q < coeffs.rows(); ++q) {
        weight *= std::norm(coeffs(q, 0));
    }
    return weight;
}

double violation_bound_partial(double weight, int n) {
    detail::require(n >= 1, "violation bound needs n >= 1");
    detail::require(weight >= -1e-12 && weight <= 1.0 + 1e-12, "indistinguishable weight must lie in [0, 1]");
    return (static_cast<double>(n) - 1.0) / n * (1.0 - weight);
}

double violation_bound_partial(const Eigen::MatrixXcd &coeffs, int n) {
    detail::require(coeffs.rows() == n && coeffs.cols() == n, "coefficient matrix must be n x n");
    return violation_bound_partial(indistinguishable_weight(coeffs), n);
}

bool in_small_deviation_regime(int n, double avg_dev) {
    return avg_dev < 1.0 / static_cast<double>(n);
}

double event_space_size(int n, Mode m) {
    detail::require(n >= 0 && m >= 1, "event_space_size needs n >= 0 and m >= 1");
    double out = 1.0;
    for (int k = 1; k <= n; ++k) {
        out *= static_cast<double>(m + k - 1) / k;
    }
    return out;
}

double p_approx(int n, Mode m, double avg_dev) {
    detail::require(n >= 1 && m >= 1, "p_approx needs n >= 1 and m >= 1");
    detail::require(avg_dev >= 0.0, "average deviation must be nonnegative");
    const double log_prefactor = std::log(static_cast<double>(n)) + std::lgamma(n + 1.0) -
                                 n * std::log(static_cast<double>(m));
    return std::exp(log_prefactor) * avg_dev * avg_dev;
}

DeviationEstimate v_dev_estimate(int n, Mode m, double avg_dev) {
    DeviationEstimate out;
    out.general = (static_cast<double>(n) - 1.0) / n * event_space_size(n, m) * p_approx(n, m, avg_dev);
    if (m == static_cast<Mode>(n) * n) {
        out.closed_form = std::sqrt(std::numbers::e) * (n - 1.0) * avg_dev * avg_dev;
    }
    out.small_deviation = in_small_deviation_regime(n, avg_dev);
    return out;
}

double total_violation_estimate(double v_partial, double v_dev) {
    return v_partial + v_dev;
}

Estimate forbidden_mass(const ModeUnitary &w, const InputConfig &input, std::uint64_t subset, Seed seed,
                        std::uint64_t cap, unsigned threads) {
    const int n = input.particles();
    require_forbidden_space(n);
    input.check_modes(w.dim());
    const auto probability = [&](const OccupationEvent &e) { return boson_probability(w, input, e); };
    const auto forbidden = forbidden_event_count(n, w.dim());
    if (subset == 0 || (forbidden && subset >= *forbidden)) {
        return Estimate{expected_violation_exact(probability, n, w.dim(), cap, threads), 0.0};
    }
    return expected_violation_sampled(probability, n, w.dim(), subset, seed, threads);
}

Estimate v_dev_numeric(const ModeUnitary &u, const InputConfig &input, double avg_dev, std::uint64_t draws,
                       std::uint64_t subset, Seed seed, MagnitudeLaw law, std::uint64_t cap, unsigned threads) {
    detail::require(draws >= 1, "at least one perturbation draw is required");
    std::vector<double> values(draws);
    parallel_for(
        draws,
        [&](std::size_t d) {
            const Seed draw_seed = derive_seed(seed, d);
            const auto perturbed = perturb(u, avg_dev, draw_seed, law);
            values[d] = forbidden_mass(perturbed.first, input, subset, draw_seed, cap, 1).value;
        },
        threads);
    return mean_and_error(values);
}

}  // namespace bosoncert
