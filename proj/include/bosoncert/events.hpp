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

#ifndef BOSONCERT_EVENTS_HPP
#define BOSONCERT_EVENTS_HPP

#include <Eigen/Dense>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace bosoncert {

/// 1-based optical mode index.
using Mode = std::int64_t;

struct ModeCount {
    Mode mode;
    int count;

    friend bool operator==(const ModeCount &, const ModeCount &) = default;
};

/// Output event: where each of the n particles was detected.
///
/// Stored canonically as the nondecreasing list of occupied modes, so a mode
/// hosting s particles appears s times. Equality and ordering use this form.
class OccupationEvent {
  public:
    OccupationEvent() = default;
    /// Sorts `modes`; every entry must be >= 1.
    explicit OccupationEvent(std::vector<Mode> modes);

    std::span<const Mode> modes() const noexcept { return modes_; }
    int particles() const noexcept { return static_cast<int>(modes_.size()); }
    Mode operator[](std::size_t i) const { return modes_[i]; }

    /// Sparse occupation numbers s_q, ascending in mode.
    std::vector<ModeCount> occupations() const;

    /// Throws PreconditionError if any mode exceeds `m`.
    void check_modes(Mode m) const;

    friend bool operator==(const OccupationEvent &, const OccupationEvent &) = default;
    friend auto operator<=>(const OccupationEvent &, const OccupationEvent &) = default;

  private:
    std::vector<Mode> modes_;
};

struct OccupationEventHash {
    std::size_t operator()(const OccupationEvent &e) const noexcept;
};

/// Input state: one particle in each of n distinct modes.
///
/// `labels` identify internal-state classes; particles sharing a label are
/// identical. `overlap_coeffs`, when present, is the lower-triangular matrix
/// c(r, d) of each particle's internal state in the Gram-Schmidt basis
/// built from the first particle onward.
struct InputConfig {
    std::vector<Mode> modes;
    std::vector<int> labels;
    std::optional<Eigen::MatrixXcd> overlap_coeffs;

    InputConfig() = default;
    /// All particles identical.
    explicit InputConfig(std::vector<Mode> modes);
    InputConfig(std::vector<Mode> modes, std::vector<int> labels,
                std::optional<Eigen::MatrixXcd> overlap_coeffs = std::nullopt);

    int particles() const noexcept { return static_cast<int>(modes.size()); }
    bool indistinguishable() const;
    void check_modes(Mode m) const;
};

/// Binomial coefficient; nullopt when the result does not fit in 64 bits.
std::optional<std::uint64_t> binomial(std::uint64_t a, std::uint64_t b);

/// Number of n-particle events over m modes, C(m+n-1, n); nullopt on overflow.
std::optional<std::uint64_t> multiset_count(int n, Mode m);

/// Restartable lexicographic walk over all n-particle events in m modes.
///
/// Construct at any rank to split the event space into disjoint ranges.
class EventEnumerator {
  public:
    EventEnumerator(int n, Mode m, std::uint64_t first_rank = 0);

    const OccupationEvent &current() const noexcept { return current_; }
    std::uint64_t rank() const noexcept { return rank_; }
    bool done() const noexcept { return done_; }
    /// Steps to the next event; returns false once the space is exhausted.
    bool advance();
    void reset();

  private:
    int n_;
    Mode m_;
    std::uint64_t rank_ = 0;
    bool done_ = false;
    std::vector<Mode> buffer_;
    OccupationEvent current_;
};

/// Every event, lexicographic; CapExceededError when C(m+n-1, n) > cap.
std::vector<OccupationEvent> enumerate_events(int n, Mode m, std::uint64_t cap);

/// Lexicographic position of `e` among all events over m modes.
std::uint64_t rank_event(const OccupationEvent &e, Mode m);
OccupationEvent unrank_event(std::uint64_t rank, int n, Mode m);

/// prod_q s_q! (exact; throws when it exceeds 64 bits).
std::uint64_t multiplicity_factor(const OccupationEvent &e);
/// prod_q s_q! as a double, for probability normalization.
double multiplicity_weight(const OccupationEvent &e);

bool is_collision_free(const OccupationEvent &e);

/// True iff all particles sit in modes 1..m/2, or all in m/2+1..m. Requires even m.
bool same_half(const OccupationEvent &e, Mode m);

}  // namespace bosoncert

#endif  // BOSONCERT_EVENTS_HPP
