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

#include "bosoncert/events.hpp"

#include "bosoncert/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

namespace bosoncert {

OccupationEvent::OccupationEvent(std::vector<Mode> modes) : modes_(std::move(modes)) {
    std::sort(modes_.begin(), modes_.end());
    detail::require(modes_.empty() || modes_.front() >= 1, "mode indices are 1-based");
}

std::vector<ModeCount> OccupationEvent::occupations() const {
    std::vector<ModeCount> out;
    for (Mode k : modes_) {
        if (!out.empty() && out.back().mode == k) {
            ++out.back().count;
        } else {
            out.push_back({k, 1});
        }
    }
    return out;
}

void OccupationEvent::check_modes(Mode m) const {
    if (!modes_.empty() && modes_.back() > m) {
        throw PreconditionError("event mode " + std::to_string(modes_.back()) +
                                " outside 1.." + std::to_string(m));
    }
}

std::size_t OccupationEventHash::operator()(const OccupationEvent &e) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (Mode k : e.modes()) {
        h ^= static_cast<std::size_t>(k) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

InputConfig::InputConfig(std::vector<Mode> modes_in)
    : InputConfig(std::move(modes_in), {}, std::nullopt) {}

InputConfig::InputConfig(std::vector<Mode> modes_in, std::vector<int> labels_in,
                         std::optional<Eigen::MatrixXcd> coeffs)
    : modes(std::move(modes_in)), labels(std::move(labels_in)), overlap_coeffs(std::move(coeffs)) {
    if (labels.empty()) {
        labels.assign(modes.size(), 0);
    }
    detail::require(labels.size() == modes.size(), "one internal label per input particle");
    std::set<Mode> seen;
    for (Mode j : modes) {
        detail::require(j >= 1, "input modes are 1-based");
        detail::require(seen.insert(j).second, "input modes must be distinct");
    }
    if (overlap_coeffs) {
        const auto n = static_cast<Eigen::Index>(modes.size());
        detail::require(overlap_coeffs->rows() == n && overlap_coeffs->cols() == n,
                        "overlap coefficients must be n x n");
        for (Eigen::Index r = 0; r < n; ++r) {
            detail::require(std::abs(overlap_coeffs->row(r).squaredNorm() - 1.0) <= 1e-10,
                            "overlap coefficient rows must have unit norm");
        }
    }
}

bool InputConfig::indistinguishable() const {
    if (std::adjacent_find(labels.begin(), labels.end(), std::not_equal_to<>()) != labels.end()) {
        return false;
    }
    if (overlap_coeffs) {
        for (Eigen::Index r = 0; r < overlap_coeffs->rows(); ++r) {
            if (std::abs(std::norm((*overlap_coeffs)(r, 0)) - 1.0) > 1e-10) {
                return false;
            }
        }
    }
    return true;
}

void InputConfig::check_modes(Mode m) const {
    for (Mode j : modes) {
        if (j > m) {
            throw PreconditionError("input mode " + std::to_string(j) + " outside 1.." +
                                    std::to_string(m));
        }
    }
}

std::optional<std::uint64_t> binomial(std::uint64_t a, std::uint64_t b) {
    if (b > a) {
        return 0;
    }
    b = std::min(b, a - b);
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= b; ++i) {
        // r * (a - b + i) / i stays integral at every step.
        r = r * (a - b + i) / i;
        if (r > std::numeric_limits<std::uint64_t>::max()) {
            return std::nullopt;
        }
    }
    return static_cast<std::uint64_t>(r);
}

std::optional<std::uint64_t> multiset_count(int n, Mode m) {
    detail::require(n >= 0 && m >= 1, "multiset_count needs n >= 0 and m >= 1");
    return binomial(static_cast<std::uint64_t>(m) + static_cast<std::uint64_t>(n) - 1,
                    static_cast<std::uint64_t>(n));
}

EventEnumerator::EventEnumerator(int n, Mode m, std::uint64_t first_rank) : n_(n), m_(m) {
    detail::require(n >= 1 && m >= 1, "enumeration needs n >= 1 and m >= 1");
    const auto total = multiset_count(n, m);
    detail::require(total.has_value(), "event space does not fit in 64 bits");
    if (first_rank >= *total) {
        done_ = true;
        rank_ = *total;
        return;
    }
    current_ = unrank_event(first_rank, n, m);
    buffer_.assign(current_.modes().begin(), current_.modes().end());
    rank_ = first_rank;
}

bool EventEnumerator::advance() {
    if (done_) {
        return false;
    }
    // Rightmost slot that can still grow; everything after it resets to its new value.
    auto i = static_cast<std::ptrdiff_t>(buffer_.size()) - 1;
    while (i >= 0 && buffer_[static_cast<std::size_t>(i)] == m_) {
        --i;
    }
    ++rank_;
    if (i < 0) {
        done_ = true;
        return false;
    }
    const Mode v = ++buffer_[static_cast<std::size_t>(i)];
    std::fill(buffer_.begin() + i + 1, buffer_.end(), v);
    current_ = OccupationEvent(buffer_);
    return true;
}

void EventEnumerator::reset() {
    *this = EventEnumerator(n_, m_, 0);
}

std::vector<OccupationEvent> enumerate_events(int n, Mode m, std::uint64_t cap) {
    const auto total = multiset_count(n, m);
    if (!total || *total > cap) {
        const std::uint64_t required = total.value_or(std::numeric_limits<std::uint64_t>::max());
        throw CapExceededError("event space C(m+n-1, n) = " +
                                   (total ? std::to_string(*total) : std::string("> 2^64")) +
                                   " exceeds cap " + std::to_string(cap),
                               required, cap);
    }
    std::vector<OccupationEvent> out;
    out.reserve(*total);
    EventEnumerator it(n, m);
    do {
        out.push_back(it.current());
    } while (it.advance());
    return out;
}

namespace {

// Events of `slots` particles restricted to modes v..m.
std::uint64_t tail_count(Mode v, Mode m, int slots) {
    const auto c = binomial(static_cast<std::uint64_t>(m - v + slots), static_cast<std::uint64_t>(slots));
    detail::require(c.has_value(), "event rank does not fit in 64 bits");
    return *c;
}

}  // namespace

std::uint64_t rank_event(const OccupationEvent &e, Mode m) {
    e.check_modes(m);
    const int n = e.particles();
    std::uint64_t rank = 0;
    Mode prev = 1;
    for (int i = 0; i < n; ++i) {
        for (Mode v = prev; v < e[static_cast<std::size_t>(i)]; ++v) {
            rank += tail_count(v, m, n - i - 1);
        }
        prev = e[static_cast<std::size_t>(i)];
    }
    return rank;
}

OccupationEvent unrank_event(std::uint64_t rank, int n, Mode m) {
    const auto total = multiset_count(n, m);
    detail::require(total && rank < *total, "event rank out of range");
    std::vector<Mode> modes(static_cast<std::size_t>(n));
    Mode v = 1;
    for (int i = 0; i < n; ++i) {
        for (;; ++v) {
            const std::uint64_t c = tail_count(v, m, n - i - 1);
            if (rank < c) {
                break;
            }
            rank -= c;
        }
        modes[static_cast<std::size_t>(i)] = v;
    }
    return OccupationEvent(std::move(modes));
}

std::uint64_t multiplicity_factor(const OccupationEvent &e) {
    std::uint64_t out = 1;
    for (const auto &[mode, count] : e.occupations()) {
        for (int f = 2; f <= count; ++f) {
            if (out > std::numeric_limits<std::uint64_t>::max() / static_cast<std::uint64_t>(f)) {
                throw PreconditionError("multiplicity factor exceeds 64 bits");
            }
            out *= static_cast<std::uint64_t>(f);
        }
    }
    return out;
}

double multiplicity_weight(const OccupationEvent &e) {
    double out = 1.0;
    for (const auto &[mode, count] : e.occupations()) {
        for (int f = 2; f <= count; ++f) {
            out *= f;
        }
    }
    return out;
}

bool is_collision_free(const OccupationEvent &e) {
    const auto k = e.modes();
    return std::adjacent_find(k.begin(), k.end()) == k.end();
}

bool same_half(const OccupationEvent &e, Mode m) {
    detail::require(m % 2 == 0, "same_half needs an even mode count");
    e.check_modes(m);
    const auto k = e.modes();
    if (k.empty()) {
        return true;
    }
    const Mode half = m / 2;
    return k.back() <= half || k.front() > half;
}

}  // namespace bosoncert
