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

#include "bosoncert/errors.hpp"
#include "bosoncert/events.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <random>
#include <vector>

using namespace bosoncert;

namespace {

OccupationEvent ev(std::vector<Mode> k) {
    return OccupationEvent(std::move(k));
}

}  // namespace

TEST_CASE("OccupationEvent is stored sorted and reports occupations") {
    const auto e = ev({3, 1, 3, 2});
    CHECK(std::vector<Mode>(e.modes().begin(), e.modes().end()) == std::vector<Mode>{1, 2, 3, 3});
    const auto s = e.occupations();
    REQUIRE(s.size() == 3);
    CHECK(s[2] == ModeCount{3, 2});
    CHECK(e == ev({1, 2, 3, 3}));
    CHECK_THROWS_AS(ev({0, 1}), PreconditionError);
    CHECK_THROWS_AS(ev({1, 5}).check_modes(4), PreconditionError);
}

TEST_CASE("InputConfig rejects repeated modes and tracks distinguishability") {
    CHECK_THROWS_AS(InputConfig({1, 1}), PreconditionError);
    CHECK(InputConfig({1, 4, 7}).indistinguishable());
    CHECK_FALSE(InputConfig({1, 4, 7}, {0, 0, 1}).indistinguishable());
    CHECK_THROWS_AS(InputConfig({1, 2}, {0}), PreconditionError);
}

TEST_CASE("enumerate_events small cases") {
    CHECK(enumerate_events(3, 9, 1000).size() == 165);
    CHECK(enumerate_events(1, 5, 1000).size() == 5);
    const auto two = enumerate_events(2, 2, 1000);
    REQUIRE(two.size() == 3);
    CHECK(two[0] == ev({1, 1}));
    CHECK(two[1] == ev({1, 2}));
    CHECK(two[2] == ev({2, 2}));
}

TEST_CASE("enumerate_events cap is enforced and names the count") {
    try {
        enumerate_events(3, 9, 100);
        FAIL("expected cap error");
    } catch (const CapExceededError &err) {
        CHECK(err.required() == 165);
        CHECK(std::string(err.what()).find("165") != std::string::npos);
    }
}

TEST_CASE("enumeration matches brute-force multisets in order") {
    for (int n = 1; n <= 4; ++n) {
        for (Mode m = 1; m <= 6; ++m) {
            const auto expected = oracle::multisets(n, m);
            const auto got = enumerate_events(n, m, 100000);
            REQUIRE(got.size() == expected.size());
            for (std::size_t i = 0; i < got.size(); ++i) {
                CHECK(std::vector<Mode>(got[i].modes().begin(), got[i].modes().end()) == expected[i]);
            }
        }
    }
}

TEST_CASE("enumeration length equals C(m+n-1, n) up to (6, 36)") {
    for (int n = 1; n <= 6; ++n) {
        for (Mode m = 1; m <= 36; m += 5) {
            const auto count = multiset_count(n, m);
            REQUIRE(count.has_value());
            if (*count > 5'000'000) {
                continue;
            }
            std::uint64_t seen = 0;
            EventEnumerator it(n, m);
            do {
                ++seen;
                CHECK(it.current().particles() == n);
            } while (it.advance());
            CHECK(seen == *count);
        }
    }
    CHECK(*multiset_count(6, 36) == 4496388);
}

TEST_CASE("rank and unrank are inverse and agree with enumeration order") {
    const auto events = enumerate_events(3, 7, 10000);
    for (std::size_t r = 0; r < events.size(); ++r) {
        CHECK(rank_event(events[r], 7) == r);
        CHECK(unrank_event(r, 3, 7) == events[r]);
    }
    CHECK_THROWS_AS(unrank_event(events.size(), 3, 7), PreconditionError);
}

TEST_CASE("enumerator restarted at a rank continues the same sequence") {
    const auto all = enumerate_events(4, 5, 10000);
    EventEnumerator it(4, 5, 37);
    for (std::size_t r = 37; r < all.size(); ++r) {
        REQUIRE_FALSE(it.done());
        CHECK(it.current() == all[r]);
        it.advance();
    }
    CHECK(it.done());
    it.reset();
    CHECK(it.current() == all.front());
}

TEST_CASE("multiplicity_factor") {
    CHECK(multiplicity_factor(ev({1, 2, 3})) == 1);
    CHECK(multiplicity_factor(ev({1, 1, 1})) == 6);
    CHECK(multiplicity_factor(ev({1, 1, 2, 2})) == 4);
    CHECK(multiplicity_weight(ev({1, 1, 2, 2})) == 4.0);
}

TEST_CASE("multiplicity_factor equals n! exactly when all particles share a mode") {
    for (int n = 1; n <= 5; ++n) {
        std::uint64_t nfact = 1;
        for (int f = 2; f <= n; ++f) {
            nfact *= static_cast<std::uint64_t>(f);
        }
        for (const auto &e : enumerate_events(n, 4, 10000)) {
            const bool single_mode = e.occupations().size() == 1;
            CHECK((multiplicity_factor(e) == nfact) == (single_mode || n == 1));
        }
    }
}

TEST_CASE("is_collision_free") {
    CHECK(is_collision_free(ev({1, 2, 3})));
    CHECK_FALSE(is_collision_free(ev({1, 1, 2})));
    CHECK(is_collision_free(ev({4})));
}

TEST_CASE("same_half") {
    CHECK(same_half(ev({1, 2, 4}), 8));
    CHECK_FALSE(same_half(ev({1, 5}), 8));
    CHECK(same_half(ev({5, 6, 7, 8}), 8));
    CHECK_THROWS_AS(same_half(ev({1}), 7), PreconditionError);
}

TEST_CASE("binomial overflow is reported") {
    CHECK(*binomial(11, 3) == 165);
    CHECK(*binomial(5, 7) == 0);
    CHECK_FALSE(binomial(200, 100).has_value());
}
