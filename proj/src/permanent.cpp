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

#include "bosoncert/permanent.hpp"

#include <string>

namespace bosoncert {

namespace {

void check_sizes(const ModeUnitary &u, std::span<const Mode> input_modes, const OccupationEvent &e) {
    if (static_cast<std::size_t>(e.particles()) != input_modes.size()) {
        throw PreconditionError("event has " + std::to_string(e.particles()) +
                                " particles but the input has " + std::to_string(input_modes.size()));
    }
    e.check_modes(u.dim());
    for (Mode j : input_modes) {
        detail::require(j >= 1 && j <= u.dim(), "input mode outside the interferometer");
    }
}

}  // namespace

Eigen::MatrixXcd build_submatrix(const ModeUnitary &u, std::span<const Mode> input_modes,
                                 const OccupationEvent &e) {
    check_sizes(u, input_modes, e);
    const auto n = static_cast<Eigen::Index>(input_modes.size());
    Eigen::MatrixXcd m(n, n);
    for (Eigen::Index l = 0; l < n; ++l) {
        for (Eigen::Index q = 0; q < n; ++q) {
            m(l, q) = u.at(input_modes[static_cast<std::size_t>(l)], e[static_cast<std::size_t>(q)]);
        }
    }
    return m;
}

double boson_probability(const ModeUnitary &u, const InputConfig &input, const OccupationEvent &e) {
    detail::require(input.indistinguishable(), "boson_probability needs identical particles");
    const Eigen::MatrixXcd m = build_submatrix(u, input.modes, e);
    return std::norm(permanent_ryser(m)) / multiplicity_weight(e);
}

double classical_probability(const ModeUnitary &u, const InputConfig &input, const OccupationEvent &e) {
    const Eigen::MatrixXd weights = build_submatrix(u, input.modes, e).cwiseAbs2();
    return permanent_ryser(weights) / multiplicity_weight(e);
}

double misaligned_probability(const ModeUnitary &u, const InputConfig &input, int bad,
                              const OccupationEvent &e) {
    const int n = input.particles();
    detail::require(n >= 2, "misaligned model needs at least two particles");
    if (bad < 1 || bad > n) {
        throw PreconditionError("distinguishable particle index " + std::to_string(bad) +
                                " outside 1.." + std::to_string(n));
    }
    check_sizes(u, input.modes, e);
    const Mode bad_mode = input.modes[static_cast<std::size_t>(bad - 1)];
    std::vector<Mode> rest_input;
    rest_input.reserve(static_cast<std::size_t>(n - 1));
    for (int r = 0; r < n; ++r) {
        if (r != bad - 1) {
            rest_input.push_back(input.modes[static_cast<std::size_t>(r)]);
        }
    }
    const InputConfig others(std::move(rest_input));

    const auto k = e.modes();
    double total = 0.0;
    for (std::size_t i = 0; i < k.size(); ++i) {
        if (i > 0 && k[i] == k[i - 1]) {
            continue;
        }
        std::vector<Mode> remaining(k.begin(), k.end());
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(i));
        total += std::norm(u.at(bad_mode, k[i])) *
                 boson_probability(u, others, OccupationEvent(std::move(remaining)));
    }
    return total;
}

}  // namespace bosoncert
