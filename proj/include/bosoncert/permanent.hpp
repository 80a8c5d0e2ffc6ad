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

#ifndef BOSONCERT_PERMANENT_HPP
#define BOSONCERT_PERMANENT_HPP

#include "bosoncert/errors.hpp"
#include "bosoncert/events.hpp"
#include "bosoncert/linalg.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <vector>

namespace bosoncert {

inline constexpr int kMaxRyserSize = 30;
inline constexpr int kMaxNaiveSize = 8;

/// Permanent by Ryser's inclusion-exclusion formula, visiting column subsets
/// in Gray-code order so each step adds or removes a single column from the
/// running row sums. O(2^n n).
template <typename Derived>
typename Derived::Scalar permanent_ryser(const Eigen::MatrixBase<Derived> &a) {
    using Scalar = typename Derived::Scalar;
    const auto n = static_cast<int>(a.rows());
    detail::require(a.rows() == a.cols(), "permanent needs a square matrix");
    detail::require(n <= kMaxRyserSize, "Ryser permanent limited to n <= 30");
    if (n == 0) {
        return Scalar(1);
    }
    std::vector<Scalar> row_sums(static_cast<std::size_t>(n), Scalar(0));
    Scalar total(0);
    std::uint64_t previous = 0;
    const std::uint64_t subsets = std::uint64_t{1} << n;
    for (std::uint64_t k = 1; k < subsets; ++k) {
        const std::uint64_t gray = k ^ (k >> 1);
        const std::uint64_t flipped = gray ^ previous;
        const int col = std::countr_zero(flipped);
        if (gray & flipped) {
            for (int i = 0; i < n; ++i) {
                row_sums[static_cast<std::size_t>(i)] += a(i, col);
            }
        } else {
            for (int i = 0; i < n; ++i) {
                row_sums[static_cast<std::size_t>(i)] -= a(i, col);
            }
        }
        Scalar product(1);
        for (const Scalar &s : row_sums) {
            product *= s;
        }
        if (std::popcount(gray) % 2 == 0) {
            total += product;
        } else {
            total -= product;
        }
        previous = gray;
    }
    return (n % 2 == 0) ? total : Scalar(-total);
}

/// Sum over all n! permutation products. Reference oracle, n <= 8.
template <typename Derived>
typename Derived::Scalar permanent_naive(const Eigen::MatrixBase<Derived> &a) {
    using Scalar = typename Derived::Scalar;
    const auto n = static_cast<int>(a.rows());
    detail::require(a.rows() == a.cols(), "permanent needs a square matrix");
    detail::require(n <= kMaxNaiveSize, "naive permanent limited to n <= 8");
    std::vector<int> sigma(static_cast<std::size_t>(n));
    std::iota(sigma.begin(), sigma.end(), 0);
    Scalar total(0);
    do {
        Scalar product(1);
        for (int i = 0; i < n; ++i) {
            product *= a(i, sigma[static_cast<std::size_t>(i)]);
        }
        total += product;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return total;
}

/// M(l, q) = U(j_l, k_q): rows from the input modes, columns from the
/// event's sorted mode list, so a mode hosting s particles contributes s
/// identical columns.
Eigen::MatrixXcd build_submatrix(const ModeUnitary &u, std::span<const Mode> input_modes,
                                 const OccupationEvent &e);

/// |perm M|^2 / prod_q s_q! for identical bosons.
double boson_probability(const ModeUnitary &u, const InputConfig &input, const OccupationEvent &e);

/// perm(|M|^2) / prod_q s_q!: independent, fully distinguishable particles.
double classical_probability(const ModeUnitary &u, const InputConfig &input, const OccupationEvent &e);

/// Identical bosons except particle `bad` (1-based), which is fully
/// distinguishable: an incoherent mixture over the mode that particle takes.
double misaligned_probability(const ModeUnitary &u, const InputConfig &input, int bad,
                              const OccupationEvent &e);

}  // namespace bosoncert

#endif  // BOSONCERT_PERMANENT_HPP
