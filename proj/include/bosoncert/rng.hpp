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

#ifndef BOSONCERT_RNG_HPP
#define BOSONCERT_RNG_HPP

#include <cstdint>
#include <random>

namespace bosoncert {

using Seed = std::uint64_t;

/// Engine for the independent random stream identified by (seed, stream).
///
/// Every consumer of randomness in the library derives its engine through
/// this function, keyed by the user seed and a stream index (shot number,
/// ensemble member, ...). Results therefore never depend on the order in
/// which streams are evaluated or on the number of worker threads.
inline std::mt19937_64 stream_engine(Seed seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

/// Child seed for a nested experiment (e.g. the k-th matrix of an ensemble).
inline Seed derive_seed(Seed seed, std::uint64_t stream) {
    auto engine = stream_engine(seed, stream);
    return engine();
}

/// Uniform double in [0, 1).
inline double uniform01(std::mt19937_64 &engine) {
    // libstdc++ can round generate_canonical up to exactly 1 (LWG 2524).
    const double u = std::generate_canonical<double, 64>(engine);
    return u < 1.0 ? u : 0x1.fffffffffffffp-1;
}

}  // namespace bosoncert

#endif  // BOSONCERT_RNG_HPP
