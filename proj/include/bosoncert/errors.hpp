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

#ifndef BOSONCERT_ERRORS_HPP
#define BOSONCERT_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bosoncert {

/// A caller-supplied argument violates an operation's precondition.
class PreconditionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// An exhaustive computation would exceed the caller's size budget.
class CapExceededError : public std::length_error {
  public:
    CapExceededError(const std::string &what, std::uint64_t required, std::uint64_t cap)
        : std::length_error(what), required_(required), cap_(cap) {}

    std::uint64_t required() const noexcept { return required_; }
    std::uint64_t cap() const noexcept { return cap_; }

  private:
    std::uint64_t required_;
    std::uint64_t cap_;
};

/// Reading or writing a persisted artifact failed (missing file, malformed content).
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool condition, const std::string &message) {
    if (!condition) {
        throw PreconditionError(message);
    }
}

}  // namespace detail
}  // namespace bosoncert

#endif  // BOSONCERT_ERRORS_HPP
