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

#ifndef BOSONCERT_CLI_HPP
#define BOSONCERT_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace bosoncert::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitPrecondition = 2;
inline constexpr int kExitCapExceeded = 3;
inline constexpr int kExitIo = 4;

/// Command-line driver. `argv[0]` is the program name. Returns the exit code.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

/// Same, with arguments given without the program name.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace bosoncert::cli

#endif  // BOSONCERT_CLI_HPP
