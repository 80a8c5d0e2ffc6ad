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

#ifndef BOSONCERT_IO_HPP
#define BOSONCERT_IO_HPP

#include "bosoncert/certify.hpp"
#include "bosoncert/events.hpp"
#include "bosoncert/linalg.hpp"
#include "bosoncert/samplers.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace bosoncert {

inline constexpr const char *kVersion = "0.1.0";

/// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

/// {"m": int, "re": [[...]], "im": [[...]], "label": str}, row-major.
nlohmann::json matrix_to_json(const ModeUnitary &u);
/// Inverse of matrix_to_json; unknown keys are ignored. Throws IoError on
/// malformed content and PreconditionError when a non-perturbed matrix is
/// not unitary.
ModeUnitary matrix_from_json(const nlohmann::json &doc);

void save_json(const nlohmann::json &doc, const std::filesystem::path &path);
nlohmann::json load_json(const std::filesystem::path &path);

/// One event per line: {"k": [1, 4, 7]}.
void write_events_jsonl(std::ostream &out, std::span<const OccupationEvent> events);
/// Blank lines are skipped; a malformed line raises IoError naming its line number.
std::vector<OccupationEvent> read_events_jsonl(std::istream &in);
std::vector<OccupationEvent> read_events_jsonl(const std::filesystem::path &path);

/// Sidecar header describing a batch (model, n, m, seed, shots, matrix).
nlohmann::json batch_header(const SampleBatch &batch);

nlohmann::json to_json(const ViolationReport &report);
nlohmann::json to_json(const WitnessSummary &summary);
nlohmann::json to_json(const DeviationEstimate &estimate);

/// One line of a figure/report table.
struct CsvRow {
    std::string model;
    int n = 0;
    Mode m = 0;
    /// Sweep parameter (e.g. the average deviation); empty when unused.
    std::string param;
    std::string quantity;
    double value = 0.0;
    double std_error = 0.0;
};

inline constexpr const char *kCsvColumns = "model,n,m,param,quantity,value,stderr";

/// Writes `preamble` lines prefixed by "# ", then the column header and rows.
void write_csv(std::ostream &out, std::span<const CsvRow> rows, std::span<const std::string> preamble = {});

/// Per-event table: event, probability, forbidden.
void write_event_summary_csv(std::ostream &out, std::span<const OccupationEvent> events,
                             std::span<const double> probabilities, int n);

/// Empirical frequency of every distinct event in a batch, ascending by event.
struct EventFrequency {
    OccupationEvent event;
    double frequency;
};
std::vector<EventFrequency> empirical_frequencies(std::span<const OccupationEvent> events);

/// 64-bit FNV-1a hash, hex encoded; used to fingerprint configurations.
std::string fingerprint(const std::string &text);

}  // namespace bosoncert

#endif  // BOSONCERT_IO_HPP
