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

#include "bosoncert/io.hpp"

#include "bosoncert/errors.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace bosoncert {

using nlohmann::json;

std::string format_double(double value) {
    char buffer[64];
    const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, result.ptr);
}

json matrix_to_json(const ModeUnitary &u) {
    const auto &a = u.entries();
    json re = json::array();
    json im = json::array();
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        json re_row = json::array();
        json im_row = json::array();
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            re_row.push_back(a(r, c).real());
            im_row.push_back(a(r, c).imag());
        }
        re.push_back(std::move(re_row));
        im.push_back(std::move(im_row));
    }
    return json{{"m", u.dim()}, {"re", std::move(re)}, {"im", std::move(im)}, {"label", to_string(u.label())}};
}

ModeUnitary matrix_from_json(const json &doc) {
    Eigen::MatrixXcd a;
    MatrixLabel label = MatrixLabel::custom;
    try {
        const auto m = doc.at("m").get<std::int64_t>();
        if (m < 1) {
            throw IoError("matrix dimension must be positive");
        }
        const auto &re = doc.at("re");
        const auto &im = doc.at("im");
        if (!re.is_array() || !im.is_array() || re.size() != static_cast<std::size_t>(m) ||
            im.size() != static_cast<std::size_t>(m)) {
            throw IoError("matrix 're'/'im' must hold m rows");
        }
        a.resize(m, m);
        for (std::int64_t r = 0; r < m; ++r) {
            const auto &re_row = re.at(static_cast<std::size_t>(r));
            const auto &im_row = im.at(static_cast<std::size_t>(r));
            if (re_row.size() != static_cast<std::size_t>(m) || im_row.size() != static_cast<std::size_t>(m)) {
                throw IoError("matrix row " + std::to_string(r + 1) + " must hold m entries");
            }
            for (std::int64_t c = 0; c < m; ++c) {
                a(r, c) = Complex(re_row.at(static_cast<std::size_t>(c)).get<double>(),
                                  im_row.at(static_cast<std::size_t>(c)).get<double>());
            }
        }
        if (doc.contains("label")) {
            label = parse_matrix_label(doc.at("label").get<std::string>());
        }
    } catch (const json::exception &err) {
        throw IoError(std::string("malformed matrix document: ") + err.what());
    }
    return ModeUnitary(std::move(a), label);
}

void save_json(const json &doc, const std::filesystem::path &path) {
    std::ofstream out(path);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out << doc.dump(2) << '\n';
    if (!out) {
        throw IoError("failed writing '" + path.string() + "'");
    }
}

json load_json(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::exception &err) {
        throw IoError("'" + path.string() + "' is not valid JSON: " + err.what());
    }
}

void write_events_jsonl(std::ostream &out, std::span<const OccupationEvent> events) {
    std::string line;
    for (const auto &e : events) {
        line = "{\"k\":[";
        for (std::size_t i = 0; i < e.modes().size(); ++i) {
            if (i) {
                line += ',';
            }
            line += std::to_string(e[i]);
        }
        line += "]}\n";
        out << line;
    }
}

std::vector<OccupationEvent> read_events_jsonl(std::istream &in) {
    std::vector<OccupationEvent> out;
    std::string line;
    std::size_t number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        try {
            const auto doc = json::parse(line);
            auto modes = doc.at("k").get<std::vector<Mode>>();
            if (modes.empty()) {
                throw IoError("empty event");
            }
            out.emplace_back(std::move(modes));
        } catch (const std::exception &err) {
            throw IoError("line " + std::to_string(number) + ": malformed event (" + err.what() + ")");
        }
    }
    return out;
}

std::vector<OccupationEvent> read_events_jsonl(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "'");
    }
    return read_events_jsonl(in);
}

json batch_header(const SampleBatch &batch) {
    json doc{{"model", to_string(batch.model)},
             {"n", batch.n},
             {"m", batch.m},
             {"seed", batch.seed},
             {"shots", batch.shots()}};
    doc["matrix"] = batch.matrix_label ? json(to_string(*batch.matrix_label)) : json(nullptr);
    return doc;
}

json to_json(const ViolationReport &report) {
    json doc{{"forbidden", report.forbidden},
             {"runs", report.runs},
             {"violation", report.violation},
             {"n", report.n}};
    doc["model"] = report.model ? json(to_string(*report.model)) : json(nullptr);
    doc["false_accept_prob"] = report.false_accept_prob ? json(*report.false_accept_prob) : json(nullptr);
    return doc;
}

json to_json(const WitnessSummary &summary) {
    json doc{{"P1", summary.p1.value},
             {"P1_stderr", summary.p1.std_error},
             {"mean_occupations", summary.mean_occupations},
             {"mean_occupations_stderr", summary.mean_occupation_stderr}};
    if (summary.clouding) {
        doc["clouding"] = summary.clouding->value;
        doc["clouding_stderr"] = summary.clouding->std_error;
    } else {
        doc["clouding"] = nullptr;
        doc["clouding_stderr"] = nullptr;
    }
    return doc;
}

json to_json(const DeviationEstimate &estimate) {
    json doc{{"general", estimate.general}, {"small_deviation", estimate.small_deviation}};
    doc["closed_form"] = estimate.closed_form ? json(*estimate.closed_form) : json(nullptr);
    return doc;
}

void write_csv(std::ostream &out, std::span<const CsvRow> rows, std::span<const std::string> preamble) {
    for (const auto &line : preamble) {
        out << "# " << line << '\n';
    }
    out << kCsvColumns << '\n';
    for (const auto &row : rows) {
        out << row.model << ',' << row.n << ',' << row.m << ',' << row.param << ',' << row.quantity << ','
            << format_double(row.value) << ',' << format_double(row.std_error) << '\n';
    }
}

void write_event_summary_csv(std::ostream &out, std::span<const OccupationEvent> events,
                             std::span<const double> probabilities, int n) {
    detail::require(events.size() == probabilities.size(), "one probability per event");
    out << "event,probability,forbidden\n";
    for (std::size_t i = 0; i < events.size(); ++i) {
        std::string label;
        for (std::size_t k = 0; k < events[i].modes().size(); ++k) {
            if (k) {
                label += ' ';
            }
            label += std::to_string(events[i][k]);
        }
        out << label << ',' << format_double(probabilities[i]) << ','
            << (is_forbidden(events[i], n) ? "true" : "false") << '\n';
    }
}

std::vector<EventFrequency> empirical_frequencies(std::span<const OccupationEvent> events) {
    std::map<OccupationEvent, std::uint64_t> counts;
    for (const auto &e : events) {
        ++counts[e];
    }
    std::vector<EventFrequency> out;
    out.reserve(counts.size());
    const auto total = static_cast<double>(events.size());
    for (const auto &[event, count] : counts) {
        out.push_back({event, static_cast<double>(count) / total});
    }
    return out;
}

std::string fingerprint(const std::string &text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buffer[17];
    std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(h));
    return buffer;
}

}  // namespace bosoncert
