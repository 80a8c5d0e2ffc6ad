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

#include "bosoncert/cli.hpp"

#include "bosoncert/certify.hpp"
#include "bosoncert/errors.hpp"
#include "bosoncert/figures.hpp"
#include "bosoncert/io.hpp"
#include "bosoncert/permanent.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

namespace bosoncert::cli {

namespace {

using nlohmann::json;

constexpr std::uint64_t kMatrixStream = 1;
constexpr std::uint64_t kDeviationStream = 3;

/// Flat JSON object of option values keyed by long option name. Items are
/// routed to whichever subcommand of `root` was selected.
class JsonConfig : public CLI::Config {
  public:
    explicit JsonConfig(const CLI::App *root) : root_(root) {}

    std::string to_config(const CLI::App *app, bool default_also, bool, std::string) const override {
        json doc = json::object();
        for (const CLI::Option *opt : app->get_options()) {
            if (opt->get_lnames().empty() || !opt->get_configurable()) {
                continue;
            }
            auto values = opt->results();
            if (values.empty() && default_also && !opt->get_default_str().empty()) {
                values.push_back(opt->get_default_str());
            }
            if (values.empty()) {
                continue;
            }
            doc[opt->get_lnames().front()] = values.size() == 1 ? json(values.front()) : json(values);
        }
        return doc.dump(2);
    }

    std::vector<CLI::ConfigItem> from_config(std::istream &in) const override {
        json doc;
        try {
            doc = json::parse(in);
        } catch (const json::exception &e) {
            throw IoError(std::string("config file is not valid JSON: ") + e.what());
        }
        if (!doc.is_object()) {
            throw IoError("config file must hold a JSON object");
        }
        std::vector<std::string> parents;
        for (const CLI::App *sub : root_->get_subcommands()) {
            parents.push_back(sub->get_name());
        }
        std::vector<CLI::ConfigItem> items;
        for (const auto &[key, value] : doc.items()) {
            if (value.is_null()) {
                continue;
            }
            if (value.is_object()) {
                throw IoError("config key '" + key + "' must not be an object");
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (value.is_array()) {
                for (const auto &v : value) {
                    item.inputs.push_back(scalar(v));
                }
            } else {
                item.inputs.push_back(scalar(value));
            }
            items.push_back(std::move(item));
        }
        return items;
    }

  private:
    const CLI::App *root_;

    static std::string scalar(const json &v) {
        if (v.is_string()) {
            return v.get<std::string>();
        }
        if (v.is_boolean()) {
            return v.get<bool>() ? "true" : "false";
        }
        if (v.is_number_float()) {
            return format_double(v.get<double>());
        }
        return v.dump();
    }
};

struct Common {
    std::optional<Seed> seed;
    std::string out;
    std::uint64_t cap = kDefaultEventCap;
    unsigned threads = 0;
};

void add_common(CLI::App *cmd, Common &c) {
    cmd->add_option("--seed", c.seed, "RNG seed; generated and recorded when absent");
    cmd->add_option("--out", c.out, "Output path; stdout when absent");
    cmd->add_option("--cap", c.cap, "Largest event space that may be enumerated")->capture_default_str();
    cmd->add_option("--threads", c.threads, "Worker threads, 0 for all cores")->capture_default_str();
}

Seed resolve_seed(const std::optional<Seed> &seed) {
    if (seed) {
        return *seed;
    }
    std::random_device device;
    return (static_cast<Seed>(device()) << 32) | static_cast<Seed>(device());
}

void emit(const std::string &path, const std::string &text, std::ostream &out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    file << text;
    if (!file) {
        throw IoError("failed writing '" + path + "'");
    }
}

/// Stamps provenance fields onto a document.
void stamp(json &doc, const std::string &command, const json &config, std::optional<Seed> seed) {
    doc["seed"] = seed ? json(*seed) : json(nullptr);
    doc["config_hash"] = fingerprint(command + config.dump());
    doc["version"] = kVersion;
    doc["config"] = config;
}

// ---------------------------------------------------------------------------
// Matrix and input selection shared by several commands.

struct MatrixSource {
    bool fourier = false;
    bool haar = false;
    bool walk = false;
    std::string path;
    std::optional<Mode> m;
    std::optional<int> p;
    int steps = 8;
    std::vector<Mode> input;
    std::optional<double> avg_dev;
    std::string law = "half-normal";
};

void add_matrix_options(CLI::App *cmd, MatrixSource &src) {
    auto *f = cmd->add_flag("--fourier", src.fourier, "Fourier matrix (default)");
    auto *h = cmd->add_flag("--haar", src.haar, "Haar-random matrix");
    auto *w = cmd->add_flag("--walk", src.walk, "Beam-splitter walk matrix");
    auto *x = cmd->add_option("--matrix", src.path, "Matrix JSON file");
    f->excludes(h)->excludes(w)->excludes(x);
    h->excludes(w)->excludes(x);
    w->excludes(x);
    cmd->add_option("--m", src.m, "Number of modes");
    cmd->add_option("--p", src.p, "Fourier exponent, m = n^p");
    cmd->add_option("--steps", src.steps, "Walk steps")->capture_default_str();
    cmd->add_option("--input", src.input, "Input modes, comma separated")->delimiter(',');
    cmd->add_option("--avg-dev", src.avg_dev, "Perturb the matrix to this mean relative deviation");
    cmd->add_option("--law", src.law, "Deviation magnitude law: half-normal, rayleigh, constant")
        ->capture_default_str();
}

MatrixLabel source_kind(const MatrixSource &src) {
    if (src.haar) {
        return MatrixLabel::haar;
    }
    if (src.walk) {
        return MatrixLabel::walk;
    }
    if (!src.path.empty()) {
        return MatrixLabel::custom;
    }
    return MatrixLabel::fourier;
}

std::optional<int> resolve_n(std::optional<int> n, const std::vector<Mode> &input) {
    if (input.empty()) {
        return n;
    }
    const auto count = static_cast<int>(input.size());
    detail::require(!n || *n == count, "--n disagrees with the number of --input modes");
    return count;
}

Mode resolve_m(const MatrixSource &src, std::optional<int> n) {
    if (src.p) {
        detail::require(n.has_value(), "--p needs --n");
        const auto m = make_cyclic_input(*n, *src.p).m;
        detail::require(!src.m || *src.m == m, "--m disagrees with n^p");
        return m;
    }
    if (src.m) {
        return *src.m;
    }
    if (source_kind(src) == MatrixLabel::walk) {
        return 8;
    }
    detail::require(n.has_value(), "pass --m, or --n to default to m = n^2");
    return static_cast<Mode>(*n) * *n;
}

ModeUnitary base_matrix(const MatrixSource &src, std::optional<int> n, Seed seed) {
    switch (source_kind(src)) {
    case MatrixLabel::haar:
        return make_haar_random(resolve_m(src, n), derive_seed(seed, kMatrixStream));
    case MatrixLabel::walk:
        return make_walk_matrix(resolve_m(src, n), src.steps);
    case MatrixLabel::custom: {
        auto u = matrix_from_json(load_json(src.path));
        detail::require(!src.m || *src.m == u.dim(), "--m disagrees with the matrix file");
        return u;
    }
    default:
        return make_fourier(resolve_m(src, n));
    }
}

InputConfig resolve_input(const MatrixSource &src, int n, Mode m) {
    if (!src.input.empty()) {
        InputConfig in(src.input);
        in.check_modes(m);
        return in;
    }
    switch (source_kind(src)) {
    case MatrixLabel::walk:
        return make_adjacent_input(n, m);
    case MatrixLabel::fourier: {
        for (int p = 2; p < 64; ++p) {
            const auto cyc = make_cyclic_input(n, p);
            if (cyc.m == m) {
                return cyc.input;
            }
            if (cyc.m > m) {
                break;
            }
        }
        throw PreconditionError("the default Fourier input needs m = n^p with p >= 2; pass --input");
    }
    default: {
        detail::require(n <= m, "more particles than modes");
        std::vector<Mode> modes;
        for (int r = 1; r <= n; ++r) {
            modes.push_back(r);
        }
        return InputConfig(std::move(modes));
    }
    }
}

struct Setup {
    ModeUnitary u;
    InputConfig input;
    std::optional<PerturbationField> field;
};

Setup build_setup(const MatrixSource &src, std::optional<int> n_flag, Seed seed) {
    const auto n = resolve_n(n_flag, src.input);
    detail::require(n.has_value(), "--n is required");
    detail::require(*n >= 1, "--n must be at least 1");
    auto u = base_matrix(src, n, seed);
    auto input = resolve_input(src, *n, u.dim());
    if (!src.avg_dev) {
        return Setup{std::move(u), std::move(input), std::nullopt};
    }
    auto [w, field] = perturb(u, *src.avg_dev, derive_seed(seed, kDeviationStream), parse_magnitude_law(src.law));
    return Setup{std::move(w), std::move(input), std::move(field)};
}

json setup_config(const MatrixSource &src, const Setup &setup) {
    json doc{{"matrix", src.path.empty() ? json(to_string(source_kind(src))) : json(src.path)},
             {"m", setup.u.dim()},
             {"input", setup.input.modes}};
    if (source_kind(src) == MatrixLabel::walk) {
        doc["steps"] = src.steps;
    }
    if (src.avg_dev) {
        doc["avg_dev"] = *src.avg_dev;
        doc["law"] = src.law;
    }
    return doc;
}

EventProbability exact_model(Model model, const Setup &s, int bad) {
    switch (model) {
    case Model::boson:
        return [&s](const OccupationEvent &e) { return boson_probability(s.u, s.input, e); };
    case Model::classical:
        return [&s](const OccupationEvent &e) { return classical_probability(s.u, s.input, e); };
    case Model::misaligned:
        return [&s, bad](const OccupationEvent &e) { return misaligned_probability(s.u, s.input, bad, e); };
    case Model::uniform: {
        const auto total = multiset_count(s.input.particles(), s.u.dim());
        detail::require(total.has_value(), "event space too large");
        const double p = 1.0 / static_cast<double>(*total);
        return [p](const OccupationEvent &) { return p; };
    }
    default:
        throw PreconditionError("model '" + std::string(to_string(model)) + "' has no exact event table");
    }
}

// ---------------------------------------------------------------------------
// matrix

struct MatrixCmd {
    Common common;
    MatrixSource src;
    std::optional<int> n;
};

void run_matrix(const MatrixCmd &c, std::ostream &out) {
    const Seed seed = resolve_seed(c.common.seed);
    const auto n = resolve_n(c.n, c.src.input);
    auto u = base_matrix(c.src, n, seed);
    std::optional<PerturbationField> field;
    if (c.src.avg_dev) {
        auto [w, f] = perturb(u, *c.src.avg_dev, derive_seed(seed, kDeviationStream), parse_magnitude_law(c.src.law));
        u = std::move(w);
        field = std::move(f);
    }
    json config{{"matrix", c.src.path.empty() ? json(to_string(source_kind(c.src))) : json(c.src.path)},
                {"m", u.dim()}};
    if (source_kind(c.src) == MatrixLabel::walk) {
        config["steps"] = c.src.steps;
    }
    if (field) {
        config["avg_dev"] = *c.src.avg_dev;
        config["law"] = c.src.law;
    }
    config["seed"] = seed;
    auto doc = matrix_to_json(u);
    doc["unitarity_defect"] = u.unitarity_defect();
    if (field) {
        doc["avg_magnitude"] = field->avg_magnitude;
    }
    stamp(doc, "matrix", config, seed);
    emit(c.common.out, doc.dump(2) + "\n", out);
}

// ---------------------------------------------------------------------------
// sample

struct SampleCmd {
    Common common;
    MatrixSource src;
    std::optional<int> n;
    std::string model = "boson";
    std::uint64_t shots = 1000;
    std::optional<int> bad;
    bool freeze_phases = false;
};

void run_sample(const SampleCmd &c, std::ostream &out, std::ostream &err) {
    const Seed seed = resolve_seed(c.common.seed);
    const Model model = parse_model(c.model);
    detail::require(c.shots >= 1, "--shots must be at least 1");
    json config{{"model", c.model}, {"shots", c.shots}, {"seed", seed}};
    SampleBatch batch;
    if (model == Model::uniform) {
        const auto n = resolve_n(c.n, c.src.input);
        detail::require(n.has_value(), "--n is required");
        const Mode m = resolve_m(c.src, n);
        config["n"] = *n;
        config["m"] = m;
        batch = sample_uniform(*n, m, c.shots, seed, c.common.threads);
    } else {
        const auto setup = build_setup(c.src, c.n, seed);
        config.update(setup_config(c.src, setup));
        config["n"] = setup.input.particles();
        const int bad = c.bad.value_or(setup.input.particles());
        switch (model) {
        case Model::classical:
            batch = sample_classical(setup.u, setup.input, c.shots, seed, c.common.threads);
            break;
        case Model::meanfield:
            config["freeze_phases"] = c.freeze_phases;
            batch = sample_meanfield(setup.u, setup.input, c.shots, seed, c.freeze_phases, c.common.threads);
            break;
        case Model::misaligned:
            config["bad"] = bad;
            batch = sample_misaligned(setup.u, setup.input, bad, c.shots, seed, c.common.cap, c.common.threads);
            break;
        default:
            batch = sample_boson(setup.u, setup.input, c.shots, seed, c.common.cap, c.common.threads);
            break;
        }
    }
    auto header = batch_header(batch);
    stamp(header, "sample", config, seed);

    std::ostringstream events;
    write_events_jsonl(events, batch.events);
    const auto report = violation(batch);
    json summary{{"shots", batch.shots()}, {"forbidden", report.forbidden}, {"violation", report.violation},
                 {"seed", seed}, {"config_hash", header["config_hash"]}};
    if (c.common.out.empty()) {
        out << events.str();
        err << summary.dump() << '\n';
        return;
    }
    emit(c.common.out, events.str(), out);
    const std::string header_path = c.common.out + ".header.json";
    emit(header_path, header.dump(2) + "\n", out);
    summary["events"] = c.common.out;
    summary["header"] = header_path;
    out << summary.dump(2) << '\n';
}

// ---------------------------------------------------------------------------
// certify

struct CertifyCmd {
    Common common;
    std::string batch;
    std::optional<int> n;
    std::string model;
    std::optional<double> alpha;
};

void run_certify(const CertifyCmd &c, std::ostream &out) {
    std::optional<json> header;
    const auto header_path = c.batch + ".header.json";
    if (std::filesystem::exists(header_path)) {
        header = load_json(header_path);
    }
    std::optional<int> n = c.n;
    if (!n && header && header->contains("n")) {
        n = header->at("n").get<int>();
    }
    detail::require(n.has_value(), "--n is required when the batch has no header");
    std::optional<Model> model;
    if (!c.model.empty()) {
        model = parse_model(c.model);
    } else if (header && header->contains("model")) {
        model = parse_model(header->at("model").get<std::string>());
    }
    std::optional<Seed> seed;
    if (header && header->contains("seed") && !header->at("seed").is_null()) {
        seed = header->at("seed").get<Seed>();
    }
    const auto events = read_events_jsonl(std::filesystem::path(c.batch));
    detail::require(!events.empty(), "batch '" + c.batch + "' holds no events");
    const auto report = violation(events, *n, model);
    auto doc = to_json(report);
    json config{{"batch", c.batch}, {"n", *n}};
    if (model) {
        config["model"] = to_string(*model);
    }
    if (c.alpha) {
        config["alpha"] = *c.alpha;
        doc["required_runs"] = required_runs(*n, *c.alpha);
    }
    if (header && header->contains("config_hash")) {
        doc["batch_config_hash"] = header->at("config_hash");
    }
    stamp(doc, "certify", config, seed);
    emit(c.common.out, doc.dump(2) + "\n", out);
}

// ---------------------------------------------------------------------------
// witness

struct WitnessCmd {
    Common common;
    MatrixSource src;
    std::optional<int> n;
    std::string model = "boson";
    std::optional<int> bad;
    std::uint64_t draws = 10'000;
    std::string batch;
};

void run_witness(const WitnessCmd &c, std::ostream &out) {
    json config;
    WitnessSummary summary;
    std::optional<Seed> recorded;
    if (!c.batch.empty()) {
        SampleBatch batch;
        batch.events = read_events_jsonl(std::filesystem::path(c.batch));
        detail::require(!batch.events.empty(), "batch '" + c.batch + "' holds no events");
        const auto header_path = c.batch + ".header.json";
        std::optional<json> header;
        if (std::filesystem::exists(header_path)) {
            header = load_json(header_path);
            if (header->contains("seed") && !header->at("seed").is_null()) {
                recorded = header->at("seed").get<Seed>();
            }
        }
        if (c.src.m) {
            batch.m = *c.src.m;
        } else {
            detail::require(header && header->contains("m"), "--m is required when the batch has no header");
            batch.m = header->at("m").get<Mode>();
        }
        batch.n = batch.events.front().particles();
        config = json{{"batch", c.batch}, {"m", batch.m}};
        summary = witnesses(batch);
    } else {
        const Seed seed = resolve_seed(c.common.seed);
        recorded = seed;
        const Model model = parse_model(c.model);
        const auto setup = build_setup(c.src, c.n, seed);
        const int n = setup.input.particles();
        config = setup_config(c.src, setup);
        config["model"] = c.model;
        config["n"] = n;
        config["seed"] = seed;
        if (model == Model::meanfield) {
            config["draws"] = c.draws;
            summary = witnesses_meanfield(setup.u, setup.input, c.draws, seed, c.common.threads);
        } else {
            const int bad = c.bad.value_or(n);
            if (model == Model::misaligned) {
                config["bad"] = bad;
            }
            summary = witnesses_exact(exact_model(model, setup, bad), n, setup.u.dim(), c.common.cap,
                                      c.common.threads);
        }
    }
    auto doc = to_json(summary);
    stamp(doc, "witness", config, recorded);
    emit(c.common.out, doc.dump(2) + "\n", out);
}

// ---------------------------------------------------------------------------
// estimate

struct EstimateCmd {
    Common common;
    std::optional<int> n;
    std::optional<Mode> m;
    std::vector<double> avg_dev;
    std::optional<double> weight;
    std::optional<double> alpha;
    bool numeric = false;
    std::uint64_t draws = 400;
    std::uint64_t subset = 0;
    std::string law = "half-normal";
};

void run_estimate(const EstimateCmd &c, std::ostream &out) {
    detail::require(c.n.has_value(), "--n is required");
    const int n = *c.n;
    detail::require(n >= 1, "--n must be at least 1");
    const Mode m = c.m.value_or(static_cast<Mode>(n) * n);
    json config{{"n", n}, {"m", m}, {"avg_dev", c.avg_dev}};
    json doc{{"n", n}, {"m", m}, {"event_space_size", event_space_size(n, m)}};
    if (n >= 2) {
        const auto forbidden = forbidden_event_count(n, m);
        doc["forbidden_events"] = forbidden ? json(*forbidden) : json(nullptr);
    }
    std::optional<Seed> seed;
    std::optional<CyclicInput> cyc;
    if (c.numeric) {
        seed = resolve_seed(c.common.seed);
        config["numeric"] = true;
        config["draws"] = c.draws;
        config["subset"] = c.subset;
        config["law"] = c.law;
        config["seed"] = *seed;
        for (int p = 2; p < 64 && !cyc; ++p) {
            const auto candidate = make_cyclic_input(n, p);
            if (candidate.m == m) {
                cyc = candidate;
            } else if (candidate.m > m) {
                break;
            }
        }
        detail::require(cyc.has_value(), "numeric estimates need m = n^p with p >= 2");
    }
    json rows = json::array();
    for (std::size_t i = 0; i < c.avg_dev.size(); ++i) {
        const double dev = c.avg_dev[i];
        json entry{{"avg_dev", dev}, {"p_approx", p_approx(n, m, dev)}, {"v_dev", to_json(v_dev_estimate(n, m, dev))}};
        if (cyc) {
            const auto est = v_dev_numeric(make_fourier(m), cyc->input, dev, c.draws, c.subset,
                                           derive_seed(*seed, i), parse_magnitude_law(c.law), c.common.cap,
                                           c.common.threads);
            entry["v_dev_numeric"] = est.value;
            entry["v_dev_numeric_stderr"] = est.std_error;
        }
        rows.push_back(std::move(entry));
    }
    doc["estimates"] = std::move(rows);
    if (c.weight) {
        config["weight"] = *c.weight;
        doc["violation_bound_partial"] = violation_bound_partial(*c.weight, n);
    }
    if (c.alpha) {
        config["alpha"] = *c.alpha;
        doc["required_runs"] = required_runs(n, *c.alpha);
    }
    stamp(doc, "estimate", config, seed);
    emit(c.common.out, doc.dump(2) + "\n", out);
}

// ---------------------------------------------------------------------------
// figure

struct FigureCmd {
    Common common;
    std::string which;
    std::vector<int> n;
    std::uint64_t ensemble = 100;
    std::uint64_t draws = 10'000;
    std::uint64_t dev_draws = 400;
    std::vector<double> avg_dev;
    std::uint64_t subset = 0;
    Mode m = 8;
    int steps = 8;
    std::string law = "half-normal";
};

void run_figure(const FigureCmd &c, std::ostream &out) {
    const Figure figure = parse_figure(c.which);
    FigureOptions opt;
    opt.n = c.n.empty() ? default_particle_numbers(figure) : c.n;
    opt.ensemble = c.ensemble;
    opt.phase_draws = c.draws;
    opt.deviation_draws = c.dev_draws;
    opt.avg_dev = c.avg_dev.empty() ? default_deviation_sweep() : c.avg_dev;
    opt.subset = c.subset;
    opt.walk_modes = c.m;
    opt.walk_steps = c.steps;
    opt.law = parse_magnitude_law(c.law);
    opt.cap = c.common.cap;
    opt.threads = c.common.threads;
    opt.seed = resolve_seed(c.common.seed);

    json config{{"figure", c.which}, {"n", opt.n}, {"seed", opt.seed}};
    switch (figure) {
    case Figure::fig2a:
        config["ensemble"] = opt.ensemble;
        config["draws"] = opt.phase_draws;
        break;
    case Figure::fig2b:
        config["m"] = opt.walk_modes;
        config["steps"] = opt.walk_steps;
        config["draws"] = opt.phase_draws;
        break;
    case Figure::fig3:
        config["draws"] = opt.phase_draws;
        break;
    case Figure::fig4:
        config["avg_dev"] = opt.avg_dev;
        config["dev_draws"] = opt.deviation_draws;
        config["subset"] = opt.subset;
        config["law"] = c.law;
        break;
    }
    const auto rows = figure_rows(figure, opt);
    const std::vector<std::string> preamble{
        std::string("bosoncert ") + kVersion + " figure " + c.which,
        "seed=" + std::to_string(opt.seed),
        "config_hash=" + fingerprint("figure" + config.dump()),
        "config=" + config.dump(),
    };
    std::ostringstream csv;
    write_csv(csv, rows, preamble);
    emit(c.common.out, csv.str(), out);
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Suppression-law certification of boson samplers"};
    app.name("bosoncert");
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    app.config_formatter(std::make_shared<JsonConfig>(&app));
    app.set_config("--config", "", "JSON file of option values; flags take precedence");
    app.fallthrough();
    app.allow_config_extras(false);

    MatrixCmd matrix;
    auto *matrix_cmd = app.add_subcommand("matrix", "Build and save a mode unitary");
    add_common(matrix_cmd, matrix.common);
    add_matrix_options(matrix_cmd, matrix.src);
    matrix_cmd->add_option("--n", matrix.n, "Particle number (with --p)");

    SampleCmd sample;
    auto *sample_cmd = app.add_subcommand("sample", "Draw a batch of output events");
    add_common(sample_cmd, sample.common);
    add_matrix_options(sample_cmd, sample.src);
    sample_cmd->add_option("--n", sample.n, "Particle number");
    sample_cmd->add_option("--model", sample.model, "uniform, classical, meanfield, boson or misaligned")
        ->capture_default_str();
    sample_cmd->add_option("--shots", sample.shots, "Events to draw")->capture_default_str();
    sample_cmd->add_option("--bad", sample.bad, "Distinguishable particle (1-based, default n)");
    sample_cmd->add_flag("--freeze-phases", sample.freeze_phases, "Draw mean-field phases once per batch");

    CertifyCmd certify;
    auto *certify_cmd = app.add_subcommand("certify", "Suppression-law test of a JSONL batch");
    add_common(certify_cmd, certify.common);
    certify_cmd->add_option("batch", certify.batch, "JSONL batch file")->required();
    certify_cmd->add_option("--n", certify.n, "Particle number (read from the header when absent)");
    certify_cmd->add_option("--model", certify.model, "Model label for the report");
    certify_cmd->add_option("--alpha", certify.alpha, "Also report runs needed for this false-accept level");

    WitnessCmd witness;
    auto *witness_cmd = app.add_subcommand("witness", "Coincidence, clouding and mean occupations");
    add_common(witness_cmd, witness.common);
    add_matrix_options(witness_cmd, witness.src);
    witness_cmd->add_option("--n", witness.n, "Particle number");
    witness_cmd->add_option("--model", witness.model, "Model")->capture_default_str();
    witness_cmd->add_option("--bad", witness.bad, "Distinguishable particle (1-based, default n)");
    witness_cmd->add_option("--draws", witness.draws, "Mean-field phase draws")->capture_default_str();
    witness_cmd->add_option("--batch", witness.batch, "Summarize a JSONL batch instead");

    EstimateCmd estimate;
    auto *estimate_cmd = app.add_subcommand("estimate", "Closed-form violation estimates");
    add_common(estimate_cmd, estimate.common);
    estimate_cmd->add_option("--n", estimate.n, "Particle number");
    estimate_cmd->add_option("--m", estimate.m, "Number of modes (default n^2)");
    estimate_cmd->add_option("--avg-dev", estimate.avg_dev, "Mean relative deviations")->delimiter(',');
    estimate_cmd->add_option("--weight", estimate.weight, "Weight of the indistinguishable term");
    estimate_cmd->add_option("--alpha", estimate.alpha, "False-accept level for required runs");
    estimate_cmd->add_flag("--numeric", estimate.numeric, "Add Monte-Carlo values on the Fourier setup");
    estimate_cmd->add_option("--draws", estimate.draws, "Perturbation draws")->capture_default_str();
    estimate_cmd->add_option("--subset", estimate.subset, "Forbidden events per draw, 0 for all")
        ->capture_default_str();
    estimate_cmd->add_option("--law", estimate.law, "Deviation magnitude law")->capture_default_str();

    FigureCmd figure;
    auto *figure_cmd = app.add_subcommand("figure", "Data table for fig2a, fig2b, fig3 or fig4");
    add_common(figure_cmd, figure.common);
    figure_cmd->add_option("which", figure.which, "fig2a, fig2b, fig3 or fig4")->required();
    figure_cmd->add_option("--n", figure.n, "Particle numbers")->delimiter(',');
    figure_cmd->add_option("--ensemble", figure.ensemble, "Haar matrices per n")->capture_default_str();
    figure_cmd->add_option("--draws", figure.draws, "Mean-field phase draws")->capture_default_str();
    figure_cmd->add_option("--dev-draws", figure.dev_draws, "Perturbation draws per deviation")
        ->capture_default_str();
    figure_cmd->add_option("--avg-dev", figure.avg_dev, "Deviation sweep")->delimiter(',');
    figure_cmd->add_option("--subset", figure.subset, "Forbidden events per draw, 0 for all")
        ->capture_default_str();
    figure_cmd->add_option("--m", figure.m, "Walk modes")->capture_default_str();
    figure_cmd->add_option("--steps", figure.steps, "Walk steps")->capture_default_str();
    figure_cmd->add_option("--law", figure.law, "Deviation magnitude law")->capture_default_str();

    try {
        app.parse(argc, argv);
        if (matrix_cmd->parsed()) {
            run_matrix(matrix, out);
        } else if (sample_cmd->parsed()) {
            run_sample(sample, out, err);
        } else if (certify_cmd->parsed()) {
            run_certify(certify, out);
        } else if (witness_cmd->parsed()) {
            run_witness(witness, out);
        } else if (estimate_cmd->parsed()) {
            run_estimate(estimate, out);
        } else if (figure_cmd->parsed()) {
            run_figure(figure, out);
        }
        return kExitOk;
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e, out, err);
    } catch (const CLI::FileError &e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kExitPrecondition;
    } catch (const CapExceededError &e) {
        err << "error: " << e.what() << '\n';
        return kExitCapExceeded;
    } catch (const PreconditionError &e) {
        err << "error: " << e.what() << '\n';
        return kExitPrecondition;
    } catch (const IoError &e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
}

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    std::vector<const char *> argv{"bosoncert"};
    for (const auto &a : args) {
        argv.push_back(a.c_str());
    }
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace bosoncert::cli
