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

#include "bosoncert/certify.hpp"
#include "bosoncert/cli.hpp"
#include "bosoncert/errors.hpp"
#include "bosoncert/figures.hpp"
#include "bosoncert/io.hpp"
#include "bosoncert/linalg.hpp"
#include "bosoncert/permanent.hpp"
#include "bosoncert/samplers.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace bosoncert;

namespace {

ModeUnitary as_unitary(const Eigen::MatrixXcd &a, const std::string &label) {
    return ModeUnitary(a, parse_matrix_label(label));
}

OccupationEvent as_event(const std::vector<Mode> &modes) {
    return OccupationEvent(modes);
}

std::vector<std::vector<Mode>> as_lists(const std::vector<OccupationEvent> &events) {
    std::vector<std::vector<Mode>> out;
    out.reserve(events.size());
    for (const auto &e : events) {
        out.emplace_back(e.modes().begin(), e.modes().end());
    }
    return out;
}

std::vector<OccupationEvent> as_events(const std::vector<std::vector<Mode>> &lists) {
    std::vector<OccupationEvent> out;
    out.reserve(lists.size());
    for (const auto &k : lists) {
        out.emplace_back(k);
    }
    return out;
}

py::dict report_dict(const ViolationReport &r) {
    py::dict d;
    d["forbidden"] = r.forbidden;
    d["runs"] = r.runs;
    d["violation"] = r.violation;
    d["false_accept_prob"] = r.false_accept_prob ? py::cast(*r.false_accept_prob) : py::none();
    d["n"] = r.n;
    return d;
}

std::vector<std::vector<Mode>> sample(const std::string &model, const Eigen::MatrixXcd &u,
                                      const std::vector<Mode> &input, std::uint64_t shots, Seed seed,
                                      std::optional<int> bad, const std::string &label, std::uint64_t cap) {
    const auto w = as_unitary(u, label);
    const InputConfig in(input);
    switch (parse_model(model)) {
    case Model::uniform:
        return as_lists(sample_uniform(in.particles(), w.dim(), shots, seed).events);
    case Model::classical:
        return as_lists(sample_classical(w, in, shots, seed).events);
    case Model::meanfield:
        return as_lists(sample_meanfield(w, in, shots, seed).events);
    case Model::misaligned:
        return as_lists(sample_misaligned(w, in, bad.value_or(in.particles()), shots, seed, cap).events);
    case Model::boson:
        return as_lists(sample_boson(w, in, shots, seed, cap).events);
    }
    return {};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Suppression-law certification of boson samplers";
    m.attr("__version__") = kVersion;

    py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_ValueError);
    py::register_exception<CapExceededError>(m, "CapExceededError", PyExc_MemoryError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    m.def("fourier", [](Mode size) { return make_fourier(size).entries(); }, py::arg("m"));
    m.def("haar", [](Mode size, Seed seed) { return make_haar_random(size, seed).entries(); }, py::arg("m"),
          py::arg("seed"));
    m.def("walk", [](Mode size, int steps) { return make_walk_matrix(size, steps).entries(); }, py::arg("m"),
          py::arg("steps"));
    m.def(
        "perturb",
        [](const Eigen::MatrixXcd &u, double avg, Seed seed, const std::string &law) {
            auto [w, field] = perturb(as_unitary(u, "custom"), avg, seed, parse_magnitude_law(law));
            return std::make_pair(w.entries(), field.delta);
        },
        py::arg("u"), py::arg("avg_dev"), py::arg("seed"), py::arg("law") = "half-normal");
    m.def(
        "cyclic_input",
        [](int n, int p) {
            const auto c = make_cyclic_input(n, p);
            return std::make_pair(c.input.modes, c.m);
        },
        py::arg("n"), py::arg("p"));
    m.def("unitarity_defect", [](const Eigen::MatrixXcd &u) { return unitarity_defect(u); }, py::arg("u"));

    m.def("permanent", [](const Eigen::MatrixXcd &a) { return permanent_ryser(a); }, py::arg("a"));
    m.def(
        "boson_probability",
        [](const Eigen::MatrixXcd &u, const std::vector<Mode> &input, const std::vector<Mode> &event,
           const std::string &label) { return boson_probability(as_unitary(u, label), InputConfig(input), as_event(event)); },
        py::arg("u"), py::arg("input"), py::arg("event"), py::arg("label") = "custom");
    m.def(
        "classical_probability",
        [](const Eigen::MatrixXcd &u, const std::vector<Mode> &input, const std::vector<Mode> &event,
           const std::string &label) {
            return classical_probability(as_unitary(u, label), InputConfig(input), as_event(event));
        },
        py::arg("u"), py::arg("input"), py::arg("event"), py::arg("label") = "custom");
    m.def(
        "misaligned_probability",
        [](const Eigen::MatrixXcd &u, const std::vector<Mode> &input, int bad, const std::vector<Mode> &event,
           const std::string &label) {
            return misaligned_probability(as_unitary(u, label), InputConfig(input), bad, as_event(event));
        },
        py::arg("u"), py::arg("input"), py::arg("bad"), py::arg("event"), py::arg("label") = "custom");

    m.def("events", [](int n, Mode size, std::uint64_t cap) { return as_lists(enumerate_events(n, size, cap)); },
          py::arg("n"), py::arg("m"), py::arg("cap") = kDefaultEventCap);
    m.def("sample", &sample, py::arg("model"), py::arg("u"), py::arg("input"), py::arg("shots"), py::arg("seed"),
          py::arg("bad") = py::none(), py::arg("label") = "custom", py::arg("cap") = kDefaultEventCap);
    m.def("sample_uniform",
          [](int n, Mode size, std::uint64_t shots, Seed seed) { return as_lists(sample_uniform(n, size, shots, seed).events); },
          py::arg("n"), py::arg("m"), py::arg("shots"), py::arg("seed"));

    m.def("is_forbidden", [](const std::vector<Mode> &event, int n) { return is_forbidden(as_event(event), n); },
          py::arg("event"), py::arg("n"));
    m.def("violation",
          [](const std::vector<std::vector<Mode>> &events, int n) { return report_dict(violation(as_events(events), n)); },
          py::arg("events"), py::arg("n"));
    m.def("required_runs", &required_runs, py::arg("n"), py::arg("alpha"));
    m.def("false_accept_probability", &false_accept_probability, py::arg("n"), py::arg("runs"));
    m.def("forbidden_event_count", &forbidden_event_count, py::arg("n"), py::arg("m"));
    m.def("p_approx", &p_approx, py::arg("n"), py::arg("m"), py::arg("avg_dev"));
    m.def(
        "v_dev_estimate",
        [](int n, Mode size, double dev) {
            const auto e = v_dev_estimate(n, size, dev);
            py::dict d;
            d["general"] = e.general;
            d["closed_form"] = e.closed_form ? py::cast(*e.closed_form) : py::none();
            d["small_deviation"] = e.small_deviation;
            return d;
        },
        py::arg("n"), py::arg("m"), py::arg("avg_dev"));
    m.def(
        "violation_bound_partial",
        [](const Eigen::MatrixXcd &overlaps) {
            return violation_bound_partial(distinguishability_coeffs(overlaps), static_cast<int>(overlaps.rows()));
        },
        py::arg("overlaps"));
    m.def("distinguishability_coeffs", &distinguishability_coeffs, py::arg("overlaps"));

    m.def(
        "figure",
        [](const std::string &which, Seed seed, std::vector<int> n, std::uint64_t ensemble, std::uint64_t draws,
           std::uint64_t dev_draws, std::vector<double> avg_dev) {
            FigureOptions opt;
            opt.seed = seed;
            opt.n = std::move(n);
            opt.ensemble = ensemble;
            opt.phase_draws = draws;
            opt.deviation_draws = dev_draws;
            opt.avg_dev = std::move(avg_dev);
            py::list rows;
            for (const auto &r : figure_rows(parse_figure(which), opt)) {
                py::dict d;
                d["model"] = r.model;
                d["n"] = r.n;
                d["m"] = r.m;
                d["param"] = r.param;
                d["quantity"] = r.quantity;
                d["value"] = r.value;
                d["stderr"] = r.std_error;
                rows.append(d);
            }
            return rows;
        },
        py::arg("which"), py::arg("seed"), py::arg("n") = std::vector<int>{}, py::arg("ensemble") = 100,
        py::arg("draws") = 10'000, py::arg("dev_draws") = 400, py::arg("avg_dev") = std::vector<double>{});

    m.def(
        "cli",
        [](const std::vector<std::string> &args) {
            std::ostringstream out;
            std::ostringstream err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
