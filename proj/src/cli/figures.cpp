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

#include "bosoncert/figures.hpp"

#include "bosoncert/certify.hpp"
#include "bosoncert/errors.hpp"
#include "bosoncert/permanent.hpp"

#include <cmath>
#include <string>

namespace bosoncert {

namespace {

// Stream tags keep matrix, phase and perturbation randomness apart.
constexpr std::uint64_t kMatrixStream = 1;
constexpr std::uint64_t kPhaseStream = 2;
constexpr std::uint64_t kDeviationStream = 3;

Seed sub_seed(Seed seed, std::uint64_t tag, std::uint64_t a, std::uint64_t b = 0) {
    return derive_seed(derive_seed(derive_seed(seed, tag), a), b);
}

CsvRow row(Model model, int n, Mode m, std::string param, std::string quantity, Estimate e) {
    return CsvRow{std::string(to_string(model)), n, m, std::move(param), std::move(quantity), e.value, e.std_error};
}

InputConfig first_modes(int n) {
    std::vector<Mode> modes;
    for (int r = 1; r <= n; ++r) {
        modes.push_back(r);
    }
    return InputConfig(std::move(modes));
}

Estimate ensemble_mean(const std::vector<double> &values) {
    const auto count = static_cast<double>(values.size());
    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= count;
    double var = 0.0;
    for (double v : values) {
        var += (v - mean) * (v - mean);
    }
    const double sd = values.size() > 1 ? std::sqrt(var / (count - 1.0)) : 0.0;
    return Estimate{mean, sd / std::sqrt(count)};
}

std::vector<CsvRow> coincidence_rows(const FigureOptions &opt, const std::vector<int> &ns) {
    detail::require(opt.ensemble >= 1, "ensemble size must be positive");
    std::vector<CsvRow> rows;
    for (int n : ns) {
        detail::require(n >= 1, "particle number must be positive");
        const Mode m = static_cast<Mode>(n) * n;
        const auto input = first_modes(n);
        std::vector<double> boson(opt.ensemble), classical(opt.ensemble), meanfield(opt.ensemble);
        for (std::uint64_t e = 0; e < opt.ensemble; ++e) {
            const auto u = make_haar_random(m, sub_seed(opt.seed, kMatrixStream, static_cast<std::uint64_t>(n), e));
            boson[e] = witnesses_exact([&](const OccupationEvent &ev) { return boson_probability(u, input, ev); }, n,
                                       m, opt.cap, opt.threads)
                           .p1.value;
            classical[e] =
                witnesses_exact([&](const OccupationEvent &ev) { return classical_probability(u, input, ev); }, n, m,
                                opt.cap, opt.threads)
                    .p1.value;
            meanfield[e] = witnesses_meanfield(u, input, opt.phase_draws,
                                               sub_seed(opt.seed, kPhaseStream, static_cast<std::uint64_t>(n), e),
                                               opt.threads)
                               .p1.value;
        }
        rows.push_back(row(Model::boson, n, m, "", "P1", ensemble_mean(boson)));
        rows.push_back(row(Model::meanfield, n, m, "", "P1", ensemble_mean(meanfield)));
        rows.push_back(row(Model::classical, n, m, "", "P1", ensemble_mean(classical)));
    }
    return rows;
}

std::vector<CsvRow> clouding_rows(const FigureOptions &opt, const std::vector<int> &ns) {
    const auto u = make_walk_matrix(opt.walk_modes, opt.walk_steps);
    const Mode m = u.dim();
    const std::string param = "steps=" + std::to_string(opt.walk_steps);
    std::vector<CsvRow> rows;
    for (int n : ns) {
        const auto input = make_adjacent_input(n, m);
        const auto boson = witnesses_exact([&](const OccupationEvent &ev) { return boson_probability(u, input, ev); },
                                           n, m, opt.cap, opt.threads);
        const auto meanfield = witnesses_meanfield(
            u, input, opt.phase_draws, sub_seed(opt.seed, kPhaseStream, static_cast<std::uint64_t>(n)), opt.threads);
        const auto classical =
            witnesses_exact([&](const OccupationEvent &ev) { return classical_probability(u, input, ev); }, n, m,
                            opt.cap, opt.threads);
        rows.push_back(row(Model::boson, n, m, param, "C", *boson.clouding));
        rows.push_back(row(Model::meanfield, n, m, param, "C", *meanfield.clouding));
        rows.push_back(row(Model::classical, n, m, param, "C", *classical.clouding));
    }
    return rows;
}

std::vector<CsvRow> violation_rows(const FigureOptions &opt, const std::vector<int> &ns) {
    std::vector<CsvRow> rows;
    for (int n : ns) {
        detail::require(n >= 2, "suppression-law figures need n >= 2");
        const auto cyc = make_cyclic_input(n, 2);
        const auto u = make_fourier(cyc.m);
        const auto &input = cyc.input;
        const auto total = multiset_count(n, cyc.m);
        const auto forbidden = forbidden_event_count(n, cyc.m);
        detail::require(total && forbidden, "event space too large to count");
        const double uniform = static_cast<double>(*forbidden) / static_cast<double>(*total);
        const auto exact = [&](const EventProbability &p) {
            return Estimate{expected_violation_exact(p, n, cyc.m, opt.cap, opt.threads), 0.0};
        };
        const std::string param = "bad=" + std::to_string(n);
        rows.push_back(row(Model::uniform, n, cyc.m, "", "V_exact", Estimate{uniform, 0.0}));
        rows.push_back(row(Model::classical, n, cyc.m, "", "V_exact",
                           exact([&](const OccupationEvent &e) { return classical_probability(u, input, e); })));
        rows.push_back(row(Model::meanfield, n, cyc.m, "", "V_exact",
                           meanfield_violation(u, input, opt.phase_draws,
                                               sub_seed(opt.seed, kPhaseStream, static_cast<std::uint64_t>(n)),
                                               opt.threads)));
        rows.push_back(row(Model::misaligned, n, cyc.m, param, "V_exact",
                           exact([&](const OccupationEvent &e) { return misaligned_probability(u, input, n, e); })));
        rows.push_back(row(Model::boson, n, cyc.m, "", "V_exact",
                           exact([&](const OccupationEvent &e) { return boson_probability(u, input, e); })));
    }
    return rows;
}

std::vector<CsvRow> deviation_rows(const FigureOptions &opt, const std::vector<int> &ns) {
    const auto sweep = opt.avg_dev.empty() ? default_deviation_sweep() : opt.avg_dev;
    std::vector<CsvRow> rows;
    for (int n : ns) {
        const auto cyc = make_cyclic_input(n, 2);
        const auto u = make_fourier(cyc.m);
        for (std::size_t i = 0; i < sweep.size(); ++i) {
            const double dev = sweep[i];
            const std::string param = format_double(dev);
            const auto numeric =
                v_dev_numeric(u, cyc.input, dev, opt.deviation_draws, opt.subset,
                              sub_seed(opt.seed, kDeviationStream, static_cast<std::uint64_t>(n), i), opt.law, opt.cap,
                              opt.threads);
            const auto estimate = v_dev_estimate(n, cyc.m, dev);
            rows.push_back(row(Model::boson, n, cyc.m, param, "V_numeric", numeric));
            if (estimate.closed_form) {
                rows.push_back(row(Model::boson, n, cyc.m, param, "V_estimate", Estimate{*estimate.closed_form, 0.0}));
            }
            rows.push_back(row(Model::boson, n, cyc.m, param, "V_estimate_general", Estimate{estimate.general, 0.0}));
        }
    }
    return rows;
}

}  // namespace

std::string_view to_string(Figure figure) {
    switch (figure) {
    case Figure::fig2a:
        return "fig2a";
    case Figure::fig2b:
        return "fig2b";
    case Figure::fig3:
        return "fig3";
    case Figure::fig4:
        return "fig4";
    }
    return "fig2a";
}

Figure parse_figure(std::string_view text) {
    for (auto f : {Figure::fig2a, Figure::fig2b, Figure::fig3, Figure::fig4}) {
        if (to_string(f) == text) {
            return f;
        }
    }
    throw PreconditionError("unknown figure '" + std::string(text) + "' (expected fig2a, fig2b, fig3 or fig4)");
}

std::vector<int> default_particle_numbers(Figure figure) {
    switch (figure) {
    case Figure::fig2a:
        return {3, 4};
    case Figure::fig2b:
        return {2, 3, 4};
    case Figure::fig3:
        return {2, 3, 4, 5};
    case Figure::fig4:
        return {3};
    }
    return {};
}

std::vector<double> default_deviation_sweep() {
    return {0.005, 0.01, 0.02, 0.03, 0.05, 0.1, 0.2, 0.3, 0.5};
}

std::vector<CsvRow> figure_rows(Figure figure, const FigureOptions &options) {
    const auto ns = options.n.empty() ? default_particle_numbers(figure) : options.n;
    switch (figure) {
    case Figure::fig2a:
        return coincidence_rows(options, ns);
    case Figure::fig2b:
        return clouding_rows(options, ns);
    case Figure::fig3:
        return violation_rows(options, ns);
    case Figure::fig4:
        return deviation_rows(options, ns);
    }
    return {};
}

}  // namespace bosoncert
