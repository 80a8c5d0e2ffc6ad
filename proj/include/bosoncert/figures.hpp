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

#ifndef BOSONCERT_FIGURES_HPP
#define BOSONCERT_FIGURES_HPP

#include "bosoncert/io.hpp"
#include "bosoncert/linalg.hpp"
#include "bosoncert/rng.hpp"
#include "bosoncert/samplers.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace bosoncert {

enum class Figure { fig2a, fig2b, fig3, fig4 };

std::string_view to_string(Figure figure);
Figure parse_figure(std::string_view text);

struct FigureOptions {
    /// Particle numbers; empty selects the figure's default list.
    std::vector<int> n;
    /// Haar matrices per particle number (fig2a).
    std::uint64_t ensemble = 100;
    /// Phase draws for mean-field averages.
    std::uint64_t phase_draws = 10'000;
    /// Perturbation matrices per deviation value (fig4).
    std::uint64_t deviation_draws = 400;
    /// Deviation sweep (fig4); empty selects the default sweep.
    std::vector<double> avg_dev;
    /// Forbidden events per perturbation draw; 0 uses all of them.
    std::uint64_t subset = 0;
    Mode walk_modes = 8;
    int walk_steps = 8;
    MagnitudeLaw law = MagnitudeLaw::half_normal;
    std::uint64_t cap = kDefaultEventCap;
    unsigned threads = 0;
    Seed seed = 0;
};

std::vector<int> default_particle_numbers(Figure figure);
std::vector<double> default_deviation_sweep();

/// Data table for one figure. Rows are deterministic for fixed options.
std::vector<CsvRow> figure_rows(Figure figure, const FigureOptions &options);

}  // namespace bosoncert

#endif  // BOSONCERT_FIGURES_HPP
