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

#ifndef BOSONCERT_LINALG_HPP
#define BOSONCERT_LINALG_HPP

#include "bosoncert/events.hpp"
#include "bosoncert/rng.hpp"

#include <Eigen/Dense>

#include <complex>
#include <string_view>
#include <utility>

namespace bosoncert {

using Complex = std::complex<double>;

/// Largest |U^dagger U - I| entry tolerated for anything labelled unitary.
inline constexpr double kUnitarityTolerance = 1e-10;

enum class MatrixLabel { haar, fourier, walk, perturbed, custom };

std::string_view to_string(MatrixLabel label);
MatrixLabel parse_matrix_label(std::string_view text);

/// Max-norm of U^dagger U - I.
double unitarity_defect(const Eigen::MatrixXcd &u);

/// Single-particle mode transformation of an m-mode interferometer.
///
/// Row l holds the amplitudes of a particle entering mode l, so the
/// amplitude for l -> q is at(l, q). Indices are 1-based at this interface.
/// Every label except `perturbed` carries a unitarity guarantee checked on
/// construction.
class ModeUnitary {
  public:
    ModeUnitary(Eigen::MatrixXcd entries, MatrixLabel label);

    Mode dim() const noexcept { return static_cast<Mode>(entries_.rows()); }
    const Eigen::MatrixXcd &entries() const noexcept { return entries_; }
    Complex at(Mode l, Mode q) const { return entries_(l - 1, q - 1); }
    double unitarity_defect() const noexcept { return defect_; }
    MatrixLabel label() const noexcept { return label_; }

  private:
    Eigen::MatrixXcd entries_;
    MatrixLabel label_;
    double defect_;
};

/// Relative deviation field; the implemented matrix is U (1 + delta) entrywise.
struct PerturbationField {
    Eigen::MatrixXcd delta;
    /// Arithmetic mean of |delta(l, q)|.
    double avg_magnitude = 0.0;

    Mode dim() const noexcept { return static_cast<Mode>(delta.rows()); }
};

/// Law for the magnitudes |delta(l, q)| before rescaling to the target mean.
enum class MagnitudeLaw { half_normal, rayleigh, constant };

std::string_view to_string(MagnitudeLaw law);
MagnitudeLaw parse_magnitude_law(std::string_view text);

/// U(l, q) = exp(2 pi i l q / m) / sqrt(m), l, q = 1..m.
ModeUnitary make_fourier(Mode m);

/// Cyclically symmetric input for the Fourier interferometer of m = n^p modes.
struct CyclicInput {
    InputConfig input;
    Mode m;
};

/// Modes 1, n^(p-1)+1, 2 n^(p-1)+1, ..., (n-1) n^(p-1)+1; n >= 2, p >= 2.
CyclicInput make_cyclic_input(int n, int p);

/// n neighbouring modes centred in an m-mode array.
InputConfig make_adjacent_input(int n, Mode m);

/// Haar-random unitary from the QR factorization of a complex Gaussian matrix.
ModeUnitary make_haar_random(Mode m, Seed seed);

/// Brick-wall network of balanced beam splitters.
///
/// Odd layers couple modes (1,2), (3,4), ...; even layers couple (2,3), (4,5), ...
/// Each coupler is (1/sqrt 2) [[1, i], [i, 1]].
ModeUnitary make_walk_matrix(Mode m, int steps);

/// W = U (1 + delta) with i.i.d. uniform phases and magnitudes drawn from `law`,
/// rescaled so the mean |delta| equals `target_avg` exactly.
std::pair<ModeUnitary, PerturbationField> perturb(const ModeUnitary &u, double target_avg, Seed seed,
                                                  MagnitudeLaw law = MagnitudeLaw::half_normal);

}  // namespace bosoncert

#endif  // BOSONCERT_LINALG_HPP
