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

#include "bosoncert/linalg.hpp"

#include "bosoncert/errors.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

namespace bosoncert {

std::string_view to_string(MatrixLabel label) {
    switch (label) {
    case MatrixLabel::haar:
        return "haar";
    case MatrixLabel::fourier:
        return "fourier";
    case MatrixLabel::walk:
        return "walk";
    case MatrixLabel::perturbed:
        return "perturbed";
    case MatrixLabel::custom:
        return "custom";
    }
    return "custom";
}

MatrixLabel parse_matrix_label(std::string_view text) {
    for (auto label : {MatrixLabel::haar, MatrixLabel::fourier, MatrixLabel::walk,
                       MatrixLabel::perturbed, MatrixLabel::custom}) {
        if (to_string(label) == text) {
            return label;
        }
    }
    throw PreconditionError("unknown matrix label '" + std::string(text) + "'");
}

std::string_view to_string(MagnitudeLaw law) {
    switch (law) {
    case MagnitudeLaw::half_normal:
        return "half-normal";
    case MagnitudeLaw::rayleigh:
        return "rayleigh";
    case MagnitudeLaw::constant:
        return "constant";
    }
    return "half-normal";
}

MagnitudeLaw parse_magnitude_law(std::string_view text) {
    for (auto law : {MagnitudeLaw::half_normal, MagnitudeLaw::rayleigh, MagnitudeLaw::constant}) {
        if (to_string(law) == text) {
            return law;
        }
    }
    throw PreconditionError("unknown magnitude law '" + std::string(text) + "'");
}

double unitarity_defect(const Eigen::MatrixXcd &u) {
    if (u.size() == 0) {
        return 0.0;
    }
    const Eigen::MatrixXcd gram = u.adjoint() * u;
    return (gram - Eigen::MatrixXcd::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff();
}

ModeUnitary::ModeUnitary(Eigen::MatrixXcd entries, MatrixLabel label)
    : entries_(std::move(entries)), label_(label) {
    detail::require(entries_.rows() >= 1 && entries_.rows() == entries_.cols(),
                    "mode transformation must be a nonempty square matrix");
    detail::require(entries_.allFinite(), "mode transformation has non-finite entries");
    defect_ = bosoncert::unitarity_defect(entries_);
    if (label_ != MatrixLabel::perturbed && defect_ > kUnitarityTolerance) {
        throw PreconditionError("matrix labelled '" + std::string(to_string(label_)) +
                                "' is not unitary (defect " + std::to_string(defect_) + ")");
    }
}

ModeUnitary make_fourier(Mode m) {
    detail::require(m >= 1, "Fourier matrix needs m >= 1");
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    Eigen::MatrixXcd u(m, m);
    for (Mode l = 1; l <= m; ++l) {
        for (Mode q = 1; q <= m; ++q) {
            // Reduce l q mod m first to keep the phase argument small.
            const auto r = static_cast<std::int64_t>((static_cast<unsigned __int128>(l) * q) % m);
            const double phase = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(m);
            u(l - 1, q - 1) = std::polar(scale, phase);
        }
    }
    return ModeUnitary(std::move(u), MatrixLabel::fourier);
}

CyclicInput make_cyclic_input(int n, int p) {
    detail::require(n >= 2, "cyclic input needs n >= 2");
    detail::require(p >= 2, "cyclic input needs p >= 2");
    Mode stride = 1;
    for (int i = 0; i < p - 1; ++i) {
        if (stride > std::numeric_limits<Mode>::max() / n) {
            throw PreconditionError("n^p overflows the mode index range");
        }
        stride *= n;
    }
    if (stride > std::numeric_limits<Mode>::max() / n) {
        throw PreconditionError("n^p overflows the mode index range");
    }
    std::vector<Mode> modes(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
        modes[static_cast<std::size_t>(r)] = static_cast<Mode>(r) * stride + 1;
    }
    return {InputConfig(std::move(modes)), stride * n};
}

InputConfig make_adjacent_input(int n, Mode m) {
    detail::require(n >= 1 && n <= m, "adjacent input needs 1 <= n <= m");
    const Mode first = (m - n) / 2 + 1;
    std::vector<Mode> modes(static_cast<std::size_t>(n));
    for (int r = 0; r < n; ++r) {
        modes[static_cast<std::size_t>(r)] = first + r;
    }
    return InputConfig(std::move(modes));
}

ModeUnitary make_haar_random(Mode m, Seed seed) {
    detail::require(m >= 1, "Haar matrix needs m >= 1");
    auto engine = stream_engine(seed, 0);
    std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
    Eigen::MatrixXcd z(m, m);
    for (Eigen::Index r = 0; r < m; ++r) {
        for (Eigen::Index c = 0; c < m; ++c) {
            const double re = gauss(engine);
            const double im = gauss(engine);
            z(r, c) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    // Fix the phase of each column by the sign of R's diagonal so Q is Haar distributed.
    const Eigen::MatrixXcd &packed = qr.matrixQR();
    for (Eigen::Index c = 0; c < m; ++c) {
        const Complex d = packed(c, c);
        const double mag = std::abs(d);
        if (mag > 0.0) {
            q.col(c) *= d / mag;
        }
    }
    return ModeUnitary(std::move(q), MatrixLabel::haar);
}

ModeUnitary make_walk_matrix(Mode m, int steps) {
    detail::require(m >= 2 && m % 2 == 0, "walk matrix needs an even mode count");
    detail::require(steps >= 1, "walk matrix needs at least one step");
    const double h = 1.0 / std::sqrt(2.0);
    const Complex diag(h, 0.0);
    const Complex off(0.0, h);
    // Column-vector convention: out = transfer * in.
    Eigen::MatrixXcd transfer = Eigen::MatrixXcd::Identity(m, m);
    for (int s = 0; s < steps; ++s) {
        const Eigen::Index first = (s % 2 == 0) ? 0 : 1;
        for (Eigen::Index a = first; a + 1 < m; a += 2) {
            const Eigen::RowVectorXcd upper = transfer.row(a);
            const Eigen::RowVectorXcd lower = transfer.row(a + 1);
            transfer.row(a) = diag * upper + off * lower;
            transfer.row(a + 1) = off * upper + diag * lower;
        }
    }
    return ModeUnitary(transfer.transpose(), MatrixLabel::walk);
}

std::pair<ModeUnitary, PerturbationField> perturb(const ModeUnitary &u, double target_avg, Seed seed,
                                                  MagnitudeLaw law) {
    detail::require(std::isfinite(target_avg) && target_avg >= 0.0, "target deviation must be >= 0");
    detail::require(target_avg < 1.0, "target deviation must be < 1 (small-deviation regime)");
    const Eigen::Index m = u.dim();
    PerturbationField field{Eigen::MatrixXcd::Zero(m, m), 0.0};
    if (target_avg > 0.0) {
        auto engine = stream_engine(seed, 0);
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
        Eigen::MatrixXd magnitude(m, m);
        Eigen::MatrixXd phase(m, m);
        for (Eigen::Index r = 0; r < m; ++r) {
            for (Eigen::Index c = 0; c < m; ++c) {
                switch (law) {
                case MagnitudeLaw::half_normal:
                    magnitude(r, c) = std::abs(gauss(engine));
                    break;
                case MagnitudeLaw::rayleigh: {
                    const double a = gauss(engine);
                    const double b = gauss(engine);
                    magnitude(r, c) = std::hypot(a, b);
                    break;
                }
                case MagnitudeLaw::constant:
                    magnitude(r, c) = 1.0;
                    break;
                }
                phase(r, c) = angle(engine);
            }
        }
        magnitude *= target_avg / magnitude.mean();
        for (Eigen::Index r = 0; r < m; ++r) {
            for (Eigen::Index c = 0; c < m; ++c) {
                field.delta(r, c) = std::polar(magnitude(r, c), phase(r, c));
            }
        }
        field.avg_magnitude = field.delta.cwiseAbs().mean();
    }
    Eigen::MatrixXcd w = u.entries().cwiseProduct(
        (Eigen::MatrixXcd::Ones(m, m) + field.delta).eval());
    return {ModeUnitary(std::move(w), MatrixLabel::perturbed), std::move(field)};
}

}  // namespace bosoncert
