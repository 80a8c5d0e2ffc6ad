# Copyright 2026 The bosoncert Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Suppression-law certification of boson samplers."""

from ._core import (
    CapExceededError,
    IoError,
    PreconditionError,
    __version__,
    boson_probability,
    classical_probability,
    cli,
    cyclic_input,
    distinguishability_coeffs,
    events,
    false_accept_probability,
    figure,
    forbidden_event_count,
    fourier,
    haar,
    is_forbidden,
    misaligned_probability,
    p_approx,
    permanent,
    perturb,
    required_runs,
    sample,
    sample_uniform,
    unitarity_defect,
    v_dev_estimate,
    violation,
    violation_bound_partial,
    walk,
)

__all__ = [
    "CapExceededError",
    "IoError",
    "PreconditionError",
    "__version__",
    "boson_probability",
    "classical_probability",
    "cli",
    "cyclic_input",
    "distinguishability_coeffs",
    "events",
    "false_accept_probability",
    "figure",
    "forbidden_event_count",
    "fourier",
    "haar",
    "is_forbidden",
    "misaligned_probability",
    "p_approx",
    "permanent",
    "perturb",
    "required_runs",
    "sample",
    "sample_uniform",
    "unitarity_defect",
    "v_dev_estimate",
    "violation",
    "violation_bound_partial",
    "walk",
]
