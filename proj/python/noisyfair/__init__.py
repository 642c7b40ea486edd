# Copyright 2026 The NoisyFair Authors.
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

"""Fair ranking under noisy group membership."""

from noisyfair._noisyfair import (
    Error,
    Instance,
    evaluate,
    gamma_heuristic,
    gamma_theoretical,
    half_half_instance,
    probe_violations,
    rank,
    run_experiment,
    synth_nonuniform_fdr,
    u_equal_representation,
    u_phi,
)
from noisyfair.results import (
    COLUMNS,
    EmptyGroup,
    FigureSpec,
    MissingColumn,
    read_results,
    summarize,
)

__all__ = [
    "COLUMNS",
    "EmptyGroup",
    "Error",
    "FigureSpec",
    "Instance",
    "MissingColumn",
    "evaluate",
    "gamma_heuristic",
    "gamma_theoretical",
    "half_half_instance",
    "probe_violations",
    "rank",
    "read_results",
    "run_experiment",
    "summarize",
    "synth_nonuniform_fdr",
    "u_equal_representation",
    "u_phi",
]
