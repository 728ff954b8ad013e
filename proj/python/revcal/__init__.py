# Copyright 2026 The Revcal Authors.
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
"""Peer-review score simulation and ranking-based calibration."""

from ._revcal import (
    Conference,
    ConfigError,
    ConvergenceError,
    GenerationError,
    IoError,
    ScoreDraw,
    avg_scores,
    calibrate_author,
    calibrate_reviewer,
    default_experiment_config,
    default_gen_config,
    format_results,
    gen_conference,
    generate_final_scores,
    hierarchical_tiers,
    isotonic_fit,
    isotonic_project,
    kendall_tau,
    owner_partition,
    pl_ranking_prob,
    rank_centrality,
    rmse,
    run_experiment,
    sample_pl_ranking,
    stationary_distribution,
)

__all__ = [
    "Conference",
    "ConfigError",
    "ConvergenceError",
    "GenerationError",
    "IoError",
    "ScoreDraw",
    "avg_scores",
    "calibrate_author",
    "calibrate_reviewer",
    "default_experiment_config",
    "default_gen_config",
    "format_results",
    "gen_conference",
    "generate_final_scores",
    "hierarchical_tiers",
    "isotonic_fit",
    "isotonic_project",
    "kendall_tau",
    "owner_partition",
    "pl_ranking_prob",
    "rank_centrality",
    "rmse",
    "run_experiment",
    "sample_pl_ranking",
    "stationary_distribution",
]
