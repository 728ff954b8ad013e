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
"""Smoke tests for the Python bindings."""

import itertools
import math

import pytest

import revcal

SMALL_GEN = {
    "n_papers": 300,
    "n_authors": 850,
    "target_population": 850,
    "author_multiplicity_targets": [
        {"threshold": 2, "count": 207},
        {"threshold": 5, "count": 23},
        {"threshold": 10, "count": 3},
    ],
    "max_papers_per_author": 15,
}


@pytest.fixture(scope="module")
def conference():
    return revcal.gen_conference(SMALL_GEN, seed=5)


def test_isotonic_fit_pools_violators():
    assert revcal.isotonic_fit([1.0, 3.0]) == pytest.approx([2.0, 2.0])
    assert revcal.isotonic_fit([3.0, 1.0], increasing=True) == pytest.approx([2.0, 2.0])
    assert revcal.isotonic_fit([0.0, 4.0], [3.0, 1.0]) == pytest.approx([1.0, 1.0])


def test_isotonic_project_blend():
    assert revcal.isotonic_project([1.0, 3.0], [0, 1], 0.5) == pytest.approx([1.5, 2.5])
    with pytest.raises(ValueError):
        revcal.isotonic_project([1.0, 3.0], [0, 0], 1.0)


def test_plackett_luce():
    theta = [math.log(2.0), 0.0, 0.0]
    assert revcal.pl_ranking_prob(theta, [0, 1, 2]) == 0.25
    total = sum(revcal.pl_ranking_prob(theta, list(p)) for p in itertools.permutations(range(3)))
    assert total == pytest.approx(1.0, abs=1e-12)
    assert sorted(revcal.sample_pl_ranking(theta, seed=3)) == [0, 1, 2]


def test_tiers_and_spectral():
    assert revcal.hierarchical_tiers([[2, 0, 1]], 3) == [[2], [0], [1]]
    pi = revcal.stationary_distribution([[0.7, 0.3], [0.1, 0.9]], tol=1e-13)
    assert pi == pytest.approx([0.25, 0.75], abs=1e-10)
    scores = revcal.rank_centrality([(0, 1)] * 8 + [(1, 0)] * 2 + [(1, 2)] * 8 + [(2, 1)] * 2, 3)
    assert scores[0] > scores[1] > scores[2]
    assert revcal.kendall_tau([1, 2, 3], [3, 2, 1]) == -1.0


def test_conference_and_scores(conference):
    assert conference.num_papers == 300
    conference.validate()
    assert revcal.Conference.from_dict(conference.to_dict()) == conference
    draw = revcal.generate_final_scores(conference, "Base", seed=1)
    assert len(draw.rankings) == conference.num_reviewers
    for order, row in zip(draw.rankings, draw.final_scores):
        score = dict(row)
        ranked = [score[p] for p in order]
        assert all(a >= b - 1e-12 for a, b in zip(ranked, ranked[1:]))
    avg = revcal.avg_scores(draw, conference)
    reviewer = revcal.calibrate_reviewer(avg, draw.rankings)
    owners = revcal.owner_partition(conference)
    assert owners and all(len(papers) >= 2 for _, papers in owners)
    author = revcal.calibrate_author(avg, owners)
    for estimate in (avg, reviewer, author):
        assert 0.0 < revcal.rmse(estimate, conference.true_scores) < 2.0


def test_run_experiment_and_formats():
    out = revcal.run_experiment(gen=SMALL_GEN, cases=["Base", "NoBias"], repetitions=2)
    assert len(out["results"]) == 8
    assert {r["case"] for r in out["results"]} == {"Base", "NoBias"}
    csv = revcal.format_results(out, "csv")
    assert csv.splitlines()[0] == "case,method,mean_rmse,sd_rmse"
    again = revcal.run_experiment(
        {"gen": SMALL_GEN, "cases": ["Base", "NoBias"], "repetitions": 2, "workers": 3})
    assert revcal.format_results(again, "csv") == csv


def test_errors_map_to_python_exceptions():
    with pytest.raises(revcal.ConfigError):
        revcal.run_experiment(cases=["Nope"])
    with pytest.raises(ValueError):
        revcal.gen_conference({"no_such_key": 1})
    with pytest.raises(revcal.GenerationError):
        revcal.gen_conference(dict(SMALL_GEN, n_reviewers=20))
    assert revcal.default_experiment_config()["noise_scale"] == "variance"
