# 🧠 Geniusrise
# Copyright (C) 2023  geniusrise.ai
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#  http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import itertools
import math
from typing import Tuple

import numpy as np
import pytest
from scipy import stats

from geniusrise_outliers.estimators import (
    AlgoParams,
    Dataset,
    DegenerateCandidateError,
    SubsetIndex,
    ValidationError,
    chisq_quantile,
    default_h,
    smallest,
)
from geniusrise_outliers.pcs import (
    Direction,
    concentrate,
    concentration_schedule,
    detect_exact_fit,
    fastpcs_run,
    incongruence,
    incongruence_direction,
    optimal_overlap_subset,
    proj_distance_sq,
    relative_outlyingness,
    sample_direction,
    sample_directions,
)
from geniusrise_outliers.simlab import default_starts, misclassification


def unit_direction(a=(1.0,)) -> Direction:
    a = np.asarray(a, dtype=float)
    return Direction(a=a, span_rows=tuple(range(len(a))))


def test_sample_direction_examples(rng):
    data = Dataset.from_rows([[1.0, 0.0], [0.0, 1.0], [3.0, 3.0]])
    d = sample_direction(data, SubsetIndex.from_indices([0, 1]), rng)
    assert d.a == pytest.approx([1.0, 1.0])
    assert d.span_rows == (0, 1)

    scalar = sample_direction(Dataset.from_rows([2.0, 7.0]), SubsetIndex.from_indices([0]), rng)
    assert scalar.a == pytest.approx([0.5])


def test_sample_direction_gives_up_on_rank_deficient_subsets(rng):
    data = Dataset.from_rows([[1.0, 0.0], [2.0, 0.0], [0.0, 5.0]])
    H = SubsetIndex.from_indices([0, 1])
    with pytest.raises(DegenerateCandidateError) as info:
        sample_direction(data, H, rng)
    assert info.value.probe == H


def test_sampled_directions_pass_through_their_rows(gaussian, rng):
    for d in sample_directions(gaussian, SubsetIndex.all(gaussian.n), 25, rng):
        assert np.allclose(proj_distance_sq(gaussian.rows[list(d.span_rows)], d), 0.0, atol=1e-16)


def test_proj_distance_examples():
    d = unit_direction((1.0, 1.0))
    assert proj_distance_sq(np.array([0.0, 0.0]), d) == pytest.approx(0.5)
    assert proj_distance_sq(np.array([1.0, 1.0]), d) == pytest.approx(0.5)
    assert proj_distance_sq(np.array([1.0, 0.0]), d) == 0.0


def test_optimal_overlap_subset():
    d = unit_direction()
    data = Dataset.from_rows([0.9, 1.1, 5.0])
    assert optimal_overlap_subset(data, d, 2).indices.tolist() == [0, 1]
    assert optimal_overlap_subset(data, d, 3).indices.tolist() == [0, 1, 2]
    equidistant = Dataset.from_rows([0.0, 2.0, 0.0])
    assert optimal_overlap_subset(equidistant, d, 2).indices.tolist() == [0, 1]
    with pytest.raises(ValidationError):
        optimal_overlap_subset(data, d, 4)


def test_incongruence_direction_examples():
    d = unit_direction()
    data = Dataset.from_rows([0.9, 1.1, 3.0])
    value = incongruence_direction(data, SubsetIndex.from_indices([0, 2]), d, 2)
    assert value == pytest.approx(math.log(2.005) - math.log(0.01), rel=1e-9)
    assert incongruence_direction(data, SubsetIndex.from_indices([0, 1]), d, 2) == 0.0
    with pytest.raises(ValidationError):
        incongruence_direction(data, SubsetIndex.from_indices([0]), d, 2)


def test_incongruence_direction_on_the_hyperplane():
    d = unit_direction()
    data = Dataset.from_rows([1.0, 1.0, 3.0])
    assert incongruence_direction(data, SubsetIndex.from_indices([0, 2]), d, 2) == math.inf
    assert incongruence_direction(data, SubsetIndex.from_indices([0, 1]), d, 2) == 0.0


def test_incongruence_averages_directions(gaussian, rng):
    h = default_h(gaussian.n, gaussian.p)
    H = SubsetIndex.from_indices(rng.choice(gaussian.n, size=h, replace=False))
    dirs = sample_directions(gaussian, H, 10, rng)
    expected = np.mean([incongruence_direction(gaussian, H, d, h) for d in dirs])
    assert incongruence(gaussian, H, dirs, h) == pytest.approx(expected, rel=1e-12)
    with pytest.raises(ValidationError):
        incongruence(gaussian, H, [], h)


@pytest.mark.parametrize("p", [1, 2, 3, 4])
def test_incongruence_is_never_negative(rng, p):
    data = Dataset.from_rows(rng.standard_normal((20, p)))
    h = default_h(data.n, data.p)
    everyone = SubsetIndex.all(data.n)
    for _ in range(2_500):
        H = SubsetIndex.from_indices(rng.choice(data.n, size=h, replace=False))
        d = sample_direction(data, everyone, rng)
        assert incongruence_direction(data, H, d, h) >= 0.0


def test_relative_outlyingness_example():
    data = Dataset.from_rows([0.9, 1.1, 5.0])
    D, dropped = relative_outlyingness(data, SubsetIndex.from_indices([0, 1]), [unit_direction()])
    assert dropped == 0
    np.testing.assert_allclose(D, [1.0, 1.0, 1600.0], rtol=1e-9)


def test_relative_outlyingness_drops_vanishing_directions():
    data = Dataset.from_rows([1.0, 1.0, 3.0])
    H = SubsetIndex.from_indices([0, 1])
    with pytest.raises(DegenerateCandidateError):
        relative_outlyingness(data, H, [unit_direction()])
    D, dropped = relative_outlyingness(data, H, [unit_direction(), unit_direction((0.5,))])
    assert dropped == 1
    np.testing.assert_allclose(D, [1.0, 1.0, 1.0])


@pytest.mark.parametrize(
    "n,p,L,h,expected",
    [
        (100, 4, 3, 52, [20, 36, 52]),
        (103, 10, 3, 57, [26, 41, 57]),
        (100, 4, 1, 52, [52]),
        (100, 4, 3, 75, [20, 36, 75]),
    ],
)
def test_concentration_schedule(n, p, L, h, expected):
    assert concentration_schedule(n, p, L, h) == expected


def test_concentrate_reaches_h(gaussian, rng):
    params = AlgoParams.from_data(gaussian.n, gaussian.p, starts=1)
    start = SubsetIndex.from_indices(rng.choice(gaussian.n, size=gaussian.p + 1, replace=False))
    state = concentrate(gaussian, start, params, rng)
    assert state.H.size == params.h
    assert len(state.directions) == params.K
    assert state.source.size == concentration_schedule(gaussian.n, gaussian.p, params.L, params.h)[-2]
    for d in state.directions:
        assert all(r in state.source for r in d.span_rows)
    with pytest.raises(ValidationError):
        concentrate(gaussian, SubsetIndex.from_indices(range(3)), params, rng)


@pytest.mark.parametrize("p", [2, 3])
def test_exact_fit_is_reported(on_hyperplane, rng, p):
    n = 40
    h = default_h(n, p)
    for trial in range(10):
        data, u = on_hyperplane(rng, n, p, h)
        result = fastpcs_run(data, AlgoParams.from_data(n, p, starts=200, seed=trial))
        assert result.exact_fit is not None
        assert result.h_star.size == h
        d = result.exact_fit
        residual = np.abs(data.rows[result.h_star.indices] @ d.a - d.offset) / np.linalg.norm(d.a)
        assert np.max(residual) < 1e-8
        normal = d.a / np.linalg.norm(d.a)
        assert abs(abs(normal @ u) - 1.0) < 1e-8
        assert np.all(result.outlyingness[:h] < 1e-8)


def test_detect_exact_fit_threshold(on_hyperplane, rng):
    n, p = 20, 2
    h = default_h(n, p)
    probe = SubsetIndex.from_indices(range(p + 1))

    data, _ = on_hyperplane(rng, n, p, h)
    assert detect_exact_fit(data, h, probe) is not None

    short, _ = on_hyperplane(rng, n, p, h - 1)
    assert detect_exact_fit(short, h, probe) is None
    assert detect_exact_fit(short, h - 1, probe) is not None

    cloud = Dataset.from_rows(rng.standard_normal((n, p)))
    assert detect_exact_fit(cloud, h) is None


def clustered(rng: np.random.Generator, p: int, n_clean: int = 30, n_out: int = 10) -> Dataset:
    center = np.zeros(p)
    center[0] = 5.0
    outliers = center + 0.1 * rng.standard_normal((n_out, p))
    return Dataset.from_rows(np.vstack([rng.standard_normal((n_clean, p)), outliers]))


@pytest.mark.parametrize("p", [2, 4])
def test_fastpcs_is_affine_equivariant(rng, p):
    for trial in range(50):
        data = clustered(rng, p)
        B = rng.standard_normal((p, p)) + 2.0 * np.eye(p)
        c = 5.0 * rng.standard_normal(p)
        moved = Dataset.from_rows(data.rows @ B.T + c)
        params = AlgoParams.from_data(data.n, data.p, starts=20, seed=trial)
        before, after = fastpcs_run(data, params), fastpcs_run(moved, params)
        assert before.h_star == after.h_star
        np.testing.assert_allclose(after.candidate_log, before.candidate_log, rtol=1e-6, atol=1e-9)
        np.testing.assert_allclose(after.outlyingness, before.outlyingness, rtol=1e-6, atol=1e-9)
        tau, _ = stats.kendalltau(before.outlyingness, after.outlyingness)
        assert tau == pytest.approx(1.0)


def exhaustive_incongruence(data: Dataset, dirs, h: int) -> Tuple[np.ndarray, np.ndarray]:
    """Incongruence of every h-subset over a fixed direction set, computed in one pass."""
    A = np.column_stack([d.a for d in dirs])
    offsets = np.array([d.offset for d in dirs])
    dist = (data.rows @ A - offsets) ** 2 / (A**2).sum(axis=0)
    subsets = np.array(list(itertools.combinations(range(data.n), h)))
    inside = dist[subsets].mean(axis=1)
    best = np.sort(dist, axis=0)[:h].mean(axis=0)
    values = np.maximum(np.log(inside) - np.log(best), 0.0).mean(axis=1)
    return subsets, values


def test_fastpcs_against_exhaustive_search():
    for seed in range(100):
        rng = np.random.default_rng(seed)
        data = Dataset.from_rows(rng.standard_normal((12, 2)))
        params = AlgoParams.from_data(12, 2, starts=50, seed=seed)
        assert params.h == 7
        result = fastpcs_run(data, params)
        assert result.exact_fit is None

        subsets, values = exhaustive_incongruence(data, result.directions, params.h)
        assert len(subsets) == 792
        rows = [tuple(s) for s in subsets]
        reported = values[rows.index(tuple(result.h_star.indices))]
        assert result.best_incongruence == pytest.approx(reported, abs=1e-10)
        assert incongruence(data, result.h_star, result.directions, params.h) == pytest.approx(reported, abs=1e-10)

        lowest = int(np.argmin(values))
        assert values[lowest] <= reported + 1e-12
        winner = SubsetIndex.from_indices(subsets[lowest])
        assert incongruence(data, winner, result.directions, params.h) == pytest.approx(values[lowest], abs=1e-10)
        for k in rng.choice(len(subsets), size=10, replace=False):
            H = SubsetIndex.from_indices(subsets[k])
            assert incongruence(data, H, result.directions, params.h) == pytest.approx(values[k], abs=1e-10)


def test_exact_fit_matches_exhaustive_search(on_hyperplane):
    matches = 0
    for seed in range(20):
        rng = np.random.default_rng(seed)
        data, _ = on_hyperplane(rng, 12, 2, 7)
        flat = [
            s
            for s in itertools.combinations(range(12), 7)
            if np.linalg.eigvalsh(np.cov(data.rows[list(s)], rowvar=False))[0] < 1e-12
        ]
        assert flat == [tuple(range(7))]
        result = fastpcs_run(data, AlgoParams.from_data(12, 2, starts=50, seed=seed))
        assert result.exact_fit is not None
        matches += tuple(result.h_star.indices) == flat[0]
    assert matches == 20


def test_cohesive_subset_is_more_congruent(two_clusters):
    wins = 0
    for seed in range(50):
        rng = np.random.default_rng(seed)
        data = two_clusters(rng)
        h = default_h(data.n, data.p)
        cohesive = smallest(np.sum(data.rows[:70] ** 2, axis=1), h)
        mixed = np.concatenate([rng.choice(70, size=h - 30, replace=False), np.arange(70, 100)])
        disjoint = SubsetIndex.from_indices(mixed)
        low = incongruence(data, cohesive, sample_directions(data, cohesive, 25, rng), h)
        high = incongruence(data, disjoint, sample_directions(data, disjoint, 25, rng), h)
        wins += low < high
    assert wins >= 45


def test_fastpcs_separates_two_clusters(two_clusters, rng):
    data = two_clusters(rng, center=(10.0, -2.0), spread=1.0)
    result = fastpcs_run(data, AlgoParams.from_data(data.n, data.p, starts=50, seed=11))
    outliers = SubsetIndex.from_indices(range(70, 100))
    assert misclassification(outliers, result.h_star) == 0.0
    assert result.exact_fit is None
    assert result.h_star.size == 51
    assert np.min(result.outlyingness[70:]) > np.max(result.outlyingness[result.h_star.indices])


def test_fastpcs_is_reproducible(gaussian):
    params = AlgoParams.from_data(gaussian.n, gaussian.p, starts=20, seed=5)
    first, again = fastpcs_run(gaussian, params), fastpcs_run(gaussian, params)
    assert first.h_star == again.h_star
    np.testing.assert_array_equal(first.candidate_log, again.candidate_log)
    threaded = fastpcs_run(gaussian, AlgoParams.from_data(gaussian.n, gaussian.p, starts=20, seed=5, threads=4))
    assert threaded.h_star == first.h_star


@pytest.mark.slow
def test_fastpcs_subset_on_a_single_cloud():
    cutoff = chisq_quantile(0.999, 4)
    inside = 0
    for seed in range(100):
        data = Dataset.from_rows(np.random.default_rng(seed).standard_normal((100, 4)))
        result = fastpcs_run(data, AlgoParams.from_data(100, 4, starts=default_starts(0.5, 4), seed=seed))
        inside += np.max(result.outlyingness[result.h_star.indices] ** 2) < cutoff
    assert inside >= 95
