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

import math

import numpy as np
import pytest
from scipy import special

from geniusrise_outliers.estimators import (
    AlgoParams,
    Dataset,
    DegenerateSubsetError,
    SingularScatterError,
    SubsetIndex,
    ValidationError,
    chisq_quantile,
    default_h,
    location_scatter,
    mahalanobis_sq,
    resolve_threads,
    reweight_hard_threshold,
    reweighted_fit,
    run_candidates,
    smallest,
    subset_moments,
    substream,
)
from geniusrise_outliers.estimators.utils import THREADS_ENV, first_argmin


@pytest.mark.parametrize("n,p,alpha,expected", [(100, 2, 0.5, 51), (100, 4, 1.0, 100), (100, 4, 0.75, 75)])
def test_default_h(n, p, alpha, expected):
    assert default_h(n, p, alpha) == expected


def test_default_h_rejects_underdetermined_data():
    with pytest.raises(ValidationError):
        default_h(4, 4)


def test_dataset_validation():
    with pytest.raises(ValidationError, match="row 1, column 0"):
        Dataset.from_rows([[1.0, 2.0], [np.nan, 3.0]])
    data = Dataset.from_rows([1.0, 2.0, 3.0])
    assert (data.n, data.p) == (3, 1)
    with pytest.raises(ValueError):
        data.rows[0, 0] = 5.0
    with pytest.raises(ValidationError):
        Dataset.from_rows([[1.0, 2.0]]).require_overdetermined()


def test_subset_index():
    H = SubsetIndex.from_indices([3, 1, 2])
    assert H.indices.tolist() == [1, 2, 3]
    assert 2 in H and 0 not in H
    assert H.mask(5).tolist() == [False, True, True, True, False]
    assert H == SubsetIndex.from_indices(np.array([1, 2, 3]))
    with pytest.raises(ValidationError):
        SubsetIndex.from_indices([1, 1, 2])
    with pytest.raises(ValidationError):
        SubsetIndex.from_indices([0, 5], n=5)


def test_smallest_breaks_ties_by_row():
    assert smallest(np.array([1.0, 0.0, 1.0, 0.0]), 3).indices.tolist() == [0, 1, 3]


def test_subset_moments_examples():
    basis = Dataset.from_rows([[1.0, 0.0], [0.0, 1.0], [0.0, 0.0]])
    fit = subset_moments(basis, SubsetIndex.all(3))
    assert fit.center == pytest.approx([1 / 3, 1 / 3])

    square = Dataset.from_rows([[0.0, 0.0], [2.0, 0.0], [0.0, 2.0], [2.0, 2.0]])
    fit = subset_moments(square, SubsetIndex.all(4))
    assert fit.center == pytest.approx([1.0, 1.0])
    np.testing.assert_allclose(fit.scatter, 4.0 / 3.0 * np.eye(2), atol=1e-12)
    assert fit.det == pytest.approx(16.0 / 9.0)
    assert not fit.singular


def test_subset_moments_singular_and_degenerate():
    twins = Dataset.from_rows([[1.0], [1.0]])
    fit = subset_moments(twins, SubsetIndex.all(2))
    assert fit.singular
    assert fit.det == 0.0
    with pytest.raises(SingularScatterError):
        mahalanobis_sq(np.array([1.0]), fit)
    with pytest.raises(DegenerateSubsetError):
        subset_moments(Dataset.from_rows(np.eye(3)), SubsetIndex.from_indices([0, 1]))


def test_mahalanobis_examples():
    identity = location_scatter(np.zeros(2), np.eye(2))
    assert mahalanobis_sq(np.array([3.0, 4.0]), identity) == pytest.approx(25.0)
    assert mahalanobis_sq(np.zeros(2), identity) == 0.0
    stretched = location_scatter(np.zeros(2), np.diag([4.0, 1.0]))
    assert mahalanobis_sq(np.array([2.0, 1.0]), stretched) == pytest.approx(2.0)
    many = mahalanobis_sq(np.array([[3.0, 4.0], [0.0, 0.0]]), identity)
    assert many.shape == (2,)


def test_trace_identity(rng):
    data = Dataset.from_rows(rng.standard_normal((40, 3)))
    for _ in range(1000):
        size = int(rng.integers(data.p + 2, data.n + 1))
        H = SubsetIndex.from_indices(rng.choice(data.n, size=size, replace=False))
        fit = subset_moments(data, H)
        total = float(np.sum(mahalanobis_sq(data.rows[H.indices], fit)))
        assert total == pytest.approx(data.p * (H.size - 1), rel=1e-8)


def test_mahalanobis_affine_invariance(rng):
    x = rng.standard_normal((30, 3))
    B = rng.standard_normal((3, 3)) + 3.0 * np.eye(3)
    c = rng.standard_normal(3) * 10.0
    H = SubsetIndex.from_indices(range(20))
    before = mahalanobis_sq(x, subset_moments(Dataset.from_rows(x), H))
    moved = x @ B.T + c
    after = mahalanobis_sq(moved, subset_moments(Dataset.from_rows(moved), H))
    np.testing.assert_allclose(after, before, rtol=1e-6)


@pytest.mark.parametrize(
    "prob,dof,expected,tol",
    [(0.5, 2, 2.0 * math.log(2.0), 1e-10), (0.99, 10, 23.2093, 1e-4), (0.975, 4, 11.1433, 1e-4)],
)
def test_chisq_quantile_examples(prob, dof, expected, tol):
    assert chisq_quantile(prob, dof) == pytest.approx(expected, abs=tol)


@pytest.mark.parametrize("dof", [1, 2, 4, 10, 16])
def test_chisq_quantile_inverts_the_cdf(dof):
    probs = np.linspace(0.01, 0.99, 25)
    quantiles = [chisq_quantile(float(q), dof) for q in probs]
    for prob, q in zip(probs, quantiles):
        assert special.gammainc(dof / 2.0, q / 2.0) == pytest.approx(prob, abs=1e-10)
    assert all(b > a for a, b in zip(quantiles, quantiles[1:]))


def test_chisq_quantile_rejects_bad_probabilities():
    for prob in (0.0, 1.0, -0.1):
        with pytest.raises(ValidationError):
            chisq_quantile(prob, 3)


def test_reweighting_drops_the_distant_point():
    rows = np.zeros((20, 2))
    rows[7] = [100.0, 100.0]
    data = Dataset.from_rows(rows)
    J = reweight_hard_threshold(data, location_scatter(np.zeros(2), np.eye(2)))
    assert J.size == 19 and 7 not in J


def test_reweighting_single_row_at_center():
    data = Dataset.from_rows([[1.0, 2.0]])
    J = reweight_hard_threshold(data, location_scatter(np.array([1.0, 2.0]), np.eye(2)))
    assert J.indices.tolist() == [0]


def test_reweighting_coverage_on_model_data(rng):
    fractions = []
    fit = location_scatter(np.zeros(4), np.eye(4))
    for _ in range(20):
        data = Dataset.from_rows(rng.standard_normal((1000, 4)))
        fractions.append(reweight_hard_threshold(data, fit).size / data.n)
    assert np.mean(fractions) == pytest.approx(0.975, abs=0.03)


def test_reweighting_is_scale_invariant(rng):
    x = rng.standard_normal((60, 3))
    x[:10] += 6.0
    H = SubsetIndex.from_indices(range(10, 45))
    data, scaled = Dataset.from_rows(x), Dataset.from_rows(7.5 * x)
    J = reweight_hard_threshold(data, subset_moments(data, H))
    J_scaled, fit = reweighted_fit(scaled, subset_moments(scaled, H))
    assert J == J_scaled
    assert fit.center == pytest.approx(subset_moments(scaled, J).center)


def test_reweighting_rescales_before_the_cutoff():
    data = Dataset.from_rows([0.0, 1.0, 2.0, 3.0, 100.0])
    # d2 = 0, 1, 4, 9, 1e4; cutoff = chi2(0.975, 1) * 4 / chi2(0.5, 1) = 44.17
    cutoff = chisq_quantile(0.975, 1) * 4.0 / chisq_quantile(0.5, 1)
    assert cutoff == pytest.approx(44.17, abs=0.01)
    for scale in (1.0, 10.0, 0.1):
        J = reweight_hard_threshold(data, location_scatter(np.zeros(1), scale * np.eye(1)))
        assert J.indices.tolist() == [0, 1, 2, 3]


def test_algo_params():
    params = AlgoParams.from_data(100, 4, starts=50)
    assert (params.h, params.K, params.L, params.M_p) == (52, 25, 3, 50)
    with pytest.raises(ValidationError):
        AlgoParams.from_data(100, 4, starts=50, K=0)
    with pytest.raises(ValidationError):
        AlgoParams(alpha=0.5, h=40).validate(100, 4)


def test_substreams_are_addressed_by_counter():
    root = np.random.SeedSequence(7)
    first = np.random.default_rng(substream(root, 3)).integers(1 << 30)
    again = np.random.default_rng(substream(np.random.SeedSequence(7), 3)).integers(1 << 30)
    other = np.random.default_rng(substream(root, 4)).integers(1 << 30)
    assert first == again
    assert first != other


def test_run_candidates_keeps_order():
    assert run_candidates(lambda m: m * m, 50, threads=4) == [m * m for m in range(50)]
    assert run_candidates(lambda m: m, 3, threads=1) == [0, 1, 2]


def test_first_argmin():
    assert first_argmin([None, 3.0, 1.0, 1.0]) == 2
    assert first_argmin([None, None]) is None


def test_resolve_threads(monkeypatch):
    monkeypatch.setenv(THREADS_ENV, "3")
    assert resolve_threads(0) == 3
    assert resolve_threads(2) == 2
    monkeypatch.setenv(THREADS_ENV, "many")
    with pytest.raises(ValidationError):
        resolve_threads(0)
