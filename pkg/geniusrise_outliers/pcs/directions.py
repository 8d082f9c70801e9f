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

import logging
import warnings
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import numpy as np
from scipy import linalg

from ..estimators import Dataset, DegenerateCandidateError, SubsetIndex

log = logging.getLogger(__name__)

MAX_DRAWS = 100
SPAN_TOLERANCE = 1e-8


@dataclass(frozen=True)
class Direction:
    """
    The hyperplane {x : x'a = offset}.

    Sampled directions always have offset 1 and are spanned by p observations; exact-fit
    subspaces through the origin use offset 0.

    Args:
        a (np.ndarray): Coefficient vector, non-zero.
        span_rows (Tuple[int, ...]): Rows of the observations spanning the hyperplane.
        offset (float): Right-hand side of the hyperplane equation.
    """

    a: np.ndarray
    span_rows: Tuple[int, ...]
    offset: float = 1.0


def proj_distance_sq(x: np.ndarray, d: Direction) -> Union[float, np.ndarray]:
    """
    Squared orthogonal distance (x'a - offset)^2 / |a|^2.

    Args:
        x (np.ndarray): One observation (p,) or a matrix (m, p).
        d (Direction): The hyperplane.

    Returns:
        A float for one observation, an (m,) array otherwise.
    """
    x = np.asarray(x, dtype=float)
    dist = (x @ d.a - d.offset) ** 2 / float(d.a @ d.a)
    return float(dist) if x.ndim == 1 else dist


def solve_hyperplane(data: Dataset, rows: Sequence[int]) -> Union[Direction, None]:
    """
    Solves A a = 1_p for the p observations in `rows`; None when A is rank deficient.

    Args:
        data (Dataset): The observations.
        rows (Sequence[int]): Exactly p row indices.

    Returns:
        The Direction, or None.
    """
    A = data.rows[list(rows)]
    ones = np.ones(data.p)
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", linalg.LinAlgWarning)
            a = linalg.solve(A, ones, check_finite=False)
    except linalg.LinAlgError:
        return None
    if not np.all(np.isfinite(a)) or not np.any(a):
        return None
    if np.max(np.abs(A @ a - ones)) > SPAN_TOLERANCE:
        return None
    return Direction(a=a, span_rows=tuple(int(r) for r in rows))


def sample_direction(data: Dataset, H: SubsetIndex, rng: np.random.Generator) -> Direction:
    """
    Draws p distinct members of H uniformly and returns the hyperplane through them.

    Rank deficient draws are retried, at most MAX_DRAWS times in total.

    Args:
        data (Dataset): The observations.
        H (SubsetIndex): Candidate subset, at least p members.
        rng (np.random.Generator): Stream for index draws.

    Returns:
        The sampled Direction.
    """
    for _ in range(MAX_DRAWS):
        rows = np.sort(rng.choice(H.indices, size=data.p, replace=False))
        d = solve_hyperplane(data, rows)
        if d is not None:
            return d
    raise DegenerateCandidateError(
        f"No full-rank {data.p}-subset in {MAX_DRAWS} draws from a subset of size {H.size}", probe=H
    )


def sample_directions(data: Dataset, H: SubsetIndex, K: int, rng: np.random.Generator) -> List[Direction]:
    """K independent draws of `sample_direction`."""
    return [sample_direction(data, H, rng) for _ in range(K)]


def distance_matrix(data: Dataset, dirs: Sequence[Direction]) -> np.ndarray:
    """
    Squared projection distances of every observation to every direction.

    Args:
        data (Dataset): The observations.
        dirs (Sequence[Direction]): K directions.

    Returns:
        Array of shape (n, K).
    """
    A = np.column_stack([d.a for d in dirs])
    offsets = np.array([d.offset for d in dirs])
    return (data.rows @ A - offsets) ** 2 / np.sum(A * A, axis=0)
