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
from typing import Optional, Tuple

import numpy as np

from ..estimators import Dataset, SubsetIndex
from .directions import Direction, proj_distance_sq

log = logging.getLogger(__name__)

RESIDUAL_TOLERANCE = 1e-9


def data_scale(data: Dataset) -> float:
    """Largest absolute deviation from the coordinate-wise median, 1 for constant data."""
    scale = float(np.max(np.abs(data.rows - np.median(data.rows, axis=0))))
    return scale if scale > 0.0 else 1.0


def _least_variance_plane(x: np.ndarray) -> Tuple[np.ndarray, float]:
    center = x.mean(axis=0)
    centered = x - center
    _, vectors = np.linalg.eigh(centered.T @ centered)
    normal = vectors[:, 0]
    return normal, float(normal @ center)


def _as_direction(normal: np.ndarray, c: float, members: np.ndarray, p: int, tol: float) -> Direction:
    span = tuple(int(r) for r in members[:p])
    if abs(c) > tol:
        return Direction(a=normal / c, span_rows=span, offset=1.0)
    return Direction(a=normal, span_rows=span, offset=0.0)


def detect_exact_fit(data: Dataset, h: int, H: Optional[SubsetIndex] = None) -> Optional[Direction]:
    """
    Looks for a hyperplane holding at least h observations.

    The candidate hyperplane is the least-variance plane of the rows in H (all rows when H
    is None). It is accepted when h or more observations lie within 1e-9 times the data
    scale of it, and is then refitted on those observations.

    Args:
        data (Dataset): The observations.
        h (int): Required number of observations on the subspace.
        H (Optional[SubsetIndex]): Rows of the singular subset or degenerate candidate.

    Returns:
        The subspace as a Direction, or None.
    """
    x = data.rows if H is None else data.rows[H.indices]
    if len(x) < 2:
        return None
    tol = RESIDUAL_TOLERANCE * data_scale(data)
    normal, c = _least_variance_plane(x)
    members = np.flatnonzero(np.abs(data.rows @ normal - c) <= tol)
    if len(members) < h:
        return None
    normal, c = _least_variance_plane(data.rows[members])
    residual = np.abs(data.rows @ normal - c)
    members = np.flatnonzero(residual <= tol)
    if len(members) < h:
        return None
    log.warning(f"Exact fit: {len(members)} of {data.n} observations lie on a hyperplane")
    return _as_direction(normal, c, members, data.p, tol)


def exact_fit_members(data: Dataset, d: Direction, h: int) -> SubsetIndex:
    """The h observations closest to the subspace, ties broken by lower row index."""
    order = np.argsort(proj_distance_sq(data.rows, d), kind="stable")
    return SubsetIndex.from_indices(order[:h])


def subspace_distance(data: Dataset, d: Direction) -> np.ndarray:
    """Orthogonal distance of every observation to the subspace."""
    return np.sqrt(proj_distance_sq(data.rows, d))


def subspace_rows(data: Dataset, d: Direction) -> SubsetIndex:
    """Every observation lying on the subspace, up to 1e-9 times the data scale."""
    tol = RESIDUAL_TOLERANCE * data_scale(data)
    return SubsetIndex.from_indices(np.flatnonzero(subspace_distance(data, d) <= tol))
