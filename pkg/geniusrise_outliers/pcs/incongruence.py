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
import math
from typing import Optional, Sequence

import numpy as np

from ..estimators import Dataset, SubsetIndex, ValidationError, smallest
from .directions import Direction, distance_matrix, proj_distance_sq

log = logging.getLogger(__name__)


def optimal_overlap_subset(data: Dataset, d: Direction, h: int) -> SubsetIndex:
    """
    H_mk: the h observations closest to the hyperplane, ties broken by lower row index.

    Args:
        data (Dataset): The observations.
        d (Direction): The hyperplane.
        h (int): Subset size, at most n.

    Returns:
        The SubsetIndex of the h closest rows.
    """
    if h > data.n:
        raise ValidationError(f"h={h} exceeds n={data.n}")
    return smallest(proj_distance_sq(data.rows, d), h)


def _log_ratio(dist: np.ndarray, H: SubsetIndex, h: int) -> float:
    inside = float(np.mean(dist[H.indices]))
    best = float(np.mean(np.sort(dist, kind="stable")[:h]))
    if best == 0.0:
        if inside > 0.0:
            return math.inf
        log.debug("Subset and optimal subset both lie on the hyperplane; possible exact fit")
        return 0.0
    # rounding can push the difference a hair below zero
    return max(math.log(inside) - math.log(best), 0.0)


def incongruence_direction(data: Dataset, H: SubsetIndex, d: Direction, h: int) -> float:
    """
    Incongruence of H along one direction: log of the average squared projection distance
    over H minus the same over the optimal subset H_mk.

    Args:
        data (Dataset): The observations.
        H (SubsetIndex): Candidate subset of size h.
        d (Direction): The hyperplane.
        h (int): Subset size.

    Returns:
        A non-negative value; infinity when H_mk sits on the hyperplane and H does not.
    """
    if H.size != h:
        raise ValidationError(f"Subset has size {H.size}, expected h={h}")
    return _log_ratio(proj_distance_sq(data.rows, d), H, h)


def incongruence(
    data: Dataset, H: SubsetIndex, dirs: Sequence[Direction], h: int, dist: Optional[np.ndarray] = None
) -> float:
    """
    Average incongruence of H over a set of directions.

    Args:
        data (Dataset): The observations.
        H (SubsetIndex): Candidate subset of size h.
        dirs (Sequence[Direction]): Non-empty list of directions.
        h (int): Subset size.
        dist (Optional[np.ndarray]): Precomputed (n, K) distance matrix for `dirs`.

    Returns:
        The mean of the per-direction values, infinite if any of them is.
    """
    if not dirs:
        raise ValidationError("incongruence needs at least one direction")
    if H.size != h:
        raise ValidationError(f"Subset has size {H.size}, expected h={h}")
    if dist is None:
        dist = distance_matrix(data, dirs)
    values = [_log_ratio(dist[:, k], H, h) for k in range(dist.shape[1])]
    return float(np.mean(values))
