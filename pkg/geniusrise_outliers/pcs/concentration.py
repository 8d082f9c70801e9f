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
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..estimators import AlgoParams, Dataset, DegenerateCandidateError, SubsetIndex, ValidationError, smallest
from .directions import Direction, distance_matrix, sample_directions

log = logging.getLogger(__name__)


@dataclass
class CandidateState:
    """
    One candidate of the search: its current subset, the directions of the latest stage with
    the subset they were drawn from and, once scored, its incongruence.
    """

    H: SubsetIndex
    directions: List[Direction] = field(default_factory=list)
    source: Optional[SubsetIndex] = None
    incongruence: Optional[float] = None


def relative_outlyingness(data: Dataset, H: SubsetIndex, dirs: Sequence[Direction]) -> Tuple[np.ndarray, int]:
    """
    D_i: per direction, the squared projection distance of observation i divided by its
    average over H, then averaged over directions.

    Directions whose average over H is zero are left out of the average.

    Args:
        data (Dataset): The observations.
        H (SubsetIndex): Current candidate subset.
        dirs (Sequence[Direction]): Non-empty list of directions.

    Returns:
        Tuple of the (n,) array of D_i and the number of dropped directions.
    """
    if not dirs:
        raise ValidationError("relative_outlyingness needs at least one direction")
    dist = distance_matrix(data, dirs)
    scale = dist[H.indices].mean(axis=0)
    keep = scale > 0.0
    dropped = int(np.count_nonzero(~keep))
    if dropped == len(dirs):
        raise DegenerateCandidateError(f"All {dropped} directions vanish on the candidate subset", probe=H)
    if dropped:
        log.debug(f"Dropped {dropped} of {len(dirs)} directions with zero average distance")
    D = (dist[:, keep] / scale[keep]).mean(axis=1)
    return D, dropped


def concentration_schedule(n: int, p: int, L: int, h: int) -> List[int]:
    """
    Subset sizes q_1..q_L of the concentration stages, floor((n-p-1)l/(2L)) + p + 1,
    with the final stage set to h.

    Args:
        n (int): Number of observations.
        p (int): Dimension.
        L (int): Number of stages.
        h (int): Final subset size.

    Returns:
        The list of L sizes.
    """
    sizes = [min((n - p - 1) * l // (2 * L) + p + 1, h) for l in range(1, L + 1)]
    sizes[-1] = h
    return sizes


def concentrate(data: Dataset, start: SubsetIndex, params: AlgoParams, rng: np.random.Generator) -> CandidateState:
    """
    Grows a (p+1)-subset to size h in L concentration stages. Each stage draws K fresh
    directions from the current subset and keeps the q rows with smallest D_i. The
    directions of the last stage, drawn before the final trim, are the ones the candidate
    is scored on.

    Args:
        data (Dataset): The observations.
        start (SubsetIndex): Starting subset of size p+1.
        params (AlgoParams): Algorithm parameters.
        rng (np.random.Generator): Stream for index draws.

    Returns:
        The final size-h CandidateState carrying the last stage's K directions.
    """
    if start.size != data.p + 1:
        raise ValidationError(f"Starting subset has size {start.size}, expected p+1={data.p + 1}")
    state = CandidateState(H=start)
    for q in concentration_schedule(data.n, data.p, params.L, params.h):
        state.source = state.H
        state.directions = sample_directions(data, state.H, params.K, rng)
        D, _ = relative_outlyingness(data, state.H, state.directions)
        state.H = smallest(D, q)
    return state
