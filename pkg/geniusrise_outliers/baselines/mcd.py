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
from typing import List, Optional, Tuple, Union

import numpy as np

from ..estimators import (
    AlgoParams,
    Dataset,
    LocationScatter,
    SubsetIndex,
    as_seed_sequence,
    mahalanobis_sq,
    run_candidates,
    smallest,
    subset_moments,
    substream,
)
from ..estimators.utils import first_argmin
from .utils import BaselineResult, Method, exact_fit_or_fail, finish, probe_exact_fit

log = logging.getLogger(__name__)


def c_steps(
    data: Dataset, start_fit: LocationScatter, h: int, max_iter: int = 20, tol: float = 1e-9
) -> Tuple[SubsetIndex, LocationScatter, List[float]]:
    """
    Concentration steps: keep the h observations closest to the current fit, refit, repeat
    until the determinant stops decreasing by more than `tol` (relative) or `max_iter` steps.

    Args:
        data (Dataset): The observations.
        start_fit (LocationScatter): Non-singular starting fit.
        h (int): Subset size.
        max_iter (int): Iteration cap.
        tol (float): Relative decrease below which the loop stops.

    Returns:
        Tuple of the final subset, its fit and the determinant trace. The trace ends with 0
        when a singular h-subset was reached.
    """
    fit = start_fit
    H: Optional[SubsetIndex] = None
    dets: List[float] = []
    for _ in range(max_iter):
        candidate = smallest(mahalanobis_sq(data.rows, fit), h)
        refit = subset_moments(data, candidate)
        if refit.singular:
            dets.append(0.0)
            return candidate, refit, dets
        if dets and refit.det >= dets[-1]:
            break
        converged = bool(dets) and refit.det >= dets[-1] * (1.0 - tol)
        H, fit = candidate, refit
        dets.append(refit.det)
        if converged:
            break
    return H, fit, dets  # type: ignore


@dataclass
class _Outcome:
    H: Optional[SubsetIndex] = None
    fit: Optional[LocationScatter] = None
    dets: List[float] = field(default_factory=list)
    probe: Optional[SubsetIndex] = None


def _evaluate(data: Dataset, h: int, root: np.random.SeedSequence, m: int) -> _Outcome:
    rng = np.random.default_rng(substream(root, m))
    start = SubsetIndex.from_indices(rng.choice(data.n, size=data.p + 1, replace=False))
    start_fit = subset_moments(data, start)
    if start_fit.singular:
        return _Outcome(probe=start)
    H, fit, dets = c_steps(data, start_fit, h)
    if fit.singular:
        return _Outcome(probe=H)
    return _Outcome(H=H, fit=fit, dets=dets)


def fastmcd_run(
    data: Dataset, params: AlgoParams, rng: Union[None, int, np.random.SeedSequence] = None
) -> BaselineResult:
    """
    Simplified FastMCD: M_p random (p+1)-subsets, each refined by C-steps; the candidate
    with smallest covariance determinant wins.

    Args:
        data (Dataset): The observations, n > p.
        params (AlgoParams): Subset size, number of starts, seed and threads.
        rng: Master stream; defaults to params.seed.

    Returns:
        The BaselineResult with criterion det(S_*).
    """
    data.require_overdetermined()
    params.validate(data.n, data.p)
    root = as_seed_sequence(rng, params.seed)
    outcomes = run_candidates(lambda m: _evaluate(data, params.h, root, m), params.M_p, params.threads)

    probes = [o.probe for o in outcomes if o.probe is not None]
    if probes:
        exact = probe_exact_fit(Method.MCD, data, params.h, probes)
        if exact is not None:
            return exact
    best = first_argmin([o.fit.det if o.fit is not None else None for o in outcomes])
    if best is None:
        return exact_fit_or_fail(Method.MCD, data, params.h, probes)

    winner = outcomes[best]
    log.info(f"FastMCD picked candidate {best} of {params.M_p} with determinant {winner.fit.det:.6g}")
    return finish(
        Method.MCD,
        data,
        winner.H,
        params.h,
        raw_index=mahalanobis_sq(data.rows, winner.fit),
        criterion=winner.fit.det,
    )
