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
from dataclasses import dataclass
from typing import List, Optional, Union

import numpy as np

from ..estimators import (
    AlgoParams,
    Dataset,
    DegenerateCandidateError,
    EstimationFailureError,
    LocationScatter,
    SubsetIndex,
    as_seed_sequence,
    mahalanobis_sq,
    run_candidates,
    subset_moments,
    substream,
)
from ..estimators.utils import first_argmin
from .concentration import CandidateState, concentrate
from .directions import Direction, distance_matrix
from .exact_fit import detect_exact_fit, exact_fit_members, subspace_distance
from .incongruence import incongruence

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class PcsResult:
    """
    Output of FastPCS.

    Args:
        h_star (SubsetIndex): The projection congruent subset H_*.
        fit (LocationScatter): Moments (t_*, S_*) of H_*.
        outlyingness (np.ndarray): d_MD of every observation w.r.t. the fit, or the
            orthogonal distance to the subspace under exact fit.
        exact_fit (Optional[Direction]): The subspace holding h or more observations, if any.
        candidate_log (np.ndarray): Final incongruence per candidate, NaN for degenerate ones.
        directions (List[Direction]): Scoring directions of H_*.
        params (AlgoParams): The parameters used.
    """

    h_star: SubsetIndex
    fit: LocationScatter
    outlyingness: np.ndarray
    exact_fit: Optional[Direction]
    candidate_log: np.ndarray
    directions: List[Direction]
    params: AlgoParams

    @property
    def best_incongruence(self) -> float:
        return float(np.nanmin(self.candidate_log)) if np.any(~np.isnan(self.candidate_log)) else float("nan")


@dataclass
class _Outcome:
    state: Optional[CandidateState]
    probe: Optional[SubsetIndex]


def _evaluate(data: Dataset, params: AlgoParams, root: np.random.SeedSequence, m: int) -> _Outcome:
    rng = np.random.default_rng(substream(root, m))
    start = SubsetIndex.from_indices(rng.choice(data.n, size=data.p + 1, replace=False))
    try:
        state = concentrate(data, start, params, rng)
        dist = distance_matrix(data, state.directions)
        state.incongruence = incongruence(data, state.H, state.directions, params.h, dist)
        return _Outcome(state=state, probe=None)
    except DegenerateCandidateError as e:
        log.debug(f"Candidate {m} degenerate: {e}")
        return _Outcome(state=None, probe=e.probe)


def _exact_fit_result(
    data: Dataset, params: AlgoParams, subspace: Direction, candidate_log: np.ndarray, directions: List[Direction]
) -> PcsResult:
    h_star = exact_fit_members(data, subspace, params.h)
    return PcsResult(
        h_star=h_star,
        fit=subset_moments(data, h_star),
        outlyingness=subspace_distance(data, subspace),
        exact_fit=subspace,
        candidate_log=candidate_log,
        directions=directions,
        params=params,
    )


def fastpcs_run(
    data: Dataset, params: AlgoParams, rng: Union[None, int, np.random.SeedSequence] = None
) -> PcsResult:
    """
    Runs FastPCS: M_p candidates grown from random (p+1)-subsets, each scored by its
    incongruence over the K directions of its last concentration stage; the candidate with
    lowest incongruence is H_*.

    Args:
        data (Dataset): The observations, n > p.
        params (AlgoParams): Algorithm parameters.
        rng: Master stream; defaults to params.seed. Candidate m uses substream m.

    Returns:
        The PcsResult. When h or more observations lie on a hyperplane the exact-fit branch
        reports that subspace instead.
    """
    data.require_overdetermined()
    params.validate(data.n, data.p)
    root = as_seed_sequence(rng, params.seed)

    outcomes = run_candidates(lambda m: _evaluate(data, params, root, m), params.M_p, params.threads)
    scores = [o.state.incongruence if o.state is not None else None for o in outcomes]
    candidate_log = np.array([np.nan if s is None else s for s in scores], dtype=float)

    for o in outcomes:
        if o.probe is None:
            continue
        subspace = detect_exact_fit(data, params.h, o.probe)
        if subspace is not None:
            return _exact_fit_result(data, params, subspace, candidate_log, [])

    best = first_argmin(scores)
    if best is None:
        log.error(f"All {params.M_p} candidates were degenerate and no exact fit was found")
        raise EstimationFailureError(f"All {params.M_p} candidates were degenerate and no exact fit was found")

    state = outcomes[best].state
    fit = subset_moments(data, state.H)
    if fit.singular:
        subspace = detect_exact_fit(data, params.h, state.H)
        if subspace is not None:
            return _exact_fit_result(data, params, subspace, candidate_log, state.directions)
        raise EstimationFailureError("Optimal subset has a singular scatter matrix but no exact fit was found")

    log.info(f"FastPCS picked candidate {best} of {params.M_p} with incongruence {state.incongruence:.6g}")
    return PcsResult(
        h_star=state.H,
        fit=fit,
        outlyingness=np.sqrt(mahalanobis_sq(data.rows, fit)),
        exact_fit=None,
        candidate_log=candidate_log,
        directions=state.directions,
        params=params,
    )
