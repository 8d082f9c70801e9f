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
from typing import Optional, Union

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


def mve_volume_proxy(fit: LocationScatter, d2: np.ndarray, h: int, p: int) -> float:
    """
    Volume proxy det(S) * (h-th smallest d^2)^p of the ellipsoid that, inflated to cover h
    observations, is centered and shaped by `fit`.

    Args:
        fit (LocationScatter): Candidate fit.
        d2 (np.ndarray): Squared Mahalanobis distances of all observations w.r.t. the fit.
        h (int): Number of observations the ellipsoid must cover.
        p (int): Dimension.

    Returns:
        The proxy, proportional to the squared ellipsoid volume.
    """
    radius_sq = float(np.partition(d2, h - 1)[h - 1])
    return fit.det * radius_sq**p


@dataclass
class _Outcome:
    fit: Optional[LocationScatter] = None
    proxy: Optional[float] = None
    probe: Optional[SubsetIndex] = None


def _evaluate(data: Dataset, h: int, root: np.random.SeedSequence, m: int) -> _Outcome:
    rng = np.random.default_rng(substream(root, m))
    start = SubsetIndex.from_indices(rng.choice(data.n, size=data.p + 1, replace=False))
    fit = subset_moments(data, start)
    if fit.singular:
        return _Outcome(probe=start)
    return _Outcome(fit=fit, proxy=mve_volume_proxy(fit, mahalanobis_sq(data.rows, fit), h, data.p))


def fastmve_run(
    data: Dataset, params: AlgoParams, rng: Union[None, int, np.random.SeedSequence] = None
) -> BaselineResult:
    """
    Simplified FastMVE: the (p+1)-subset fit whose inflated ellipsoid covering h observations
    has the smallest volume, followed by one trim to the h observations it covers.

    Args:
        data (Dataset): The observations, n > p.
        params (AlgoParams): Subset size, number of starts, seed and threads.
        rng: Master stream; defaults to params.seed.

    Returns:
        The BaselineResult with criterion the volume proxy.
    """
    data.require_overdetermined()
    params.validate(data.n, data.p)
    root = as_seed_sequence(rng, params.seed)
    outcomes = run_candidates(lambda m: _evaluate(data, params.h, root, m), params.M_p, params.threads)

    probes = [o.probe for o in outcomes if o.probe is not None]
    if probes:
        exact = probe_exact_fit(Method.MVE, data, params.h, probes)
        if exact is not None:
            return exact
    best = first_argmin([o.proxy for o in outcomes])
    if best is None:
        return exact_fit_or_fail(Method.MVE, data, params.h, probes)

    winner = outcomes[best]
    d2 = mahalanobis_sq(data.rows, winner.fit)
    H = smallest(d2, params.h)
    log.info(f"FastMVE picked candidate {best} of {params.M_p} with volume proxy {winner.proxy:.6g}")
    return finish(Method.MVE, data, H, params.h, raw_index=d2, criterion=winner.proxy)
