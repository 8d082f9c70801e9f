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
from enum import Enum
from typing import List, Optional

import numpy as np

from ..estimators import Dataset, EstimationFailureError, LocationScatter, SubsetIndex, mahalanobis_sq, subset_moments
from ..pcs import Direction, detect_exact_fit, exact_fit_members, subspace_distance

log = logging.getLogger(__name__)


class Method(str, Enum):
    SDE = "sde"
    MCD = "mcd"
    MVE = "mve"


@dataclass(frozen=True)
class BaselineResult:
    """
    Output of a competitor estimator.

    Args:
        method (Method): Which estimator produced it.
        h_star (SubsetIndex): Chosen h-subset.
        fit (LocationScatter): Moments of h_star.
        outlyingness (np.ndarray): d_MD of every observation w.r.t. the fit.
        criterion (float): det for MCD, volume proxy for MVE, NaN for SDE.
        raw_index (np.ndarray): The estimator's own ranking index (P_M for SDE, d^2 otherwise).
        exact_fit (Optional[Direction]): Subspace holding h or more observations, if any.
    """

    method: Method
    h_star: SubsetIndex
    fit: LocationScatter
    outlyingness: np.ndarray
    criterion: float
    raw_index: np.ndarray
    exact_fit: Optional[Direction] = None


def finish(
    method: Method, data: Dataset, H: SubsetIndex, h: int, raw_index: np.ndarray, criterion: float
) -> BaselineResult:
    """
    Fits the chosen subset and reports Mahalanobis outlyingness, switching to the exact-fit
    report when the subset's scatter is singular.

    Args:
        method (Method): Estimator name.
        data (Dataset): The observations.
        H (SubsetIndex): Chosen h-subset.
        h (int): Subset size.
        raw_index (np.ndarray): The estimator's own index.
        criterion (float): Objective value of H.

    Returns:
        The BaselineResult.
    """
    fit = subset_moments(data, H)
    if not fit.singular:
        return BaselineResult(
            method=method,
            h_star=H,
            fit=fit,
            outlyingness=np.sqrt(mahalanobis_sq(data.rows, fit)),
            criterion=criterion,
            raw_index=raw_index,
        )
    subspace = detect_exact_fit(data, h, H)
    if subspace is None:
        log.error(f"{method.name} subset has a singular scatter matrix and no exact fit")
        raise EstimationFailureError(f"{method.name} subset has a singular scatter matrix and no exact fit")
    h_star = exact_fit_members(data, subspace, h)
    return BaselineResult(
        method=method,
        h_star=h_star,
        fit=subset_moments(data, h_star),
        outlyingness=subspace_distance(data, subspace),
        criterion=0.0,
        raw_index=raw_index,
        exact_fit=subspace,
    )


def probe_exact_fit(method: Method, data: Dataset, h: int, probes: List[SubsetIndex]) -> Optional[BaselineResult]:
    """
    Checks the singular subsets met during the search for a subspace holding h or more
    observations.

    Args:
        method (Method): Estimator name.
        data (Dataset): The observations.
        h (int): Subset size.
        probes (List[SubsetIndex]): Singular subsets, in candidate order.

    Returns:
        The exact-fit BaselineResult, or None.
    """
    for probe in probes:
        subspace = detect_exact_fit(data, h, probe)
        if subspace is not None:
            H = exact_fit_members(data, subspace, h)
            return finish(method, data, H, h, raw_index=subspace_distance(data, subspace), criterion=0.0)
    return None


def exact_fit_or_fail(method: Method, data: Dataset, h: int, probes: List[SubsetIndex]) -> BaselineResult:
    """Last resort when every candidate was discarded: an exact fit, or failure."""
    result = probe_exact_fit(method, data, h, probes)
    if result is None:
        log.error(f"All {method.name} candidates were discarded and no exact fit was found")
        raise EstimationFailureError(f"All {method.name} candidates were discarded and no exact fit was found")
    return result
