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
from typing import Tuple

import numpy as np

from .base import Dataset, LocationScatter, SubsetIndex
from .moments import mahalanobis_sq, subset_moments
from .quantiles import chisq_quantile

log = logging.getLogger(__name__)


def reweight_hard_threshold(data: Dataset, ls_star: LocationScatter) -> SubsetIndex:
    """
    Hard-threshold reweighting of an optimal subset fit.

    Keeps every observation whose squared Mahalanobis distance is at most
    chi2(0.975, p) * median(d2) / chi2(0.5, p); the median runs over all n observations.

    Args:
        data (Dataset): The observations.
        ls_star (LocationScatter): Fit of the optimal h-subset, non-singular.

    Returns:
        J_+, the enlarged subset.
    """
    d2 = mahalanobis_sq(data.rows, ls_star)
    consistency = float(np.median(d2)) / chisq_quantile(0.5, data.p)
    cutoff = chisq_quantile(0.975, data.p) * consistency
    J = SubsetIndex.from_indices(np.flatnonzero(d2 <= cutoff))
    log.debug(f"Reweighting kept {J.size} of {data.n} observations (cutoff {cutoff:.6g})")
    return J


def reweighted_fit(data: Dataset, ls_star: LocationScatter) -> Tuple[SubsetIndex, LocationScatter]:
    """
    J_+ and its moments (t_+, S_+).

    Args:
        data (Dataset): The observations.
        ls_star (LocationScatter): Fit of the optimal h-subset.

    Returns:
        Tuple of J_+ and subset_moments(J_+).
    """
    J = reweight_hard_threshold(data, ls_star)
    return J, subset_moments(data, J)
