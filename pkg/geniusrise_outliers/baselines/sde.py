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
from typing import List, Tuple

import numpy as np

from ..estimators import (
    Dataset,
    DegenerateCandidateError,
    EstimationFailureError,
    SubsetIndex,
    ValidationError,
    smallest,
)
from ..pcs import Direction, sample_direction
from .utils import BaselineResult, Method, finish

log = logging.getLogger(__name__)


def projection_outlyingness(data: Dataset, dirs: List[Direction]) -> Tuple[np.ndarray, int]:
    """
    Stahel-Donoho outlyingness: the largest standardized deviation |x'a - med| / mad over
    the directions, with the unscaled median absolute deviation.

    Args:
        data (Dataset): The observations.
        dirs (List[Direction]): Projection directions.

    Returns:
        Tuple of the (n,) outlyingness array and the number of directions dropped for a zero mad.
    """
    if not dirs:
        raise EstimationFailureError("No projection direction could be drawn")
    proj = data.rows @ np.column_stack([d.a for d in dirs])
    med = np.median(proj, axis=0)
    dev = np.abs(proj - med)
    mad = np.median(dev, axis=0)
    keep = mad > 0.0
    dropped = int(np.count_nonzero(~keep))
    if not np.any(keep):
        log.error(f"All {len(dirs)} projections have zero mad")
        raise EstimationFailureError(f"All {len(dirs)} projections have zero median absolute deviation")
    return np.max(dev[:, keep] / mad[keep], axis=1), dropped


def sde_outlyingness(data: Dataset, M: int, h: int, rng: np.random.Generator) -> BaselineResult:
    """
    Stahel-Donoho estimator with M directions through p-subsets drawn from all rows.

    H_* holds the h observations of smallest outlyingness; the reported outlyingness is the
    Mahalanobis distance w.r.t. the moments of H_*.

    Args:
        data (Dataset): The observations.
        M (int): Number of directions.
        h (int): Subset size.
        rng (np.random.Generator): Stream for index draws.

    Returns:
        The BaselineResult, raw_index holding the projection outlyingness.
    """
    if M < 1:
        raise ValidationError(f"M must be at least 1, got {M}")
    everyone = SubsetIndex.all(data.n)
    dirs: List[Direction] = []
    for _ in range(M):
        try:
            dirs.append(sample_direction(data, everyone, rng))
        except DegenerateCandidateError as e:
            log.debug(f"Skipping direction: {e}")
    P, dropped = projection_outlyingness(data, dirs)
    if dropped:
        log.debug(f"SDE dropped {dropped} of {len(dirs)} directions with zero mad")
    H = smallest(P, h)
    log.info(f"SDE kept {H.size} observations using {len(dirs) - dropped} directions")
    return finish(Method.SDE, data, H, h, raw_index=P, criterion=float("nan"))
