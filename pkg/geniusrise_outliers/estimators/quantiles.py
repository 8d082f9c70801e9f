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
from functools import lru_cache

import numpy as np
from scipy import special

from .errors import ValidationError

log = logging.getLogger(__name__)


@lru_cache(maxsize=256)
def chisq_quantile(prob: float, dof: int) -> float:
    """
    Quantile of the chi-square distribution.

    Inverts the regularized lower incomplete gamma function, then polishes with Newton steps.

    Args:
        prob (float): Probability in (0, 1).
        dof (int): Degrees of freedom, at least 1.

    Returns:
        q with P(dof/2, q/2) == prob.
    """
    if not 0.0 < prob < 1.0:
        raise ValidationError(f"prob must lie in (0, 1), got {prob}")
    if dof < 1:
        raise ValidationError(f"dof must be at least 1, got {dof}")
    a = dof / 2.0
    x = float(special.gammaincinv(a, prob))
    for _ in range(2):
        density = np.exp(special.xlogy(a - 1.0, x) - x - special.gammaln(a))
        if not density > 0.0:
            break
        x -= (float(special.gammainc(a, x)) - prob) / density
    return 2.0 * x
