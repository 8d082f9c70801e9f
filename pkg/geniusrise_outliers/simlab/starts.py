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

from ..estimators import ValidationError

log = logging.getLogger(__name__)


def num_starts(eps0: float, p: int) -> int:
    """
    Number of random (p+1)-subsets needed so that at least one is uncontaminated with
    probability 0.99 when a fraction eps0 of the data is contaminated.

    Args:
        eps0 (float): Assumed contamination fraction in [0, 1).
        p (int): Dimension.

    Returns:
        ceil(log(0.01) / log(1 - (1 - eps0)^(p+1))), at least 1.
    """
    if not 0.0 <= eps0 < 1.0:
        raise ValidationError(f"eps0 must lie in [0, 1), got {eps0}")
    if p < 1:
        raise ValidationError(f"p must be at least 1, got {p}")
    clean = (1.0 - eps0) ** (p + 1)
    if clean >= 1.0:
        return 1
    return max(1, math.ceil(math.log(0.01) / math.log1p(-clean)))


def default_starts(alpha: float, p: int) -> int:
    """num_starts with eps0 = 4(1 - alpha)/5."""
    return num_starts(4.0 * (1.0 - alpha) / 5.0, p)
