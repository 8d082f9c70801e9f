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
from typing import Union

import numpy as np

from ..estimators import AlgoParams, Dataset, ValidationError, as_seed_sequence
from ..pcs import PcsResult, fastpcs_run
from .mcd import fastmcd_run
from .mve import fastmve_run
from .sde import sde_outlyingness
from .utils import BaselineResult

log = logging.getLogger(__name__)

METHODS = ("fastpcs", "sde", "mcd", "mve")

DetectionResult = Union[PcsResult, BaselineResult]


def run_method(
    name: str, data: Dataset, params: AlgoParams, rng: Union[None, int, np.random.SeedSequence] = None
) -> DetectionResult:
    """
    Runs one of the four estimators by name. SDE uses M_p directions.

    Args:
        name (str): One of fastpcs, sde, mcd, mve.
        data (Dataset): The observations.
        params (AlgoParams): Shared parameters.
        rng: Master stream; defaults to params.seed.

    Returns:
        A PcsResult or BaselineResult; both expose h_star, fit, outlyingness and exact_fit.
    """
    name = name.lower()
    if name == "fastpcs":
        return fastpcs_run(data, params, rng)
    if name == "mcd":
        return fastmcd_run(data, params, rng)
    if name == "mve":
        return fastmve_run(data, params, rng)
    if name == "sde":
        data.require_overdetermined()
        params.validate(data.n, data.p)
        generator = np.random.default_rng(as_seed_sequence(rng, params.seed))
        return sde_outlyingness(data, params.M_p, params.h, generator)
    raise ValidationError(f"Unknown method {name!r}, expected one of {', '.join(METHODS)}")
