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
from typing import Dict, Optional

import numpy as np
import pandas as pd

from ..baselines import DetectionResult, run_method
from ..estimators import AlgoParams, Dataset, SubsetIndex, reweight_hard_threshold
from ..pcs import subspace_rows
from ..simlab import default_starts
from .utils import read_numeric_csv, write_table

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_EXACT_FIT = 2

REPORT_COLUMNS = ["row_id", "outlyingness", "in_h_star", "in_j_plus"]


@dataclass(frozen=True)
class DetectReport:
    """
    Per-row outcome of a detection run.

    Args:
        table (pd.DataFrame): row_id, outlyingness, in_h_star, in_j_plus.
        metadata (Dict[str, object]): method, alpha, h, seed, starts and the exact-fit note.
    """

    table: pd.DataFrame
    metadata: Dict[str, object]

    @property
    def exact_fit(self) -> bool:
        return self.metadata.get("exact_fit", "none") != "none"


def j_plus(data: Dataset, result: DetectionResult) -> SubsetIndex:
    """Reweighted subset of a result; under an exact fit, the rows on the subspace."""
    if result.exact_fit is not None:
        return subspace_rows(data, result.exact_fit)
    return reweight_hard_threshold(data, result.fit)


def exact_fit_note(result: DetectionResult) -> str:
    if result.exact_fit is None:
        return "none"
    d = result.exact_fit
    coefficients = " ".join(f"{v:.17g}" for v in d.a)
    return f"{coefficients} = {d.offset:g}"


def detect(
    data: Dataset,
    method: str = "fastpcs",
    alpha: float = 0.5,
    seed: int = 0,
    starts: Optional[int] = None,
    threads: int = 0,
) -> DetectReport:
    """
    Runs one estimator on a dataset and builds the per-row report.

    Args:
        data (Dataset): The observations, n > p.
        method (str): fastpcs, sde, mcd or mve.
        alpha (float): Subset fraction.
        seed (int): Master seed.
        starts (Optional[int]): Number of starting subsets; defaults to the 99% coverage count.
        threads (int): Worker threads, 0 for automatic.

    Returns:
        The DetectReport.
    """
    data.require_overdetermined()
    M_p = starts if starts is not None else default_starts(alpha, data.p)
    params = AlgoParams.from_data(data.n, data.p, M_p, alpha=alpha, seed=seed, threads=threads)
    result = run_method(method, data, params, seed)
    J = j_plus(data, result)

    table = pd.DataFrame(
        {
            "row_id": np.arange(1, data.n + 1),
            "outlyingness": np.asarray(result.outlyingness, dtype=float),
            "in_h_star": result.h_star.mask(data.n),
            "in_j_plus": J.mask(data.n),
        },
        columns=REPORT_COLUMNS,
    )
    metadata: Dict[str, object] = {
        "method": method,
        "alpha": alpha,
        "h": params.h,
        "seed": seed,
        "starts": params.M_p,
        "exact_fit": exact_fit_note(result),
    }
    log.info(f"{method} kept {result.h_star.size} rows in H*, {J.size} in J+ out of {data.n}")
    return DetectReport(table=table, metadata=metadata)


def cmd_detect(
    input_path: str,
    output_path: str,
    method: str = "fastpcs",
    alpha: float = 0.5,
    seed: int = 0,
    starts: Optional[int] = None,
    threads: int = 0,
) -> int:
    """
    `detect` sub-command: reads a CSV, runs the estimator and writes the DetectReport.

    Returns:
        EXIT_OK, or EXIT_EXACT_FIT when the report describes an exact fit.
    """
    data, _ = read_numeric_csv(input_path)
    report = detect(data, method=method, alpha=alpha, seed=seed, starts=starts, threads=threads)
    write_table(report.table, output_path, report.metadata)
    if report.exact_fit:
        log.warning(f"Exact fit: {report.metadata['exact_fit']}")
        return EXIT_EXACT_FIT
    return EXIT_OK
