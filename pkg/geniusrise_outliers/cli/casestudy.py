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
from typing import Dict, Sequence

import numpy as np
import pandas as pd
from tqdm import tqdm

from ..baselines import run_method
from ..estimators import (
    AlgoParams,
    Dataset,
    SubsetIndex,
    ValidationError,
    chisq_quantile,
    mahalanobis_sq,
    subset_moments,
)
from .utils import read_numeric_csv, sha256_of, write_table

log = logging.getLogger(__name__)

CONCRETE_ROWS = 103
CONCRETE_COLUMNS = 10
CLEAN_ROWS = 78
MOVED_ROWS = 25
CASE_STUDY_STARTS = 2000
VARIANTS = ("i", "ii", "iii", "iv")


@dataclass(frozen=True)
class CaseStudyVariant:
    """
    One arrangement of the concrete data.

    Args:
        variant (str): i, ii, iii or iv.
        data (Dataset): 103 rows for i and ii, 128 for iii and iv.
        J_O (SubsetIndex): The 78 rows of the main group.
        J_N (SubsetIndex): The rows of the outlying group.
    """

    variant: str
    data: Dataset
    J_O: SubsetIndex
    J_N: SubsetIndex


def load_concrete(path: str) -> Dataset:
    """
    Reads the Concrete Slump Test file: 103 rows of 10 measurements, optionally preceded by
    an integer id column, which is dropped.

    Args:
        path (str): CSV path.

    Returns:
        The (103, 10) Dataset.
    """
    log.info(f"sha256 of {path}: {sha256_of(path)}")
    data, _ = read_numeric_csv(path)
    rows = data.rows
    if rows.shape[1] == CONCRETE_COLUMNS + 1 and np.array_equal(rows[:, 0], np.round(rows[:, 0])):
        log.info("Dropping the leading id column")
        rows = rows[:, 1:]
    if rows.shape[1] != CONCRETE_COLUMNS:
        raise ValidationError(
            f"Expected {CONCRETE_COLUMNS} measurement columns, or {CONCRETE_COLUMNS + 1} with an id, "
            f"got {rows.shape[1]}"
        )
    if rows.shape[0] != CONCRETE_ROWS:
        raise ValidationError(f"Expected {CONCRETE_ROWS} rows, got {rows.shape[0]}")
    return Dataset.from_rows(rows)


def _pull_towards(rows: np.ndarray, center: np.ndarray) -> np.ndarray:
    moved = rows.copy()
    moved[CLEAN_ROWS:] = (moved[CLEAN_ROWS:] + center) / 2.0
    return moved


def _with_midpoints(rows: np.ndarray) -> np.ndarray:
    # (x_79 + x_{79+j}) / 2 for j = 0..24, in 1-based rows
    midpoints = (rows[CLEAN_ROWS] + rows[CLEAN_ROWS : CLEAN_ROWS + MOVED_ROWS]) / 2.0
    return np.vstack([rows, midpoints])


def build_variant(data: Dataset, variant: str) -> CaseStudyVariant:
    """
    Arranges the concrete data for one experiment.

    i: the raw data. ii: the last 25 rows pulled halfway towards t_O, the mean of the first
    78. iii: the raw data plus 25 midpoints between the first outlying row and each outlying
    row. iv: ii followed by the midpoints of iii computed on the moved rows.

    Args:
        data (Dataset): The (103, 10) concrete data.
        variant (str): i, ii, iii or iv.

    Returns:
        The CaseStudyVariant.
    """
    if variant not in VARIANTS:
        raise ValidationError(f"Unknown variant {variant!r}, expected one of {', '.join(VARIANTS)}")
    if data.rows.shape != (CONCRETE_ROWS, CONCRETE_COLUMNS):
        raise ValidationError(f"Expected a ({CONCRETE_ROWS}, {CONCRETE_COLUMNS}) dataset, got {data.rows.shape}")

    rows = np.array(data.rows)
    t_O = rows[:CLEAN_ROWS].mean(axis=0)
    if variant in ("ii", "iv"):
        rows = _pull_towards(rows, t_O)
    if variant in ("iii", "iv"):
        rows = _with_midpoints(rows)

    n = rows.shape[0]
    return CaseStudyVariant(
        variant=variant,
        data=Dataset.from_rows(rows),
        J_O=SubsetIndex.from_indices(np.arange(CLEAN_ROWS)),
        J_N=SubsetIndex.from_indices(np.arange(CLEAN_ROWS, n)),
    )


def separation_facts(case: CaseStudyVariant) -> Dict[str, float]:
    """
    How far the outlying group sits from the main one.

    Args:
        case (CaseStudyVariant): The arranged data.

    Returns:
        min_d2, the smallest squared Mahalanobis distance of a J_N row w.r.t. the moments of
        J_O, and ratio, min_d2 over chi2(0.99, p).
    """
    fit = subset_moments(case.data, case.J_O)
    d2 = mahalanobis_sq(case.data.rows[case.J_N.indices], fit)
    min_d2 = float(np.min(d2))
    return {"min_d2": min_d2, "ratio": min_d2 / chisq_quantile(0.99, case.data.p)}


def run_casestudy(
    case: CaseStudyVariant, methods: Sequence[str], seed: int = 0, starts: int = CASE_STUDY_STARTS, threads: int = 0
) -> pd.DataFrame:
    """
    Runs every method on one variant with alpha = 0.5.

    Args:
        case (CaseStudyVariant): The arranged data.
        methods (Sequence[str]): Estimators to run.
        seed (int): Master seed.
        starts (int): Number of starting subsets.
        threads (int): Worker threads, 0 for automatic.

    Returns:
        One row per (method, observation): method, row_id, group and outlyingness.
    """
    data = case.data
    params = AlgoParams.from_data(data.n, data.p, starts, alpha=0.5, seed=seed, threads=threads)
    group = np.where(case.J_N.mask(data.n), "J_N", "J_O")

    frames = []
    for method in tqdm(methods, desc=f"variant {case.variant}"):
        result = run_method(method, data, params, seed)
        outlyingness = np.asarray(result.outlyingness, dtype=float)
        frames.append(
            pd.DataFrame(
                {
                    "method": method,
                    "row_id": np.arange(1, data.n + 1),
                    "group": group,
                    "outlyingness": outlyingness,
                }
            )
        )
        inner = outlyingness[case.J_O.indices].max()
        outer = outlyingness[case.J_N.indices].min()
        log.info(f"{method} on variant {case.variant}: max J_O {inner:.6g}, min J_N {outer:.6g}")
    return pd.concat(frames, ignore_index=True)


def cmd_casestudy(
    input_path: str,
    output_path: str,
    variant: str,
    methods: Sequence[str],
    seed: int = 0,
    starts: int = CASE_STUDY_STARTS,
    threads: int = 0,
) -> int:
    """`casestudy` sub-command."""
    case = build_variant(load_concrete(input_path), variant)
    facts = separation_facts(case)
    log.info(f"Variant {variant}: min d2 of J_N w.r.t. J_O is {facts['min_d2']:.6g} ({facts['ratio']:.4g} x chi2)")
    table = run_casestudy(case, methods, seed=seed, starts=starts, threads=threads)
    metadata = {"variant": variant, "seed": seed, "starts": starts, "min_d2": facts["min_d2"], "ratio": facts["ratio"]}
    write_table(table, output_path, metadata)
    return 0
