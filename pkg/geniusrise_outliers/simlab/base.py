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
import time
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from tqdm import tqdm

from ..baselines import METHODS, run_method
from ..estimators import (
    AlgoParams,
    DegenerateCandidateError,
    DegenerateSubsetError,
    EstimationFailureError,
    SingularScatterError,
    reweighted_fit,
    stream_seed,
    substream,
)
from .config import NuUniform, SweepConfig
from .contamination import Config, ContaminationSpec, Core, LabeledSample, generate
from .metrics import bias, misclassification
from .starts import default_starts

log = logging.getLogger(__name__)

SWEEP_COLUMNS = [
    "method",
    "p",
    "n",
    "eps",
    "config",
    "core",
    "alpha",
    "nu",
    "rep",
    "bias",
    "misrate",
    "runtime",
    "seed",
    "failed",
]
ACCURACY_COLUMNS = ["method", "p", "n", "core", "alpha", "rep", "bias", "bias_reweighted", "runtime", "seed", "failed"]

ESTIMATION_ERRORS = (EstimationFailureError, DegenerateCandidateError, DegenerateSubsetError, SingularScatterError)


@dataclass(frozen=True)
class Cell:
    """One grid point of a sweep; nu is NaN when it is drawn per replication or irrelevant."""

    p: int
    n: int
    eps: float
    config: Config
    core: Core
    alpha: float
    nu: float = math.nan


def _uses_nu(config: Config, eps: float) -> bool:
    return config in (Config.SHIFT, Config.POINT_MASS) and eps > 0


def sweep_cells(cfg: SweepConfig) -> List[Cell]:
    """
    Enumerates the grid of a contaminated sweep in canonical order.

    Args:
        cfg (SweepConfig): The sweep settings.

    Returns:
        The cells; their position is their stream address.
    """
    cells = []
    for p in cfg.p:
        for n in cfg.sample_sizes(p):
            for eps in cfg.eps:
                for config in cfg.configs:
                    for core in cfg.cores:
                        for alpha in cfg.alpha:
                            if _uses_nu(config, eps) and not isinstance(cfg.nu, NuUniform):
                                for nu in cfg.nu:
                                    cells.append(Cell(p, n, eps, config, core, alpha, float(nu)))
                            else:
                                cells.append(Cell(p, n, eps, config, core, alpha))
    return cells


def starts_for(cfg: SweepConfig, alpha: float, p: int) -> int:
    """Number of starting subsets for a cell: the default for (alpha, p), capped by cfg.starts."""
    M_p = default_starts(alpha, p)
    return M_p if cfg.starts is None else min(M_p, cfg.starts)


def cell_params(cfg: SweepConfig, cell: Cell) -> AlgoParams:
    M_p = starts_for(cfg, cell.alpha, cell.p)
    return AlgoParams.from_data(
        cell.n, cell.p, M_p, alpha=cell.alpha, K=cfg.K, L=cfg.L, seed=cfg.seed, threads=cfg.threads
    )


def _method_stream(rep_ss: np.random.SeedSequence, method: str) -> int:
    # fixed slot per method, so dropping a method leaves the others unchanged
    return stream_seed(substream(rep_ss, 1 + METHODS.index(method)))


def _elapsed(cfg: SweepConfig, started: float) -> float:
    return time.perf_counter() - started if cfg.record_runtime else math.nan


def _contaminated_sample(
    cfg: SweepConfig, cell: Cell, rep_ss: np.random.SeedSequence
) -> Tuple[LabeledSample, float]:
    rng = np.random.default_rng(substream(rep_ss, 0))
    uses_nu = _uses_nu(cell.config, cell.eps)
    nu = cell.nu
    if uses_nu and isinstance(cfg.nu, NuUniform):
        nu = float(rng.uniform(cfg.nu.lo, cfg.nu.hi))
    spec = ContaminationSpec(
        config=cell.config,
        eps=cell.eps,
        nu=nu if uses_nu else 0.0,
        core=cell.core,
        p=cell.p,
        n=cell.n,
    )
    return generate(spec, rng), (nu if uses_nu else math.nan)


def run_replication(
    cfg: SweepConfig, index: int, cell: Cell, rep: int, root: np.random.SeedSequence
) -> List[Dict[str, Any]]:
    """
    Generates one contaminated sample and runs every requested method on it.

    All methods see the same sample, and therefore the same nu.

    Args:
        cfg (SweepConfig): The sweep settings.
        index (int): Position of the cell in the grid.
        cell (Cell): The grid point.
        rep (int): Replication number.
        root (np.random.SeedSequence): Master stream.

    Returns:
        One result row per method.
    """
    rep_ss = substream(root, index, rep)
    sample, nu = _contaminated_sample(cfg, cell, rep_ss)
    params = cell_params(cfg, cell)

    rows = []
    for method in cfg.methods:
        seed = _method_stream(rep_ss, method)
        row = {
            "method": method,
            "p": cell.p,
            "n": cell.n,
            "eps": cell.eps,
            "config": cell.config.value,
            "core": cell.core.value,
            "alpha": cell.alpha,
            "nu": nu,
            "rep": rep,
            "bias": math.nan,
            "misrate": math.nan,
            "runtime": math.nan,
            "seed": seed,
            "failed": False,
        }
        started = time.perf_counter()
        try:
            result = run_method(method, sample.data, params, np.random.SeedSequence(seed))
            row["runtime"] = _elapsed(cfg, started)
        except ESTIMATION_ERRORS as e:
            log.warning(f"{method} failed on cell {index} rep {rep}: {e}")
            row["failed"] = True
            rows.append(row)
            continue

        if result.fit.singular:
            log.warning(f"{method} returned an exact fit on cell {index} rep {rep}, bias left undefined")
        else:
            row["bias"] = bias(result.fit.scatter, sample.truth.scatter)
        if sample.outlier_index.size > 0:
            row["misrate"] = misclassification(sample.outlier_index, result.h_star)
        rows.append(row)
    return rows


def _canonical(rows: List[Dict[str, Any]], columns: Sequence[str], keys: Sequence[str]) -> pd.DataFrame:
    table = pd.DataFrame(rows)
    table["_method"] = table["method"].map(METHODS.index)
    table = table.sort_values(list(keys) + ["_method"], kind="mergesort").reset_index(drop=True)
    return table[list(columns)]


def run_sweep(cfg: SweepConfig) -> pd.DataFrame:
    """
    Monte-Carlo sweep over contaminated samples.

    Every (cell, replication) job has its own stream addressed by counter, so the table is
    identical for a given seed whatever the execution order.

    Args:
        cfg (SweepConfig): The sweep settings.

    Returns:
        The result table with SWEEP_COLUMNS, sorted by cell, replication and method.
    """
    cfg.validate()
    root = np.random.SeedSequence(cfg.seed)
    cells = sweep_cells(cfg)
    log.info(f"Running sweep: {len(cells)} cells x {cfg.reps} reps x {len(cfg.methods)} methods")

    rows: List[Dict[str, Any]] = []
    with tqdm(total=len(cells) * cfg.reps, desc="sweep") as progress:
        for index, cell in enumerate(cells):
            cell_rows = []
            for rep in range(cfg.reps):
                for row in run_replication(cfg, index, cell, rep, root):
                    row["_cell"] = index
                    cell_rows.append(row)
                progress.update(1)
            rows.extend(cell_rows)
            _log_cell(index, cell, cell_rows)

    return _canonical(rows, SWEEP_COLUMNS, ["_cell", "rep"])


def _log_cell(index: int, cell: Cell, rows: List[Dict[str, Any]]) -> None:
    frame = pd.DataFrame(rows)
    summary = frame.groupby("method")["misrate"].median().to_dict()
    failures = int(frame["failed"].sum())
    log.info(
        f"Cell {index} (p={cell.p}, n={cell.n}, eps={cell.eps}, {cell.config.value}, {cell.core.value}): "
        f"median misrate {summary}, {failures} failures"
    )


def accuracy_curve(cfg: SweepConfig) -> pd.DataFrame:
    """
    Bias of the raw and reweighted fits on uncontaminated samples, as a function of n.

    Args:
        cfg (SweepConfig): The sweep settings; eps, configs and nu are ignored.

    Returns:
        The result table with ACCURACY_COLUMNS.
    """
    cfg.validate()
    root = np.random.SeedSequence(cfg.seed)
    cells = [
        Cell(p, n, 0.0, Config.NONE, core, alpha)
        for p in cfg.p
        for n in cfg.sample_sizes(p)
        for core in cfg.cores
        for alpha in cfg.alpha
    ]
    log.info(f"Running accuracy curve: {len(cells)} cells x {cfg.reps} reps x {len(cfg.methods)} methods")

    rows: List[Dict[str, Any]] = []
    for index, cell in enumerate(tqdm(cells, desc="accuracy")):
        params = cell_params(cfg, cell)
        for rep in range(cfg.reps):
            rep_ss = substream(root, index, rep)
            spec = ContaminationSpec(Config.NONE, 0.0, 0.0, cell.core, cell.p, cell.n)
            sample = generate(spec, np.random.default_rng(substream(rep_ss, 0)))
            for method in cfg.methods:
                seed = _method_stream(rep_ss, method)
                rows.append(_accuracy_row(cfg, index, cell, rep, method, sample, params, seed))

    return _canonical(rows, ACCURACY_COLUMNS, ["_cell", "rep"])


def _accuracy_row(
    cfg: SweepConfig,
    index: int,
    cell: Cell,
    rep: int,
    method: str,
    sample: LabeledSample,
    params: AlgoParams,
    seed: int,
) -> Dict[str, Any]:
    row = {
        "method": method,
        "p": cell.p,
        "n": cell.n,
        "core": cell.core.value,
        "alpha": cell.alpha,
        "rep": rep,
        "bias": math.nan,
        "bias_reweighted": math.nan,
        "runtime": math.nan,
        "seed": seed,
        "failed": False,
        "_cell": index,
    }
    started = time.perf_counter()
    try:
        result = run_method(method, sample.data, params, np.random.SeedSequence(seed))
        row["runtime"] = _elapsed(cfg, started)
        if result.fit.singular:
            raise EstimationFailureError("exact fit on a clean sample")
        row["bias"] = bias(result.fit.scatter, sample.truth.scatter)
        _, reweighted = reweighted_fit(sample.data, result.fit)
        if not reweighted.singular:
            row["bias_reweighted"] = bias(reweighted.scatter, sample.truth.scatter)
    except ESTIMATION_ERRORS as e:
        log.warning(f"{method} failed on accuracy cell {index} rep {rep}: {e}")
        row["failed"] = True
    return row


def summarize(table: pd.DataFrame, by: Optional[List[str]] = None, bin_nu: Optional[bool] = None) -> pd.DataFrame:
    """
    Median and 75th percentile of every metric per group, the two curves drawn for each panel.

    Args:
        table (pd.DataFrame): Output of run_sweep or accuracy_curve.
        by (Optional[List[str]]): Grouping columns; defaults to every grid column present.
        bin_nu (Optional[bool]): Replace nu by the centre of its unit-width bin. By default this
            happens when nu takes more than 10 distinct values, i.e. when it was drawn at random.

    Returns:
        One row per group with <metric>_median, <metric>_q75, reps and failures.
    """
    table = table.copy()
    if "nu" in table.columns:
        if bin_nu is None:
            bin_nu = table["nu"].dropna().nunique() > 10
        if bin_nu:
            table["nu"] = np.floor(table["nu"]) + 0.5

    grid = ["method", "p", "n", "eps", "config", "core", "alpha", "nu"]
    by = by or [c for c in grid if c in table.columns]
    metrics = [m for m in ("bias", "bias_reweighted", "misrate") if m in table.columns]

    grouped = table.groupby(by, dropna=False, sort=True)
    summary = grouped[metrics].agg(["median", lambda s: s.quantile(0.75)])
    summary.columns = [f"{metric}_{'median' if stat == 'median' else 'q75'}" for metric, stat in summary.columns]
    summary["reps"] = grouped.size()
    summary["failures"] = grouped["failed"].sum().astype(int)
    log.info(f"Summarized {len(table)} rows into {len(summary)} groups")
    return summary.reset_index()
