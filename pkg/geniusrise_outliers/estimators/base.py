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
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

import numpy as np

from .errors import ValidationError

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Dataset:
    """
    An n x p observation matrix. Row i is observation i; rows are never reordered.

    Args:
        rows (np.ndarray): Read-only float array of shape (n, p).
    """

    rows: np.ndarray

    @classmethod
    def from_rows(cls, rows: Iterable) -> "Dataset":
        """
        Builds a dataset from anything numpy can turn into a 2-D float array.

        Args:
            rows (Iterable): Observations, one per row.

        Returns:
            The validated dataset.
        """
        x = np.array(rows, dtype=float)
        if x.ndim == 1:
            x = x.reshape(-1, 1)
        if x.ndim != 2 or x.shape[0] == 0 or x.shape[1] == 0:
            raise ValidationError(f"Expected a non-empty 2-D array of observations, got shape {x.shape}")
        bad = np.argwhere(~np.isfinite(x))
        if len(bad):
            r, c = bad[0]
            raise ValidationError(f"Non-finite value at row {r}, column {c}")
        x.setflags(write=False)
        return cls(rows=x)

    @property
    def n(self) -> int:
        return self.rows.shape[0]

    @property
    def p(self) -> int:
        return self.rows.shape[1]

    def require_overdetermined(self) -> None:
        if self.n <= self.p:
            raise ValidationError(f"Need more observations than dimensions, got n={self.n}, p={self.p}")


@dataclass(frozen=True)
class SubsetIndex:
    """
    A strictly increasing set of row indices (H_m, H_*, J_+, I_c ...).

    Args:
        indices (np.ndarray): Sorted, duplicate free int array.
    """

    indices: np.ndarray

    @classmethod
    def from_indices(cls, indices: Iterable, n: Optional[int] = None) -> "SubsetIndex":
        idx = np.asarray(list(indices) if not isinstance(indices, np.ndarray) else indices, dtype=np.intp)
        idx = np.sort(idx.ravel())
        if len(idx) and (idx[0] < 0 or np.any(np.diff(idx) == 0)):
            raise ValidationError(f"Subset indices must be distinct and non-negative, got {idx.tolist()}")
        if n is not None and len(idx) and idx[-1] >= n:
            raise ValidationError(f"Subset index {idx[-1]} out of range for n={n}")
        idx.setflags(write=False)
        return cls(indices=idx)

    @classmethod
    def all(cls, n: int) -> "SubsetIndex":
        return cls.from_indices(np.arange(n))

    @property
    def size(self) -> int:
        return len(self.indices)

    def mask(self, n: int) -> np.ndarray:
        m = np.zeros(n, dtype=bool)
        m[self.indices] = True
        return m

    def __contains__(self, i: int) -> bool:
        pos = np.searchsorted(self.indices, i)
        return bool(pos < len(self.indices) and self.indices[pos] == i)

    def __len__(self) -> int:
        return self.size

    def __eq__(self, other) -> bool:
        return isinstance(other, SubsetIndex) and np.array_equal(self.indices, other.indices)

    def __hash__(self) -> int:
        return hash(self.indices.tobytes())


@dataclass(frozen=True)
class LocationScatter:
    """
    A (center, scatter) pair with its cached determinant and Cholesky factor.

    Args:
        center (np.ndarray): Location t, shape (p,).
        scatter (np.ndarray): Symmetric scatter S, shape (p, p).
        det (float): det(S), never negative.
        factor (Optional[Tuple[np.ndarray, bool]]): scipy `cho_factor` output, None when S is singular.
    """

    center: np.ndarray
    scatter: np.ndarray
    det: float
    factor: Optional[Tuple[np.ndarray, bool]]

    @property
    def singular(self) -> bool:
        return self.factor is None

    @property
    def p(self) -> int:
        return len(self.center)


@dataclass(frozen=True)
class AlgoParams:
    """
    Tuning of the subset-based estimators.

    Args:
        alpha (float): Fraction of the sample assumed clean, in [0.5, 1].
        h (int): Size of the clean subset.
        K (int): Directions per candidate and per concentration stage.
        L (int): Concentration stages.
        M_p (int): Number of starting (p+1)-subsets.
        seed (int): Master seed.
        threads (int): Worker threads, 0 reads GENIUSRISE_OUTLIERS_THREADS.
    """

    alpha: float
    h: int
    K: int = 25
    L: int = 3
    M_p: int = 500
    seed: int = 0
    threads: int = 0

    @classmethod
    def from_data(
        cls,
        n: int,
        p: int,
        starts: int,
        alpha: float = 0.5,
        K: int = 25,
        L: int = 3,
        seed: int = 0,
        threads: int = 0,
    ) -> "AlgoParams":
        params = cls(alpha=alpha, h=default_h(n, p, alpha), K=K, L=L, M_p=starts, seed=seed, threads=threads)
        params.validate(n, p)
        return params

    def validate(self, n: int, p: int) -> None:
        if not 0.5 <= self.alpha <= 1.0:
            raise ValidationError(f"alpha must lie in [0.5, 1], got {self.alpha}")
        lo = (n + p + 1) // 2
        if not lo <= self.h <= n:
            raise ValidationError(f"h must lie in [{lo}, {n}], got {self.h}")
        for name in ("K", "L", "M_p"):
            if getattr(self, name) < 1:
                raise ValidationError(f"{name} must be at least 1, got {getattr(self, name)}")


def default_h(n: int, p: int, alpha: float = 0.5) -> int:
    """
    Size of the subset assumed to follow the model.

    Args:
        n (int): Number of observations.
        p (int): Dimension.
        alpha (float): Clean fraction in [0.5, 1].

    Returns:
        floor((n+p+1)/2) for alpha == 0.5, otherwise max(ceil(alpha*n), floor((n+p+1)/2)).
    """
    if n <= p:
        raise ValidationError(f"Need more observations than dimensions, got n={n}, p={p}")
    if not 0.5 <= alpha <= 1.0:
        raise ValidationError(f"alpha must lie in [0.5, 1], got {alpha}")
    half = (n + p + 1) // 2
    if alpha == 0.5:
        return half
    # rounding guards against alpha * n landing a hair above an integer
    return min(n, max(math.ceil(round(alpha * n, 9)), half))
