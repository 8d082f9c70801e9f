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
from typing import Optional, Tuple, Union

import numpy as np
from scipy import linalg

from .base import Dataset, LocationScatter, SubsetIndex
from .errors import DegenerateSubsetError, SingularScatterError

log = logging.getLogger(__name__)

PIVOT_TOLERANCE = 1e-12


def factorize(scatter: np.ndarray) -> Optional[Tuple[np.ndarray, bool]]:
    """
    Cholesky factor of a scatter matrix, or None when it is not positive definite.

    A pivot below PIVOT_TOLERANCE times the largest diagonal entry counts as singular.

    Args:
        scatter (np.ndarray): Symmetric (p, p) matrix.

    Returns:
        The `scipy.linalg.cho_factor` pair, or None.
    """
    top = float(np.max(np.diag(scatter))) if scatter.size else 0.0
    if not np.isfinite(top) or top <= 0.0:
        return None
    try:
        factor = linalg.cho_factor(scatter, lower=True, check_finite=False)
    except linalg.LinAlgError:
        return None
    pivots = np.diag(factor[0]) ** 2
    if np.any(pivots < PIVOT_TOLERANCE * top):
        return None
    return factor


def location_scatter(center: np.ndarray, scatter: np.ndarray) -> LocationScatter:
    """
    Wraps a center and scatter into a LocationScatter with cached determinant and factor.

    Args:
        center (np.ndarray): Location vector.
        scatter (np.ndarray): Scatter matrix, symmetrised on the way in.

    Returns:
        The LocationScatter.
    """
    center = np.asarray(center, dtype=float).reshape(-1)
    scatter = np.asarray(scatter, dtype=float).reshape(len(center), len(center))
    scatter = (scatter + scatter.T) / 2.0
    factor = factorize(scatter)
    if factor is not None:
        det = float(np.prod(np.diag(factor[0])) ** 2)
    else:
        det = max(float(np.linalg.det(scatter)), 0.0) if scatter.size else 0.0
    center.setflags(write=False)
    scatter.setflags(write=False)
    return LocationScatter(center=center, scatter=scatter, det=det, factor=factor)


def subset_moments(data: Dataset, H: SubsetIndex) -> LocationScatter:
    """
    Sample mean and sample covariance (divisor |H| - 1) of the rows in H.

    Args:
        data (Dataset): The observations.
        H (SubsetIndex): Rows to use, at least p+1 of them.

    Returns:
        The fitted LocationScatter; `singular` is set when the covariance is not positive definite.
    """
    if H.size < data.p + 1:
        raise DegenerateSubsetError(f"Subset of size {H.size} cannot carry moments in dimension {data.p}")
    x = data.rows[H.indices]
    center = x.mean(axis=0)
    centered = x - center
    scatter = centered.T @ centered / (H.size - 1)
    return location_scatter(center, scatter)


def mahalanobis_sq(x: np.ndarray, ls: LocationScatter) -> Union[float, np.ndarray]:
    """
    Squared Mahalanobis distance (x - t)' S^-1 (x - t) through the cached Cholesky factor.

    Args:
        x (np.ndarray): One observation of shape (p,) or a matrix of shape (m, p).
        ls (LocationScatter): The fit.

    Returns:
        A float for a single observation, an (m,) array otherwise.
    """
    if ls.singular:
        raise SingularScatterError("Mahalanobis distance needs a positive definite scatter matrix")
    x = np.asarray(x, dtype=float)
    single = x.ndim == 1
    diff = np.atleast_2d(x) - ls.center
    solved = linalg.cho_solve(ls.factor, diff.T, check_finite=False)
    d2 = np.maximum(np.einsum("ij,ji->i", diff, solved), 0.0)
    return float(d2[0]) if single else d2


def smallest(values: np.ndarray, q: int) -> SubsetIndex:
    """
    Indices of the q smallest values, ties broken by lower index.

    Args:
        values (np.ndarray): One value per row.
        q (int): How many to keep.

    Returns:
        The SubsetIndex of the kept rows.
    """
    order = np.argsort(values, kind="stable")
    return SubsetIndex.from_indices(order[:q])
