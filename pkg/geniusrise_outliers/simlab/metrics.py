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

import numpy as np
from scipy import linalg

from ..estimators import LocationScatter, SubsetIndex, ValidationError, chisq_quantile, mahalanobis_sq

log = logging.getLogger(__name__)


def _normalized(S: np.ndarray, name: str) -> np.ndarray:
    S = np.asarray(S, dtype=float)
    S = (S + S.T) / 2.0
    try:
        linalg.cholesky(S, lower=True, check_finite=True)
    except (linalg.LinAlgError, ValueError) as e:
        log.error(f"Error normalizing {name}: {e}")
        raise ValidationError(f"{name} must be symmetric positive definite: {e}")
    _, logdet = np.linalg.slogdet(S)
    return S * math.exp(-logdet / S.shape[0])


def bias(fit_scatter: np.ndarray, truth_scatter: np.ndarray) -> float:
    """
    Condition-number bias of a scatter estimate: log of the ratio of the extreme eigenvalues
    of G^-1/2 Gamma G^-1/2, G and Gamma being the determinant-normalised fit and truth.

    The eigenvalues are computed as the generalized eigenvalues of (Gamma, G).

    Args:
        fit_scatter (np.ndarray): Estimated scatter S.
        truth_scatter (np.ndarray): True scatter Sigma_u.

    Returns:
        log(lambda_1) - log(lambda_p), zero when S is proportional to Sigma_u.
    """
    G = _normalized(fit_scatter, "fit scatter")
    Gamma = _normalized(truth_scatter, "truth scatter")
    eigenvalues = linalg.eigh(Gamma, G, eigvals_only=True)
    return float(max(math.log(eigenvalues[-1]) - math.log(eigenvalues[0]), 0.0))


def misclassification(I_c: SubsetIndex, H: SubsetIndex) -> float:
    """
    Fraction of the true outliers I_c that ended up in the subset H.

    Args:
        I_c (SubsetIndex): Indices of the contaminated observations, non-empty.
        H (SubsetIndex): Selected subset.

    Returns:
        |H & I_c| / |I_c|.
    """
    if I_c.size == 0:
        raise ValidationError("Misclassification rate is undefined without outliers")
    return len(np.intersect1d(I_c.indices, H.indices, assume_unique=True)) / I_c.size


def nu_distance(outliers: np.ndarray, truth: LocationScatter, p: int) -> float:
    """
    Separation of the outliers from the clean model: the smallest Mahalanobis distance of
    an outlier, in units of sqrt(chi2(0.99, p)).

    Args:
        outliers (np.ndarray): Outlying observations, shape (m, p).
        truth (LocationScatter): The clean model (mu_u, Sigma_u).
        p (int): Dimension.

    Returns:
        nu.
    """
    outliers = np.atleast_2d(np.asarray(outliers, dtype=float))
    if outliers.shape[0] == 0 or outliers.size == 0:
        raise ValidationError("nu is undefined for an empty set of outliers")
    d2 = mahalanobis_sq(outliers, truth)
    return float(math.sqrt(np.min(d2) / chisq_quantile(0.99, p)))
