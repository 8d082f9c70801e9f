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
from enum import Enum
from typing import Optional, Tuple

import numpy as np
from scipy import optimize

from ..estimators import Dataset, LocationScatter, SubsetIndex, ValidationError, chisq_quantile, location_scatter

log = logging.getLogger(__name__)

POINT_MASS_SCALE = 1e-2  # standard deviation, i.e. Sigma_c = 1e-4 I
WHEEL_FLATTENING = 0.1
WHEEL_AXLE_OFFSET = 4.0


class Config(str, Enum):
    SHIFT = "shift"
    POINT_MASS = "pointmass"
    BARROW_WHEEL = "barrow"
    NONE = "none"


class Core(str, Enum):
    NORMAL = "normal"
    CAUCHY = "cauchy"


@dataclass(frozen=True)
class ContaminationSpec:
    """
    The contaminated model (1 - eps) F_u + eps F_c for one simulated sample.

    Args:
        config (Config): Outlier configuration.
        eps (float): Contamination fraction in [0, 0.5).
        nu (float): Separation of the outliers, ignored for Barrow wheel and None.
        core (Core): Distribution of the clean part.
        p (int): Dimension.
        n (int): Sample size.
    """

    config: Config
    eps: float
    nu: float
    core: Core
    p: int
    n: int

    def __post_init__(self):
        if not 0.0 <= self.eps < 0.5:
            raise ValidationError(f"eps must lie in [0, 0.5), got {self.eps}")
        if self.nu < 0.0:
            raise ValidationError(f"nu must be non-negative, got {self.nu}")
        if self.p < 1 or self.n < 1:
            raise ValidationError(f"p and n must be positive, got p={self.p}, n={self.n}")


@dataclass(frozen=True)
class LabeledSample:
    """
    A simulated sample with its ground truth.

    Args:
        data (Dataset): Clean rows first, outliers last (before any rotation, rows keep their order).
        outlier_index (SubsetIndex): I_c.
        truth (LocationScatter): (mu_u, Sigma_u) of the clean component.
        rotation (Optional[np.ndarray]): Orthogonal matrix applied to the whole sample, if any.
    """

    data: Dataset
    outlier_index: SubsetIndex
    truth: LocationScatter
    rotation: Optional[np.ndarray] = None


def count_outliers(eps: float, n: int) -> int:
    """round(eps * n) with halves rounded up."""
    return int(math.floor(eps * n + 0.5 + 1e-9))


def random_rotation(p: int, rng: np.random.Generator) -> np.ndarray:
    """
    Uniformly distributed orthogonal matrix: QR of a Gaussian matrix with the signs of R's
    diagonal folded into Q.

    Args:
        p (int): Dimension.
        rng (np.random.Generator): Random stream.

    Returns:
        A (p, p) orthogonal matrix.
    """
    Q, R = np.linalg.qr(rng.standard_normal((p, p)))
    signs = np.sign(np.diag(R))
    signs[signs == 0] = 1.0
    return Q * signs


def _core_draw(core: Core, size: Tuple[int, int], rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal(size)
    if core == Core.CAUCHY:
        # spherical t with one degree of freedom
        w = rng.standard_normal((size[0], 1))
        return z / np.abs(w)
    return z


def _standard_truth(p: int) -> LocationScatter:
    return location_scatter(np.zeros(p), np.eye(p))


def _labeled(
    rows: np.ndarray, n_c: int, truth: LocationScatter, rotation: Optional[np.ndarray] = None
) -> LabeledSample:
    n = rows.shape[0]
    return LabeledSample(
        data=Dataset.from_rows(rows),
        outlier_index=SubsetIndex.from_indices(np.arange(n - n_c, n)),
        truth=truth,
        rotation=rotation,
    )


def place_at_separation(offsets: np.ndarray, nu: float, p: int) -> np.ndarray:
    """
    Translates an outlier batch so that its closest member lies at exactly nu * sqrt(chi2(0.99, p))
    from the origin, in the identity metric.

    The batch is shifted along e_1 by the root of min_i |o_i + delta e_1|^2 = target. When
    no shift along e_1 comes close enough, the batch is translated so that its extreme
    member along -e_1 sits at the target distance on e_1, which puts every other member farther.

    Args:
        offsets (np.ndarray): Batch around the origin, shape (m, p).
        nu (float): Requested separation.
        p (int): Dimension.

    Returns:
        The translated batch.
    """
    target = nu * nu * chisq_quantile(0.99, p)
    first = offsets[:, 0]
    rest = np.sum(offsets[:, 1:] ** 2, axis=1)

    def closest(delta: float) -> float:
        return float(np.min((first + delta) ** 2 + rest))

    lo = float(np.max(-first))
    e1 = np.zeros(p)
    e1[0] = 1.0
    if closest(lo) <= target:
        hi = lo + math.sqrt(target)
        delta = optimize.brentq(lambda d: closest(d) - target, lo, hi, xtol=1e-14)
        return offsets + delta * e1
    k = int(np.argmin(first))
    return offsets + math.sqrt(target) * e1 - offsets[k]


def gen_clean(spec: ContaminationSpec, rng: np.random.Generator) -> LabeledSample:
    """
    Uncontaminated sample from the standard normal, or from the spherical Cauchy z / |w|.

    Args:
        spec (ContaminationSpec): Only core, n and p are used.
        rng (np.random.Generator): Random stream.

    Returns:
        The LabeledSample with truth (0, I) and no outliers.
    """
    rows = _core_draw(spec.core, (spec.n, spec.p), rng)
    return _labeled(rows, 0, _standard_truth(spec.p))


def _gen_shifted(spec: ContaminationSpec, rng: np.random.Generator, scale: float) -> LabeledSample:
    n_c = count_outliers(spec.eps, spec.n)
    clean = _core_draw(spec.core, (spec.n - n_c, spec.p), rng)
    if n_c == 0:
        return _labeled(clean, 0, _standard_truth(spec.p))
    offsets = scale * _core_draw(spec.core, (n_c, spec.p), rng)
    outliers = place_at_separation(offsets, spec.nu, spec.p)
    return _labeled(np.vstack([clean, outliers]), n_c, _standard_truth(spec.p))


def gen_shift(spec: ContaminationSpec, rng: np.random.Generator) -> LabeledSample:
    """
    Shift contamination: outliers with the clean scatter I, shifted along e_1 to separation nu.

    Args:
        spec (ContaminationSpec): Sample description with config SHIFT.
        rng (np.random.Generator): Random stream.

    Returns:
        The LabeledSample, outliers last.
    """
    if spec.config != Config.SHIFT:
        raise ValidationError(f"gen_shift called with config {spec.config.value}")
    return _gen_shifted(spec, rng, 1.0)


def gen_pointmass(spec: ContaminationSpec, rng: np.random.Generator) -> LabeledSample:
    """
    Point-mass contamination: as gen_shift with outlier scatter 1e-4 I.

    Args:
        spec (ContaminationSpec): Sample description with config POINT_MASS.
        rng (np.random.Generator): Random stream.

    Returns:
        The LabeledSample, outliers last.
    """
    if spec.config != Config.POINT_MASS:
        raise ValidationError(f"gen_pointmass called with config {spec.config.value}")
    return _gen_shifted(spec, rng, POINT_MASS_SCALE)


def gen_barrow_wheel(spec: ContaminationSpec, rng: np.random.Generator) -> LabeledSample:
    """
    Barrow wheel: a disk flattened along the first axis, pierced by an axle of outliers
    along that axis, then rotated by a random orthogonal matrix.

    Args:
        spec (ContaminationSpec): Sample description with config BARROW_WHEEL, p >= 2.
        rng (np.random.Generator): Random stream.

    Returns:
        The LabeledSample with the rotated truth and the rotation.
    """
    if spec.config != Config.BARROW_WHEEL:
        raise ValidationError(f"gen_barrow_wheel called with config {spec.config.value}")
    if spec.p < 2:
        raise ValidationError(f"The Barrow wheel needs p >= 2, got {spec.p}")
    n_c = count_outliers(spec.eps, spec.n)
    good = _core_draw(spec.core, (spec.n - n_c, spec.p), rng)
    good[:, 0] *= WHEEL_FLATTENING

    axle = WHEEL_FLATTENING * rng.standard_normal((n_c, spec.p))
    signs = rng.choice(np.array([-1.0, 1.0]), size=n_c)
    axle[:, 0] = signs * np.abs(rng.standard_normal(n_c) + WHEEL_AXLE_OFFSET)

    Q = random_rotation(spec.p, rng)
    scatter = np.eye(spec.p)
    scatter[0, 0] = WHEEL_FLATTENING**2
    truth = location_scatter(np.zeros(spec.p), Q @ scatter @ Q.T)
    rows = np.vstack([good, axle]) @ Q.T
    return _labeled(rows, n_c, truth, rotation=Q)


def generate(spec: ContaminationSpec, rng: np.random.Generator) -> LabeledSample:
    """Dispatches to the generator of spec.config."""
    if spec.config == Config.SHIFT:
        return gen_shift(spec, rng)
    if spec.config == Config.POINT_MASS:
        return gen_pointmass(spec, rng)
    if spec.config == Config.BARROW_WHEEL:
        return gen_barrow_wheel(spec, rng)
    return gen_clean(spec, rng)
