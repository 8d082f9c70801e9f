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

import numpy as np
import pytest

from geniusrise_outliers.estimators import Dataset


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)


@pytest.fixture
def gaussian(rng):
    return Dataset.from_rows(rng.standard_normal((100, 4)))


def _two_clusters(rng: np.random.Generator, n_clean: int = 70, n_out: int = 30, center=(5.0, -1.0), spread=0.1):
    """Standard bivariate normal cloud plus a tight cluster, outliers last."""
    clean = rng.standard_normal((n_clean, 2))
    outliers = np.asarray(center) + spread * rng.standard_normal((n_out, 2))
    return Dataset.from_rows(np.vstack([clean, outliers]))


def _on_hyperplane(rng: np.random.Generator, n: int, p: int, on_plane: int):
    """
    n rows of which the first `on_plane` lie exactly on a random hyperplane {x : x'u = 1}.

    Returns:
        The Dataset and the unit normal u.
    """
    Q, _ = np.linalg.qr(rng.standard_normal((p, p)))
    u = Q[:, 0]
    basis = Q[:, 1:]
    plane = u + rng.standard_normal((on_plane, p - 1)) @ basis.T * 2.0
    rest = 3.0 * rng.standard_normal((n - on_plane, p))
    return Dataset.from_rows(np.vstack([plane, rest])), u


@pytest.fixture
def two_clusters():
    return _two_clusters


@pytest.fixture
def on_hyperplane():
    return _on_hyperplane
