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


class ValidationError(ValueError):
    """Malformed input: CSV cells, config lines or parameters."""


class DegenerateSubsetError(ValueError):
    """A subset has fewer than p+1 members and cannot carry moments."""


class SingularScatterError(ValueError):
    """A distance was requested from a scatter matrix that is not positive definite."""


class DegenerateCandidateError(RuntimeError):
    """
    A candidate subset produced no usable direction, either because every sampled
    p-subset was rank deficient or because every direction had a zero denominator.

    Args:
        message (str): Description of the failure.
        probe (Optional[np.ndarray]): Row indices of the candidate, kept for exact-fit probing.
    """

    def __init__(self, message: str, probe=None):
        super().__init__(message)
        self.probe = probe


class EstimationFailureError(RuntimeError):
    """Every candidate was degenerate and no exact fit could be established."""
