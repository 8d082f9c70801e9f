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

from .base import AlgoParams, Dataset, LocationScatter, SubsetIndex, default_h
from .errors import (
    DegenerateCandidateError,
    DegenerateSubsetError,
    EstimationFailureError,
    SingularScatterError,
    ValidationError,
)
from .moments import factorize, location_scatter, mahalanobis_sq, smallest, subset_moments
from .quantiles import chisq_quantile
from .reweighting import reweight_hard_threshold, reweighted_fit
from .utils import as_seed_sequence, resolve_threads, run_candidates, stream_seed, substream
