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

from .base import PcsResult, fastpcs_run
from .concentration import CandidateState, concentrate, concentration_schedule, relative_outlyingness
from .directions import Direction, distance_matrix, proj_distance_sq, sample_direction, sample_directions
from .exact_fit import detect_exact_fit, exact_fit_members, subspace_distance, subspace_rows
from .incongruence import incongruence, incongruence_direction, optimal_overlap_subset
