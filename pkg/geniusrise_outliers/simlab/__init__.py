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

from .base import (
    ACCURACY_COLUMNS,
    SWEEP_COLUMNS,
    Cell,
    accuracy_curve,
    run_replication,
    run_sweep,
    starts_for,
    summarize,
    sweep_cells,
)
from .config import NuUniform, SweepConfig, load_sweep_config, parse_sweep_config
from .contamination import (
    Config,
    ContaminationSpec,
    Core,
    LabeledSample,
    count_outliers,
    gen_barrow_wheel,
    gen_clean,
    gen_pointmass,
    gen_shift,
    generate,
    place_at_separation,
    random_rotation,
)
from .metrics import bias, misclassification, nu_distance
from .starts import default_starts, num_starts
