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
from dataclasses import replace
from typing import Optional

from ..simlab import accuracy_curve, load_sweep_config, run_sweep, summarize
from .utils import read_table, write_table

log = logging.getLogger(__name__)


def cmd_simulate(config_path: str, output_path: str, threads: Optional[int] = None) -> int:
    """
    `simulate` sub-command: runs the sweep or accuracy curve a configuration file describes.

    Args:
        config_path (str): `key = value` sweep configuration.
        output_path (str): Destination CSV.
        threads (Optional[int]): Overrides the configuration's thread count.

    Returns:
        The exit code.
    """
    cfg = load_sweep_config(config_path)
    if threads is not None:
        cfg = replace(cfg, threads=threads)
    table = accuracy_curve(cfg) if cfg.mode == "accuracy" else run_sweep(cfg)
    failures = int(table["failed"].sum())
    if failures:
        log.warning(f"{failures} of {len(table)} runs failed")
    write_table(table, output_path)
    return 0


def cmd_summarize(input_path: str, output_path: str) -> int:
    """`summarize` sub-command: median and 75th percentile per grid point of a result table."""
    write_table(summarize(read_table(input_path)), output_path)
    return 0
