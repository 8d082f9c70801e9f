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

from .base import build_parser, main
from .casestudy import CaseStudyVariant, build_variant, cmd_casestudy, load_concrete, run_casestudy, separation_facts
from .detect import EXIT_ERROR, EXIT_EXACT_FIT, EXIT_OK, DetectReport, cmd_detect, detect, j_plus
from .simulate import cmd_simulate, cmd_summarize
from .utils import read_metadata, read_numeric_csv, read_table, sha256_of, write_table
