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

import argparse
import logging
import sys
from typing import List, Optional

from ..baselines import METHODS
from ..estimators import (
    DegenerateCandidateError,
    DegenerateSubsetError,
    EstimationFailureError,
    SingularScatterError,
    ValidationError,
)
from .casestudy import CASE_STUDY_STARTS, VARIANTS, cmd_casestudy
from .detect import EXIT_ERROR, cmd_detect
from .simulate import cmd_simulate, cmd_summarize

log = logging.getLogger(__name__)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="geniusrise-outliers",
        description="Robust multivariate outlier detection with FastPCS and simplified competitors",
    )
    parser.add_argument("--log-level", default="INFO", help="Logging level (DEBUG, INFO, WARNING, ERROR)")
    parser.add_argument(
        "--threads", type=int, default=None, help="Worker threads, overrides GENIUSRISE_OUTLIERS_THREADS"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    detect = commands.add_parser("detect", help="Flag outliers in a numeric CSV")
    detect.add_argument("--input", required=True, help="Comma-separated numeric file, optional header row")
    detect.add_argument("--output", required=True, help="Report CSV")
    detect.add_argument("--method", choices=METHODS, default="fastpcs")
    detect.add_argument("--alpha", type=float, default=0.5, help="Fraction of the data assumed clean")
    detect.add_argument("--seed", type=int, default=0)
    detect.add_argument("--starts", type=int, default=None, help="Number of starting subsets")

    simulate = commands.add_parser("simulate", help="Run a Monte-Carlo sweep from a configuration file")
    simulate.add_argument("--config", required=True, help="key = value sweep configuration")
    simulate.add_argument("--output", required=True, help="Result CSV")

    casestudy = commands.add_parser("casestudy", help="Concrete Slump Test experiments")
    casestudy.add_argument("--input", required=True, help="Concrete Slump Test CSV")
    casestudy.add_argument("--output", required=True, help="Outlyingness CSV")
    casestudy.add_argument("--variant", choices=VARIANTS, default="i")
    casestudy.add_argument("--methods", default=",".join(METHODS), help="Comma-separated methods")
    casestudy.add_argument("--seed", type=int, default=0)
    casestudy.add_argument("--starts", type=int, default=CASE_STUDY_STARTS)

    summary = commands.add_parser("summarize", help="Median and 75th percentile of a result table")
    summary.add_argument("--input", required=True, help="Output of simulate")
    summary.add_argument("--output", required=True, help="Summary CSV")
    return parser


def _methods(value: str) -> List[str]:
    methods = [m.strip().lower() for m in value.split(",") if m.strip()]
    unknown = [m for m in methods if m not in METHODS]
    if not methods or unknown:
        raise ValidationError(f"--methods must be drawn from {', '.join(METHODS)}, got {value!r}")
    return methods


def run(args: argparse.Namespace) -> int:
    threads = args.threads or 0
    if args.command == "detect":
        return cmd_detect(args.input, args.output, args.method, args.alpha, args.seed, args.starts, threads)
    if args.command == "simulate":
        return cmd_simulate(args.config, args.output, threads=args.threads)
    if args.command == "casestudy":
        methods = _methods(args.methods)
        return cmd_casestudy(args.input, args.output, args.variant, methods, args.seed, args.starts, threads)
    return cmd_summarize(args.input, args.output)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Entry point of the geniusrise-outliers command.

    Returns:
        0 on success, 2 when detect reports an exact fit, 1 on errors.
    """
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=getattr(logging, str(args.log_level).upper(), logging.INFO))
    try:
        return run(args)
    except (ValidationError, OSError) as e:
        log.error(f"{e}")
    except (EstimationFailureError, DegenerateCandidateError, DegenerateSubsetError, SingularScatterError) as e:
        log.error(f"Estimation failed: {e}")
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
