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
from dataclasses import dataclass, field, fields, replace
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

from pyparsing import (
    CaselessKeyword,
    Group,
    Literal,
    ParseException,
    StringEnd,
    Suppress,
    Word,
    ZeroOrMore,
    alphanums,
    alphas,
)

from ..baselines import METHODS
from ..estimators import ValidationError
from .contamination import Config, Core

log = logging.getLogger(__name__)

# key = value[, value ...] | uniform(lo, hi)
key = Word(alphas, alphanums + "_")
token = Word(alphanums + "_.-+")
equals = Literal("=")
uniform_draw = CaselessKeyword("uniform") + Suppress("(") + token + Suppress(",") + token + Suppress(")")
value_list = token + ZeroOrMore(Suppress(",") + token)
value_expr = Group(uniform_draw)("uniform") | Group(value_list)("values")
assignment = key("key") + Suppress(equals) + value_expr + StringEnd()


@dataclass(frozen=True)
class NuUniform:
    """nu drawn per replication from the uniform distribution on (lo, hi)."""

    lo: float = 0.0
    hi: float = 10.0


NuDraw = Union[Tuple[float, ...], NuUniform]


@dataclass(frozen=True)
class SweepConfig:
    """
    Grid and replication settings of a Monte-Carlo sweep.

    Args:
        mode (str): "sweep" for contaminated cells, "accuracy" for the clean-data bias curve.
        p (Tuple[int, ...]): Dimensions.
        n (Tuple[int, ...]): Explicit sample sizes; when empty, n = n_factor * p.
        n_factor (int): Sample size per dimension.
        eps (Tuple[float, ...]): Contamination fractions.
        configs (Tuple[Config, ...]): Outlier configurations.
        cores (Tuple[Core, ...]): Clean distributions.
        alpha (Tuple[float, ...]): Subset fractions.
        reps (int): Replications per cell.
        seed (int): Master seed.
        methods (Tuple[str, ...]): Estimators to run.
        nu (NuDraw): Fixed separations or a uniform draw.
        starts (Optional[int]): Cap on the number of starting subsets.
        K (int): Directions per incongruence evaluation.
        L (int): Concentration stages.
        record_runtime (bool): Time each estimator run; off by default so repeated sweeps are identical.
        threads (int): Worker threads per estimator, 0 for automatic.
    """

    mode: str = "sweep"
    p: Tuple[int, ...] = (4, 8, 12, 16)
    n: Tuple[int, ...] = ()
    n_factor: int = 25
    eps: Tuple[float, ...] = (0.1, 0.2, 0.3, 0.4)
    configs: Tuple[Config, ...] = (Config.SHIFT, Config.POINT_MASS, Config.BARROW_WHEEL)
    cores: Tuple[Core, ...] = (Core.NORMAL,)
    alpha: Tuple[float, ...] = (0.5,)
    reps: int = 100
    seed: int = 0
    methods: Tuple[str, ...] = METHODS
    nu: NuDraw = field(default_factory=NuUniform)
    starts: Optional[int] = None
    K: int = 25
    L: int = 3
    record_runtime: bool = False
    threads: int = 0

    def sample_sizes(self, p: int) -> Tuple[int, ...]:
        return self.n if self.n else (self.n_factor * p,)

    def validate(self) -> "SweepConfig":
        """Checks the grid, raising ValidationError on the first offending key."""
        if self.mode not in ("sweep", "accuracy"):
            raise ValidationError(f"mode must be sweep or accuracy, got {self.mode!r}")
        if self.reps < 1:
            raise ValidationError(f"reps must be at least 1, got {self.reps}")
        if not self.p or any(p < 1 for p in self.p):
            raise ValidationError(f"p must be a non-empty list of positive integers, got {self.p}")
        if any(n < 1 for n in self.n) or self.n_factor < 1:
            raise ValidationError(f"n must be positive, got n={self.n}, n_factor={self.n_factor}")
        for p in self.p:
            for n in self.sample_sizes(p):
                if n <= p:
                    name = "n" if self.n else "n_factor"
                    raise ValidationError(f"{name} must give more observations than dimensions, got n={n} for p={p}")
        if self.mode == "accuracy" and any(n >= 600 for p in self.p for n in self.sample_sizes(p)):
            raise ValidationError("n must stay below 600 in accuracy mode")
        for eps in self.eps:
            if not 0.0 <= eps < 0.5:
                raise ValidationError(f"eps must lie in [0, 0.5), got {eps}")
        for alpha in self.alpha:
            if not 0.5 <= alpha < 1.0:
                raise ValidationError(f"alpha must lie in [0.5, 1), got {alpha}")
        unknown = [m for m in self.methods if m not in METHODS]
        if not self.methods or unknown:
            raise ValidationError(f"methods must be drawn from {METHODS}, got {self.methods}")
        if Config.BARROW_WHEEL in self.configs and self.mode == "sweep" and min(self.p) < 2:
            raise ValidationError("configs includes the Barrow wheel, which needs p >= 2")
        if isinstance(self.nu, NuUniform):
            if not 0.0 <= self.nu.lo < self.nu.hi:
                raise ValidationError(f"nu = uniform(lo, hi) needs 0 <= lo < hi, got ({self.nu.lo}, {self.nu.hi})")
        elif not self.nu or any(v < 0 for v in self.nu):
            raise ValidationError(f"nu must be a non-empty list of non-negative values, got {self.nu}")
        if self.starts is not None and self.starts < 1:
            raise ValidationError(f"starts must be positive, got {self.starts}")
        if self.K < 1:
            raise ValidationError(f"K must be positive, got {self.K}")
        if self.L < 1:
            raise ValidationError(f"L must be positive, got {self.L}")
        return self


def _single(values: List[str]) -> str:
    if len(values) != 1:
        raise ValueError(f"expected a single value, got {len(values)}")
    return values[0]


def _boolean(value: str) -> bool:
    lowered = value.lower()
    if lowered in ("true", "yes", "1"):
        return True
    if lowered in ("false", "no", "0"):
        return False
    raise ValueError(f"expected true or false, got {value!r}")


def _method(value: str) -> str:
    lowered = value.lower()
    if lowered not in METHODS:
        raise ValueError(f"unknown method {value!r}")
    return lowered


_CONVERTERS: Dict[str, Callable[[List[str]], Any]] = {
    "mode": lambda v: _single(v).lower(),
    "p": lambda v: tuple(int(x) for x in v),
    "n": lambda v: tuple(int(x) for x in v),
    "n_factor": lambda v: int(_single(v)),
    "eps": lambda v: tuple(float(x) for x in v),
    "configs": lambda v: tuple(Config(x.lower()) for x in v),
    "cores": lambda v: tuple(Core(x.lower()) for x in v),
    "alpha": lambda v: tuple(float(x) for x in v),
    "reps": lambda v: int(_single(v)),
    "seed": lambda v: int(_single(v)),
    "methods": lambda v: tuple(_method(x) for x in v),
    "nu": lambda v: tuple(float(x) for x in v),
    "starts": lambda v: int(_single(v)),
    "K": lambda v: int(_single(v)),
    "L": lambda v: int(_single(v)),
    "record_runtime": lambda v: _boolean(_single(v)),
    "threads": lambda v: int(_single(v)),
}


def parse_line(line: str, lineno: int) -> Optional[Tuple[str, Any]]:
    """
    Parses one `key = value` line of a sweep configuration.

    Args:
        line (str): The raw line.
        lineno (int): Its 1-based number, for error messages.

    Returns:
        (key, converted value), or None for blank and comment lines.
    """
    text = line.split("#", 1)[0].strip()
    if not text:
        return None
    try:
        parsed = assignment.parseString(text)
    except ParseException as e:
        log.error(f"Error parsing line {lineno}: {e}")
        raise ValidationError(f"Line {lineno}: expected `key = value`, got {text!r}")

    name = parsed["key"]
    if name not in _CONVERTERS:
        raise ValidationError(f"Line {lineno}: unknown key {name!r}")
    if "uniform" in parsed:
        if name != "nu":
            raise ValidationError(f"Line {lineno}: uniform(lo, hi) is only allowed for nu")
        try:
            lo, hi = (float(x) for x in parsed["uniform"][1:])
        except ValueError as e:
            raise ValidationError(f"Line {lineno}: invalid uniform bounds: {e}")
        return name, NuUniform(lo, hi)
    try:
        return name, _CONVERTERS[name](list(parsed["values"]))
    except ValueError as e:
        log.error(f"Error converting key {name} on line {lineno}: {e}")
        raise ValidationError(f"Line {lineno}: invalid value for {name}: {e}")


def parse_sweep_config(text: str, source: str = "<string>") -> SweepConfig:
    """
    Parses the text of a sweep configuration.

    Args:
        text (str): File contents.
        source (str): Name used in log messages.

    Returns:
        The validated SweepConfig.
    """
    settings: Dict[str, Any] = {}
    seen: Dict[str, int] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        entry = parse_line(line, lineno)
        if entry is None:
            continue
        name, value = entry
        if name in seen:
            raise ValidationError(f"Line {lineno}: key {name!r} already set on line {seen[name]}")
        seen[name] = lineno
        settings[name] = value

    known = {f.name for f in fields(SweepConfig)}
    cfg = replace(SweepConfig(), **{k: v for k, v in settings.items() if k in known})
    try:
        cfg.validate()
    except ValidationError as e:
        offending = str(e).split(" ", 1)[0]
        if offending in seen:
            raise ValidationError(f"Line {seen[offending]}: {e}")
        raise
    log.info(f"Loaded sweep configuration from {source}: {len(seen)} keys")
    return cfg


def load_sweep_config(path: str) -> SweepConfig:
    """
    Reads a sweep configuration file.

    Args:
        path (str): Path to the `key = value` file.

    Returns:
        The validated SweepConfig.
    """
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except Exception as e:
        log.error(f"Error reading sweep configuration {path}: {e}")
        raise ValidationError(f"Error reading sweep configuration {path}: {e}")
    return parse_sweep_config(text, source=path)
