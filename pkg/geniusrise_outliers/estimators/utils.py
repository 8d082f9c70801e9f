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
import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, TypeVar, Union

import numpy as np

from .errors import ValidationError

log = logging.getLogger(__name__)

THREADS_ENV = "GENIUSRISE_OUTLIERS_THREADS"

T = TypeVar("T")


def as_seed_sequence(rng: Union[None, int, np.random.SeedSequence], seed: int = 0) -> np.random.SeedSequence:
    """
    Normalises a random-stream argument into a SeedSequence.

    Args:
        rng: A SeedSequence, an integer seed, or None to fall back on `seed`.
        seed (int): Fallback seed.

    Returns:
        The SeedSequence.
    """
    if isinstance(rng, np.random.SeedSequence):
        return rng
    return np.random.SeedSequence(seed if rng is None else int(rng))


def substream(parent: np.random.SeedSequence, *key: int) -> np.random.SeedSequence:
    """
    Child stream addressed by counter, independent of how many siblings were spawned before.

    Args:
        parent (np.random.SeedSequence): The parent stream.
        key (int): Counter(s) appended to the parent's spawn key.

    Returns:
        The child SeedSequence.
    """
    return np.random.SeedSequence(entropy=parent.entropy, spawn_key=tuple(parent.spawn_key) + tuple(key))


def stream_seed(ss: np.random.SeedSequence) -> int:
    """A 63-bit integer fingerprint of a stream, for result tables."""
    return int(ss.generate_state(1, np.uint64)[0] >> np.uint64(1))


def resolve_threads(threads: int = 0) -> int:
    """
    Number of worker threads: the explicit value, else GENIUSRISE_OUTLIERS_THREADS, else the CPU count.

    Args:
        threads (int): Requested threads, 0 for automatic.

    Returns:
        A positive thread count.
    """
    if threads > 0:
        return threads
    env = os.environ.get(THREADS_ENV)
    if env:
        try:
            value = int(env)
        except ValueError as e:
            log.error(f"Error reading {THREADS_ENV}={env!r}: {e}")
            raise ValidationError(f"{THREADS_ENV} must be an integer, got {env!r}")
        if value > 0:
            return value
    return os.cpu_count() or 1


def run_candidates(fn: Callable[[int], T], count: int, threads: int = 0) -> List[T]:
    """
    Evaluates fn(0), ..., fn(count - 1), in parallel when more than one thread is available.

    Results come back in candidate order whatever the schedule, so any reduction over them
    is deterministic.

    Args:
        fn (Callable[[int], T]): Candidate evaluation, pure given its ordinal.
        count (int): Number of candidates.
        threads (int): Worker threads, 0 for automatic.

    Returns:
        The list of results, indexed by candidate ordinal.
    """
    workers = min(resolve_threads(threads), count)
    if workers <= 1:
        return [fn(m) for m in range(count)]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, range(count)))


def first_argmin(values: List[Optional[float]]) -> Optional[int]:
    """Ordinal of the smallest non-None value, the earliest one on ties."""
    best: Optional[int] = None
    for m, v in enumerate(values):
        if v is None:
            continue
        if best is None or v < values[best]:  # type: ignore
            best = m
    return best
