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

import hashlib
import logging
import os
import tempfile
from typing import Dict, List, Optional, Tuple

import numpy as np
import pandas as pd

from ..estimators import Dataset, ValidationError

log = logging.getLogger(__name__)

FLOAT_FORMAT = "%.17g"


def _is_number(cell: str) -> bool:
    try:
        float(cell)
        return True
    except ValueError:
        return False


def read_numeric_csv(path: str) -> Tuple[Dataset, Optional[List[str]]]:
    """
    Reads a comma-separated file of numeric columns with an optional header row.

    The first row is taken as a header when any of its cells is not a number.

    Args:
        path (str): Path to the file.

    Returns:
        The Dataset and the header, if there was one.
    """
    try:
        raw = pd.read_csv(path, header=None, dtype=str, keep_default_na=False, skip_blank_lines=True, encoding="utf-8")
    except pd.errors.EmptyDataError:
        raise ValidationError(f"{path} is empty")
    except Exception as e:
        log.error(f"Error reading {path}: {e}")
        raise ValidationError(f"Error reading {path}: {e}")

    header = None
    first_line = 1
    if not all(_is_number(str(c).strip()) for c in raw.iloc[0] if isinstance(c, str)):
        header = [str(c).strip() for c in raw.iloc[0]]
        raw = raw.iloc[1:]
        first_line = 2
    if raw.empty:
        raise ValidationError(f"{path} holds a header but no data rows")

    rows = np.empty(raw.shape, dtype=float)
    for r, (_, record) in enumerate(raw.iterrows()):
        line = first_line + r
        for c, cell in enumerate(record):
            if not isinstance(cell, str) or cell.strip() == "":
                raise ValidationError(f"{path}: row {line} has {c} fields, expected {raw.shape[1]}")
            try:
                value = float(cell)
            except ValueError:
                raise ValidationError(f"{path}: row {line}, column {c + 1}: {cell!r} is not a number")
            if not np.isfinite(value):
                raise ValidationError(f"{path}: row {line}, column {c + 1}: {cell!r} is not finite")
            rows[r, c] = value

    data = Dataset.from_rows(rows)
    log.info(f"Loaded {data.n} rows x {data.p} columns from {path}")
    return data, header


def sha256_of(path: str) -> str:
    """Hex digest of a file."""
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def write_table(table: pd.DataFrame, path: str, metadata: Optional[Dict[str, object]] = None) -> None:
    """
    Writes a table as CSV at 17 significant digits, atomically.

    Args:
        table (pd.DataFrame): The table.
        path (str): Destination.
        metadata (Optional[Dict[str, object]]): Written first as `# key=value` lines.
    """
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", suffix=".csv", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            for key, value in (metadata or {}).items():
                f.write(f"# {key}={value}\n")
            table.to_csv(f, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")
        os.replace(tmp, path)
    except Exception as e:
        log.error(f"Error writing {path}: {e}")
        if os.path.exists(tmp):
            os.remove(tmp)
        raise
    log.info(f"Wrote {len(table)} rows to {path}")


def read_table(path: str) -> pd.DataFrame:
    """Reads a table written by write_table, skipping its metadata lines."""
    try:
        return pd.read_csv(path, comment="#", float_precision="round_trip")
    except Exception as e:
        log.error(f"Error reading table {path}: {e}")
        raise ValidationError(f"Error reading table {path}: {e}")


def read_metadata(path: str) -> Dict[str, str]:
    """The `# key=value` lines at the top of a table written by write_table."""
    metadata = {}
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            if not line.startswith("# "):
                break
            key, _, value = line[2:].rstrip("\n").partition("=")
            metadata[key] = value
    return metadata
