"""
Report files.

CSV tables start with comment lines carrying the tool version, the config
hash and the seed; numbers are written with 17 significant digits. JSON
reports wrap the result with the same header and the normalized config.
Files are written to a temporary sibling and renamed into place, so a
failed run never leaves a partial report under the final name.
"""

import csv
import dataclasses
import io
import json
import logging
import math
import os
import tempfile
from pathlib import Path
from typing import Any, Iterable, Sequence

import numpy as np

from src.config.settings import TOOL_NAME, TOOL_VERSION

from .config import RunConfig

logger = logging.getLogger(__name__)


def format_value(value: Any) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    if value is None:
        return ""
    return str(value)


def make_json_safe(obj: Any) -> Any:
    """Convert dataclasses, numpy values and non-finite floats to plain JSON types."""
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        obj = dataclasses.asdict(obj)
    if isinstance(obj, dict):
        return {str(k): make_json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [make_json_safe(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [make_json_safe(v) for v in obj.tolist()]
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        value = float(obj)
        return value if math.isfinite(value) else None
    return obj


def _header(config: RunConfig) -> dict:
    return {
        "tool": TOOL_NAME,
        "version": TOOL_VERSION,
        "config_hash": config.config_hash,
        "seed": config.seed,
    }


def _atomic_write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, temp_path = tempfile.mkstemp(suffix=".tmp", prefix=f".{path.name}.", dir=str(path.parent))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(temp_path, path)
    except BaseException:
        if os.path.exists(temp_path):
            os.remove(temp_path)
        raise


def write_csv(path: Path, columns: Sequence[str], rows: Iterable[Sequence[Any]], config: RunConfig) -> Path:
    """Write a table with the report header as leading comment lines."""
    buffer = io.StringIO()
    for key, value in _header(config).items():
        buffer.write(f"# {key}: {format_value(value)}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(v) for v in row])
    _atomic_write(path, buffer.getvalue())
    logger.info("Wrote %s", path)
    return path


def write_json(path: Path, result: Any, config: RunConfig) -> Path:
    """Write {header..., config, result} with sorted keys."""
    payload = dict(_header(config))
    payload["config"] = config.normalized()
    payload["result"] = make_json_safe(result)
    _atomic_write(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")
    logger.info("Wrote %s", path)
    return path


def report_path(config: RunConfig, name: str) -> Path:
    return Path(config.out) / name
