from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd
import structlog

logger = structlog.get_logger(__name__)

# 17 significant digits round-trip every IEEE double exactly
FLOAT_FORMAT = "%.17g"


def load_txt(file_path: Path) -> str:
    """Load a txt file from a specified path."""
    with file_path.open() as f:
        return f.read().strip()


def save_txt(contents: str, file_path: Path) -> None:
    """Save a text file to the specified path."""
    with file_path.open("w") as f:
        f.write(contents.rstrip("\n") + "\n")
    logger.debug("Text file has been saved.", file_path=str(file_path))


def format_value(value: Any) -> str:
    """Render a scalar or a list in the flat key-value format."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float | np.floating):
        return FLOAT_FORMAT % value
    if isinstance(value, list | tuple | np.ndarray):
        return ", ".join(format_value(v) for v in value)
    return str(value)


def parse_flat(text: str) -> dict[str, str]:
    """
    Parse `key = value` lines into a flat dict of raw strings.

    Blank lines and `#` comments are skipped. A repeated key is an error.
    """
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            msg = f"line {lineno}: expected 'key = value', got {raw.strip()!r}"
            raise ValueError(msg)
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            msg = f"line {lineno}: empty key"
            raise ValueError(msg)
        if key in entries:
            msg = f"line {lineno}: duplicate key {key!r}"
            raise ValueError(msg)
        entries[key] = value
    return entries


def render_flat(entries: dict[str, Any], header: str | None = None) -> str:
    """Render a flat dict as `key = value` lines, keys in insertion order."""
    lines = [f"# {line}" for line in (header or "").splitlines()]
    lines.extend(f"{key} = {format_value(value)}" for key, value in entries.items())
    return "\n".join(lines) + "\n"


def nest(entries: dict[str, Any]) -> dict[str, Any]:
    """Turn dotted keys (`a.b = 1`) into nested dicts (`{"a": {"b": 1}}`)."""
    nested: dict[str, Any] = {}
    for key, value in entries.items():
        *sections, leaf = key.split(".")
        node = nested
        for section in sections:
            child = node.setdefault(section, {})
            if not isinstance(child, dict):
                msg = f"key {key!r} conflicts with scalar key {section!r}"
                raise ValueError(msg)
            node = child
        node[leaf] = value
    return nested


def flatten(nested: dict[str, Any], prefix: str = "") -> dict[str, Any]:
    """Inverse of `nest`."""
    flat: dict[str, Any] = {}
    for key, value in nested.items():
        dotted = f"{prefix}{key}"
        if isinstance(value, dict):
            flat.update(flatten(value, prefix=f"{dotted}."))
        else:
            flat[dotted] = value
    return flat


def write_csv(frame: pd.DataFrame, file_path: Path) -> None:
    """Write a frame with full double precision."""
    frame.to_csv(file_path, index=False, float_format=FLOAT_FORMAT)
    logger.info(
        "CSV has been saved.",
        file_path=str(file_path),
        rows=len(frame),
        columns=len(frame.columns),
    )


def read_csv(file_path: Path) -> pd.DataFrame:
    """Read a CSV written by `write_csv`."""
    return pd.read_csv(file_path, float_precision="round_trip")
