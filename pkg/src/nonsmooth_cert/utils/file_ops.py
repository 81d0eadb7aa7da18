"""Atomic file operations for certificates, sweep tables and reports."""

import json
import os
import tempfile
from pathlib import Path
from typing import Any, Dict, Optional


def _atomic_replace(file_path: Path, payload: str) -> None:
    file_path = Path(file_path)
    file_path.parent.mkdir(parents=True, exist_ok=True)

    # Temp file lives next to the target so os.replace stays on one filesystem
    fd, temp_path = tempfile.mkstemp(
        dir=file_path.parent,
        prefix=f".{file_path.name}.",
        suffix=".tmp"
    )

    try:
        with os.fdopen(fd, 'w', newline='') as f:
            f.write(payload)
            f.flush()
            os.fsync(f.fileno())

        os.replace(temp_path, file_path)
    except Exception:
        try:
            os.unlink(temp_path)
        except OSError:
            pass
        raise


def dumps_json(data: Any) -> str:
    """
    Serialize data the way every file written by the tool is serialized.

    Sorted keys and a fixed indent keep output byte-for-byte reproducible.

    Args:
        data: JSON-compatible value

    Returns:
        JSON text with a trailing newline
    """
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


def atomic_write_json(file_path: Path, data: Any) -> None:
    """
    Write JSON data to a file atomically.

    Writes to a temporary file first, then moves it to the final location.

    Args:
        file_path: Destination file path
        data: JSON-compatible value
    """
    _atomic_replace(file_path, dumps_json(data))


def atomic_write_text(file_path: Path, text: str) -> None:
    """
    Write text to a file atomically.

    Args:
        file_path: Destination file path
        text: Content to write
    """
    _atomic_replace(file_path, text)


def read_json(file_path: Path) -> Any:
    """
    Read JSON data from a file.

    Args:
        file_path: Path to JSON file

    Returns:
        Parsed JSON value

    Raises:
        FileNotFoundError: If file doesn't exist
        json.JSONDecodeError: If file contains invalid JSON
    """
    with open(file_path, 'r') as f:
        return json.load(f)


def safe_read_json(file_path: Optional[Path], default: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
    """
    Read JSON data from a file, returning default if file doesn't exist.

    Args:
        file_path: Path to JSON file, or None
        default: Default value to return if file doesn't exist

    Returns:
        Dictionary containing JSON data or default value

    Raises:
        ValueError: If the file exists but holds invalid JSON
    """
    if default is None:
        default = {}

    if file_path is None:
        return default

    try:
        return read_json(file_path)
    except FileNotFoundError:
        return default
    except json.JSONDecodeError as e:
        raise ValueError(f"Invalid JSON in {file_path}: {e}")
