"""Low-level helpers shared by the line-oriented file formats."""

from __future__ import annotations

import os
import tempfile
from collections.abc import Iterator
from pathlib import Path


def atomic_write_text(path: str | Path, text: str) -> None:
    """Write ``text`` to ``path`` atomically (temp file + rename), UTF-8."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise


def iter_data_lines(path: str | Path) -> Iterator[tuple[int, str]]:
    """Yield (line_number, line) for data lines of a delimited file.

    Line numbers are physical (1-based, counting comments and blanks) so
    error messages point at the real file location. Lines starting with
    ``#`` and blank lines are skipped.
    """
    with open(path, encoding="utf-8", newline="") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip() or line.startswith("#"):
                continue
            yield lineno, line


def read_headed_lines(path: str | Path, header_key: str) -> tuple[str, list[tuple[int, str]]]:
    """Read a file whose first non-blank line is ``#<header_key>=<value>``.

    Returns the header value and the remaining data lines as
    (line_number, line) pairs; further ``#`` lines and blanks are skipped.
    Raises ValueError when the header is missing or its value is empty.
    """
    prefix = f"#{header_key}="
    header_value: str | None = None
    data: list[tuple[int, str]] = []
    with open(path, encoding="utf-8", newline="") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip():
                continue
            if header_value is None:
                if not line.startswith(prefix) or not line[len(prefix):].strip():
                    raise ValueError(
                        f"{path}: first line must be a '{prefix}<name>' header"
                    )
                header_value = line[len(prefix):].strip()
                continue
            if line.startswith("#"):
                continue
            data.append((lineno, line))
    if header_value is None:
        raise ValueError(f"{path}: first line must be a '{prefix}<name>' header")
    return header_value, data
