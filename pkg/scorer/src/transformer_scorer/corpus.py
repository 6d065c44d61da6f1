"""Reader for the tweet corpus interchange format.

One record per line: ``<id>\\t<text>`` or ``<id>\\t<text>\\t<label>`` with
label 0 or 1; UTF-8; ``#`` lines and blank lines are skipped. This is the
same format the fusion pipeline reads and writes, re-implemented here so
the scorer stays a standalone package coupled only through file formats.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import ScorerError


@dataclass(frozen=True)
class Example:
    """One tweet: id, raw text, and an optional gold label."""

    id: str
    text: str
    label: int | None = None


def read_corpus(path: str | Path, require_labels: bool) -> list[Example]:
    """Parse a corpus file.

    With ``require_labels`` every record must carry a 0/1 label (training
    needs supervision); otherwise the label field is optional and ignored.
    Errors name the file and physical line number.
    """
    path = Path(path)
    if not path.is_file():
        raise ScorerError(f"corpus file not found: {path}")

    examples: list[Example] = []
    seen: set[str] = set()
    with open(path, encoding="utf-8", newline="") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line.strip() or line.startswith("#"):
                continue
            fields = line.split("\t")
            if len(fields) not in (2, 3):
                raise ScorerError(
                    f"{path}: malformed line {lineno}: expected 2 or 3 "
                    f"tab-separated fields, got {len(fields)}"
                )
            tweet_id, text = fields[0], fields[1]
            if not tweet_id:
                raise ScorerError(f"{path}: malformed line {lineno}: empty tweet id")
            if tweet_id in seen:
                raise ScorerError(f"{path}: duplicate tweet id: {tweet_id}")
            seen.add(tweet_id)

            label: int | None = None
            if len(fields) == 3:
                if fields[2] not in ("0", "1"):
                    raise ScorerError(
                        f"{path}: malformed line {lineno}: label must be 0 or 1, "
                        f"got {fields[2]!r}"
                    )
                label = int(fields[2])
            if require_labels and label is None:
                raise ScorerError(
                    f"{path}: line {lineno}: fine-tuning needs a labeled corpus, "
                    f"but tweet {tweet_id} has no label"
                )
            examples.append(Example(id=tweet_id, text=text, label=label))

    if not examples:
        raise ScorerError(f"{path}: corpus contains no tweets")
    return examples
