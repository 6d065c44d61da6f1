"""Additive late fusion of per-model posterior scores.

Each model contributes its two-class score vector with weight 1; the fused
score is the componentwise sum and the label its argmax, with exact ties
going to class 0 (no false alarm on a dead heat). Components are summed
with ``math.fsum``, so fusion is exactly invariant under model reordering.

Fused-prediction export format::

    #ensemble=<name>
    <tweet_id>\\t<s_not_relevant>\\t<s_relevant>\\t<label>
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path

from .errors import DataError
from .fileio import atomic_write_text, read_headed_lines
from .score_io import AlignedScores


@dataclass(frozen=True)
class EnsembleSpec:
    """A named subset of registered models to fuse."""

    name: str
    model_names: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.name:
            raise DataError("ensemble name must be non-empty")
        if len(self.model_names) < 1:
            raise DataError(f"ensemble {self.name}: needs at least one model")
        if any(not m for m in self.model_names):
            raise DataError(f"ensemble {self.name}: model names must be non-empty")
        if len(set(self.model_names)) != len(self.model_names):
            raise DataError(f"ensemble {self.name}: model names must be distinct")


@dataclass(frozen=True)
class FusedScore:
    """Accumulated two-class score for one tweet plus the decided label."""

    tweet_id: str
    s_not_relevant: float
    s_relevant: float
    label: int


def fuse(per_model_scores) -> FusedScore:
    """Sum one tweet's score vectors across models and take the argmax."""
    vectors = list(per_model_scores)
    if not vectors:
        raise DataError("fuse requires at least one score vector")
    tweet_id = vectors[0].tweet_id
    for vec in vectors[1:]:
        if vec.tweet_id != tweet_id:
            raise DataError(
                f"fuse got mixed tweet ids: {tweet_id} and {vec.tweet_id}"
            )
    s0 = math.fsum(v.p_not_relevant for v in vectors)
    s1 = math.fsum(v.p_relevant for v in vectors)
    return FusedScore(
        tweet_id=tweet_id,
        s_not_relevant=s0,
        s_relevant=s1,
        label=1 if s1 > s0 else 0,
    )


def fuse_ensemble(spec: EnsembleSpec, aligned: AlignedScores) -> list[FusedScore]:
    """Fuse every tweet of an aligned matrix covering exactly the ensemble."""
    if set(aligned.model_names) != set(spec.model_names):
        raise DataError(
            f"ensemble {spec.name} expects models {sorted(spec.model_names)} but the "
            f"aligned scores cover {sorted(aligned.model_names)}"
        )
    return [fuse(row) for row in aligned.rows]


def enumerate_ensembles(model_names, min_size: int) -> list[EnsembleSpec]:
    """All model subsets of size >= min_size.

    Each subset is named by its sorted member names joined with ``+``;
    the list is ordered by size, then lexicographically, so reports diff
    stably across runs.
    """
    names = list(model_names)
    if len(set(names)) != len(names) or any(not n for n in names):
        raise DataError(f"model names must be distinct and non-empty: {names}")
    if not 1 <= min_size <= len(names):
        raise DataError(
            f"min_size must be between 1 and the number of models "
            f"({len(names)}), got {min_size}"
        )
    ordered = sorted(names)
    specs = []
    for size in range(min_size, len(ordered) + 1):
        for combo in combinations(ordered, size):
            specs.append(EnsembleSpec(name="+".join(combo), model_names=combo))
    return specs


def write_fused(ensemble_name: str, fused: list[FusedScore], path: str | Path) -> None:
    """Export fused predictions (atomic write)."""
    lines = [f"#ensemble={ensemble_name}\n"]
    for fs in fused:
        lines.append(
            f"{fs.tweet_id}\t{fs.s_not_relevant:.12f}\t{fs.s_relevant:.12f}\t{fs.label}\n"
        )
    atomic_write_text(path, "".join(lines))


def read_fused(path: str | Path) -> tuple[str, list[FusedScore]]:
    """Parse a fused-prediction export; returns (ensemble_name, rows)."""
    path = Path(path)
    if not path.is_file():
        raise DataError(f"fused prediction file not found: {path}")
    try:
        ensemble_name, data_lines = read_headed_lines(path, "ensemble")
    except ValueError as exc:
        raise DataError(str(exc)) from None

    fused: list[FusedScore] = []
    seen: set[str] = set()
    for lineno, line in data_lines:
        fields = line.split("\t")
        if len(fields) != 4:
            raise DataError(
                f"{path}: malformed line {lineno}: expected 4 tab-separated fields, "
                f"got {len(fields)}"
            )
        tweet_id = fields[0]
        if tweet_id in seen:
            raise DataError(f"{path}: duplicate tweet id: {tweet_id}")
        seen.add(tweet_id)
        try:
            s0, s1 = float(fields[1]), float(fields[2])
        except ValueError:
            raise DataError(
                f"{path}: malformed line {lineno}: non-numeric score for tweet {tweet_id}"
            ) from None
        if fields[3] not in ("0", "1"):
            raise DataError(
                f"{path}: malformed line {lineno}: label must be 0 or 1, got {fields[3]!r}"
            )
        fused.append(
            FusedScore(tweet_id=tweet_id, s_not_relevant=s0, s_relevant=s1, label=int(fields[3]))
        )
    return ensemble_name, fused
