"""Score-file interchange: per-model posterior probabilities keyed by tweet id.

This format is the contract between the pipeline and any classifier that
feeds the fusion stage, in-tree or external::

    #model=<name>
    <tweet_id>\\t<p_not_relevant>\\t<p_relevant>

UTF-8; the header must be the first non-blank line; later ``#`` lines are
comments. Probabilities are written with 12 decimal places, so write->read
reproduces every value to well inside 1e-9.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from pathlib import Path

from .errors import DataError
from .fileio import atomic_write_text, read_headed_lines

logger = logging.getLogger(__name__)

# Sum-to-1 slack: loose enough for external producers that print few
# digits, tight enough to catch logit/probability confusion.
SUM_TOLERANCE = 1e-6


@dataclass(frozen=True)
class ScoreVector:
    """One model's posterior probabilities for one tweet."""

    tweet_id: str
    p_not_relevant: float
    p_relevant: float

    def __post_init__(self) -> None:
        if not self.tweet_id:
            raise DataError("score vector requires a non-empty tweet id")
        object.__setattr__(self, "p_not_relevant", float(self.p_not_relevant))
        object.__setattr__(self, "p_relevant", float(self.p_relevant))
        for p in (self.p_not_relevant, self.p_relevant):
            if not 0.0 <= p <= 1.0:
                raise DataError(
                    f"tweet {self.tweet_id}: probabilities must lie in [0,1], "
                    f"got ({self.p_not_relevant!r}, {self.p_relevant!r})"
                )
        if not math.isclose(
            self.p_not_relevant + self.p_relevant, 1.0, rel_tol=0.0, abs_tol=SUM_TOLERANCE
        ):
            raise DataError(
                f"tweet {self.tweet_id}: probabilities sum to "
                f"{self.p_not_relevant + self.p_relevant!r}, not 1 within {SUM_TOLERANCE}"
            )


@dataclass(frozen=True)
class ScoreSet:
    """All of one model's score vectors, keyed by tweet id."""

    model_name: str
    scores: dict[str, ScoreVector]

    def __post_init__(self) -> None:
        if not self.model_name:
            raise DataError("score set requires a non-empty model name")

    def __len__(self) -> int:
        return len(self.scores)


def scoreset_from_vectors(model_name: str, vectors) -> ScoreSet:
    """Build a ScoreSet, rejecting duplicate tweet ids."""
    scores: dict[str, ScoreVector] = {}
    for vec in vectors:
        if vec.tweet_id in scores:
            raise DataError(f"model {model_name}: duplicate tweet id: {vec.tweet_id}")
        scores[vec.tweet_id] = vec
    return ScoreSet(model_name=model_name, scores=scores)


def write_scores(score_set: ScoreSet, path: str | Path) -> None:
    """Emit the documented score-file format (atomic write)."""
    lines = [f"#model={score_set.model_name}\n"]
    for vec in score_set.scores.values():
        lines.append(f"{vec.tweet_id}\t{vec.p_not_relevant:.12f}\t{vec.p_relevant:.12f}\n")
    atomic_write_text(path, "".join(lines))


def read_scores(path: str | Path) -> ScoreSet:
    """Parse and validate a score file.

    Raises DataError naming the tweet id for probability violations,
    duplicate ids, or a missing ``#model=`` header.
    """
    path = Path(path)
    if not path.is_file():
        raise DataError(f"score file not found: {path}")
    try:
        model_name, data_lines = read_headed_lines(path, "model")
    except ValueError as exc:
        raise DataError(str(exc)) from None

    scores: dict[str, ScoreVector] = {}
    for lineno, line in data_lines:
        fields = line.split("\t")
        if len(fields) != 3:
            raise DataError(
                f"{path}: malformed line {lineno}: expected 3 tab-separated fields, "
                f"got {len(fields)}"
            )
        tweet_id = fields[0]
        try:
            p0, p1 = float(fields[1]), float(fields[2])
        except ValueError:
            raise DataError(
                f"{path}: malformed line {lineno}: non-numeric probability for "
                f"tweet {tweet_id}"
            ) from None
        if tweet_id in scores:
            raise DataError(f"{path}: duplicate tweet id: {tweet_id}")
        scores[tweet_id] = ScoreVector(tweet_id=tweet_id, p_not_relevant=p0, p_relevant=p1)
    return ScoreSet(model_name=model_name, scores=scores)


@dataclass(frozen=True)
class AlignedScores:
    """Per-tweet score vectors in corpus order, one column per model."""

    model_names: tuple[str, ...]
    tweet_ids: tuple[str, ...]
    rows: tuple[tuple[ScoreVector, ...], ...]
    extra_ignored: int

    def select(self, model_names) -> "AlignedScores":
        """A view restricted to the given models (any order)."""
        wanted = tuple(model_names)
        missing = [name for name in wanted if name not in self.model_names]
        if missing:
            raise DataError(f"no aligned scores for model(s): {', '.join(missing)}")
        cols = [self.model_names.index(name) for name in wanted]
        return AlignedScores(
            model_names=wanted,
            tweet_ids=self.tweet_ids,
            rows=tuple(tuple(row[c] for c in cols) for row in self.rows),
            extra_ignored=0,
        )


def align(score_sets, corpus_ids) -> AlignedScores:
    """Arrange score sets into a per-tweet matrix following corpus order.

    Every corpus id must appear in every set (a hole in the fused sum is
    fatal); ids a set scored beyond the corpus are ignored with a counted
    warning (scoring a superset is harmless).
    """
    score_sets = list(score_sets)
    corpus_ids = tuple(corpus_ids)
    names = [s.model_name for s in score_sets]
    if len(set(names)) != len(names):
        raise DataError(f"duplicate model names among score sets: {names}")

    id_set = set(corpus_ids)
    extra_ignored = 0
    for score_set in score_sets:
        for tweet_id in corpus_ids:
            if tweet_id not in score_set.scores:
                raise DataError(
                    f"model {score_set.model_name} has no score for tweet {tweet_id}"
                )
        extras = len([i for i in score_set.scores if i not in id_set])
        if extras:
            logger.warning(
                "model %s scored %d id(s) outside the corpus; ignoring them",
                score_set.model_name, extras,
            )
            extra_ignored += extras

    rows = tuple(
        tuple(score_set.scores[tweet_id] for score_set in score_sets)
        for tweet_id in corpus_ids
    )
    return AlignedScores(
        model_names=tuple(names),
        tweet_ids=corpus_ids,
        rows=rows,
        extra_ignored=extra_ignored,
    )
