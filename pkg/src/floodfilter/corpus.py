"""Tweet corpus loading, validation, splitting, and persistence.

File format (UTF-8, line oriented)::

    <id>\\t<text>[\\t<label>]

``#``-prefixed lines are comments and blank lines are ignored. Fields never
contain literal tabs or newlines; any tab/newline found in a text supplied
programmatically is replaced by a single space when the Tweet is created,
which keeps the three-field parse unambiguous without quoting rules.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from pathlib import Path

from .errors import DataError
from .fileio import atomic_write_text, iter_data_lines

_FIELD_BREAKS = re.compile(r"[\t\n\r]")


@dataclass(frozen=True)
class Tweet:
    """One post: opaque id, raw text, optional relevance label (0 or 1)."""

    id: str
    text: str
    label: int | None = None

    def __post_init__(self) -> None:
        if not self.id:
            raise DataError("tweet id must be non-empty")
        if _FIELD_BREAKS.search(self.id):
            raise DataError(f"tweet id {self.id!r} contains a tab or newline")
        if self.id.startswith("#"):
            # A leading '#' would make the record unrepresentable (comment).
            raise DataError(f"tweet id {self.id!r} must not start with '#'")
        if self.label is not None and self.label not in (0, 1):
            raise DataError(f"tweet {self.id}: label must be 0 or 1, got {self.label!r}")
        object.__setattr__(self, "text", _FIELD_BREAKS.sub(" ", self.text))


@dataclass(frozen=True)
class Corpus:
    """An ordered, duplicate-free collection of tweets.

    ``labeled`` is true iff every tweet carries a label. Order is exactly
    the order tweets were supplied (for files: source order).
    """

    tweets: tuple[Tweet, ...]
    labeled: bool

    @classmethod
    def from_tweets(cls, tweets) -> "Corpus":
        tweets = tuple(tweets)
        seen: set[str] = set()
        for tweet in tweets:
            if tweet.id in seen:
                raise DataError(f"duplicate tweet id: {tweet.id}")
            seen.add(tweet.id)
        labeled = bool(tweets) and all(t.label is not None for t in tweets)
        return cls(tweets=tweets, labeled=labeled)

    def ids(self) -> tuple[str, ...]:
        return tuple(t.id for t in self.tweets)

    def labels(self) -> dict[str, int]:
        """Per-id gold labels; requires a fully labeled corpus."""
        if not self.labeled:
            raise DataError("corpus is not fully labeled")
        return {t.id: t.label for t in self.tweets}

    def __len__(self) -> int:
        return len(self.tweets)

    def __iter__(self):
        return iter(self.tweets)


def load_corpus(path: str | Path, has_labels: bool) -> Corpus:
    """Parse a corpus file into a Corpus.

    Each data line must have 2 fields (id, text) or 3 (id, text, label);
    a present label must be ``0`` or ``1``. With ``has_labels=False`` the
    third field is validated but dropped, so a labeled file can be loaded
    for scoring without stripping its labels first. With ``has_labels=True``
    the corpus is ``labeled`` only if every line carried a label.
    """
    path = Path(path)
    if not path.is_file():
        raise DataError(f"corpus file not found: {path}")

    tweets: list[Tweet] = []
    seen: set[str] = set()
    for lineno, line in iter_data_lines(path):
        fields = line.split("\t")
        if len(fields) not in (2, 3):
            raise DataError(
                f"{path}: malformed line {lineno}: expected 2 or 3 tab-separated "
                f"fields, got {len(fields)}"
            )
        tweet_id, text = fields[0], fields[1]
        label: int | None = None
        if len(fields) == 3:
            if fields[2] not in ("0", "1"):
                raise DataError(
                    f"{path}: malformed line {lineno}: label must be 0 or 1, "
                    f"got {fields[2]!r}"
                )
            label = int(fields[2])
        if tweet_id in seen:
            raise DataError(f"{path}: duplicate tweet id: {tweet_id}")
        if not tweet_id:
            raise DataError(f"{path}: malformed line {lineno}: empty tweet id")
        seen.add(tweet_id)
        tweets.append(Tweet(id=tweet_id, text=text, label=label if has_labels else None))

    return Corpus.from_tweets(tweets)


def write_corpus(corpus: Corpus, path: str | Path) -> None:
    """Persist a corpus in the documented format (atomic write)."""
    lines = []
    for tweet in corpus:
        if tweet.label is None:
            lines.append(f"{tweet.id}\t{tweet.text}\n")
        else:
            lines.append(f"{tweet.id}\t{tweet.text}\t{tweet.label}\n")
    atomic_write_text(path, "".join(lines))


def split_corpus(corpus: Corpus, dev_fraction: float, seed: int) -> tuple[Corpus, Corpus]:
    """Deterministic stratified split into (train, dev).

    Per class, the dev split receives round-half-up(dev_fraction * class
    size) tweets, clamped to the class size, drawn by a seeded shuffle.
    Both outputs keep the input's original order and together partition it.
    """
    if not 0.0 < dev_fraction < 1.0:
        raise DataError(f"dev_fraction must be in (0,1), got {dev_fraction}")
    if not corpus.labeled:
        raise DataError("split_corpus requires a fully labeled corpus")

    by_class: dict[int, list[int]] = {0: [], 1: []}
    for idx, tweet in enumerate(corpus):
        by_class[tweet.label].append(idx)
    if not by_class[0] or not by_class[1]:
        raise DataError("split_corpus requires both classes to be present")

    rng = random.Random(seed)
    dev_indices: set[int] = set()
    for cls in (0, 1):
        indices = list(by_class[cls])
        rng.shuffle(indices)
        n_dev = min(int(dev_fraction * len(indices) + 0.5), len(indices))
        dev_indices.update(indices[:n_dev])

    dev = [t for i, t in enumerate(corpus) if i in dev_indices]
    train = [t for i, t in enumerate(corpus) if i not in dev_indices]
    return Corpus.from_tweets(train), Corpus.from_tweets(dev)
