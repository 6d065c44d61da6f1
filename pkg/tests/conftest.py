"""Shared helpers for the test suite."""

from __future__ import annotations

import pytest

from floodfilter.corpus import Corpus, Tweet


def make_corpus(rows: list[tuple[str, str, int | None]]) -> Corpus:
    """Build a corpus from (id, text, label) rows."""
    return Corpus.from_tweets([Tweet(i, t, l) for i, t, l in rows])


def write_tsv(path, rows: list[tuple[str, ...]]) -> None:
    """Write raw TSV rows without any validation."""
    lines = ["\t".join(str(f) for f in row) for row in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


@pytest.fixture
def tiny_labeled(tmp_path):
    """A small labeled corpus file with both classes."""
    path = tmp_path / "tiny.tsv"
    write_tsv(
        path,
        [
            ("t1", "flood water rising in the streets", "1"),
            ("t2", "rescue boats deployed after flood", "1"),
            ("t3", "lovely sunny day at the beach", "0"),
            ("t4", "new phone arrived today", "0"),
        ],
    )
    return path
