"""Tweet text cleaning: strip mentions, URLs, hashtag marks, emoji,
punctuation, and stopwords, then tokenize.

The rules run in a fixed order so fragments of removed spans cannot leak
into tokens (URLs go before punctuation, for example):

1. Unicode compatibility fold (NFKC, optional) + lowercase
2. URL removal            (``http://``, ``https://`` or ``www.`` + non-space)
3. mention removal        (``@`` + word characters)
4. hashtag handling       (drop ``#``; keep or drop the tag word)
5. emoji/symbol-range removal
6. punctuation/symbol character removal
7. whitespace tokenization
8. stopword filtering

Removed spans are deleted, never replaced by spaces: a deletion can only
shrink or empty a whitespace-delimited token, so the output token count
never exceeds the whitespace token count of the folded, lowercased text.
(The fold itself can split rare compatibility characters into several
words, e.g. U+FDFA expands to a four-word Arabic phrase; with the fold
disabled the bound holds against the raw lowercased input.)

Every UTF-8 string normalizes without error, and the pipeline is
idempotent: re-normalizing the space-joined output reproduces it.
"""

from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path

from .corpus import Corpus
from .errors import DataError
from .fileio import atomic_write_text

URL_RE = re.compile(r"(?:https?://|www\.)\S*")
MENTION_RE = re.compile(r"@\w+")
HASHTAG_RE = re.compile(r"#\w+")

# Emoji and pictograph blocks: U+1F000-U+1FAFF covers the emoticon,
# transport, supplemental-symbol, and enclosed/flag blocks; U+2600-U+27BF
# is miscellaneous symbols + dingbats; U+2B00-U+2BFF misc symbols/arrows.
# Variation selectors, the zero-width joiner, and the combining keycap are
# removed with them so no bare sequence machinery survives.
EMOJI_RE = re.compile(
    "["
    "\U0001F000-\U0001FAFF"
    "☀-➿"
    "⬀-⯿"
    "︀-️"
    "‍"
    "⃣"
    "]"
)


def is_filtered_char(ch: str) -> bool:
    """True for characters the punctuation step deletes (Unicode P* or S*)."""
    return unicodedata.category(ch)[0] in ("P", "S")


@lru_cache(maxsize=None)
def load_stopwords(path: str | None = None) -> frozenset[str]:
    """Load a stopword list (one token per line, ``#`` comments allowed).

    With ``path=None`` the bundled English list is returned.
    """
    if path is None:
        text = (resources.files("floodfilter") / "data" / "stopwords_en.txt").read_text(
            encoding="utf-8"
        )
    else:
        text = Path(path).read_text(encoding="utf-8")
    words = frozenset(
        line.strip() for line in text.splitlines()
        if line.strip() and not line.startswith("#")
    )
    return words


@dataclass(frozen=True)
class NormalizerConfig:
    """Knobs for the cleaning rules.

    ``stopwords`` entries must be lowercase and non-empty. Hashtag words
    are kept by default (only the ``#`` is dropped) since tags often carry
    the topical keyword; ``unicode_fold`` toggles the NFKC step.
    """

    stopwords: frozenset[str] = field(default_factory=load_stopwords)
    keep_hashtag_words: bool = True
    unicode_fold: bool = True

    def __post_init__(self) -> None:
        for word in self.stopwords:
            if not word or word != word.lower():
                raise DataError(f"stopword entries must be lowercase and non-empty: {word!r}")


@dataclass(frozen=True)
class NormalizedTweet:
    """A tweet id plus its cleaned token sequence (possibly empty)."""

    id: str
    tokens: tuple[str, ...]


def normalize(text: str, config: NormalizerConfig | None = None) -> list[str]:
    """Apply the cleaning rules to one raw text; returns surviving tokens."""
    if config is None:
        config = NormalizerConfig()
    if config.unicode_fold:
        text = unicodedata.normalize("NFKC", text)
    text = text.lower()
    text = URL_RE.sub("", text)
    text = MENTION_RE.sub("", text)
    if config.keep_hashtag_words:
        text = text.replace("#", "")
    else:
        text = HASHTAG_RE.sub("", text)
    text = EMOJI_RE.sub("", text)
    text = "".join(ch for ch in text if not is_filtered_char(ch))
    return [tok for tok in text.split() if tok not in config.stopwords]


def normalize_corpus(corpus: Corpus, config: NormalizerConfig | None = None) -> list[NormalizedTweet]:
    """Normalize every tweet, preserving order and ids.

    Tweets that clean down to zero tokens are kept (empty token list) so
    downstream score files stay aligned with the corpus.
    """
    if config is None:
        config = NormalizerConfig()
    return [
        NormalizedTweet(id=tweet.id, tokens=tuple(normalize(tweet.text, config)))
        for tweet in corpus
    ]


def write_normalized(normalized: list[NormalizedTweet], path: str | Path) -> None:
    """Export ``<id>\\t<token token ...>`` lines (atomic write)."""
    lines = [f"{nt.id}\t{' '.join(nt.tokens)}\n" for nt in normalized]
    atomic_write_text(path, "".join(lines))
