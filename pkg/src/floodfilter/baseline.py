"""Bag-of-words multinomial naive Bayes over normalized tokens.

A deterministic, closed-form classifier that lets the pipeline run end to
end with no external scorer: it plugs into the same score-file contract as
any heavyweight model. Unseen tokens are ignored at predict time, so
prediction is a pure function of the fitted parameters.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DataError
from .fileio import atomic_write_text
from .normalize import NormalizedTweet
from .score_io import ScoreVector

_FORMAT = "floodfilter-naive-bayes-v1"


@dataclass(frozen=True)
class BaselineModel:
    """Fitted parameters: token index map, log priors, per-class token log
    likelihoods (rows: class 0, class 1), and the smoothing constant used."""

    vocabulary: dict[str, int]
    log_priors: np.ndarray
    log_likelihoods: np.ndarray
    smoothing: float

    def prior_probabilities(self) -> tuple[float, float]:
        """Posterior returned for a tweet with no known tokens."""
        return _softmax(self.log_priors)


def _softmax(log_scores: np.ndarray) -> tuple[float, float]:
    shifted = log_scores - np.max(log_scores)
    weights = np.exp(shifted)
    probs = weights / weights.sum()
    return float(probs[0]), float(probs[1])


def train(
    normalized: list[NormalizedTweet],
    labels: dict[str, int],
    smoothing: float = 1.0,
) -> BaselineModel:
    """Fit multinomial naive Bayes with additive smoothing.

    ``labels`` maps tweet id -> class; every normalized tweet needs one.
    Requires at least one example of each class and smoothing > 0.
    Training is deterministic: the vocabulary is sorted.
    """
    if smoothing <= 0:
        raise DataError(f"smoothing must be > 0, got {smoothing}")
    for nt in normalized:
        if nt.id not in labels:
            raise DataError(f"no label for tweet {nt.id}")
        if labels[nt.id] not in (0, 1):
            raise DataError(f"tweet {nt.id}: label must be 0 or 1, got {labels[nt.id]!r}")

    class_docs = [0, 0]
    for nt in normalized:
        class_docs[labels[nt.id]] += 1
    if class_docs[0] == 0 or class_docs[1] == 0:
        raise DataError(
            f"training requires both classes; got {class_docs[0]} not-relevant "
            f"and {class_docs[1]} relevant examples"
        )

    vocab = {token: i for i, token in enumerate(sorted({t for nt in normalized for t in nt.tokens}))}
    counts = np.zeros((2, len(vocab)), dtype=np.float64)
    for nt in normalized:
        cls = labels[nt.id]
        for token in nt.tokens:
            counts[cls, vocab[token]] += 1.0

    total_docs = class_docs[0] + class_docs[1]
    log_priors = np.log(np.array(class_docs, dtype=np.float64) / total_docs)
    smoothed = counts + smoothing
    log_likelihoods = np.log(smoothed / smoothed.sum(axis=1, keepdims=True))
    return BaselineModel(
        vocabulary=vocab,
        log_priors=log_priors,
        log_likelihoods=log_likelihoods,
        smoothing=float(smoothing),
    )


def predict(model: BaselineModel, tweet: NormalizedTweet) -> ScoreVector:
    """Posterior (p_not_relevant, p_relevant) for one normalized tweet.

    Out-of-vocabulary tokens contribute nothing; a tweet with no known
    tokens gets exactly the class prior.
    """
    log_scores = model.log_priors.copy()
    for token in tweet.tokens:
        idx = model.vocabulary.get(token)
        if idx is not None:
            log_scores += model.log_likelihoods[:, idx]
    p0, p1 = _softmax(log_scores)
    return ScoreVector(tweet_id=tweet.id, p_not_relevant=p0, p_relevant=p1)


def save_model(model: BaselineModel, path: str | Path) -> None:
    """Write a self-describing JSON model file.

    Parameters round-trip bit-faithfully: floats are serialized with
    Python's shortest-exact repr.
    """
    vocab_tokens = [None] * len(model.vocabulary)
    for token, idx in model.vocabulary.items():
        vocab_tokens[idx] = token
    payload = {
        "format": _FORMAT,
        "smoothing": model.smoothing,
        "vocabulary": vocab_tokens,
        "log_priors": model.log_priors.tolist(),
        "log_likelihoods": model.log_likelihoods.tolist(),
    }
    atomic_write_text(path, json.dumps(payload, ensure_ascii=False, indent=1) + "\n")


def load_model(path: str | Path) -> BaselineModel:
    """Read a model file written by save_model."""
    path = Path(path)
    if not path.is_file():
        raise DataError(f"model file not found: {path}")
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise DataError(f"{path}: not a valid model file: {exc}") from None
    if not isinstance(payload, dict) or payload.get("format") != _FORMAT:
        raise DataError(f"{path}: not a {_FORMAT} model file")

    vocab_tokens = payload["vocabulary"]
    log_likelihoods = np.array(payload["log_likelihoods"], dtype=np.float64)
    if log_likelihoods.shape != (2, len(vocab_tokens)):
        raise DataError(f"{path}: likelihood table shape does not match vocabulary")
    return BaselineModel(
        vocabulary={token: i for i, token in enumerate(vocab_tokens)},
        log_priors=np.array(payload["log_priors"], dtype=np.float64),
        log_likelihoods=log_likelihoods,
        smoothing=float(payload["smoothing"]),
    )
