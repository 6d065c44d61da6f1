"""Fine-tuning loop: seeded, Adam-optimized, single process.

The model directory left behind is self-contained: weights and config
(``save_pretrained``), the tokenizer, and ``training_log.json`` recording
the preset, seed, and final loss. Re-running with the same corpus, preset,
and seed on the same device reproduces the same final loss.
"""

from __future__ import annotations

import json
import math
import os
import random
import tempfile
from pathlib import Path

import torch

from .corpus import read_corpus
from .errors import ScorerError
from .modeling import build_corpus_tokenizer, build_reduced_model, load_pretrained
from .presets import FinetunePreset

LOG_FORMAT = "transformer-scorer-log-v1"
LOG_FILENAME = "training_log.json"

# Final loss is logged (and compared) at this many decimal places.
LOSS_DECIMALS = 6


def write_json_atomic(path: Path, payload: dict) -> None:
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(payload, fh, indent=1)
            fh.write("\n")
        os.replace(tmp_name, path)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise


def encode_texts(tokenizer, texts: list[str], max_seq_len: int) -> list[dict]:
    encoded = tokenizer(texts, truncation=True, max_length=max_seq_len)
    return [
        {
            "input_ids": encoded["input_ids"][i],
            "attention_mask": encoded["attention_mask"][i],
        }
        for i in range(len(texts))
    ]


def batch_tensors(tokenizer, features: list[dict]):
    return tokenizer.pad(features, return_tensors="pt")


def finetune(
    corpus_path: str | Path,
    preset: FinetunePreset,
    seed: int,
    out_dir: str | Path,
    base_model: str | None = None,
    max_seq_len: int = 128,
) -> dict:
    """Train a two-class classifier and persist it to ``out_dir``.

    Returns the training log dictionary that was written. Without
    ``base_model`` a reduced-size variant of the family is trained from
    scratch with a corpus-derived vocabulary; with it, the named
    pretrained checkpoint is fine-tuned.
    """
    if max_seq_len < 8:
        raise ScorerError(f"max_seq_len must be >= 8, got {max_seq_len}")
    examples = read_corpus(corpus_path, require_labels=True)
    class_counts = [0, 0]
    for ex in examples:
        class_counts[ex.label] += 1
    if 0 in class_counts:
        raise ScorerError(
            f"fine-tuning requires both classes; got {class_counts[0]} "
            f"not-relevant and {class_counts[1]} relevant examples"
        )

    torch.manual_seed(seed)
    texts = [ex.text for ex in examples]
    if base_model is None:
        tokenizer = build_corpus_tokenizer(texts)
        if preset.model_family == "xlnet":
            # XLNet pools the last position, so padding must go left.
            tokenizer.padding_side = "left"
        model = build_reduced_model(
            preset.model_family, vocab_size=len(tokenizer), max_seq_len=max_seq_len
        )
    else:
        tokenizer, model = load_pretrained(base_model)

    features = encode_texts(tokenizer, texts, max_seq_len)
    labels = [ex.label for ex in examples]

    model.train()
    optimizer = torch.optim.Adam(model.parameters(), lr=preset.learning_rate)
    rng = random.Random(seed)
    order = list(range(len(examples)))
    final_epoch_losses: list[float] = []

    for _ in range(preset.epochs):
        rng.shuffle(order)
        final_epoch_losses.clear()
        for start in range(0, len(order), preset.batch_size):
            index_batch = order[start : start + preset.batch_size]
            batch = batch_tensors(tokenizer, [features[i] for i in index_batch])
            target = torch.tensor([labels[i] for i in index_batch], dtype=torch.long)
            optimizer.zero_grad()
            output = model(
                input_ids=batch["input_ids"],
                attention_mask=batch["attention_mask"],
                labels=target,
            )
            output.loss.backward()
            optimizer.step()
            final_epoch_losses.append(output.loss.item())

    final_loss = round(math.fsum(final_epoch_losses) / len(final_epoch_losses), LOSS_DECIMALS)

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    model.save_pretrained(out_dir)
    tokenizer.save_pretrained(out_dir)
    log = {
        "format": LOG_FORMAT,
        "model_family": preset.model_family,
        "learning_rate": preset.learning_rate,
        "batch_size": preset.batch_size,
        "epochs": preset.epochs,
        "seed": seed,
        "base_model": base_model,
        "max_seq_len": max_seq_len,
        "examples": len(examples),
        "final_loss": final_loss,
    }
    write_json_atomic(out_dir / LOG_FILENAME, log)
    return log


def read_training_log(model_dir: str | Path) -> dict:
    """Load and sanity-check a model directory's training log."""
    path = Path(model_dir) / LOG_FILENAME
    if not path.is_file():
        raise ScorerError(
            f"{model_dir}: not a fine-tuned model directory (missing {LOG_FILENAME})"
        )
    try:
        log = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ScorerError(f"{path}: invalid training log: {exc}") from None
    if not isinstance(log, dict) or log.get("format") != LOG_FORMAT:
        raise ScorerError(f"{path}: not a {LOG_FORMAT} training log")
    return log
