"""Batch inference exporting softmax posteriors in the score-file format.

Output (consumed by the fusion pipeline's ``read_scores``)::

    #model=<family>
    <tweet_id>\\t<p_not_relevant>\\t<p_relevant>

Rows follow corpus order and cover every corpus id exactly once; the file
is only written after the coverage check passes.
"""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

import torch
from transformers import AutoModelForSequenceClassification, AutoTokenizer

from .corpus import read_corpus
from .errors import ScorerError
from .finetune import encode_texts, read_training_log


def load_model_dir(model_dir: str | Path):
    """Load (family, tokenizer, model) from a fine-tuned model directory."""
    model_dir = Path(model_dir)
    log = read_training_log(model_dir)
    try:
        tokenizer = AutoTokenizer.from_pretrained(model_dir)
        model = AutoModelForSequenceClassification.from_pretrained(model_dir)
    except Exception as exc:
        raise ScorerError(f"{model_dir}: cannot load fine-tuned model: {exc}") from exc
    return log["model_family"], tokenizer, model


def export_scores(
    model_dir: str | Path,
    corpus_path: str | Path,
    out_path: str | Path,
    batch_size: int = 32,
) -> int:
    """Score every corpus tweet; returns the number of rows written."""
    if batch_size < 1:
        raise ScorerError(f"batch size must be >= 1, got {batch_size}")
    family, tokenizer, model = load_model_dir(model_dir)
    examples = read_corpus(corpus_path, require_labels=False)
    max_seq_len = read_training_log(model_dir).get("max_seq_len", 128)

    model.eval()
    features = encode_texts(tokenizer, [ex.text for ex in examples], max_seq_len)
    rows: dict[str, tuple[float, float]] = {}
    with torch.no_grad():
        for start in range(0, len(examples), batch_size):
            batch_examples = examples[start : start + batch_size]
            batch = tokenizer.pad(
                features[start : start + batch_size], return_tensors="pt"
            )
            logits = model(
                input_ids=batch["input_ids"],
                attention_mask=batch["attention_mask"],
            ).logits
            probs = torch.softmax(logits, dim=-1)
            for ex, row in zip(batch_examples, probs.tolist()):
                rows[ex.id] = (row[0], row[1])

    missing = [ex.id for ex in examples if ex.id not in rows]
    if missing:
        raise ScorerError(
            f"scoring left {len(missing)} corpus id(s) uncovered "
            f"(first: {missing[0]}); refusing to write {out_path}"
        )

    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    lines = [f"#model={family}\n"]
    for ex in examples:
        p0, p1 = rows[ex.id]
        lines.append(f"{ex.id}\t{p0:.12f}\t{p1:.12f}\n")
    fd, tmp_name = tempfile.mkstemp(dir=out_path.parent, prefix=out_path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write("".join(lines))
        os.replace(tmp_name, out_path)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise
    return len(examples)
