"""Binary relevance evaluation: confusion counts, precision/recall/F1,
and report rendering.

The positive class is 1 (relevant). Undefined ratios (zero denominators)
are reported as 0 rather than NaN so reports stay totally ordered and
serializable.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DataError

REPORT_FORMATS = ("table", "delimited")


@dataclass(frozen=True)
class EvalReport:
    """Confusion counts and derived metrics for one prediction set."""

    ensemble_name: str
    tp: int
    fp: int
    fn: int
    tn: int
    precision: float
    recall: float
    f1: float

    @classmethod
    def from_counts(cls, ensemble_name: str, tp: int, fp: int, fn: int, tn: int) -> "EvalReport":
        precision = tp / (tp + fp) if tp + fp > 0 else 0.0
        recall = tp / (tp + fn) if tp + fn > 0 else 0.0
        return cls(
            ensemble_name=ensemble_name,
            tp=tp, fp=fp, fn=fn, tn=tn,
            precision=precision,
            recall=recall,
            f1=f1_from_pr(precision, recall),
        )


def evaluate(predictions: dict[str, int], gold: dict[str, int], name: str = "") -> EvalReport:
    """Score predicted labels against gold labels over the same id set."""
    if not gold:
        raise DataError("evaluate requires a non-empty gold set")
    pred_ids, gold_ids = set(predictions), set(gold)
    if pred_ids != gold_ids:
        missing = sorted(gold_ids - pred_ids)[:10]
        unexpected = sorted(pred_ids - gold_ids)[:10]
        parts = []
        if missing:
            parts.append(f"ids missing from predictions: {missing}")
        if unexpected:
            parts.append(f"ids not in gold: {unexpected}")
        raise DataError("prediction/gold id mismatch; " + "; ".join(parts))

    tp = fp = fn = tn = 0
    for tweet_id, gold_label in gold.items():
        pred_label = predictions[tweet_id]
        if pred_label not in (0, 1) or gold_label not in (0, 1):
            raise DataError(f"tweet {tweet_id}: labels must be 0 or 1")
        if pred_label == 1:
            if gold_label == 1:
                tp += 1
            else:
                fp += 1
        else:
            if gold_label == 1:
                fn += 1
            else:
                tn += 1
    return EvalReport.from_counts(name, tp, fp, fn, tn)


def f1_from_pr(precision: float, recall: float) -> float:
    """Harmonic mean of precision and recall; 0 when both are 0."""
    for value in (precision, recall):
        if not 0.0 <= value <= 1.0:
            raise DataError(f"precision/recall must lie in [0,1], got {value!r}")
    if precision + recall == 0.0:
        return 0.0
    return 2.0 * precision * recall / (precision + recall)


def render_report(reports: list[EvalReport], fmt: str = "table") -> str:
    """Render one row per ensemble, in the given order, metrics to 4 places.

    ``table`` aligns columns for reading; ``delimited`` emits
    ``ensemble\\tprecision\\trecall\\tf1`` rows for machine diffing.
    Identical inputs produce byte-identical text.
    """
    if fmt not in REPORT_FORMATS:
        raise DataError(f"unknown report format {fmt!r}; expected one of {REPORT_FORMATS}")

    if fmt == "delimited":
        lines = ["ensemble\tprecision\trecall\tf1"]
        for rep in reports:
            lines.append(
                f"{rep.ensemble_name}\t{rep.precision:.4f}\t{rep.recall:.4f}\t{rep.f1:.4f}"
            )
        return "\n".join(lines) + "\n"

    name_width = max([len("Ensemble")] + [len(r.ensemble_name) for r in reports])
    lines = [f"{'Ensemble':<{name_width}}  Precision  Recall  F1-Score"]
    for rep in reports:
        lines.append(
            f"{rep.ensemble_name:<{name_width}}  "
            f"{rep.precision:>9.4f}  {rep.recall:>6.4f}  {rep.f1:>8.4f}"
        )
    return "\n".join(lines) + "\n"
