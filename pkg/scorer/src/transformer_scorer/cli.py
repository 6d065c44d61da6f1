"""Command line: ``finetune`` a family on a labeled corpus, then
``export-scores`` for any corpus.

Exit codes: 0 success, 1 data/configuration error, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from .errors import ScorerError
from .export import export_scores
from .finetune import finetune
from .presets import MODEL_FAMILIES, resolve_preset


def cmd_finetune(args: argparse.Namespace) -> int:
    preset = resolve_preset(
        args.family,
        learning_rate=args.lr,
        batch_size=args.batch,
        epochs=args.epochs,
    )
    log = finetune(
        corpus_path=args.corpus,
        preset=preset,
        seed=args.seed,
        out_dir=args.out_dir,
        base_model=args.base_model,
        max_seq_len=args.max_seq_len,
    )
    print(
        f"fine-tuned {log['model_family']} on {log['examples']} example(s) "
        f"for {log['epochs']} epoch(s); final loss {log['final_loss']} "
        f"-> {args.out_dir}"
    )
    return 0


def cmd_export_scores(args: argparse.Namespace) -> int:
    count = export_scores(
        model_dir=args.model_dir,
        corpus_path=args.corpus,
        out_path=args.output,
        batch_size=args.batch_size,
    )
    print(f"scored {count} tweet(s) -> {args.output}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="transformer-scorer",
        description="Fine-tune transformer relevance classifiers and export score files.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("finetune", help="fine-tune one model family on a labeled corpus")
    p.add_argument("corpus", help="labeled corpus file (id<TAB>text<TAB>label)")
    p.add_argument("out_dir", help="model directory to create")
    p.add_argument("--family", required=True, choices=MODEL_FAMILIES,
                   help="model family; picks the published preset")
    p.add_argument("--lr", type=float, default=None,
                   help="learning rate (default: the family preset)")
    p.add_argument("--batch", type=int, default=None,
                   help="batch size (default: the family preset)")
    p.add_argument("--epochs", type=int, default=None,
                   help="epochs (default: the family preset)")
    p.add_argument("--seed", type=int, default=0, help="training seed (default: 0)")
    p.add_argument("--base-model", default=None, metavar="NAME_OR_PATH",
                   help="pretrained checkpoint to fine-tune; without it a "
                        "reduced-size variant is trained from scratch")
    p.add_argument("--max-seq-len", type=int, default=128,
                   help="token truncation length (default: 128)")
    p.set_defaults(func=cmd_finetune)

    p = sub.add_parser("export-scores",
                       help="write posterior probabilities for a corpus")
    p.add_argument("model_dir", help="directory written by finetune")
    p.add_argument("corpus", help="corpus file to score")
    p.add_argument("output", help="score file to write")
    p.add_argument("--batch-size", type=int, default=32)
    p.set_defaults(func=cmd_export_scores)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ScorerError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
