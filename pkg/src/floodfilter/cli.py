"""Command-line workflow: preprocess -> train/score -> fuse -> evaluate.

Exit codes: 0 success, 1 validation or data error, 2 usage error.
All file outputs are written atomically; identical inputs, flags, and seed
produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import hashlib
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path

from . import baseline, fusion, metrics, score_io
from .corpus import load_corpus
from .errors import DataError
from .fileio import atomic_write_text, iter_data_lines
from .normalize import NormalizerConfig, load_stopwords, normalize_corpus, write_normalized

_UNSAFE_FILENAME_CHARS = re.compile(r"[^\w+.-]")


def _normalizer_config(args: argparse.Namespace) -> NormalizerConfig:
    return NormalizerConfig(
        stopwords=load_stopwords(args.stopwords),
        keep_hashtag_words=not args.drop_hashtag_words,
        unicode_fold=not args.no_unicode_fold,
    )


def _add_normalizer_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--stopwords", metavar="PATH", default=None,
                        help="stopword list file (default: bundled English list)")
    parser.add_argument("--drop-hashtag-words", action="store_true",
                        help="remove hashtag words entirely instead of keeping them")
    parser.add_argument("--no-unicode-fold", action="store_true",
                        help="skip Unicode compatibility normalization")


def cmd_preprocess(args: argparse.Namespace) -> int:
    corpus = load_corpus(args.corpus, has_labels=False)
    normalized = normalize_corpus(corpus, _normalizer_config(args))
    write_normalized(normalized, args.output)
    print(f"normalized {len(normalized)} tweet(s) -> {args.output}")
    return 0


def cmd_train_baseline(args: argparse.Namespace) -> int:
    corpus = load_corpus(args.corpus, has_labels=True)
    if not corpus.labeled:
        raise DataError(f"{args.corpus}: training corpus must be fully labeled")
    normalized = normalize_corpus(corpus, _normalizer_config(args))
    model = baseline.train(normalized, corpus.labels(), smoothing=args.smoothing)
    baseline.save_model(model, args.output)
    print(f"trained baseline on {len(corpus)} tweet(s) "
          f"({len(model.vocabulary)} vocabulary tokens) -> {args.output}")
    return 0


def cmd_score(args: argparse.Namespace) -> int:
    model = baseline.load_model(args.model)
    corpus = load_corpus(args.corpus, has_labels=False)
    normalized = normalize_corpus(corpus, _normalizer_config(args))
    vectors = [baseline.predict(model, nt) for nt in normalized]
    score_set = score_io.scoreset_from_vectors(args.model_name, vectors)
    score_io.write_scores(score_set, args.output)
    print(f"scored {len(score_set)} tweet(s) as model "
          f"{score_set.model_name!r} -> {args.output}")
    return 0


def cmd_fuse(args: argparse.Namespace) -> int:
    corpus = load_corpus(args.corpus, has_labels=False)
    sets = [score_io.read_scores(path) for path in args.scores]
    aligned = score_io.align(sets, corpus.ids())
    names = tuple(sorted(s.model_name for s in sets))
    spec = fusion.EnsembleSpec(name=args.name or "+".join(names), model_names=names)
    fused = fusion.fuse_ensemble(spec, aligned.select(spec.model_names))
    fusion.write_fused(spec.name, fused, args.output)
    print(f"fused {len(fused)} tweet(s) over {len(names)} model(s) "
          f"as {spec.name!r} -> {args.output}")
    return 0


def cmd_evaluate(args: argparse.Namespace) -> int:
    ensemble_name, fused = fusion.read_fused(args.predictions)
    gold_corpus = load_corpus(args.corpus, has_labels=True)
    if not gold_corpus.labeled:
        raise DataError(f"{args.corpus}: evaluation corpus must be fully labeled")
    predictions = {fs.tweet_id: fs.label for fs in fused}
    report = metrics.evaluate(predictions, gold_corpus.labels(), name=ensemble_name)
    sys.stdout.write(metrics.render_report([report], fmt=args.format))
    return 0


@dataclass
class ExperimentConfig:
    """Resolved experiment parameters (defaults < config file < flags)."""

    corpus: str | None = None
    scores: list[str] = field(default_factory=list)
    min_ensemble_size: int = 1
    output_dir: str = "runs"
    seed: int = 0
    fmt: str = "table"

    def identity_lines(self) -> list[str]:
        """The experiment-defining fields, as stable key=value lines.

        output_dir is excluded: it says where results land, not what the
        experiment is.
        """
        lines = [f"corpus={self.corpus}"]
        lines += [f"score={path}" for path in self.scores]
        lines += [
            f"min_ensemble_size={self.min_ensemble_size}",
            f"seed={self.seed}",
            f"format={self.fmt}",
        ]
        return lines

    def run_id(self) -> str:
        digest = hashlib.sha256("\n".join(self.identity_lines()).encode("utf-8"))
        return "run-" + digest.hexdigest()[:12]


def _parse_config_file(path: str) -> ExperimentConfig:
    config = ExperimentConfig()
    if not Path(path).is_file():
        raise DataError(f"config file not found: {path}")
    for lineno, line in iter_data_lines(path):
        if "=" not in line:
            raise DataError(f"{path}: malformed line {lineno}: expected key = value")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key == "corpus":
            config.corpus = value
        elif key == "score":
            config.scores.append(value)
        elif key == "min_ensemble_size":
            config.min_ensemble_size = _parse_int(path, lineno, key, value)
        elif key == "output_dir":
            config.output_dir = value
        elif key == "seed":
            config.seed = _parse_int(path, lineno, key, value)
        elif key == "format":
            config.fmt = value
        else:
            raise DataError(f"{path}: line {lineno}: unknown config key {key!r}")
    return config


def _parse_int(path: str, lineno: int, key: str, value: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise DataError(f"{path}: line {lineno}: {key} must be an integer, got {value!r}") from None


def _resolve_experiment_config(args: argparse.Namespace) -> ExperimentConfig:
    config = _parse_config_file(args.config) if args.config else ExperimentConfig()
    if args.corpus is not None:
        config.corpus = args.corpus
    if args.scores:
        config.scores = list(args.scores)
    if args.min_ensemble_size is not None:
        config.min_ensemble_size = args.min_ensemble_size
    if args.output_dir is not None:
        config.output_dir = args.output_dir
    if args.seed is not None:
        config.seed = args.seed
    if args.format is not None:
        config.fmt = args.format

    if config.corpus is None:
        raise DataError("experiment needs a gold corpus (config 'corpus' or --corpus)")
    if not config.scores:
        raise DataError("experiment needs at least one score file (config 'score' or --scores)")
    if config.fmt not in metrics.REPORT_FORMATS:
        raise DataError(f"unknown report format {config.fmt!r}; "
                        f"expected one of {metrics.REPORT_FORMATS}")
    return config


def cmd_experiment(args: argparse.Namespace) -> int:
    config = _resolve_experiment_config(args)
    gold_corpus = load_corpus(config.corpus, has_labels=True)
    if not gold_corpus.labeled:
        raise DataError(f"{config.corpus}: experiment corpus must be fully labeled")
    gold = gold_corpus.labels()

    sets = [score_io.read_scores(path) for path in config.scores]
    aligned = score_io.align(sets, gold_corpus.ids())
    specs = fusion.enumerate_ensembles(aligned.model_names, config.min_ensemble_size)

    run_dir = Path(config.output_dir) / config.run_id()
    reports = []
    for spec in specs:
        fused = fusion.fuse_ensemble(spec, aligned.select(spec.model_names))
        safe_name = _UNSAFE_FILENAME_CHARS.sub("_", spec.name)
        fusion.write_fused(spec.name, fused, run_dir / f"predictions_{safe_name}.tsv")
        predictions = {fs.tweet_id: fs.label for fs in fused}
        reports.append(metrics.evaluate(predictions, gold, name=spec.name))

    report_text = metrics.render_report(reports, fmt=config.fmt)
    report_name = "report.tsv" if config.fmt == "delimited" else "report.txt"
    atomic_write_text(run_dir / report_name, report_text)
    atomic_write_text(run_dir / "config.txt", "\n".join(config.identity_lines()) + "\n")

    print(f"run directory: {run_dir}")
    sys.stdout.write(report_text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="floodfilter",
        description="Classify tweets as flood-relevant via score-file late fusion.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("preprocess", help="normalize a corpus to token lines")
    p.add_argument("corpus", help="input corpus file")
    p.add_argument("output", help="normalized token export to write")
    _add_normalizer_flags(p)
    p.set_defaults(func=cmd_preprocess)

    p = sub.add_parser("train-baseline", help="fit the bag-of-words baseline")
    p.add_argument("corpus", help="labeled training corpus")
    p.add_argument("output", help="model file to write")
    p.add_argument("--smoothing", type=float, default=1.0,
                   help="additive smoothing constant (default: 1.0)")
    _add_normalizer_flags(p)
    p.set_defaults(func=cmd_train_baseline)

    p = sub.add_parser("score", help="emit a score file for every tweet in a corpus")
    p.add_argument("model", help="baseline model file")
    p.add_argument("corpus", help="corpus to score")
    p.add_argument("output", help="score file to write")
    p.add_argument("--model-name", default="baseline",
                   help="model name for the score-file header (default: baseline)")
    _add_normalizer_flags(p)
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("fuse", help="fuse score files into final predictions")
    p.add_argument("corpus", help="corpus giving the tweet id order")
    p.add_argument("output", help="fused prediction file to write")
    p.add_argument("--scores", nargs="+", required=True, metavar="SCOREFILE",
                   help="score files to fuse")
    p.add_argument("--name", default=None,
                   help="ensemble name (default: sorted model names joined with +)")
    p.set_defaults(func=cmd_fuse)

    p = sub.add_parser("evaluate", help="score fused predictions against gold labels")
    p.add_argument("predictions", help="fused prediction file")
    p.add_argument("corpus", help="labeled gold corpus")
    p.add_argument("--format", choices=metrics.REPORT_FORMATS, default="table")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("experiment", help="fuse and evaluate every ensemble subset")
    p.add_argument("--config", default=None, help="key = value config file")
    p.add_argument("--corpus", default=None, help="labeled gold corpus")
    p.add_argument("--scores", nargs="+", default=None, metavar="SCOREFILE",
                   help="score files (override any config 'score' entries)")
    p.add_argument("--min-ensemble-size", type=int, default=None, metavar="N")
    p.add_argument("--output-dir", default=None)
    p.add_argument("--seed", type=int, default=None,
                   help="recorded in the run identity (no stochastic steps)")
    p.add_argument("--format", choices=metrics.REPORT_FORMATS, default=None)
    p.set_defaults(func=cmd_experiment)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DataError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
