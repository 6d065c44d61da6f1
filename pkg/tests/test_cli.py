"""End-to-end tests for the command-line interface.

Exit-code contracts are asserted through real subprocess invocations of
``python -m floodfilter``.
"""

from __future__ import annotations

import subprocess
import sys

import pytest

from floodfilter import score_io
from floodfilter.score_io import ScoreVector

from conftest import write_tsv


def run_cli(*argv: str, cwd=None):
    return subprocess.run(
        [sys.executable, "-m", "floodfilter", *argv],
        capture_output=True,
        text=True,
        cwd=cwd,
    )


def write_score_file(path, name: str, pairs: list[tuple[str, float]]) -> None:
    score_io.write_scores(
        score_io.scoreset_from_vectors(
            name, [ScoreVector(i, 1.0 - p, p) for i, p in pairs]
        ),
        path,
    )


@pytest.fixture(scope="module")
def pipeline(tmp_path_factory):
    """One full preprocess/train/score/fuse run shared by the flow tests."""
    root = tmp_path_factory.mktemp("pipeline")
    corpus = root / "corpus.tsv"
    rows = []
    for i in range(6):
        rows.append((f"p{i}", f"flood water warning zone{i} rising", "1"))
        rows.append((f"n{i}", f"sunny picnic music zone{i} fun", "0"))
    write_tsv(corpus, rows)

    model = root / "model.json"
    alpha = root / "alpha.tsv"
    bravo = root / "bravo.tsv"
    fused = root / "fused.tsv"

    steps = [
        run_cli("train-baseline", str(corpus), str(model)),
        run_cli("score", str(model), str(corpus), str(alpha), "--model-name", "alpha"),
        run_cli("score", str(model), str(corpus), str(bravo), "--model-name", "bravo"),
        run_cli("fuse", str(corpus), str(fused), "--scores", str(alpha), str(bravo)),
    ]
    for step in steps:
        assert step.returncode == 0, step.stderr
    return {
        "root": root,
        "corpus": corpus,
        "model": model,
        "alpha": alpha,
        "bravo": bravo,
        "fused": fused,
    }


class TestUsageErrors:
    def test_no_arguments(self):
        assert run_cli().returncode == 2

    def test_unknown_subcommand(self):
        result = run_cli("frobnicate")
        assert result.returncode == 2

    def test_missing_positional(self):
        assert run_cli("preprocess").returncode == 2

    def test_bad_format_choice(self, pipeline):
        result = run_cli(
            "evaluate", str(pipeline["fused"]), str(pipeline["corpus"]),
            "--format", "yaml",
        )
        assert result.returncode == 2


class TestDataErrors:
    def test_missing_corpus_file(self, tmp_path):
        result = run_cli(
            "preprocess", str(tmp_path / "absent.tsv"), str(tmp_path / "out.tsv")
        )
        assert result.returncode == 1
        assert "error:" in result.stderr
        assert "absent.tsv" in result.stderr

    def test_malformed_line_numbered(self, tmp_path):
        corpus = tmp_path / "bad.tsv"
        lines = [f"t{i}\ttext {i}\t0" for i in range(16)]
        lines.append("onlyanid")
        corpus.write_text("\n".join(lines) + "\n", encoding="utf-8")
        result = run_cli("preprocess", str(corpus), str(tmp_path / "out.tsv"))
        assert result.returncode == 1
        assert "line 17" in result.stderr

    def test_train_single_class(self, tmp_path):
        corpus = tmp_path / "one.tsv"
        write_tsv(corpus, [("a", "x", "1"), ("b", "y", "1")])
        result = run_cli("train-baseline", str(corpus), str(tmp_path / "m.json"))
        assert result.returncode == 1
        assert "both classes" in result.stderr

    def test_train_partial_labels(self, tmp_path):
        corpus = tmp_path / "part.tsv"
        corpus.write_text("a\tx\t1\nb\ty\n", encoding="utf-8")
        result = run_cli("train-baseline", str(corpus), str(tmp_path / "m.json"))
        assert result.returncode == 1
        assert "labeled" in result.stderr

    def test_fuse_missing_score_names_model_and_tweet(self, tmp_path):
        corpus = tmp_path / "c.tsv"
        write_tsv(corpus, [("t1", "x", "1"), ("t2", "y", "0")])
        scores = tmp_path / "s.tsv"
        write_score_file(scores, "alpha", [("t1", 0.9)])
        result = run_cli(
            "fuse", str(corpus), str(tmp_path / "f.tsv"), "--scores", str(scores)
        )
        assert result.returncode == 1
        assert "alpha" in result.stderr
        assert "t2" in result.stderr

    def test_corrupt_score_file(self, tmp_path):
        corpus = tmp_path / "c.tsv"
        write_tsv(corpus, [("t1", "x", "1")])
        scores = tmp_path / "s.tsv"
        scores.write_text("t1\t0.5\t0.5\n", encoding="utf-8")
        result = run_cli(
            "fuse", str(corpus), str(tmp_path / "f.tsv"), "--scores", str(scores)
        )
        assert result.returncode == 1
        assert "#model=" in result.stderr


class TestPreprocess:
    def test_writes_one_line_per_tweet(self, tmp_path):
        corpus = tmp_path / "c.tsv"
        write_tsv(
            corpus,
            [
                ("t1", "@anna Flood warning in Venice!! http://t.co/ab \U0001F62D"),
                ("t2", "http://only.a.link"),
            ],
        )
        out = tmp_path / "norm.tsv"
        result = run_cli("preprocess", str(corpus), str(out))
        assert result.returncode == 0
        lines = out.read_text(encoding="utf-8").splitlines()
        assert lines == ["t1\tflood warning venice", "t2\t"]

    def test_normalizer_flags(self, tmp_path):
        corpus = tmp_path / "c.tsv"
        write_tsv(corpus, [("t1", "#flood rescue")])
        out = tmp_path / "norm.tsv"
        result = run_cli(
            "preprocess", str(corpus), str(out), "--drop-hashtag-words"
        )
        assert result.returncode == 0
        assert out.read_text(encoding="utf-8") == "t1\trescue\n"

    def test_custom_stopwords(self, tmp_path):
        corpus = tmp_path / "c.tsv"
        write_tsv(corpus, [("t1", "water level high")])
        stop = tmp_path / "stop.txt"
        stop.write_text("water\n", encoding="utf-8")
        out = tmp_path / "norm.tsv"
        result = run_cli(
            "preprocess", str(corpus), str(out), "--stopwords", str(stop)
        )
        assert result.returncode == 0
        assert out.read_text(encoding="utf-8") == "t1\tlevel high\n"


class TestScoreAndFuse:
    def test_score_file_is_valid_and_complete(self, pipeline):
        loaded = score_io.read_scores(pipeline["alpha"])
        assert loaded.model_name == "alpha"
        ids = {line.split("\t")[0]
               for line in pipeline["corpus"].read_text("utf-8").splitlines()}
        assert set(loaded.scores) == ids

    def test_fused_header_uses_sorted_model_names(self, pipeline):
        from floodfilter.fusion import read_fused

        name, rows = read_fused(pipeline["fused"])
        assert name == "alpha+bravo"
        assert len(rows) == 12

    def test_evaluate_table(self, pipeline):
        result = run_cli("evaluate", str(pipeline["fused"]), str(pipeline["corpus"]))
        assert result.returncode == 0
        lines = result.stdout.splitlines()
        assert lines[0].split() == ["Ensemble", "Precision", "Recall", "F1-Score"]
        assert lines[1].startswith("alpha+bravo")
        # The training corpus is linearly separable, so self-eval is perfect.
        assert "1.0000" in lines[1]

    def test_evaluate_delimited(self, pipeline):
        result = run_cli(
            "evaluate", str(pipeline["fused"]), str(pipeline["corpus"]),
            "--format", "delimited",
        )
        assert result.returncode == 0
        assert result.stdout.startswith("ensemble\tprecision\trecall\tf1\n")


@pytest.fixture
def experiment_inputs(tmp_path):
    corpus = tmp_path / "gold.tsv"
    write_tsv(
        corpus,
        [
            ("t1", "flood", "1"),
            ("t2", "rain", "1"),
            ("t3", "sun", "0"),
            ("t4", "beach", "0"),
        ],
    )
    pairs = {
        "alpha": [("t1", 0.9), ("t2", 0.8), ("t3", 0.2), ("t4", 0.1)],
        "bravo": [("t1", 0.7), ("t2", 0.6), ("t3", 0.4), ("t4", 0.2)],
        "charlie": [("t1", 0.4), ("t2", 0.9), ("t3", 0.3), ("t4", 0.6)],
    }
    paths = {}
    for name, scores in pairs.items():
        paths[name] = tmp_path / f"{name}.tsv"
        write_score_file(paths[name], name, scores)
    return tmp_path, corpus, paths


class TestExperiment:
    def test_min_size_two_grid(self, experiment_inputs):
        tmp_path, corpus, paths = experiment_inputs
        result = run_cli(
            "experiment",
            "--corpus", str(corpus),
            "--scores", *[str(p) for p in paths.values()],
            "--min-ensemble-size", "2",
            "--output-dir", str(tmp_path / "runs"),
            "--format", "delimited",
        )
        assert result.returncode == 0
        rows = [
            line for line in result.stdout.splitlines()
            if "\t" in line and not line.startswith("ensemble")
        ]
        assert [r.split("\t")[0] for r in rows] == [
            "alpha+bravo", "alpha+charlie", "bravo+charlie", "alpha+bravo+charlie",
        ]

    def test_run_directory_contents(self, experiment_inputs):
        tmp_path, corpus, paths = experiment_inputs
        result = run_cli(
            "experiment",
            "--corpus", str(corpus),
            "--scores", *[str(p) for p in paths.values()],
            "--min-ensemble-size", "2",
            "--output-dir", str(tmp_path / "runs"),
        )
        assert result.returncode == 0
        run_line = result.stdout.splitlines()[0]
        assert run_line.startswith("run directory: ")
        from pathlib import Path

        run_dir = Path(run_line.removeprefix("run directory: "))
        assert run_dir.name.startswith("run-")
        names = {p.name for p in run_dir.iterdir()}
        assert names == {
            "config.txt",
            "predictions_alpha+bravo.tsv",
            "predictions_alpha+bravo+charlie.tsv",
            "predictions_alpha+charlie.tsv",
            "predictions_bravo+charlie.tsv",
            "report.txt",
        }

    def test_deterministic_across_output_dirs(self, experiment_inputs):
        tmp_path, corpus, paths = experiment_inputs
        outputs = []
        for sub in ("runs_a", "runs_b"):
            result = run_cli(
                "experiment",
                "--corpus", str(corpus),
                "--scores", *[str(p) for p in paths.values()],
                "--output-dir", str(tmp_path / sub),
                "--format", "delimited",
            )
            assert result.returncode == 0
            from pathlib import Path

            run_dir = Path(
                result.stdout.splitlines()[0].removeprefix("run directory: ")
            )
            outputs.append(run_dir)

        a, b = outputs
        assert a.name == b.name  # identity excludes the output directory
        for path_a in sorted(a.iterdir()):
            path_b = b / path_a.name
            assert path_a.read_bytes() == path_b.read_bytes()

    def test_config_file_with_flag_override(self, experiment_inputs):
        tmp_path, corpus, paths = experiment_inputs
        cfg = tmp_path / "exp.cfg"
        score_lines = "\n".join(f"score = {p}" for p in paths.values())
        cfg.write_text(
            f"# experiment\ncorpus = {corpus}\n{score_lines}\n"
            f"min_ensemble_size = 3\nformat = delimited\n"
            f"output_dir = {tmp_path / 'runs'}\n",
            encoding="utf-8",
        )
        base = run_cli("experiment", "--config", str(cfg))
        assert base.returncode == 0
        base_rows = [l for l in base.stdout.splitlines() if "\t" in l][1:]
        assert len(base_rows) == 1  # only the triple at min size 3

        overridden = run_cli(
            "experiment", "--config", str(cfg), "--min-ensemble-size", "2"
        )
        assert overridden.returncode == 0
        over_rows = [l for l in overridden.stdout.splitlines() if "\t" in l][1:]
        assert len(over_rows) == 4

    def test_unknown_config_key(self, experiment_inputs):
        tmp_path, corpus, paths = experiment_inputs
        cfg = tmp_path / "exp.cfg"
        cfg.write_text("corpus = x\nbogus_key = 1\n", encoding="utf-8")
        result = run_cli("experiment", "--config", str(cfg))
        assert result.returncode == 1
        assert "bogus_key" in result.stderr

    def test_missing_corpus_setting(self, experiment_inputs):
        tmp_path, _, paths = experiment_inputs
        result = run_cli(
            "experiment", "--scores", *[str(p) for p in paths.values()]
        )
        assert result.returncode == 1
        assert "corpus" in result.stderr

    def test_unsafe_model_name_sanitized_in_filename(self, tmp_path):
        corpus = tmp_path / "gold.tsv"
        write_tsv(corpus, [("t1", "x", "1"), ("t2", "y", "0")])
        weird = tmp_path / "weird.tsv"
        write_score_file(weird, "model/v2", [("t1", 0.9), ("t2", 0.1)])
        result = run_cli(
            "experiment",
            "--corpus", str(corpus),
            "--scores", str(weird),
            "--output-dir", str(tmp_path / "runs"),
        )
        assert result.returncode == 0
        from pathlib import Path

        run_dir = Path(result.stdout.splitlines()[0].removeprefix("run directory: "))
        assert (run_dir / "predictions_model_v2.tsv").is_file()
