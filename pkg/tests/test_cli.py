import json

import pytest
from click.testing import CliRunner

from ipakit.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


REF_TEXT = (
    "clip_id\tlocale\tipa\n"
    "u1\tfi\tkisːɑ\n"
    "u2\tfi\ttɑlo\n"
    "u3\thu\tsoː\n"
)
HYP_SAME = "clip_id\tipa\nu1\tkisːɑ\nu2\ttɑlo\nu3\tsoː\n"


class TestG2PCommand:
    def test_three_lines(self, runner, tmp_path):
        src = tmp_path / "in.txt"
        src.write_text("szó\ngyerek\ncsak\n", encoding="utf-8")
        out = tmp_path / "out.txt"
        result = runner.invoke(main, ["g2p", "--locale", "hu", str(src), "-o", str(out)])
        assert result.exit_code == 0, result.output
        assert out.read_text(encoding="utf-8").splitlines() == ["soː", "ɟɛrɛk", "t͡ʃɒk"]

    def test_maltese_fixture(self, runner):
        result = runner.invoke(main, ["g2p", "--locale", "mt", "-"], input="xemx\n")
        assert result.exit_code == 0
        assert result.output.strip() == "ʃemʃ"

    def test_unknown_locale_usage_error(self, runner):
        result = runner.invoke(main, ["g2p", "--locale", "zz", "-"], input="x\n")
        assert result.exit_code == 2
        assert "available" in result.output
        assert "hu" in result.output


class TestSegmentCommand:
    def test_basic(self, runner):
        result = runner.invoke(main, ["segment", "kʰæt"])
        assert result.exit_code == 0
        assert result.output.strip() == "kʰ æ t"

    def test_strict_failure_nonzero(self, runner):
        result = runner.invoke(main, ["segment", "ka9"])
        assert result.exit_code != 0

    def test_lenient_report(self, runner, tmp_path):
        report = tmp_path / "seg.jsonl"
        result = runner.invoke(main, ["segment", "ka9", "--lenient", "--report", str(report)])
        assert result.exit_code == 0
        record = json.loads(report.read_text().splitlines()[0])
        assert record["phones"] == ["k", "a"]
        assert record["residue"] == [{"position": 2, "char": "9"}]


class TestEvalCommand:
    def test_identical_zero(self, runner, tmp_path):
        ref = tmp_path / "ref.tsv"
        hyp = tmp_path / "hyp.tsv"
        ref.write_text(REF_TEXT, encoding="utf-8")
        hyp.write_text(HYP_SAME, encoding="utf-8")
        report = tmp_path / "report.jsonl"
        result = runner.invoke(
            main, ["eval", "--ref", str(ref), "--hyp", str(hyp), "--report", str(report)]
        )
        assert result.exit_code == 0, result.output
        assert "0.000" in result.output
        records = [json.loads(line) for line in report.read_text().splitlines()]
        overall = records[-1]
        assert overall["locale"] == "overall"
        assert overall["per_pct"] == 0.0

    def test_report_round_trips(self, runner, tmp_path):
        ref = tmp_path / "ref.tsv"
        hyp = tmp_path / "hyp.tsv"
        ref.write_text(REF_TEXT, encoding="utf-8")
        hyp.write_text("clip_id\tipa\nu1\tkisːɑː\nu2\ttɑlo\nu3\tsoː\n", encoding="utf-8")
        report = tmp_path / "report.jsonl"
        result = runner.invoke(
            main, ["eval", "--ref", str(ref), "--hyp", str(hyp), "--report", str(report)]
        )
        assert result.exit_code == 0
        for line in report.read_text().splitlines():
            record = json.loads(line)
            assert "locale" in record

    def test_missing_id_errors(self, runner, tmp_path):
        ref = tmp_path / "ref.tsv"
        hyp = tmp_path / "hyp.tsv"
        ref.write_text(REF_TEXT, encoding="utf-8")
        hyp.write_text("clip_id\tipa\nu1\tkisːɑ\n", encoding="utf-8")
        result = runner.invoke(main, ["eval", "--ref", str(ref), "--hyp", str(hyp)])
        assert result.exit_code != 0
        assert "u2" in result.output and "u3" in result.output


class TestIaaCommand:
    def test_identical_annotators(self, runner, tmp_path):
        a = tmp_path / "a.tsv"
        b = tmp_path / "b.tsv"
        a.write_text(REF_TEXT, encoding="utf-8")
        b.write_text(HYP_SAME, encoding="utf-8")
        report = tmp_path / "iaa.jsonl"
        result = runner.invoke(main, ["iaa", "--a", str(a), "--b", str(b), "--report", str(report)])
        assert result.exit_code == 0
        assert "0.000" in result.output

    def test_disjoint_keys_error(self, runner, tmp_path):
        a = tmp_path / "a.tsv"
        b = tmp_path / "b.tsv"
        a.write_text(REF_TEXT, encoding="utf-8")
        b.write_text("clip_id\tipa\nzz\tk\n", encoding="utf-8")
        result = runner.invoke(main, ["iaa", "--a", str(a), "--b", str(b)])
        assert result.exit_code != 0


class TestPrepareCommand:
    def test_prepare_and_summary(self, runner, synthetic_corpus, tmp_path):
        config_path = tmp_path / "prep.cfg"
        config_path.write_text(
            "\n".join(
                [
                    f"corpus_tsv = {synthetic_corpus.tsv_path}",
                    f"out_dir = {tmp_path / 'out'}",
                    f"audio_root = {synthetic_corpus.audio_dir}",
                    "n_train = 20",
                    "n_valid = 5",
                    "n_test = 5",
                    "vocab_mode = observed",
                ]
            )
            + "\n",
            encoding="utf-8",
        )
        result = runner.invoke(main, ["prepare", "--config", str(config_path)])
        assert result.exit_code == 0, result.output
        assert "train" in result.output
        assert (tmp_path / "out" / "train.tsv").exists()
        assert (tmp_path / "out" / "vocab.txt").exists()
        assert (tmp_path / "out" / "prepare_log.json").exists()

    def test_bad_config_nonzero(self, runner, tmp_path):
        config_path = tmp_path / "bad.cfg"
        config_path.write_text("junk = 1\n", encoding="utf-8")
        result = runner.invoke(main, ["prepare", "--config", str(config_path)])
        assert result.exit_code != 0


class TestAblateCommand:
    def test_small_grid(self, runner, synthetic_corpus, tmp_path):
        config_path = tmp_path / "ablate.cfg"
        config_path.write_text(
            "\n".join(
                [
                    f"corpus_tsv = {synthetic_corpus.tsv_path}",
                    f"out_dir = {tmp_path / 'base'}",
                    f"audio_root = {synthetic_corpus.audio_dir}",
                    "n_train = 5",
                    "n_valid = 2",
                    "n_test = 2",
                    "vocab_mode = observed",
                    "ablate_sizes = 1k",
                    "ablate_quality_filter = on,off",
                    "ablate_language_sets = fi; fi,hu",
                ]
            )
            + "\n",
            encoding="utf-8",
        )
        report = tmp_path / "ablate.jsonl"
        result = runner.invoke(
            main,
            ["ablate", "--config", str(config_path), "--out-root", str(tmp_path / "cells"),
             "--report", str(report)],
        )
        assert result.exit_code == 0, result.output
        records = [json.loads(line) for line in report.read_text().splitlines()]
        assert len(records) == 4
        assert {r["status"] for r in records} == {"ok"}

    def test_empty_grid_empty_report(self, runner, synthetic_corpus, tmp_path):
        config_path = tmp_path / "empty.cfg"
        config_path.write_text(
            "\n".join(
                [
                    f"corpus_tsv = {synthetic_corpus.tsv_path}",
                    f"out_dir = {tmp_path / 'base'}",
                    f"audio_root = {synthetic_corpus.audio_dir}",
                    "ablate_sizes =",
                ]
            )
            + "\n",
            encoding="utf-8",
        )
        report = tmp_path / "empty.jsonl"
        result = runner.invoke(main, ["ablate", "--config", str(config_path), "--report", str(report)])
        assert result.exit_code == 0, result.output
        assert report.read_text().strip() == ""
