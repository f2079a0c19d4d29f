import subprocess
from pathlib import Path

import torch

from ipatrainer.config import TrainConfig
from ipatrainer.data import read_vocab
from ipatrainer.decode import decode_manifest, greedy_ids
from ipatrainer.model import build_model
from ipatrainer.train import train


def read_losses(path: str) -> list[float]:
    lines = Path(path).read_text().splitlines()
    return [float(line.split("\t")[1]) for line in lines]


class TestOverfit:
    def test_fifty_steps_reduce_loss(self, trained):
        _, result = trained
        losses = read_losses(result["loss_log"])
        assert len(losses) == 50
        assert losses[-1] <= 0.8 * losses[0], f"first={losses[0]}, last={losses[-1]}"

    def test_moving_average_non_increasing(self, trained):
        _, result = trained
        losses = read_losses(result["loss_log"])
        window = 5
        smoothed = [
            sum(losses[i : i + window]) / window for i in range(len(losses) - window + 1)
        ]
        for earlier, later in zip(smoothed, smoothed[1:]):
            assert later <= earlier * 1.02, "smoothed loss increased materially"


class TestZeroEpochs:
    def test_checkpoint_is_initialization(self, toy_dataset, tmp_path):
        config = TrainConfig(
            train_manifest=str(toy_dataset.manifest),
            vocab_path=str(toy_dataset.vocab),
            output_dir=str(tmp_path / "zero"),
            epochs=0,
            batch_size=10,
            seed=11,
        )
        result = train(config)
        assert Path(result["loss_log"]).read_text() == ""
        payload = torch.load(result["checkpoint"], map_location="cpu", weights_only=False)
        vocab = read_vocab(toy_dataset.vocab)
        reference = build_model("tiny", len(vocab), vocab.blank_index, "mean", seed=11)
        for name, tensor in reference.state_dict().items():
            assert torch.equal(tensor, payload["model_state"][name]), name


class TestGreedyDecode:
    def test_collapse_and_blank_removal(self):
        logits = torch.tensor(
            [[9, 0, 0], [9, 0, 0], [0, 9, 0], [0, 9, 0], [9, 0, 0], [0, 0, 9], [0, 0, 9]],
            dtype=torch.float,
        )
        assert greedy_ids(logits, blank_index=0) == [1, 2]

    def test_repeat_after_blank_kept(self):
        logits = torch.tensor(
            [[0, 9, 0], [9, 0, 0], [0, 9, 0]], dtype=torch.float
        )
        assert greedy_ids(logits, blank_index=0) == [1, 1]


class TestDecodeArtifacts:
    def test_hypotheses_are_vocab_tokens(self, trained, toy_dataset, tmp_path):
        _, result = trained
        hyp_path = tmp_path / "hyp.tsv"
        decoded, failed = decode_manifest(result["checkpoint"], toy_dataset.manifest, hyp_path)
        assert decoded == 10
        assert failed == 0
        vocab = read_vocab(toy_dataset.vocab)
        lines = hyp_path.read_text(encoding="utf-8").splitlines()
        assert lines[0] == "clip_id\tipa"
        for line in lines[1:]:
            clip_id, ipa = (line.split("\t") + [""])[:2]
            assert "<blank>" not in ipa
            vocab.encode(ipa, context=clip_id)  # must re-tokenize cleanly

    def test_silence_decodes_near_empty(self, trained, toy_dataset, tmp_path):
        _, result = trained
        hyp_path = tmp_path / "hyp_silence.tsv"
        decode_manifest(result["checkpoint"], toy_dataset.manifest, hyp_path)
        rows = dict(
            line.split("\t") for line in hyp_path.read_text().splitlines()[1:]
        )
        assert len(rows["toy_08"]) <= 2
        assert len(rows["toy_09"]) <= 2

    def test_unreadable_audio_skipped_not_fatal(self, trained, toy_dataset, tmp_path):
        _, result = trained
        manifest = tmp_path / "broken.tsv"
        manifest.write_text(
            "clip_id\taudio_path\tlocale\tipa\n"
            f"ok\t{toy_dataset.clips / 'toy_00.wav'}\txx\tka\n"
            f"broken\t{tmp_path / 'missing.wav'}\txx\tta\n",
            encoding="utf-8",
        )
        hyp_path = tmp_path / "hyp_broken.tsv"
        decoded, failed = decode_manifest(result["checkpoint"], manifest, hyp_path)
        assert decoded == 1
        assert failed == 1

    def test_hypothesis_scoreable_by_toolkit_eval(self, trained, toy_dataset, tmp_path):
        _, result = trained
        hyp_path = tmp_path / "hyp_eval.tsv"
        decode_manifest(result["checkpoint"], toy_dataset.manifest, hyp_path)
        report = tmp_path / "report.jsonl"
        proc = subprocess.run(
            [
                "ipakit", "eval",
                "--ref", str(toy_dataset.manifest),
                "--hyp", str(hyp_path),
                "--report", str(report),
            ],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0, proc.stderr + proc.stdout
        assert report.exists()
        assert "Overall" in proc.stdout
