from __future__ import annotations

import math
import wave
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pytest

RATE = 16000
PHONE_TONES = {"a": 300.0, "k": 1000.0, "t": 2200.0}
PHONE_SECONDS = 0.12

# (clip_id, label); empty labels are silence clips.
TOY_UTTERANCES = [
    ("toy_00", "ka"),
    ("toy_01", "ta"),
    ("toy_02", "kat"),
    ("toy_03", "ak"),
    ("toy_04", "ta"),
    ("toy_05", "tak"),
    ("toy_06", "a"),
    ("toy_07", "kata"),
    ("toy_08", ""),
    ("toy_09", ""),
]


def synth(label: str) -> np.ndarray:
    if not label:
        return np.zeros(int(RATE * 0.3), dtype=np.float64)
    pieces = []
    n = int(RATE * PHONE_SECONDS)
    for phone in label:
        t = np.arange(n) / RATE
        tone = 0.4 * np.sin(2 * math.pi * PHONE_TONES[phone] * t)
        envelope = np.minimum(1.0, np.minimum(np.arange(n), np.arange(n)[::-1]) / (0.01 * RATE))
        pieces.append(tone * envelope)
    return np.concatenate(pieces)


def write_wav(path: Path, samples: np.ndarray) -> None:
    pcm = (np.clip(samples, -1, 1) * 32767).round().astype("<i2")
    with wave.open(str(path), "wb") as wav:
        wav.setnchannels(1)
        wav.setsampwidth(2)
        wav.setframerate(RATE)
        wav.writeframes(pcm.tobytes())


@dataclass
class ToyDataset:
    root: Path
    manifest: Path
    vocab: Path
    clips: Path


def build_toy_dataset(root: Path) -> ToyDataset:
    clips = root / "clips"
    clips.mkdir(parents=True, exist_ok=True)
    manifest_lines = ["clip_id\taudio_path\tlocale\tipa"]
    for clip_id, label in TOY_UTTERANCES:
        path = clips / f"{clip_id}.wav"
        write_wav(path, synth(label))
        manifest_lines.append(f"{clip_id}\t{path}\txx\t{label}")
    manifest = root / "train.tsv"
    manifest.write_text("\n".join(manifest_lines) + "\n", encoding="utf-8")
    vocab = root / "vocab.txt"
    vocab.write_text(
        "\n".join(["<blank>\t0", "<pad>\t1", "<unk>\t2", "a\t3", "k\t4", "t\t5"]) + "\n",
        encoding="utf-8",
    )
    return ToyDataset(root=root, manifest=manifest, vocab=vocab, clips=clips)


@pytest.fixture(scope="session")
def toy_dataset(tmp_path_factory) -> ToyDataset:
    return build_toy_dataset(tmp_path_factory.mktemp("toy"))


@pytest.fixture(scope="session")
def trained(toy_dataset, tmp_path_factory):
    """One 50-step training run shared by the training and decoding tests."""
    from ipatrainer.config import TrainConfig
    from ipatrainer.train import train

    out_dir = tmp_path_factory.mktemp("run")
    config = TrainConfig(
        train_manifest=str(toy_dataset.manifest),
        vocab_path=str(toy_dataset.vocab),
        output_dir=str(out_dir),
        warmup_steps=0,
        epochs=50,
        batch_size=10,
        max_steps=50,
        seed=3,
    )
    result = train(config)
    return config, result
