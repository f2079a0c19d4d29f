from __future__ import annotations

import math
import wave
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pytest

from ipakit.g2p import packaged_lexicon
from ipakit.inventory import default_inventory

_ACCEPTANCE_RESULTS: dict[str, str] = {}


@pytest.fixture(scope="session")
def inv():
    return default_inventory()


def write_sine_wav(path: Path, duration_s: float, rate: int = 16000,
                   freq: float = 220.0, amplitude: float = 0.3,
                   channels: int = 1) -> None:
    n = int(round(duration_s * rate))
    t = np.arange(n) / rate
    signal = amplitude * np.sin(2 * math.pi * freq * t)
    pcm = (signal * 32767.0).round().astype("<i2")
    if channels == 2:
        pcm = np.column_stack([pcm, pcm]).ravel()
    with wave.open(str(path), "wb") as wav:
        wav.setnchannels(channels)
        wav.setsampwidth(2)
        wav.setframerate(rate)
        wav.writeframes(pcm.tobytes())


@dataclass
class SyntheticCorpus:
    root: Path
    tsv_path: Path
    audio_dir: Path
    locales: tuple[str, ...]
    rows_per_locale: int
    long_clip_ids: set[str]
    downvoted_clip_ids: set[str]


def build_synthetic_corpus(
    root: Path,
    locales: tuple[str, ...] = ("fi", "hu", "mt"),
    rows_per_locale: int = 40,
    n_long: int = 2,
    n_downvoted: int = 2,
) -> SyntheticCorpus:
    """CommonVoice-style corpus whose sentences come from the shipped
    lexicons, with a known set of rows violating each filter."""
    audio_dir = root / "clips"
    audio_dir.mkdir(parents=True, exist_ok=True)
    columns = ["client_id", "path", "sentence", "up_votes", "down_votes",
               "age", "gender", "accents", "locale", "segment"]
    lines = ["\t".join(columns)]
    long_ids: set[str] = set()
    downvoted_ids: set[str] = set()
    for locale in locales:
        words = [w for w, _ in packaged_lexicon(locale)]
        for i in range(rows_per_locale):
            clip_id = f"{locale}_{i:04d}"
            rel = f"{clip_id}.wav"
            sentence = " ".join(words[(i + k) % len(words)] for k in range(3))
            down = 0
            duration = 0.05
            if i < n_long:
                duration = 6.5
                long_ids.add(clip_id)
            elif i < n_long + n_downvoted:
                down = 2
                downvoted_ids.add(clip_id)
            write_sine_wav(audio_dir / rel, duration)
            lines.append(
                "\t".join(
                    ["c" + clip_id, rel, sentence, "3", str(down), "", "", "", locale, ""]
                )
            )
    tsv_path = root / "corpus.tsv"
    tsv_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return SyntheticCorpus(
        root=root,
        tsv_path=tsv_path,
        audio_dir=audio_dir,
        locales=locales,
        rows_per_locale=rows_per_locale,
        long_clip_ids=long_ids,
        downvoted_clip_ids=downvoted_ids,
    )


@pytest.fixture(scope="session")
def synthetic_corpus(tmp_path_factory) -> SyntheticCorpus:
    return build_synthetic_corpus(tmp_path_factory.mktemp("corpus"))


def pytest_runtest_logreport(report):
    if "test_acceptance" in report.nodeid:
        if report.when == "call":
            _ACCEPTANCE_RESULTS[report.nodeid] = report.outcome
        elif report.when == "setup" and report.outcome != "passed":
            _ACCEPTANCE_RESULTS[report.nodeid] = report.outcome


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for nodeid in sorted(_ACCEPTANCE_RESULTS):
        outcome = _ACCEPTANCE_RESULTS[nodeid]
        status = "PASS" if outcome == "passed" else "FAIL"
        name = nodeid.split("::")[-1]
        terminalreporter.write_line(f"{status}  {name}")
