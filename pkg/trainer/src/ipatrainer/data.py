"""Manifest, vocabulary, and audio loading for training and decoding.

The file formats are the toolkit's external interfaces: manifests are
TSV with clip_id/audio_path/locale/ipa columns, vocabularies map
``token<TAB>index`` with ``<blank>`` at 0, ``<pad>`` at 1, ``<unk>``
at 2. Labels are tokenized against the vocabulary by greedy longest
match, mirroring how the vocabulary was built.
"""
from __future__ import annotations

import wave
from dataclasses import dataclass
from pathlib import Path

import numpy as np

BLANK_TOKEN = "<blank>"
PAD_TOKEN = "<pad>"
UNK_TOKEN = "<unk>"
SPECIALS = (BLANK_TOKEN, PAD_TOKEN, UNK_TOKEN)

TARGET_RATE = 16000


class DataError(ValueError):
    pass


class VocabularyMismatchError(DataError):
    """A manifest label contains a phone the vocabulary lacks."""


@dataclass(frozen=True)
class ManifestEntry:
    clip_id: str
    audio_path: str
    locale: str
    ipa: str


def read_manifest(path: str | Path) -> list[ManifestEntry]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    if not lines:
        raise DataError(f"{path}: empty manifest")
    header = lines[0].split("\t")
    required = ("clip_id", "audio_path", "locale", "ipa")
    missing = [c for c in required if c not in header]
    if missing:
        raise DataError(f"{path}: missing manifest columns: {', '.join(missing)}")
    index = {name: header.index(name) for name in required}
    entries = []
    for line in lines[1:]:
        if not line.strip():
            continue
        cells = line.split("\t")
        entries.append(
            ManifestEntry(
                cells[index["clip_id"]],
                cells[index["audio_path"]],
                cells[index["locale"]],
                cells[index["ipa"]],
            )
        )
    return entries


class Vocabulary:
    def __init__(self, token_to_index: dict[str, int]):
        for special, expected in ((BLANK_TOKEN, 0), (PAD_TOKEN, 1), (UNK_TOKEN, 2)):
            if token_to_index.get(special) != expected:
                raise DataError(f"vocabulary must map {special} to {expected}")
        self.token_to_index = dict(token_to_index)
        self.index_to_token = {i: t for t, i in token_to_index.items()}
        self._phones = [t for t in token_to_index if t not in SPECIALS]
        self._max_len = max((len(t) for t in self._phones), default=0)

    def __len__(self) -> int:
        return len(self.token_to_index)

    @property
    def blank_index(self) -> int:
        return self.token_to_index[BLANK_TOKEN]

    def encode(self, ipa: str, *, context: str = "label") -> list[int]:
        """Greedy longest-match tokenization into vocabulary indices."""
        ids: list[int] = []
        i = 0
        while i < len(ipa):
            match = None
            for length in range(min(self._max_len, len(ipa) - i), 0, -1):
                candidate = ipa[i : i + length]
                if candidate in self.token_to_index and candidate not in SPECIALS:
                    match = candidate
                    break
            if match is None:
                raise VocabularyMismatchError(
                    f"{context}: phone {_grapheme_at(ipa, i)!r} at position {i} "
                    f"is not in the vocabulary"
                )
            ids.append(self.token_to_index[match])
            i += len(match)
        return ids

    def decode_tokens(self, ids: list[int]) -> list[str]:
        return [self.index_to_token[i] for i in ids]


def _grapheme_at(text: str, position: int) -> str:
    """Base character plus its combining marks, for readable errors."""
    import unicodedata

    end = position + 1
    while end < len(text) and unicodedata.combining(text[end]):
        end += 1
    return text[position:end]


def read_vocab(path: str | Path) -> Vocabulary:
    token_to_index: dict[str, int] = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        token, _, index = line.partition("\t")
        token_to_index[token] = int(index)
    return Vocabulary(token_to_index)


def load_audio(path: str | Path) -> np.ndarray:
    """16 kHz mono float32 samples from a PCM wave file."""
    try:
        with wave.open(str(path), "rb") as wav:
            channels = wav.getnchannels()
            width = wav.getsampwidth()
            rate = wav.getframerate()
            raw = wav.readframes(wav.getnframes())
    except (wave.Error, EOFError, OSError) as exc:
        raise DataError(f"{path}: {exc}") from exc
    if rate != TARGET_RATE:
        raise DataError(f"{path}: expected {TARGET_RATE} Hz audio, got {rate} Hz")
    if width != 2:
        raise DataError(f"{path}: expected 16-bit PCM, got width {width}")
    data = np.frombuffer(raw, dtype="<i2").astype(np.float32) / 32768.0
    if channels > 1:
        data = data.reshape(-1, channels).mean(axis=1)
    return data


def normalize_waveform(x: np.ndarray) -> np.ndarray:
    """Zero-mean unit-variance scaling, as the encoder expects."""
    return (x - x.mean()) / (x.std() + 1e-7)


@dataclass(frozen=True)
class Example:
    clip_id: str
    samples: np.ndarray
    label_ids: list[int]


def load_training_set(
    manifest_path: str | Path,
    vocab: Vocabulary,
    audio_root: str = "",
) -> list[Example]:
    """Load and validate every training example up front.

    Any label phone missing from the vocabulary aborts here, before any
    training work starts.
    """
    entries = read_manifest(manifest_path)
    if not entries:
        raise DataError(f"{manifest_path}: no rows")
    examples = []
    for entry in entries:
        label_ids = vocab.encode(entry.ipa, context=f"{entry.clip_id}")
        path = Path(audio_root) / entry.audio_path if audio_root else Path(entry.audio_path)
        samples = normalize_waveform(load_audio(path))
        examples.append(Example(entry.clip_id, samples, label_ids))
    return examples
