"""Greedy CTC decoding into hypothesis files."""
from __future__ import annotations

import logging
from pathlib import Path

import torch

from .data import DataError, Vocabulary, load_audio, normalize_waveform, read_manifest
from .model import model_from_checkpoint

logger = logging.getLogger(__name__)


def greedy_ids(logits: torch.Tensor, blank_index: int) -> list[int]:
    """Argmax path: collapse repeats, then drop blanks."""
    path = torch.argmax(logits, dim=-1).tolist()
    out: list[int] = []
    previous = None
    for index in path:
        if index != previous and index != blank_index:
            out.append(index)
        previous = index
    return out


def decode_clips(
    checkpoint_path: str | Path,
    clips: list[tuple[str, str]],
    audio_root: str = "",
) -> tuple[list[tuple[str, str]], list[tuple[str, str]]]:
    """Decode (clip_id, audio_path) pairs.

    Returns (rows, errors): rows are (clip_id, ipa); unreadable audio
    becomes an error entry and decoding continues with the rest.
    """
    payload = torch.load(str(checkpoint_path), map_location="cpu", weights_only=False)
    model = model_from_checkpoint(payload)
    vocab = Vocabulary(payload["vocab"])
    specials = {vocab.token_to_index[t] for t in ("<blank>", "<pad>", "<unk>")}
    rows: list[tuple[str, str]] = []
    errors: list[tuple[str, str]] = []
    for clip_id, audio_path in clips:
        path = Path(audio_root) / audio_path if audio_root else Path(audio_path)
        try:
            samples = normalize_waveform(load_audio(path))
        except DataError as exc:
            logger.error("skipping %s: %s", clip_id, exc)
            errors.append((clip_id, str(exc)))
            continue
        with torch.no_grad():
            logits = model(input_values=torch.from_numpy(samples)[None, :]).logits[0]
        ids = [i for i in greedy_ids(logits, vocab.blank_index) if i not in specials]
        rows.append((clip_id, "".join(vocab.decode_tokens(ids))))
    return rows, errors


def decode_manifest(
    checkpoint_path: str | Path,
    manifest_path: str | Path,
    output_path: str | Path,
    audio_root: str = "",
) -> tuple[int, int]:
    """Decode every manifest row into a hypothesis TSV (clip_id, ipa)."""
    entries = read_manifest(manifest_path)
    rows, errors = decode_clips(
        checkpoint_path, [(e.clip_id, e.audio_path) for e in entries], audio_root
    )
    write_hypothesis(output_path, rows)
    return len(rows), len(errors)


def write_hypothesis(path: str | Path, rows: list[tuple[str, str]]) -> None:
    lines = ["clip_id\tipa"] + [f"{clip_id}\t{ipa}" for clip_id, ipa in rows]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")
