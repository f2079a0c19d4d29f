"""PCM wave reading, duration probing, and 16 kHz resampling.

Only uncompressed PCM wave files are supported; transcoding from
compressed formats is an upstream concern. Resampling is polyphase
windowed-sinc filtering (Kaiser window) on float samples; file output
is mono 16-bit PCM.
"""
from __future__ import annotations

import wave
from math import gcd
from pathlib import Path

import numpy as np
from scipy.signal import resample_poly


class AudioDecodeError(ValueError):
    """Unreadable, corrupt, or non-PCM audio input."""


def probe_duration(path: str | Path) -> float:
    """Duration in seconds from the wave header (frames / sample rate)."""
    try:
        with wave.open(str(path), "rb") as wav:
            rate = wav.getframerate()
            frames = wav.getnframes()
    except (wave.Error, EOFError, OSError) as exc:
        raise AudioDecodeError(f"{path}: {exc}") from exc
    if rate <= 0:
        raise AudioDecodeError(f"{path}: invalid sample rate {rate}")
    return frames / rate


def read_wav(path: str | Path) -> tuple[np.ndarray, int]:
    """Read PCM wave samples as float64 in [-1, 1], mono-averaged.

    Returns (samples, sample_rate).
    """
    try:
        with wave.open(str(path), "rb") as wav:
            channels = wav.getnchannels()
            width = wav.getsampwidth()
            rate = wav.getframerate()
            frames = wav.getnframes()
            raw = wav.readframes(frames)
    except (wave.Error, EOFError, OSError) as exc:
        raise AudioDecodeError(f"{path}: {exc}") from exc
    if channels < 1 or rate <= 0:
        raise AudioDecodeError(f"{path}: malformed header")
    if width == 1:
        data = np.frombuffer(raw, dtype=np.uint8).astype(np.float64)
        data = (data - 128.0) / 128.0
    elif width == 2:
        data = np.frombuffer(raw, dtype="<i2").astype(np.float64) / 32768.0
    elif width == 3:
        as_bytes = np.frombuffer(raw, dtype=np.uint8).reshape(-1, 3)
        padded = np.zeros((as_bytes.shape[0], 4), dtype=np.uint8)
        padded[:, 1:] = as_bytes
        data = (padded.view("<i4").ravel() >> 8).astype(np.float64) / 8388608.0
    elif width == 4:
        data = np.frombuffer(raw, dtype="<i4").astype(np.float64) / 2147483648.0
    else:
        raise AudioDecodeError(f"{path}: unsupported sample width {width}")
    if channels > 1:
        usable = (len(data) // channels) * channels
        data = data[:usable].reshape(-1, channels).mean(axis=1)
    return data, rate


def resample_signal(x: np.ndarray, rate_in: int, rate_out: int) -> np.ndarray:
    """Windowed-sinc polyphase resampling of a float signal.

    Output length is ceil(len(x) * rate_out / rate_in). The operation
    is linear and preserves DC level.
    """
    if rate_in <= 0 or rate_out <= 0:
        raise ValueError("sample rates must be positive")
    if rate_in == rate_out:
        return np.asarray(x, dtype=np.float64).copy()
    factor = gcd(rate_in, rate_out)
    up = rate_out // factor
    down = rate_in // factor
    return resample_poly(np.asarray(x, dtype=np.float64), up, down, window=("kaiser", 5.0))


def write_wav(path: str | Path, samples: np.ndarray, rate: int) -> None:
    """Write mono 16-bit PCM."""
    clipped = np.clip(samples, -1.0, 1.0)
    pcm = (clipped * 32767.0).round().astype("<i2")
    with wave.open(str(path), "wb") as wav:
        wav.setnchannels(1)
        wav.setsampwidth(2)
        wav.setframerate(rate)
        wav.writeframes(pcm.tobytes())


def resample_wav(in_path: str | Path, out_path: str | Path, target_rate: int = 16000) -> tuple[int, int]:
    """Resample a PCM wave file to target_rate mono 16-bit.

    Returns (input_sample_count, output_sample_count).
    """
    data, rate = read_wav(in_path)
    out = resample_signal(data, rate, target_rate)
    write_wav(out_path, out, target_rate)
    return len(data), len(out)
