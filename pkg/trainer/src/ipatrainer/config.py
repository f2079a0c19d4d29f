"""Training configuration with the reference hyperparameters as defaults."""
from __future__ import annotations

from dataclasses import dataclass, fields
from pathlib import Path


class TrainerConfigError(ValueError):
    pass


@dataclass(frozen=True)
class TrainConfig:
    train_manifest: str
    vocab_path: str
    output_dir: str
    learning_rate: float = 3e-4
    warmup_steps: int = 500
    epochs: int = 30
    freeze_feature_extractor: bool = True
    loss_reduction: str = "mean"
    batch_size: int = 4
    max_steps: int | None = None
    seed: int = 0
    audio_root: str = ""
    # "tiny" builds a small randomly initialized encoder (CI-friendly);
    # anything else is treated as a pretrained model identifier.
    model: str = "tiny"

    def __post_init__(self) -> None:
        if self.loss_reduction not in ("mean", "sum"):
            raise TrainerConfigError(f"loss_reduction must be mean or sum, got {self.loss_reduction!r}")
        if self.epochs < 0 or self.batch_size < 1:
            raise TrainerConfigError("epochs must be >= 0 and batch_size >= 1")

    @classmethod
    def from_file(cls, path: str | Path) -> "TrainConfig":
        mapping = _parse_kv(Path(path).read_text(encoding="utf-8"))
        known = {f.name: f for f in fields(cls)}
        kwargs: dict = {}
        for key, value in mapping.items():
            if key not in known:
                raise TrainerConfigError(f"unknown config key {key!r}")
            kwargs[key] = _convert(key, value)
        for required in ("train_manifest", "vocab_path", "output_dir"):
            if required not in kwargs:
                raise TrainerConfigError(f"missing required key {required!r}")
        config = cls(**kwargs)
        base = Path(path).parent
        return cls(
            **{
                **{f.name: getattr(config, f.name) for f in fields(cls)},
                "train_manifest": _resolve(base, config.train_manifest),
                "vocab_path": _resolve(base, config.vocab_path),
                "output_dir": _resolve(base, config.output_dir),
                "audio_root": _resolve(base, config.audio_root) if config.audio_root else "",
            }
        )


def _resolve(base: Path, value: str) -> str:
    return str(base / value) if value and not Path(value).is_absolute() else value


def _parse_kv(text: str) -> dict[str, str]:
    mapping: dict[str, str] = {}
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise TrainerConfigError(f"line {line_number}: expected key = value")
        key, _, value = line.partition("=")
        mapping[key.strip()] = value.strip()
    return mapping


def _convert(key: str, value: str):
    if key in ("warmup_steps", "epochs", "batch_size", "seed"):
        return int(value)
    if key == "max_steps":
        return None if value.lower() in ("", "none") else int(value)
    if key == "learning_rate":
        return float(value)
    if key == "freeze_feature_extractor":
        return value.lower() in ("1", "true", "on", "yes")
    return value
