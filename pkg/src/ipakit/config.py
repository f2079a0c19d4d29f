"""Declarative key=value configuration for the corpus pipeline.

One flat file drives a prepare run; the ablation driver layers axis
lists on top of the same keys. Format: ``key = value`` lines, ``#``
comments, blank lines ignored. Lists are comma-separated; the ablation
``language_sets`` axis separates its (comma-containing) cells with
semicolons.
"""
from __future__ import annotations

import hashlib
from dataclasses import dataclass, fields, replace
from pathlib import Path

# Sample-size presets: (n_train, n_valid). Test size is fixed at 100
# per language; "full" takes every surviving training row and sizes
# validation at 10% of it, capped at 400.
PRESETS = {
    "100": (100, 20),
    "1k": (1000, 200),
    "2k": (2000, 400),
    "full": (None, None),
}

FULL_VALID_FRACTION = 0.1
FULL_VALID_CAP = 400
DEFAULT_TEST_SIZE = 100


class ConfigError(ValueError):
    """Bad key, value, or combination in a config file."""


def parse_kv(text: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for line_number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"line {line_number}: expected key = value, got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip()
        if not key:
            raise ConfigError(f"line {line_number}: empty key")
        if key in out:
            raise ConfigError(f"line {line_number}: duplicate key {key!r}")
        out[key] = value.strip()
    return out


def _parse_bool(key: str, value: str) -> bool:
    lowered = value.lower()
    if lowered in ("1", "true", "on", "yes"):
        return True
    if lowered in ("0", "false", "off", "no"):
        return False
    raise ConfigError(f"{key}: expected a boolean, got {value!r}")


def _parse_list(value: str) -> tuple[str, ...]:
    return tuple(item.strip() for item in value.split(",") if item.strip())


@dataclass(frozen=True)
class PrepareConfig:
    corpus_tsv: tuple[str, ...]
    out_dir: str
    languages: tuple[str, ...] = ()
    preset: str = "1k"
    n_train: int | None = None
    n_valid: int | None = None
    n_test: int = DEFAULT_TEST_SIZE
    seed: int = 42
    quality_filter: bool = True
    max_down_votes: int = 1
    duration_filter: bool = True
    max_duration_s: float = 6.0
    vocab_mode: str = "full"
    rules_dir: str = ""
    audio_root: str = ""
    extra_manifest: str = ""
    resample: bool = False
    target_rate: int = 16000

    def __post_init__(self) -> None:
        if self.preset not in PRESETS:
            raise ConfigError(f"preset must be one of {sorted(PRESETS)}, got {self.preset!r}")
        if self.vocab_mode not in ("full", "observed"):
            raise ConfigError(f"vocab_mode must be full or observed, got {self.vocab_mode!r}")
        if not self.corpus_tsv:
            raise ConfigError("corpus_tsv is required")
        if not self.out_dir:
            raise ConfigError("out_dir is required")

    def split_sizes(self) -> tuple[int | None, int | None, int]:
        """(n_train, n_valid, n_test) after applying the preset."""
        train, valid = PRESETS[self.preset]
        if self.n_train is not None:
            train = self.n_train
        if self.n_valid is not None:
            valid = self.n_valid
        return train, valid, self.n_test

    def canonical_text(self) -> str:
        """Stable key=value rendering used for the config digest."""
        lines = []
        for f in sorted(fields(self), key=lambda f: f.name):
            value = getattr(self, f.name)
            if isinstance(value, tuple):
                value = ",".join(value)
            lines.append(f"{f.name}={value}")
        return "\n".join(lines) + "\n"

    def digest(self) -> str:
        return hashlib.sha256(self.canonical_text().encode("utf-8")).hexdigest()

    @classmethod
    def from_mapping(cls, mapping: dict[str, str]) -> "PrepareConfig":
        known = {f.name: f for f in fields(cls)}
        kwargs: dict = {}
        for key, value in mapping.items():
            if key not in known:
                raise ConfigError(f"unknown config key {key!r}")
            kwargs[key] = _convert(key, value)
        missing = [name for name in ("corpus_tsv", "out_dir") if name not in kwargs]
        if missing:
            raise ConfigError(f"missing required config keys: {', '.join(missing)}")
        return cls(**kwargs)

    @classmethod
    def from_file(cls, path: str | Path) -> "PrepareConfig":
        path = Path(path)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from exc
        config = cls.from_mapping(parse_kv(text))
        # Relative paths in the file are relative to the file.
        return config.resolved_against(path.parent)

    def resolved_against(self, base: Path) -> "PrepareConfig":
        def resolve(p: str) -> str:
            return str((base / p)) if p and not Path(p).is_absolute() else p

        return replace(
            self,
            corpus_tsv=tuple(resolve(p) for p in self.corpus_tsv),
            out_dir=resolve(self.out_dir),
            rules_dir=resolve(self.rules_dir),
            audio_root=resolve(self.audio_root),
            extra_manifest=resolve(self.extra_manifest),
        )


def _convert(key: str, value: str):
    if key in ("corpus_tsv", "languages"):
        return _parse_list(value)
    if key in ("n_train", "n_valid"):
        return None if value.lower() in ("", "none", "all") else int(value)
    if key in ("n_test", "seed", "max_down_votes", "target_rate"):
        return int(value)
    if key in ("quality_filter", "duration_filter", "resample"):
        return _parse_bool(key, value)
    if key == "max_duration_s":
        return float(value)
    return value


@dataclass(frozen=True)
class AblateAxes:
    """The ablation grid: sizes x quality filter x extra data x language sets."""

    sizes: tuple[str, ...] = ("1k",)
    quality_filter: tuple[bool, ...] = (True,)
    extra_manifest: tuple[str, ...] = ("",)
    language_sets: tuple[tuple[str, ...], ...] = ((),)


def load_ablate_config(path: str | Path) -> tuple[PrepareConfig, AblateAxes]:
    """Split an ablation file into the base config and the axes."""
    path = Path(path)
    try:
        mapping = parse_kv(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    raw_sizes = mapping.pop("ablate_sizes", None)
    # Absent key means the default; a present-but-empty value is an
    # explicitly empty grid (no cells, empty report).
    sizes = ("1k",) if raw_sizes is None else _parse_list(raw_sizes)
    for size in sizes:
        if size not in PRESETS:
            raise ConfigError(f"ablate_sizes: unknown preset {size!r}")
    qf_values = _parse_list(mapping.pop("ablate_quality_filter", "")) or ("on",)
    quality = tuple(_parse_bool("ablate_quality_filter", v) for v in qf_values)
    extras_raw = mapping.pop("ablate_extra_manifest", "none")
    extras = tuple(
        "" if item.strip().lower() in ("", "none") else item.strip()
        for item in extras_raw.split(";")
    ) or ("",)
    raw_sets = mapping.pop("ablate_language_sets", "")
    if raw_sets:
        language_sets = tuple(
            tuple(lang.strip() for lang in cell.split(",") if lang.strip())
            for cell in raw_sets.split(";")
            if cell.strip()
        )
    else:
        language_sets = ((),)
    base = PrepareConfig.from_mapping(mapping).resolved_against(path.parent)
    extras = tuple(
        str(path.parent / e) if e and not Path(e).is_absolute() else e for e in extras
    )
    return base, AblateAxes(sizes, quality, extras, language_sets)
