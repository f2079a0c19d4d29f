"""Corpus curation: ingest, filter, split, label, and emit artifacts.

Input is CommonVoice-style TSV metadata plus PCM wave audio. The
pipeline applies the duration and vote-count filters, draws seeded
per-language splits, attaches IPA labels through the rule packs, and
writes byte-stable manifests plus the CTC vocabulary.
"""
from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .audio import AudioDecodeError, probe_duration, resample_wav
from .config import FULL_VALID_CAP, FULL_VALID_FRACTION, PrepareConfig
from .g2p import RuleSet, UnknownLocaleError, load_ruleset, packaged_ruleset, transliterate
from .inventory import PhoneInventory, default_inventory
from .prng import Xoshiro256StarStar, derive_seed
from .segmentation import SegmentationError, normalize_ipa, segment

logger = logging.getLogger(__name__)

REQUIRED_COLUMNS = ("path", "sentence", "up_votes", "down_votes", "locale")
MANIFEST_COLUMNS = ("clip_id", "audio_path", "locale", "ipa")

BLANK_TOKEN = "<blank>"
PAD_TOKEN = "<pad>"
UNK_TOKEN = "<unk>"
SPECIALS = (BLANK_TOKEN, PAD_TOKEN, UNK_TOKEN)

SPLITS = ("train", "valid", "test")


class IngestError(ValueError):
    """Unusable corpus metadata file."""


class PipelineError(ValueError):
    """Unrecoverable prepare-run failure."""


@dataclass
class UtteranceRecord:
    clip_id: str
    audio_path: str
    sentence: str
    up_votes: int
    down_votes: int
    locale: str
    duration_s: float | None = None
    # Optional pre-supplied fields: a reading to feed G2P instead of the
    # sentence (e.g. kana for Japanese), or a ready-made IPA label that
    # bypasses G2P entirely (extra-data manifests).
    reading: str = ""
    ipa: str = ""


def _parse_count(value: str | None) -> int:
    if value is None or value.strip() == "":
        return 0
    return int(value)


def ingest_tsv(path: str | Path) -> list[UtteranceRecord]:
    """Read CommonVoice-style TSV metadata into records.

    Requires the path, sentence, up_votes, down_votes, and locale
    columns; an optional ``reading`` column feeds G2P for scripts whose
    sentence field is not phonographic.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise IngestError(f"cannot read {path}: {exc}") from exc
    reader = csv.DictReader(text.splitlines(), delimiter="\t")
    header = reader.fieldnames or []
    missing = [col for col in REQUIRED_COLUMNS if col not in header]
    if missing:
        raise IngestError(f"{path}: missing required columns: {', '.join(missing)}")
    records = []
    for row_number, row in enumerate(reader, start=2):
        audio = (row.get("path") or "").strip()
        if not audio:
            raise IngestError(f"{path}: row {row_number}: empty path")
        try:
            up = _parse_count(row.get("up_votes"))
            down = _parse_count(row.get("down_votes"))
        except ValueError as exc:
            raise IngestError(f"{path}: row {row_number}: bad vote count: {exc}") from exc
        records.append(
            UtteranceRecord(
                clip_id=Path(audio).stem,
                audio_path=audio,
                sentence=(row.get("sentence") or "").strip(),
                up_votes=up,
                down_votes=down,
                locale=(row.get("locale") or "").strip(),
                reading=(row.get("reading") or "").strip(),
            )
        )
    return records


@dataclass(frozen=True)
class FilterOutcome:
    kept: list[UtteranceRecord]
    removed_long: list[UtteranceRecord]
    removed_votes: list[UtteranceRecord]


def partition_filters(
    records: Iterable[UtteranceRecord],
    max_duration_s: float | None = 6.0,
    max_down_votes: int | None = 1,
) -> FilterOutcome:
    """Apply the duration and vote filters; None disables a filter.

    A record failing both filters counts against the duration filter
    (first applied).
    """
    kept: list[UtteranceRecord] = []
    removed_long: list[UtteranceRecord] = []
    removed_votes: list[UtteranceRecord] = []
    for record in records:
        if (
            max_duration_s is not None
            and record.duration_s is not None
            and record.duration_s > max_duration_s
        ):
            removed_long.append(record)
        elif max_down_votes is not None and record.down_votes > max_down_votes:
            removed_votes.append(record)
        else:
            kept.append(record)
    return FilterOutcome(kept, removed_long, removed_votes)


def filter_records(
    records: Iterable[UtteranceRecord],
    max_duration_s: float | None = 6.0,
    max_down_votes: int | None = 1,
) -> list[UtteranceRecord]:
    return partition_filters(records, max_duration_s, max_down_votes).kept


def sample_split(
    records: Sequence[UtteranceRecord],
    n_train: int | None,
    n_valid: int | None,
    n_test: int,
    seed: int,
) -> dict[str, list[UtteranceRecord]]:
    """Draw disjoint test/valid/train sets per locale, deterministically.

    Each locale gets its own PRNG stream; records are canonically
    ordered before shuffling so the draw depends only on (records,
    sizes, seed). Test is drawn first so it stays stable across
    training-size presets. When a request exceeds availability, what is
    available is taken and a warning logged. ``n_train=None`` means all
    remaining rows; ``n_valid=None`` sizes validation at 10% of the
    remaining pool, capped at 400.
    """
    by_locale: dict[str, list[UtteranceRecord]] = {}
    for record in records:
        by_locale.setdefault(record.locale, []).append(record)

    splits: dict[str, list[UtteranceRecord]] = {name: [] for name in SPLITS}
    for locale in sorted(by_locale):
        pool = sorted(by_locale[locale], key=lambda r: r.clip_id)
        rng = Xoshiro256StarStar(derive_seed(seed, locale))
        rng.shuffle(pool)

        take_test = min(n_test, len(pool))
        if take_test < n_test:
            logger.warning("%s: only %d records for a %d-row test split", locale, take_test, n_test)
        test, pool = pool[:take_test], pool[take_test:]

        want_valid = n_valid
        if want_valid is None:
            want_valid = min(FULL_VALID_CAP, int(len(pool) * FULL_VALID_FRACTION))
        take_valid = min(want_valid, len(pool))
        if take_valid < want_valid:
            logger.warning("%s: only %d records for a %d-row valid split", locale, take_valid, want_valid)
        valid, pool = pool[:take_valid], pool[take_valid:]

        if n_train is None:
            train = pool
        else:
            take_train = min(n_train, len(pool))
            if take_train < n_train:
                logger.warning("%s: only %d records for a %d-row train split", locale, take_train, n_train)
            train = pool[:take_train]

        splits["test"].extend(test)
        splits["valid"].extend(valid)
        splits["train"].extend(train)
    return splits


@dataclass(frozen=True)
class ManifestRow:
    clip_id: str
    audio_path: str
    locale: str
    ipa: str


@dataclass(frozen=True)
class DroppedRow:
    clip_id: str
    locale: str
    reason: str


@dataclass(frozen=True)
class Manifest:
    split: str
    rows: tuple[ManifestRow, ...]
    seed: int
    config_digest: str


def label_manifest(
    records: Sequence[UtteranceRecord],
    rulesets: Mapping[str, RuleSet],
    inv: PhoneInventory,
    *,
    split: str,
    seed: int,
    config_digest: str,
) -> tuple[Manifest, list[DroppedRow]]:
    """Attach IPA labels and build a sorted manifest.

    Pre-labeled records keep their IPA (normalized); everything else
    goes through its locale's rule pack. Rows whose label fails strict
    segmentation are dropped and reported.
    """
    rows: list[ManifestRow] = []
    dropped: list[DroppedRow] = []
    for record in records:
        if record.ipa:
            ipa = normalize_ipa(record.ipa)
        else:
            ruleset = rulesets.get(record.locale)
            if ruleset is None:
                raise PipelineError(f"no rule pack for locale {record.locale!r}")
            ipa = transliterate(ruleset, record.reading or record.sentence, mode="lenient")
        try:
            segment(inv, ipa, mode="strict")
        except SegmentationError as exc:
            dropped.append(DroppedRow(record.clip_id, record.locale, str(exc)))
            logger.info("dropping %s (%s): %s", record.clip_id, record.locale, exc)
            continue
        if not ipa:
            dropped.append(DroppedRow(record.clip_id, record.locale, "empty transcription"))
            continue
        rows.append(ManifestRow(record.clip_id, record.audio_path, record.locale, ipa))
    rows.sort(key=lambda r: (r.locale, r.clip_id))
    return Manifest(split, tuple(rows), seed, config_digest), dropped


def write_manifest(path: str | Path, manifest: Manifest) -> None:
    lines = ["\t".join(MANIFEST_COLUMNS)]
    for row in manifest.rows:
        lines.append(f"{row.clip_id}\t{row.audio_path}\t{row.locale}\t{row.ipa}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_manifest(path: str | Path, split: str = "", seed: int = 0, config_digest: str = "") -> Manifest:
    path = Path(path)
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines:
        raise IngestError(f"{path}: empty manifest")
    header = lines[0].split("\t")
    missing = [c for c in MANIFEST_COLUMNS if c not in header]
    if missing:
        raise IngestError(f"{path}: manifest missing columns: {', '.join(missing)}")
    index = {name: header.index(name) for name in MANIFEST_COLUMNS}
    rows = []
    for line_no, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cells = line.split("\t")
        if len(cells) != len(header):
            raise IngestError(f"{path}: line {line_no}: expected {len(header)} cells")
        rows.append(
            ManifestRow(
                cells[index["clip_id"]],
                cells[index["audio_path"]],
                cells[index["locale"]],
                cells[index["ipa"]],
            )
        )
    return Manifest(split or path.stem, tuple(rows), seed, config_digest)


@dataclass(frozen=True)
class Vocabulary:
    token_to_index: dict[str, int]

    def __len__(self) -> int:
        return len(self.token_to_index)

    @property
    def blank_index(self) -> int:
        return self.token_to_index[BLANK_TOKEN]

    def phones(self) -> tuple[str, ...]:
        return tuple(t for t in self.token_to_index if t not in SPECIALS)


def build_vocab(
    manifests: Sequence[Manifest],
    inv: PhoneInventory,
    mode: str = "full",
) -> Vocabulary:
    """CTC vocabulary: specials at reserved indices, then phones.

    ``full`` includes every inventory phone (the order of the shipped
    table); ``observed`` only the phones occurring in the manifests.
    """
    if mode not in ("full", "observed"):
        raise ValueError(f"vocab mode must be full or observed, got {mode!r}")
    if mode == "full":
        phones: Iterable[str] = inv.phones()
    else:
        seen: set[str] = set()
        for manifest in manifests:
            for row in manifest.rows:
                seen.update(segment(inv, row.ipa, mode="strict").phones)
        phones = [p for p in inv.phones() if p in seen]
    token_to_index: dict[str, int] = {BLANK_TOKEN: 0, PAD_TOKEN: 1, UNK_TOKEN: 2}
    for phone in phones:
        token_to_index[phone] = len(token_to_index)
    return Vocabulary(token_to_index)


def write_vocab(path: str | Path, vocab: Vocabulary) -> None:
    lines = [f"{token}\t{index}" for token, index in vocab.token_to_index.items()]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_vocab(path: str | Path) -> Vocabulary:
    token_to_index: dict[str, int] = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        token, _, index = line.partition("\t")
        token_to_index[token] = int(index)
    return Vocabulary(token_to_index)


def load_rulesets(locales: Iterable[str], rules_dir: str | Path | None = None) -> dict[str, RuleSet]:
    rulesets: dict[str, RuleSet] = {}
    for locale in locales:
        if rules_dir:
            path = Path(rules_dir) / f"{locale}.g2p"
            if not path.is_file():
                raise PipelineError(f"no rule pack for locale {locale!r} in {rules_dir}")
            rulesets[locale] = load_ruleset(path, locale)
        else:
            try:
                rulesets[locale] = packaged_ruleset(locale)
            except UnknownLocaleError as exc:
                raise PipelineError(str(exc)) from exc
    return rulesets


@dataclass(frozen=True)
class PrepareResult:
    out_dir: str
    manifest_paths: dict[str, str]
    vocab_path: str
    log_path: str
    row_counts: dict[str, int]
    removed_by_duration: int
    removed_by_votes: int
    dropped_labels: int
    vocab_size: int
    config_digest: str


def run_prepare(config: PrepareConfig, inv: PhoneInventory | None = None) -> PrepareResult:
    """Execute the full pipeline for one configuration."""
    inv = inv or default_inventory()
    out_dir = Path(config.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    digest = config.digest()

    records: list[UtteranceRecord] = []
    for tsv in config.corpus_tsv:
        records.extend(ingest_tsv(tsv))
    if config.languages:
        wanted = set(config.languages)
        records = [r for r in records if r.locale in wanted]
    if not records:
        raise PipelineError("no records after language filtering")

    audio_root = Path(config.audio_root) if config.audio_root else None

    def locate(rel: str) -> Path:
        return audio_root / rel if audio_root else Path(rel)

    if config.duration_filter:
        for record in records:
            try:
                record.duration_s = probe_duration(locate(record.audio_path))
            except AudioDecodeError as exc:
                raise PipelineError(str(exc)) from exc

    outcome = partition_filters(
        records,
        config.max_duration_s if config.duration_filter else None,
        config.max_down_votes if config.quality_filter else None,
    )

    n_train, n_valid, n_test = config.split_sizes()
    splits = sample_split(outcome.kept, n_train, n_valid, n_test, config.seed)

    if config.extra_manifest:
        extra = read_manifest(config.extra_manifest)
        splits["train"] = splits["train"] + [
            UtteranceRecord(
                clip_id=row.clip_id,
                audio_path=row.audio_path,
                sentence="",
                up_votes=0,
                down_votes=0,
                locale=row.locale,
                ipa=row.ipa,
            )
            for row in extra.rows
        ]

    locales = sorted({r.locale for rows in splits.values() for r in rows if not r.ipa})
    rulesets = load_rulesets(locales, config.rules_dir or None)

    if config.resample:
        audio_out = out_dir / "audio"
        audio_out.mkdir(exist_ok=True)
        for rows in splits.values():
            for record in rows:
                target = audio_out / f"{record.clip_id}.wav"
                resample_wav(locate(record.audio_path), target, config.target_rate)
                record.audio_path = str(target)

    manifests: dict[str, Manifest] = {}
    manifest_paths: dict[str, str] = {}
    dropped_all: list[DroppedRow] = []
    for split_name in SPLITS:
        manifest, dropped = label_manifest(
            splits[split_name],
            rulesets,
            inv,
            split=split_name,
            seed=config.seed,
            config_digest=digest,
        )
        manifests[split_name] = manifest
        dropped_all.extend(dropped)
        path = out_dir / f"{split_name}.tsv"
        write_manifest(path, manifest)
        manifest_paths[split_name] = str(path)

    vocab = build_vocab(list(manifests.values()), inv, config.vocab_mode)
    vocab_path = out_dir / "vocab.txt"
    write_vocab(vocab_path, vocab)

    log = {
        "config_digest": digest,
        "seed": config.seed,
        "source_digest": inv.source_digest,
        "ingested": len(records),
        "removed_by_duration": len(outcome.removed_long),
        "removed_by_votes": len(outcome.removed_votes),
        "removed_duration_clip_ids": sorted(r.clip_id for r in outcome.removed_long),
        "removed_votes_clip_ids": sorted(r.clip_id for r in outcome.removed_votes),
        "dropped_labels": [
            {"clip_id": d.clip_id, "locale": d.locale, "reason": d.reason} for d in dropped_all
        ],
        "row_counts": {name: len(manifests[name].rows) for name in SPLITS},
        "vocab_size": len(vocab),
        "vocab_mode": config.vocab_mode,
    }
    log_path = out_dir / "prepare_log.json"
    log_path.write_text(json.dumps(log, indent=2, sort_keys=True, ensure_ascii=False) + "\n", encoding="utf-8")

    return PrepareResult(
        out_dir=str(out_dir),
        manifest_paths=manifest_paths,
        vocab_path=str(vocab_path),
        log_path=str(log_path),
        row_counts={name: len(manifests[name].rows) for name in SPLITS},
        removed_by_duration=len(outcome.removed_long),
        removed_by_votes=len(outcome.removed_votes),
        dropped_labels=len(dropped_all),
        vocab_size=len(vocab),
        config_digest=digest,
    )


@dataclass(frozen=True)
class AblateCell:
    name: str
    preset: str
    quality_filter: bool
    extra_manifest: str
    languages: tuple[str, ...]
    status: str
    out_dir: str
    row_counts: dict[str, int]
    error: str = ""


def run_ablate(base: PrepareConfig, axes, out_root: str | Path) -> list[AblateCell]:
    """Run one prepare per grid cell; cells are independent and resumable.

    A cell whose prepare log already exists is skipped and reported as
    cached; a failing cell is reported without stopping the others.
    """
    out_root = Path(out_root)
    cells: list[AblateCell] = []
    for preset in axes.sizes:
        for qf in axes.quality_filter:
            for extra in axes.extra_manifest:
                for languages in axes.language_sets:
                    lang_tag = "-".join(languages) if languages else "all"
                    name = f"size_{preset}__qf_{'on' if qf else 'off'}__extra_{'yes' if extra else 'no'}__langs_{lang_tag}"
                    cell_dir = out_root / name
                    config = replace(
                        base,
                        preset=preset,
                        quality_filter=qf,
                        extra_manifest=extra,
                        languages=languages if languages else base.languages,
                        out_dir=str(cell_dir),
                    )
                    log_path = cell_dir / "prepare_log.json"
                    if log_path.is_file():
                        counts = json.loads(log_path.read_text(encoding="utf-8")).get("row_counts", {})
                        cells.append(
                            AblateCell(name, preset, qf, extra, languages, "cached", str(cell_dir), counts)
                        )
                        continue
                    try:
                        result = run_prepare(config)
                        cells.append(
                            AblateCell(
                                name, preset, qf, extra, languages, "ok",
                                str(cell_dir), result.row_counts,
                            )
                        )
                    except Exception as exc:  # noqa: BLE001 - cell isolation is the contract
                        logger.error("ablation cell %s failed: %s", name, exc)
                        cells.append(
                            AblateCell(name, preset, qf, extra, languages, "error", str(cell_dir), {}, str(exc))
                        )
    return cells
