"""File-level evaluation: score hypothesis files against references.

Reference files carry clip_id, locale, and ipa columns (a pipeline
manifest works as-is); hypothesis files need clip_id and ipa. Reports
are emitted both as line-delimited JSON records and as an aligned
table with 3-decimal percentages.
"""
from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from typing import Literal, Sequence

from .inventory import PhoneInventory
from .metrics import (
    EvalReport,
    UtteranceScore,
    aggregate,
    feature_costs,
    score_utterance,
    UNIT_COSTS,
)
from .segmentation import normalize_ipa, segment

Mode = Literal["strict", "lenient"]


class EvalInputError(ValueError):
    """Bad or mismatched evaluation files."""


@dataclass(frozen=True)
class EvalRow:
    clip_id: str
    ipa: str
    locale: str = ""


def parse_eval_file(text: str, *, require_locale: bool, name: str = "input") -> list[EvalRow]:
    """Parse a transcription TSV (clip_id, [locale,] ipa)."""
    reader = csv.DictReader(text.splitlines(), delimiter="\t")
    header = reader.fieldnames or []
    required = ["clip_id", "ipa"] + (["locale"] if require_locale else [])
    missing = [col for col in required if col not in header]
    if missing:
        raise EvalInputError(f"{name}: missing columns: {', '.join(missing)}")
    rows: list[EvalRow] = []
    seen: set[str] = set()
    for line_no, raw in enumerate(reader, start=2):
        clip_id = (raw.get("clip_id") or "").strip()
        if not clip_id:
            raise EvalInputError(f"{name}: line {line_no}: empty clip_id")
        if clip_id in seen:
            raise EvalInputError(f"{name}: duplicate clip_id {clip_id!r}")
        seen.add(clip_id)
        rows.append(
            EvalRow(
                clip_id=clip_id,
                ipa=(raw.get("ipa") or "").strip(),
                locale=(raw.get("locale") or "").strip(),
            )
        )
    if not rows:
        raise EvalInputError(f"{name}: no rows")
    return rows


def score_rows(
    inv: PhoneInventory,
    ref_rows: Sequence[EvalRow],
    hyp_rows: Sequence[EvalRow],
    mode: Mode = "lenient",
) -> EvalReport:
    """Score hypothesis rows against reference rows keyed by clip_id."""
    ref_by_id = {row.clip_id: row for row in ref_rows}
    hyp_by_id = {row.clip_id: row for row in hyp_rows}
    missing_in_hyp = sorted(set(ref_by_id) - set(hyp_by_id))
    missing_in_ref = sorted(set(hyp_by_id) - set(ref_by_id))
    if missing_in_hyp or missing_in_ref:
        parts = []
        if missing_in_hyp:
            parts.append(f"ids missing from hypothesis: {', '.join(missing_in_hyp)}")
        if missing_in_ref:
            parts.append(f"ids missing from reference: {', '.join(missing_in_ref)}")
        raise EvalInputError("; ".join(parts))

    pfer_costs = feature_costs(inv)
    by_locale: dict[str, list[tuple[UtteranceScore, UtteranceScore]]] = {}
    for clip_id in sorted(ref_by_id):
        ref = ref_by_id[clip_id]
        hyp = hyp_by_id[clip_id]
        ref_tokens = segment(inv, normalize_ipa(ref.ipa), mode).tokens()
        hyp_tokens = segment(inv, normalize_ipa(hyp.ipa), mode).tokens()
        per_score = score_utterance(ref_tokens, hyp_tokens, UNIT_COSTS)
        pfer_score = score_utterance(ref_tokens, hyp_tokens, pfer_costs)
        by_locale.setdefault(ref.locale or "und", []).append((per_score, pfer_score))
    return aggregate(by_locale)


def score_texts(
    inv: PhoneInventory,
    ref_text: str,
    hyp_text: str,
    mode: Mode = "lenient",
) -> EvalReport:
    ref_rows = parse_eval_file(ref_text, require_locale=True, name="reference")
    hyp_rows = parse_eval_file(hyp_text, require_locale=False, name="hypothesis")
    return score_rows(inv, ref_rows, hyp_rows, mode)


def _pct(rate: float) -> float:
    return round(rate * 100.0, 3)


def report_records(report: EvalReport) -> list[dict]:
    """One JSON-ready record per language plus an overall record."""
    records = []
    for locale in sorted(report.per_language):
        ls = report.per_language[locale]
        records.append(
            {
                "locale": locale,
                "per_pct": _pct(ls.per_rate),
                "pfer_pct": _pct(ls.pfer_rate),
                "per_rate": ls.per_rate,
                "pfer_rate": ls.pfer_rate,
                "per_distance": ls.per_distance,
                "pfer_distance": ls.pfer_distance,
                "utterances": ls.utterance_count,
                "ref_phones": ls.total_ref_phones,
                "per_utterance_mean": ls.per_utterance_mean,
                "pfer_utterance_mean": ls.pfer_utterance_mean,
            }
        )
    records.append(
        {
            "locale": "overall",
            "per_pct": _pct(report.overall_per),
            "pfer_pct": _pct(report.overall_pfer),
            "per_rate": report.overall_per,
            "pfer_rate": report.overall_pfer,
        }
    )
    return records


def report_to_jsonl(report: EvalReport) -> str:
    return "\n".join(json.dumps(rec, ensure_ascii=False, sort_keys=True) for rec in report_records(report)) + "\n"


def format_table(report: EvalReport) -> str:
    """Aligned human-readable table, percentages with 3 decimals."""
    header = f"{'Language':<14}{'PER (%)':>10}{'PFER (%)':>10}{'Utts':>7}{'RefPhones':>11}"
    lines = [header, "-" * len(header)]
    for locale in sorted(report.per_language):
        ls = report.per_language[locale]
        lines.append(
            f"{locale:<14}{_pct(ls.per_rate):>10.3f}{_pct(ls.pfer_rate):>10.3f}"
            f"{ls.utterance_count:>7d}{ls.total_ref_phones:>11d}"
        )
    lines.append("-" * len(header))
    lines.append(f"{'Overall':<14}{_pct(report.overall_per):>10.3f}{_pct(report.overall_pfer):>10.3f}")
    return "\n".join(lines)
