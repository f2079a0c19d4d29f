"""Transcription error metrics.

CER and PER are unit-cost edit distances normalized by reference
length. PFER replaces the substitution cost with the Hamming distance
between articulatory feature vectors divided by 24, so near-misses
(aspiration, voicing) cost a fraction of a full substitution while
insertions and deletions still cost 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Mapping, Sequence

import numpy as np

from .inventory import FEATURE_COUNT, PhoneInventory


def unit_substitution(a: str, b: str) -> float:
    return 0.0 if a == b else 1.0


@dataclass(frozen=True)
class EditCosts:
    """Operation costs for the edit-distance lattice.

    Substitution must be symmetric, zero on identical tokens, and never
    exceed 1 so that a substitution is never worse than delete+insert.
    """

    substitution: Callable[[str, str], float] = unit_substitution
    insertion: float = 1.0
    deletion: float = 1.0


UNIT_COSTS = EditCosts()


def edit_distance(ref: Sequence[str], hyp: Sequence[str], costs: EditCosts = UNIT_COSTS) -> float:
    """Minimal total cost of transforming ref into hyp.

    Dynamic program over the full (|ref|+1) x (|hyp|+1) lattice, kept
    two rows at a time.
    """
    n, m = len(ref), len(hyp)
    sub = costs.substitution
    previous = [j * costs.insertion for j in range(m + 1)]
    for i in range(1, n + 1):
        current = [i * costs.deletion] + [0.0] * m
        ref_token = ref[i - 1]
        for j in range(1, m + 1):
            current[j] = min(
                previous[j] + costs.deletion,
                current[j - 1] + costs.insertion,
                previous[j - 1] + sub(ref_token, hyp[j - 1]),
            )
        previous = current
    return previous[m]


def per(ref_phones: Sequence[str], hyp_phones: Sequence[str]) -> float:
    """Phone error rate: unit-cost distance over reference phone count."""
    return edit_distance(ref_phones, hyp_phones, UNIT_COSTS) / max(len(ref_phones), 1)


def cer(ref_text: str, hyp_text: str) -> float:
    """Character error rate over Unicode characters."""
    return edit_distance(list(ref_text), list(hyp_text), UNIT_COSTS) / max(len(ref_text), 1)


def feature_substitution_cost(inv: PhoneInventory, a: str, b: str) -> float:
    """Hamming(features)/24 for in-inventory phones, 1.0 otherwise.

    Identical tokens cost 0 even when out of inventory; an unknown
    token never gets a discount against anything else.
    """
    if a == b:
        return 0.0
    va = inv.feature_array(a)
    vb = inv.feature_array(b)
    if va is None or vb is None:
        return 1.0
    return int(np.count_nonzero(va != vb)) / FEATURE_COUNT


def feature_costs(inv: PhoneInventory) -> EditCosts:
    """EditCosts whose substitution is the feature-weighted cost."""
    cache: dict[tuple[str, str], float] = {}

    def sub(a: str, b: str) -> float:
        key = (a, b) if a <= b else (b, a)
        cost = cache.get(key)
        if cost is None:
            cost = feature_substitution_cost(inv, a, b)
            cache[key] = cost
        return cost

    return EditCosts(substitution=sub)


def pfer(inv: PhoneInventory, ref_phones: Sequence[str], hyp_phones: Sequence[str]) -> float:
    """Phone feature error rate over reference phone count."""
    distance = edit_distance(ref_phones, hyp_phones, feature_costs(inv))
    return distance / max(len(ref_phones), 1)


@dataclass(frozen=True)
class UtteranceScore:
    """One utterance's distance and its normalizer."""

    distance: float
    ref_len: int

    @property
    def rate(self) -> float:
        return self.distance / max(self.ref_len, 1)


def score_utterance(ref: Sequence[str], hyp: Sequence[str], costs: EditCosts) -> UtteranceScore:
    return UtteranceScore(edit_distance(ref, hyp, costs), len(ref))


@dataclass(frozen=True)
class LanguageScore:
    """Corpus-level scores for one language.

    ``per_rate``/``pfer_rate`` are micro-averages (summed distance over
    summed reference length); the utterance means are reported alongside
    for transparency.
    """

    per_rate: float
    pfer_rate: float
    utterance_count: int
    total_ref_phones: int
    per_distance: float
    pfer_distance: float
    per_utterance_mean: float
    pfer_utterance_mean: float


@dataclass(frozen=True)
class EvalReport:
    per_language: dict[str, LanguageScore]
    overall_per: float
    overall_pfer: float


def macro_mean(values: Sequence[float]) -> float:
    """Unweighted arithmetic mean across languages."""
    if not values:
        raise ValueError("macro mean of no values")
    return sum(values) / len(values)


def matches_macro_mean(values: Sequence[float], printed: float, tol: float = 1e-3) -> bool:
    """Whether a published overall cell agrees with its row's macro mean."""
    return abs(macro_mean(values) - printed) <= tol


def aggregate(
    by_locale: Mapping[str, Sequence[tuple[UtteranceScore, UtteranceScore]]],
) -> EvalReport:
    """Fold per-utterance (PER score, PFER score) pairs into a report.

    Language rates are micro-averages; the overall row is the macro
    (unweighted) mean of the language rates.
    """
    if not by_locale:
        raise ValueError("aggregate needs at least one locale")
    languages: dict[str, LanguageScore] = {}
    for locale in sorted(by_locale):
        scores = by_locale[locale]
        if not scores:
            raise ValueError(f"aggregate needs at least one utterance for {locale!r}")
        per_scores = [s[0] for s in scores]
        pfer_scores = [s[1] for s in scores]
        ref_total = sum(s.ref_len for s in per_scores)
        per_distance = sum(s.distance for s in per_scores)
        pfer_distance = sum(s.distance for s in pfer_scores)
        languages[locale] = LanguageScore(
            per_rate=per_distance / max(ref_total, 1),
            pfer_rate=pfer_distance / max(ref_total, 1),
            utterance_count=len(scores),
            total_ref_phones=ref_total,
            per_distance=per_distance,
            pfer_distance=pfer_distance,
            per_utterance_mean=macro_mean([s.rate for s in per_scores]),
            pfer_utterance_mean=macro_mean([s.rate for s in pfer_scores]),
        )
    return EvalReport(
        per_language=languages,
        overall_per=macro_mean([ls.per_rate for ls in languages.values()]),
        overall_pfer=macro_mean([ls.pfer_rate for ls in languages.values()]),
    )
