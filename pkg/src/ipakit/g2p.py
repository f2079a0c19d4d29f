"""Rule-based grapheme-to-phoneme conversion.

Rule files are line-oriented so field linguists can audit them:

    # comment
    pattern -> replacement
    pattern -> replacement / left _ right
    pattern -> replacement @3

``left``/``right`` are literal context anchors around the match; ``^``
and ``$`` inside them require a word boundary. Replacement may be empty
(deletion). Rules apply in a single left-to-right pass: at each
position the matching rule with the highest priority wins, longer
patterns break priority ties, file order breaks the rest. ``@N`` sets
an explicit priority (default 0, larger wins).
"""
from __future__ import annotations

import re
import unicodedata
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Literal, Sequence

from .inventory import PhoneInventory
from .segmentation import SegmentationError, normalize_ipa, segment

Mode = Literal["strict", "lenient"]

_RULE_RE = re.compile(
    r"""^ (?P<pattern>[^\s/@]+) \s* -> \s* (?P<replacement>[^\s/@]*)
        (?: \s* / \s* (?P<left>[^\s_]*) \s* _ \s* (?P<right>[^\s_]*) )?
        (?: \s* @ (?P<priority>-?\d+) )? \s* $""",
    re.VERBOSE,
)


class RuleParseError(ValueError):
    def __init__(self, line_number: int, message: str):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class TransliterationError(ValueError):
    def __init__(self, position: int, char: str):
        super().__init__(f"no rule covers character {char!r} at position {position}")
        self.position = position
        self.char = char


class UnknownLocaleError(KeyError):
    def __init__(self, locale: str, available: Sequence[str]):
        super().__init__(locale)
        self.locale = locale
        self.available = tuple(available)

    def __str__(self) -> str:
        return f"no rule pack for locale {self.locale!r}; available: {', '.join(self.available)}"


@dataclass(frozen=True)
class RewriteRule:
    pattern: str
    replacement: str
    left: str | None
    right: str | None
    priority: int
    order: int
    line_number: int


@dataclass
class RuleSet:
    locale: str
    rules: list[RewriteRule]
    lowercase: bool = True

    def __post_init__(self) -> None:
        by_first: dict[str, list[RewriteRule]] = {}
        for rule in self.rules:
            by_first.setdefault(rule.pattern[0], []).append(rule)
        self._by_first = by_first

    def candidates(self, ch: str) -> list[RewriteRule]:
        return self._by_first.get(ch, [])


def parse_ruleset(source: str, locale: str) -> RuleSet:
    rules: list[RewriteRule] = []
    for line_number, raw in enumerate(source.splitlines(), start=1):
        line = raw.split(" #", 1)[0].strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("->"):
            raise RuleParseError(line_number, "empty pattern")
        match = _RULE_RE.match(line)
        if match is None:
            raise RuleParseError(line_number, f"unparseable rule: {raw.strip()!r}")
        pattern = unicodedata.normalize("NFC", match["pattern"])
        replacement = unicodedata.normalize("NFC", match["replacement"] or "")
        left = match["left"]
        right = match["right"]
        rules.append(
            RewriteRule(
                pattern=pattern,
                replacement=replacement,
                left=unicodedata.normalize("NFC", left) if left is not None else None,
                right=unicodedata.normalize("NFC", right) if right is not None else None,
                priority=int(match["priority"] or 0),
                order=len(rules),
                line_number=line_number,
            )
        )
    return RuleSet(locale=locale, rules=rules)


def load_ruleset(path: str | Path, locale: str | None = None) -> RuleSet:
    path = Path(path)
    return parse_ruleset(path.read_text(encoding="utf-8"), locale or path.stem)


def _is_separator(ch: str) -> bool:
    return ch.isspace() or unicodedata.category(ch).startswith("P")


def _word_start(text: str, position: int) -> bool:
    return position <= 0 or _is_separator(text[position - 1])


def _word_end(text: str, position: int) -> bool:
    return position >= len(text) or _is_separator(text[position])


def _left_context_ok(rule: RewriteRule, text: str, start: int) -> bool:
    anchor = rule.left
    if not anchor:
        return True
    require_boundary = anchor.startswith("^")
    literal = anchor[1:] if require_boundary else anchor
    if literal and not text.endswith(literal, 0, start):
        return False
    if require_boundary:
        edge = start - len(literal)
        if not _word_start(text, edge):
            return False
    return True


def _right_context_ok(rule: RewriteRule, text: str, end: int) -> bool:
    anchor = rule.right
    if not anchor:
        return True
    require_boundary = anchor.endswith("$")
    literal = anchor[:-1] if require_boundary else anchor
    if literal and not text.startswith(literal, end):
        return False
    if require_boundary:
        edge = end + len(literal)
        if not _word_end(text, edge):
            return False
    return True


def _passthrough_ok(ch: str) -> bool:
    """Characters strict mode tolerates: stripped later by normalize_ipa."""
    return ch.isspace() or unicodedata.category(ch).startswith("P")


def transliterate(
    rs: RuleSet,
    text: str,
    mode: Mode = "lenient",
    *,
    fired: set[int] | None = None,
) -> str:
    """Apply the rule set in one left-to-right pass and normalize.

    ``fired`` optionally collects the order indices of rules that
    applied (used by validation to find dead rules).
    """
    src = unicodedata.normalize("NFC", text)
    if rs.lowercase:
        src = src.lower()
    out: list[str] = []
    i = 0
    n = len(src)
    while i < n:
        best: RewriteRule | None = None
        best_key: tuple[int, int, int] | None = None
        for rule in rs.candidates(src[i]):
            if not src.startswith(rule.pattern, i):
                continue
            if not _left_context_ok(rule, src, i):
                continue
            if not _right_context_ok(rule, src, i + len(rule.pattern)):
                continue
            key = (rule.priority, len(rule.pattern), -rule.order)
            if best_key is None or key > best_key:
                best, best_key = rule, key
        if best is not None:
            if fired is not None:
                fired.add(best.order)
            out.append(best.replacement)
            i += len(best.pattern)
        else:
            ch = src[i]
            if mode == "strict" and not _passthrough_ok(ch):
                raise TransliterationError(i, ch)
            out.append(ch)
            i += 1
    return normalize_ipa("".join(out))


@dataclass(frozen=True)
class ValidationFailure:
    word: str
    output: str
    reason: str


@dataclass(frozen=True)
class ValidationReport:
    words_checked: int
    failures: tuple[ValidationFailure, ...]
    unfired_rules: tuple[RewriteRule, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def validate_ruleset(
    rs: RuleSet, inv: PhoneInventory, lexicon: Iterable[str]
) -> ValidationReport:
    """Transliterate each word and strict-segment the output.

    Reports words whose output fails segmentation, and rules that never
    fired across the whole lexicon.
    """
    failures: list[ValidationFailure] = []
    fired: set[int] = set()
    count = 0
    for word in lexicon:
        count += 1
        try:
            output = transliterate(rs, word, mode="strict", fired=fired)
        except TransliterationError as exc:
            failures.append(ValidationFailure(word, "", f"no rule: {exc}"))
            continue
        try:
            segment(inv, output, mode="strict")
        except SegmentationError as exc:
            failures.append(
                ValidationFailure(word, output, f"output does not segment: {exc}")
            )
    unfired = tuple(r for r in rs.rules if r.order not in fired)
    return ValidationReport(count, tuple(failures), unfired)


def _rules_root():
    return resources.files("ipakit").joinpath("data/rules")


def available_locales() -> tuple[str, ...]:
    names = []
    for entry in _rules_root().iterdir():
        if entry.name.endswith(".g2p"):
            names.append(entry.name[: -len(".g2p")])
    return tuple(sorted(names))


@lru_cache(maxsize=None)
def packaged_ruleset(locale: str) -> RuleSet:
    path = _rules_root().joinpath(f"{locale}.g2p")
    if not path.is_file():
        raise UnknownLocaleError(locale, available_locales())
    return parse_ruleset(path.read_text(encoding="utf-8"), locale)


def packaged_lexicon(locale: str) -> list[tuple[str, str]]:
    """Shipped (orthography, expected IPA) fixtures for one locale."""
    path = resources.files("ipakit").joinpath(f"data/lexicon/{locale}.tsv")
    if not path.is_file():
        raise UnknownLocaleError(locale, available_locales())
    pairs: list[tuple[str, str]] = []
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        word, expected = line.split("\t")
        pairs.append((word, expected))
    return pairs
