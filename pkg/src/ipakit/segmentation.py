"""IPA normalization and greedy longest-match phone segmentation."""
from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from typing import Iterable, Literal

from .inventory import PhoneInventory

Mode = Literal["strict", "lenient"]

STRESS_MARKS = frozenset({"ˈ", "ˌ"})  # primary / secondary stress
TONE_LETTERS = frozenset(chr(cp) for cp in range(0x02E5, 0x02EA))  # ˥ ˦ ˧ ˨ ˩
# Combining marks that denote tone in tonal-language transcriptions:
# grave, acute, circumflex, macron, caron. Only stripped when the caller
# declares the material tonal; elsewhere these marks are segmental.
TONAL_COMBINING = frozenset({"̀", "́", "̂", "̄", "̌"})
LENGTH_MARK = "ː"


class SegmentationError(ValueError):
    """Strict-mode segmentation hit a character no phone key covers."""

    def __init__(self, position: int, char: str):
        super().__init__(f"unmatched character {char!r} at position {position}")
        self.position = position
        self.char = char


def normalize_ipa(text: str, *, tonal: bool = False, keep_length: bool = True) -> str:
    """Strip non-phonetic material and return NFC-normalized IPA.

    Removes whitespace, punctuation, stress marks, tone letters, and
    (for tonal input) the combining tone diacritics. The length mark is
    kept by default; pass ``keep_length=False`` to treat length as
    suprasegmental too.
    """
    out = []
    for ch in unicodedata.normalize("NFD", text):
        if ch.isspace():
            continue
        category = unicodedata.category(ch)
        if category.startswith("P"):
            continue
        if ch in STRESS_MARKS or ch in TONE_LETTERS:
            continue
        if tonal and ch in TONAL_COMBINING:
            continue
        if not keep_length and ch == LENGTH_MARK:
            continue
        out.append(ch)
    return unicodedata.normalize("NFC", "".join(out))


@dataclass(frozen=True)
class Segmentation:
    """Phones recognized in the input plus any unmatched characters.

    ``residue`` holds (position, character) pairs for input characters
    no inventory key covered (lenient mode only). Interleaving phones
    and residue in position order reconstructs the input exactly.
    """

    phones: tuple[str, ...]
    residue: tuple[tuple[int, str], ...]

    def tokens(self) -> tuple[str, ...]:
        """Phones and residue characters merged back into input order."""
        residue_at = dict(self.residue)
        out: list[str] = []
        pos = 0
        phone_index = 0
        total = sum(len(p) for p in self.phones) + len(self.residue)
        while pos < total:
            if pos in residue_at:
                out.append(residue_at[pos])
                pos += 1
            else:
                phone = self.phones[phone_index]
                out.append(phone)
                phone_index += 1
                pos += len(phone)
        return tuple(out)

    def reconstruct(self) -> str:
        return "".join(self.tokens())


def segment(inv: PhoneInventory, text: str, mode: Mode = "strict") -> Segmentation:
    """Greedy longest-match scan of normalized IPA text.

    At each position the longest prefix that is an inventory key is
    consumed. In strict mode an unmatched character raises; in lenient
    mode it is recorded in the residue and the scan advances one
    character. The input is assumed to be ``normalize_ipa`` output.
    """
    phones: list[str] = []
    residue: list[tuple[int, str]] = []
    max_len = inv.max_phone_length
    i = 0
    n = len(text)
    while i < n:
        matched = None
        for length in range(min(max_len, n - i), 0, -1):
            candidate = text[i : i + length]
            if candidate in inv:
                matched = candidate
                break
        if matched is not None:
            phones.append(matched)
            i += len(matched)
        elif mode == "strict":
            raise SegmentationError(i, text[i])
        else:
            residue.append((i, text[i]))
            i += 1
    return Segmentation(tuple(phones), tuple(residue))


def join(phones: Iterable[str]) -> str:
    """Concatenate phones back into transcription text."""
    return "".join(phones)
