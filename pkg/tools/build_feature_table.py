#!/usr/bin/env python3
"""Build the shipped articulatory feature table (data/feature_table.csv).

The table assigns 24 ternary features to every phone the toolkit knows
about. Rows are produced by expanding a curated base-segment chart with
compatible diacritics and modifier letters, so multi-character phones
(aspirated stops, affricates with tie bars, co-articulated consonants,
long and nasalized vowels, ...) get vectors that differ from their base
segment only in the features the modifier edits.

Run from the repository root:

    python tools/build_feature_table.py

The output is deterministic; regenerating must be a no-op unless this
script changed.
"""
from __future__ import annotations

import csv
import sys
import unicodedata
from pathlib import Path

FEATURES = [
    "syl", "son", "cons", "cont", "delrel", "lat", "nas", "strid",
    "voi", "sg", "cg", "ant", "cor", "distr", "lab", "hi", "lo",
    "back", "round", "velaric", "tense", "long", "hitone", "hireg",
]

PLUS, MINUS, ZERO = "+", "-", "0"


def base_features() -> dict[str, str]:
    feats = {name: MINUS for name in FEATURES}
    # Features that only apply to a subclass default to "unspecified".
    for name in ("ant", "distr", "hi", "lo", "back", "tense", "hitone", "hireg"):
        feats[name] = ZERO
    return feats


# Place definitions. Coronal places specify ant/distr; dorsal places
# specify hi/lo/back. Everything else stays unspecified (0).
PLACES = {
    "bilabial":       {"lab": PLUS},
    "labiodental":    {"lab": PLUS},
    "dental":         {"cor": PLUS, "ant": PLUS, "distr": PLUS},
    "alveolar":       {"cor": PLUS, "ant": PLUS, "distr": MINUS},
    "postalveolar":   {"cor": PLUS, "ant": MINUS, "distr": PLUS},
    "retroflex":      {"cor": PLUS, "ant": MINUS, "distr": MINUS},
    "alveolopalatal": {"cor": PLUS, "ant": MINUS, "distr": PLUS,
                       "hi": PLUS, "lo": MINUS, "back": MINUS},
    "palatal":        {"hi": PLUS, "lo": MINUS, "back": MINUS},
    "velar":          {"hi": PLUS, "lo": MINUS, "back": PLUS},
    "uvular":         {"hi": MINUS, "lo": MINUS, "back": PLUS},
    "pharyngeal":     {"lo": PLUS, "back": PLUS, "hi": MINUS},
    "glottal":        {},
    "labiovelar":     {"lab": PLUS, "round": PLUS, "hi": PLUS,
                       "lo": MINUS, "back": PLUS},
    "labiopalatal":   {"lab": PLUS, "round": PLUS, "hi": PLUS,
                       "lo": MINUS, "back": MINUS},
}

MANNERS = {
    # cons, son, cont, delrel, nas, lat
    "stop":        {"cons": PLUS, "son": MINUS, "cont": MINUS},
    "affricate":   {"cons": PLUS, "son": MINUS, "cont": MINUS, "delrel": PLUS},
    "fricative":   {"cons": PLUS, "son": MINUS, "cont": PLUS},
    "nasal":       {"cons": PLUS, "son": PLUS, "cont": MINUS, "nas": PLUS},
    "trill":       {"cons": PLUS, "son": PLUS, "cont": PLUS},
    "tap":         {"cons": PLUS, "son": PLUS, "cont": MINUS},
    "latapprox":   {"cons": PLUS, "son": PLUS, "cont": PLUS, "lat": PLUS},
    "latfric":     {"cons": PLUS, "son": MINUS, "cont": PLUS, "lat": PLUS},
    "lattap":      {"cons": PLUS, "son": PLUS, "cont": MINUS, "lat": PLUS},
    "approximant": {"cons": MINUS, "son": PLUS, "cont": PLUS},
    # Laryngeals pattern with glides rather than true consonants.
    "laryngeal":   {"cons": MINUS, "son": MINUS, "cont": PLUS},
}


def consonant(place: str, manner: str, voiced: bool, **extra: str) -> dict[str, str]:
    feats = base_features()
    feats.update(MANNERS[manner])
    feats.update(PLACES[place])
    feats["voi"] = PLUS if voiced else MINUS
    if manner in ("nasal", "trill", "tap", "latapprox", "lattap", "approximant"):
        feats["voi"] = PLUS if voiced else MINUS
    feats.update(extra)
    return feats


def vowel(hi: str, lo: str, back: str, rnd: str, tense: str, **extra: str) -> dict[str, str]:
    feats = base_features()
    feats.update({
        "syl": PLUS, "son": PLUS, "cons": MINUS, "cont": PLUS,
        "voi": PLUS, "hi": hi, "lo": lo, "back": back, "round": rnd,
        "tense": tense,
    })
    feats.update(extra)
    return feats


# (symbol, place, manner, voiced). Class tags drive modifier compatibility.
PULMONIC_CONSONANTS = [
    ("p", "bilabial", "stop", False),
    ("b", "bilabial", "stop", True),
    ("t", "alveolar", "stop", False),
    ("d", "alveolar", "stop", True),
    ("ʈ", "retroflex", "stop", False),
    ("ɖ", "retroflex", "stop", True),
    ("c", "palatal", "stop", False),
    ("ɟ", "palatal", "stop", True),
    ("k", "velar", "stop", False),
    ("ɡ", "velar", "stop", True),
    ("g", "velar", "stop", True),          # ASCII alias of ɡ, common in G2P output
    ("q", "uvular", "stop", False),
    ("ɢ", "uvular", "stop", True),
    ("ʡ", "pharyngeal", "stop", False),
    ("m", "bilabial", "nasal", True),
    ("ɱ", "labiodental", "nasal", True),
    ("n", "alveolar", "nasal", True),
    ("ɳ", "retroflex", "nasal", True),
    ("ɲ", "palatal", "nasal", True),
    ("ŋ", "velar", "nasal", True),
    ("ɴ", "uvular", "nasal", True),
    ("ʙ", "bilabial", "trill", True),
    ("r", "alveolar", "trill", True),
    ("ʀ", "uvular", "trill", True),
    ("ɾ", "alveolar", "tap", True),
    ("ɽ", "retroflex", "tap", True),
    ("ɺ", "alveolar", "lattap", True),
    ("ɸ", "bilabial", "fricative", False),
    ("β", "bilabial", "fricative", True),
    ("f", "labiodental", "fricative", False, {"strid": PLUS}),
    ("v", "labiodental", "fricative", True, {"strid": PLUS}),
    ("θ", "dental", "fricative", False),
    ("ð", "dental", "fricative", True),
    ("s", "alveolar", "fricative", False, {"strid": PLUS}),
    ("z", "alveolar", "fricative", True, {"strid": PLUS}),
    ("ʃ", "postalveolar", "fricative", False, {"strid": PLUS}),
    ("ʒ", "postalveolar", "fricative", True, {"strid": PLUS}),
    ("ʂ", "retroflex", "fricative", False, {"strid": PLUS}),
    ("ʐ", "retroflex", "fricative", True, {"strid": PLUS}),
    ("ɕ", "alveolopalatal", "fricative", False, {"strid": PLUS}),
    ("ʑ", "alveolopalatal", "fricative", True, {"strid": PLUS}),
    ("ç", "palatal", "fricative", False),
    ("ʝ", "palatal", "fricative", True),
    ("x", "velar", "fricative", False),
    ("ɣ", "velar", "fricative", True),
    ("χ", "uvular", "fricative", False, {"strid": PLUS}),
    ("ʁ", "uvular", "fricative", True, {"strid": PLUS}),
    ("ħ", "pharyngeal", "fricative", False),
    ("ʕ", "pharyngeal", "fricative", True),
    ("ʜ", "pharyngeal", "trill", False),
    ("ʢ", "pharyngeal", "trill", True),
    ("h", "glottal", "laryngeal", False, {"sg": PLUS}),
    ("ɦ", "glottal", "laryngeal", True, {"sg": PLUS}),
    ("ʔ", "glottal", "laryngeal", False, {"cont": MINUS, "cg": PLUS}),
    ("ɬ", "alveolar", "latfric", False),
    ("ɮ", "alveolar", "latfric", True),
    ("ʋ", "labiodental", "approximant", True),
    ("ɹ", "alveolar", "approximant", True),
    ("ɻ", "retroflex", "approximant", True),
    ("j", "palatal", "approximant", True),
    ("ɰ", "velar", "approximant", True),
    ("w", "labiovelar", "approximant", True),
    ("ʍ", "labiovelar", "fricative", False),
    ("ɥ", "labiopalatal", "approximant", True),
    ("l", "alveolar", "latapprox", True),
    ("ɭ", "retroflex", "latapprox", True),
    ("ʎ", "palatal", "latapprox", True),
    ("ʟ", "velar", "latapprox", True),
]

IMPLOSIVES = [
    ("ɓ", "bilabial"), ("ɗ", "alveolar"), ("ʄ", "palatal"),
    ("ɠ", "velar"), ("ʛ", "uvular"),
]

CLICKS = [
    ("ʘ", "bilabial"), ("ǀ", "dental"), ("ǃ", "alveolar"),
    ("ǂ", "palatal"), ("ǁ", "alveolar"),
]

# (symbol, place, voiced, strident). Tie bar U+0361.
AFFRICATES = [
    ("t͡s", "alveolar", False, True),
    ("d͡z", "alveolar", True, True),
    ("ts", "alveolar", False, True),
    ("dz", "alveolar", True, True),
    ("t͡ʃ", "postalveolar", False, True),
    ("d͡ʒ", "postalveolar", True, True),
    ("tʃ", "postalveolar", False, True),
    ("dʒ", "postalveolar", True, True),
    ("t͡ɕ", "alveolopalatal", False, True),
    ("d͡ʑ", "alveolopalatal", True, True),
    ("tɕ", "alveolopalatal", False, True),
    ("dʑ", "alveolopalatal", True, True),
    ("t͡ʂ", "retroflex", False, True),
    ("d͡ʐ", "retroflex", True, True),
    ("tʂ", "retroflex", False, True),
    ("dʐ", "retroflex", True, True),
    ("ʈ͡ʂ", "retroflex", False, True),
    ("ɖ͡ʐ", "retroflex", True, True),
    ("p͡f", "labiodental", False, True),
    ("b͡v", "labiodental", True, True),
    ("t͡θ", "dental", False, False),
    ("c͡ç", "palatal", False, False),
    ("ɟ͡ʝ", "palatal", True, False),
    ("k͡x", "velar", False, False),
    ("q͡χ", "uvular", False, True),
    ("t͡ɬ", "alveolar", False, False),
    ("d͡ɮ", "alveolar", True, False),
]

# Doubly articulated labial-velar stops and nasal.
COARTICULATED = [
    ("k͡p", "stop", False),
    ("ɡ͡b", "stop", True),
    ("ŋ͡m", "nasal", True),
]

# (rows) hi, lo, back, round, tense. Central vowels use back=0.
VOWELS = [
    ("i", PLUS, MINUS, MINUS, MINUS, PLUS),
    ("y", PLUS, MINUS, MINUS, PLUS, PLUS),
    ("ɨ", PLUS, MINUS, ZERO, MINUS, PLUS),
    ("ʉ", PLUS, MINUS, ZERO, PLUS, PLUS),
    ("ɯ", PLUS, MINUS, PLUS, MINUS, PLUS),
    ("u", PLUS, MINUS, PLUS, PLUS, PLUS),
    ("ɪ", PLUS, MINUS, MINUS, MINUS, MINUS),
    ("ʏ", PLUS, MINUS, MINUS, PLUS, MINUS),
    ("ʊ", PLUS, MINUS, PLUS, PLUS, MINUS),
    ("e", MINUS, MINUS, MINUS, MINUS, PLUS),
    ("ø", MINUS, MINUS, MINUS, PLUS, PLUS),
    ("ɘ", MINUS, MINUS, ZERO, MINUS, PLUS),
    ("ɵ", MINUS, MINUS, ZERO, PLUS, PLUS),
    ("ɤ", MINUS, MINUS, PLUS, MINUS, PLUS),
    ("o", MINUS, MINUS, PLUS, PLUS, PLUS),
    ("ə", MINUS, MINUS, ZERO, MINUS, MINUS),
    ("ɛ", MINUS, MINUS, MINUS, MINUS, MINUS),
    ("œ", MINUS, MINUS, MINUS, PLUS, MINUS),
    ("ɜ", MINUS, MINUS, ZERO, MINUS, MINUS),
    ("ɞ", MINUS, MINUS, ZERO, PLUS, MINUS),
    ("ʌ", MINUS, MINUS, PLUS, MINUS, MINUS),
    ("ɔ", MINUS, MINUS, PLUS, PLUS, MINUS),
    ("æ", MINUS, PLUS, MINUS, MINUS, MINUS),
    ("ɐ", MINUS, PLUS, ZERO, MINUS, MINUS),
    ("a", MINUS, PLUS, ZERO, MINUS, PLUS),
    ("ɑ", MINUS, PLUS, PLUS, MINUS, PLUS),
    ("ɒ", MINUS, PLUS, PLUS, PLUS, PLUS),
]

# Modifier characters and the features they edit. Combining marks attach
# directly after the base letters; spacing modifier letters follow them.
MOD_ASPIRATED = ("ʰ", {"sg": PLUS})
MOD_BREATHY_ASP = ("ʱ", {"sg": PLUS})
MOD_EJECTIVE = ("ʼ", {"cg": PLUS})
MOD_PALATALIZED = ("ʲ", {"hi": PLUS, "back": MINUS})
MOD_LABIALIZED = ("ʷ", {"round": PLUS, "lab": PLUS})
MOD_VELARIZED = ("ˠ", {"hi": PLUS, "back": PLUS})
MOD_PHARYNGEALIZED = ("ˤ", {"lo": PLUS, "back": PLUS})
MOD_LONG = ("ː", {"long": PLUS})
MOD_NASALIZED = ("̃", {"nas": PLUS})       # combining tilde
MOD_VOICELESS = ("̥", {"voi": MINUS})      # combining ring below
MOD_VOICED = ("̬", {"voi": PLUS})          # combining caron below
MOD_BREATHY = ("̤", {"sg": PLUS})          # combining diaeresis below
MOD_CREAKY = ("̰", {"cg": PLUS})           # combining tilde below
MOD_DENTAL = ("̪", {"ant": PLUS, "distr": PLUS})   # combining bridge below
MOD_APICAL = ("̺", {"distr": MINUS})       # combining inverted bridge below
MOD_LAMINAL = ("̻", {"distr": PLUS})       # combining square below
MOD_ATR = ("̘", {"tense": PLUS})           # combining left tack below
MOD_RTR = ("̙", {"tense": MINUS})          # combining right tack below
MOD_PRENASAL = ("ⁿ", {"nas": PLUS})        # superscript n, prefixed

SECONDARY = [MOD_PALATALIZED, MOD_LABIALIZED, MOD_VELARIZED, MOD_PHARYNGEALIZED]


class TableBuilder:
    def __init__(self) -> None:
        self.rows: list[tuple[str, dict[str, str]]] = []
        self.seen: set[str] = set()

    def add(self, symbol: str, feats: dict[str, str]) -> None:
        symbol = unicodedata.normalize("NFC", symbol)
        if symbol in self.seen:
            raise SystemExit(f"duplicate phone generated: {symbol!r}")
        self.seen.add(symbol)
        self.rows.append((symbol, dict(feats)))

    def derive(self, symbol: str, feats: dict[str, str],
               mods: list[tuple[str, dict[str, str]]],
               prefix: str = "") -> None:
        out = dict(feats)
        text = symbol
        for mod_char, edits in mods:
            out.update(edits)
            text += mod_char
        self.add(prefix + text, out)


def edits(*mods: tuple[str, dict[str, str]]) -> list[tuple[str, dict[str, str]]]:
    return list(mods)


def expand_consonant(b: TableBuilder, symbol: str, feats: dict[str, str],
                     voiced: bool, manner: str, coronal: bool) -> None:
    """Emit the base consonant plus its modifier combinations."""
    sonorant = manner in ("nasal", "trill", "tap", "latapprox", "lattap", "approximant")
    obstruent = not sonorant and manner != "laryngeal"

    place_opts: list[list[tuple[str, dict[str, str]]]] = [[]]
    if coronal:
        place_opts += [[MOD_DENTAL], [MOD_APICAL], [MOD_LAMINAL]]

    if manner == "laryngeal":
        for sec in [[]] + [[m] for m in (MOD_PALATALIZED, MOD_LABIALIZED)]:
            for length in ([], [MOD_LONG]):
                mods = sec + length
                if mods:
                    b.derive(symbol, feats, mods)
        return

    if sonorant:
        laryngeal_opts = [[], [MOD_VOICELESS], [MOD_BREATHY], [MOD_CREAKY]]
    elif voiced:
        laryngeal_opts = [[], [MOD_VOICELESS], [MOD_BREATHY_ASP], [MOD_CREAKY]]
    else:
        laryngeal_opts = [[], [MOD_ASPIRATED], [MOD_EJECTIVE], [MOD_VOICED]]

    for place in place_opts:
        for sec in [[]] + [[m] for m in SECONDARY]:
            for lar in laryngeal_opts:
                for length in ([], [MOD_LONG]):
                    mods = place + sec + lar + length
                    if not mods:
                        continue  # bare base already emitted
                    # Apical/laminal only vary the plain series.
                    if place and place[0][0] in (MOD_APICAL[0], MOD_LAMINAL[0]) and (sec or lar):
                        continue
                    b.derive(symbol, feats, mods)

    if obstruent and voiced and manner in ("stop", "affricate"):
        pren = dict(feats)
        pren.update(MOD_PRENASAL[1])
        b.add(MOD_PRENASAL[0] + symbol, pren)

    if sonorant and manner == "approximant":
        b.derive(symbol, feats, [MOD_NASALIZED])
        b.derive(symbol, feats, [MOD_NASALIZED, MOD_LONG])


def expand_vowel(b: TableBuilder, symbol: str, feats: dict[str, str]) -> None:
    tongue_opts = [[], [MOD_ATR], [MOD_RTR]]
    nasal_opts = [[], [MOD_NASALIZED]]
    phonation_opts = [[], [MOD_VOICELESS], [MOD_BREATHY], [MOD_CREAKY]]
    length_opts = [[], [MOD_LONG]]
    for tongue in tongue_opts:
        for phon in phonation_opts:
            for nas in nasal_opts:
                for length in length_opts:
                    # Root-position marks precede phonation, then nasality,
                    # then length: canonical combining order.
                    mods = tongue + phon + nas + length
                    if not mods:
                        continue
                    if tongue and (phon or nas):
                        continue  # keep ATR/RTR series plain apart from length
                    b.derive(symbol, feats, mods)
    b.derive(symbol, feats, [MOD_PHARYNGEALIZED])


def build() -> list[tuple[str, dict[str, str]]]:
    b = TableBuilder()

    for entry in PULMONIC_CONSONANTS:
        symbol, place, manner, voiced = entry[:4]
        extra = entry[4] if len(entry) > 4 else {}
        feats = consonant(place, manner, voiced, **extra)
        b.add(symbol, feats)
    for symbol, place in IMPLOSIVES:
        feats = consonant(place, "stop", True, cg=PLUS)
        b.add(symbol, feats)
    for symbol, place in CLICKS:
        feats = consonant(place, "stop", False, velaric=PLUS)
        if symbol == "ǁ":
            feats["lat"] = PLUS
        b.add(symbol, feats)
    for symbol, place, voiced, strident in AFFRICATES:
        feats = consonant(place, "affricate", voiced,
                          strid=PLUS if strident else MINUS)
        b.add(symbol, feats)
    for symbol, manner, voiced in COARTICULATED:
        feats = consonant("labiovelar", manner, voiced, round=MINUS)
        b.add(symbol, feats)
    for symbol, hi, lo, back, rnd, tense in VOWELS:
        b.add(symbol, vowel(hi, lo, back, rnd, tense))

    # Expansion passes reuse the already-recorded base features.
    bases = list(b.rows)
    vowel_symbols = {v[0] for v in VOWELS}
    coartic_symbols = {c[0] for c in COARTICULATED}
    affricate_info = {a[0]: a for a in AFFRICATES}
    pulmonic_info = {e[0]: e for e in PULMONIC_CONSONANTS}
    implosive_symbols = {i[0] for i in IMPLOSIVES}
    click_symbols = {c[0] for c in CLICKS}

    for symbol, feats in bases:
        if symbol in vowel_symbols:
            expand_vowel(b, symbol, feats)
        elif symbol in click_symbols:
            b.derive(symbol, feats, [MOD_ASPIRATED])
            b.derive(symbol, feats, [MOD_NASALIZED])
        elif symbol in implosive_symbols:
            for mods in ([MOD_PALATALIZED], [MOD_LABIALIZED], [MOD_LONG]):
                b.derive(symbol, feats, mods)
        elif symbol in coartic_symbols:
            for mods in ([MOD_LABIALIZED], [MOD_ASPIRATED], [MOD_LONG]):
                if symbol == "ŋ͡m" and mods == [MOD_ASPIRATED]:
                    continue
                b.derive(symbol, feats, mods)
        elif symbol in affricate_info:
            _, place, voiced, _ = affricate_info[symbol]
            coronal = PLACES[place].get("cor") == PLUS
            expand_consonant(b, symbol, feats, voiced, "affricate", coronal)
        else:
            _, place, manner, voiced = pulmonic_info[symbol][:4]
            coronal = PLACES[place].get("cor") == PLUS
            expand_consonant(b, symbol, feats, voiced, manner, coronal)

    return b.rows


def main() -> None:
    out_path = Path(__file__).resolve().parent.parent / "src" / "ipakit" / "data" / "feature_table.csv"
    out_path.parent.mkdir(parents=True, exist_ok=True)
    rows = build()
    with out_path.open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["ipa"] + FEATURES)
        for symbol, feats in rows:
            writer.writerow([symbol] + [feats[name] for name in FEATURES])
    sys.stderr.write(f"wrote {len(rows)} phones to {out_path}\n")


if __name__ == "__main__":
    main()
