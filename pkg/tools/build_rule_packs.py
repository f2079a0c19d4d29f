#!/usr/bin/env python3
"""Generate the Japanese and Tamil rule packs.

Both scripts are mora/akshara based, so their packs are large but
mechanical: a sound table expanded into one rewrite rule per written
unit. Regenerate after editing the tables:

    python tools/build_rule_packs.py
"""
from __future__ import annotations

from pathlib import Path

RULES_DIR = Path(__file__).resolve().parent.parent / "src" / "ipakit" / "data" / "rules"

# Hiragana moras. Katakana equivalents are derived by codepoint shift.
HIRAGANA_MORAS = {
    "あ": "a", "い": "i", "う": "ɯ", "え": "e", "お": "o",
    "か": "ka", "き": "ki", "く": "kɯ", "け": "ke", "こ": "ko",
    "が": "ɡa", "ぎ": "ɡi", "ぐ": "ɡɯ", "げ": "ɡe", "ご": "ɡo",
    "さ": "sa", "し": "ɕi", "す": "sɯ", "せ": "se", "そ": "so",
    "ざ": "za", "じ": "d͡ʑi", "ず": "zɯ", "ぜ": "ze", "ぞ": "zo",
    "た": "ta", "ち": "t͡ɕi", "つ": "t͡sɯ", "て": "te", "と": "to",
    "だ": "da", "ぢ": "d͡ʑi", "づ": "zɯ", "で": "de", "ど": "do",
    "な": "na", "に": "ɲi", "ぬ": "nɯ", "ね": "ne", "の": "no",
    "は": "ha", "ひ": "çi", "ふ": "ɸɯ", "へ": "he", "ほ": "ho",
    "ば": "ba", "び": "bi", "ぶ": "bɯ", "べ": "be", "ぼ": "bo",
    "ぱ": "pa", "ぴ": "pi", "ぷ": "pɯ", "ぺ": "pe", "ぽ": "po",
    "ま": "ma", "み": "mi", "む": "mɯ", "め": "me", "も": "mo",
    "や": "ja", "ゆ": "jɯ", "よ": "jo",
    "ら": "ɾa", "り": "ɾi", "る": "ɾɯ", "れ": "ɾe", "ろ": "ɾo",
    "わ": "wa", "ゐ": "i", "ゑ": "e", "を": "o",
    "ぁ": "a", "ぃ": "i", "ぅ": "ɯ", "ぇ": "e", "ぉ": "o",
}

# Palatalized onsets for yōon (C + small ya/yu/yo).
YOON_ONSETS = {
    "き": "kʲ", "ぎ": "ɡʲ", "し": "ɕ", "じ": "d͡ʑ", "ち": "t͡ɕ",
    "ぢ": "d͡ʑ", "に": "ɲ", "ひ": "ç", "び": "bʲ", "ぴ": "pʲ",
    "み": "mʲ", "り": "ɾʲ",
}
SMALL_Y = {"ゃ": "a", "ゅ": "ɯ", "ょ": "o"}

# Consonant the sokuon (っ) copies, per following kana.
SOKUON_ONSET = {
    "か": "k", "き": "k", "く": "k", "け": "k", "こ": "k",
    "が": "ɡ", "ぎ": "ɡ", "ぐ": "ɡ", "げ": "ɡ", "ご": "ɡ",
    "さ": "s", "す": "s", "せ": "s", "そ": "s", "し": "ɕ",
    "ざ": "z", "ず": "z", "ぜ": "z", "ぞ": "z", "じ": "d",
    "た": "t", "ち": "t", "つ": "t", "て": "t", "と": "t",
    "だ": "d", "で": "d", "ど": "d",
    "ぱ": "p", "ぴ": "p", "ぷ": "p", "ぺ": "p", "ぽ": "p",
    "ば": "b", "び": "b", "ぶ": "b", "べ": "b", "ぼ": "b",
    "は": "h", "ひ": "ç", "へ": "h", "ほ": "h", "ふ": "ɸ",
}

# Moraic nasal ん assimilates in place to the following mora.
NASAL_LABIAL = "まみむめもばびぶべぼぱぴぷぺぽ"
NASAL_VELAR = "かきくけこがぎぐげご"

O_COLUMN = "おこそとのほもよろごぞどぼぽをょ"
E_COLUMN = "えけせてねへめれげぜでべぺぇ"

KATAKANA_EXTRAS = {
    "ファ": "ɸa", "フィ": "ɸi", "フェ": "ɸe", "フォ": "ɸo",
    "ティ": "ti", "ディ": "di", "トゥ": "tɯ", "ドゥ": "dɯ",
    "ウィ": "wi", "ウェ": "we", "ウォ": "wo",
    "ヴァ": "va", "ヴィ": "vi", "ヴ": "vɯ", "ヴェ": "ve", "ヴォ": "vo",
    "シェ": "ɕe", "ジェ": "d͡ʑe", "チェ": "t͡ɕe",
    "ツァ": "t͡sa", "ツェ": "t͡se", "ツォ": "t͡so",
}


def to_katakana(hira: str) -> str:
    return "".join(chr(ord(ch) + 0x60) if 0x3041 <= ord(ch) <= 0x3096 else ch for ch in hira)


def japanese_rules() -> list[str]:
    lines = [
        "# Japanese kana -> IPA (generated by tools/build_rule_packs.py)",
        "# Kana input only: kanji-bearing text must be converted to kana upstream.",
        "",
        "# prolonged sound mark",
        "ー -> ː",
        "",
    ]

    for script, conv in (("hiragana", lambda s: s), ("katakana", to_katakana)):
        lines.append(f"# {script}: yōon")
        for onset_kana, onset in YOON_ONSETS.items():
            for small, vowel in SMALL_Y.items():
                lines.append(f"{conv(onset_kana + small)} -> {onset}{vowel}")
        lines.append("")
        lines.append(f"# {script}: sokuon copies the next onset")
        for kana, onset in SOKUON_ONSET.items():
            lines.append(f"{conv('っ')} -> {onset} / _ {conv(kana)}")
        lines.append(f"{conv('っ')} -> / _ $")
        lines.append(f"{conv('っ')} ->")
        lines.append("")
        lines.append(f"# {script}: moraic nasal place assimilation")
        for kana in NASAL_LABIAL:
            lines.append(f"{conv('ん')} -> m / _ {conv(kana)}")
        for kana in NASAL_VELAR:
            lines.append(f"{conv('ん')} -> ŋ / _ {conv(kana)}")
        lines.append(f"{conv('ん')} -> ɴ / _ $")
        lines.append(f"{conv('ん')} -> n")
        lines.append("")
        lines.append(f"# {script}: long vowels written with う / い")
        for kana in O_COLUMN:
            lines.append(f"{conv('う')} -> ː / {conv(kana)} _")
        for kana in E_COLUMN:
            lines.append(f"{conv('い')} -> ː / {conv(kana)} _")
        lines.append("")
        lines.append(f"# {script}: plain moras")
        for kana, ipa in HIRAGANA_MORAS.items():
            lines.append(f"{conv(kana)} -> {ipa}")
        lines.append("")

    lines.append("# katakana extensions for loanwords")
    for kana, ipa in KATAKANA_EXTRAS.items():
        lines.append(f"{kana} -> {ipa}")
    lines.append("")
    return lines


TAMIL_CONSONANTS = {
    "க": "k", "ங": "ŋ", "ச": "s", "ஞ": "ɲ", "ட": "ʈ", "ண": "ɳ",
    "த": "t̪", "ந": "n̪", "ப": "p", "ம": "m", "ய": "j", "ர": "ɾ",
    "ல": "l", "வ": "ʋ", "ழ": "ɻ", "ள": "ɭ", "ற": "r", "ன": "n",
    "ஜ": "d͡ʒ", "ஷ": "ʂ", "ஸ": "s", "ஹ": "h",
}

TAMIL_VOWEL_SIGNS = {
    "ா": "aː", "ி": "i", "ீ": "iː", "ு": "u", "ூ": "uː",
    "ெ": "e", "ே": "eː", "ை": "ai", "ொ": "o", "ோ": "oː", "ௌ": "au",
}
TAMIL_PULLI = "்"

TAMIL_VOWELS = {
    "அ": "a", "ஆ": "aː", "இ": "i", "ஈ": "iː", "உ": "u", "ஊ": "uː",
    "எ": "e", "ஏ": "eː", "ஐ": "ai", "ஒ": "o", "ஓ": "oː", "ஔ": "au",
}


def tamil_rules() -> list[str]:
    lines = [
        "# Tamil script -> IPA (generated by tools/build_rule_packs.py)",
        "# Consonant signs carry an inherent a; the pulli (virama) removes it.",
        "",
        "# independent vowels",
    ]
    for letter, ipa in TAMIL_VOWELS.items():
        lines.append(f"{letter} -> {ipa}")
    lines.append("")
    for letter, onset in TAMIL_CONSONANTS.items():
        lines.append(f"# {letter} series")
        lines.append(f"{letter}{TAMIL_PULLI} -> {onset}")
        for sign, vowel in TAMIL_VOWEL_SIGNS.items():
            lines.append(f"{letter}{sign} -> {onset}{vowel}")
        lines.append(f"{letter} -> {onset}a")
        lines.append("")
    return lines


def main() -> None:
    (RULES_DIR / "ja.g2p").write_text("\n".join(japanese_rules()) + "\n", encoding="utf-8")
    (RULES_DIR / "ta.g2p").write_text("\n".join(tamil_rules()) + "\n", encoding="utf-8")
    print("wrote ja.g2p and ta.g2p")


if __name__ == "__main__":
    main()
