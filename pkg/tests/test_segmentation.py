import unicodedata

import pytest
from hypothesis import given, settings, strategies as st

from ipakit.segmentation import (
    SegmentationError,
    join,
    normalize_ipa,
    segment,
)


class TestNormalize:
    def test_strips_stress_and_punctuation(self):
        assert normalize_ipa("ˈkæt.") == "kæt"

    def test_strips_tone_letters(self):
        assert normalize_ipa("ka˥ta") == "kata"

    def test_keeps_length_mark(self):
        assert normalize_ipa("kisːa") == "kisːa"

    def test_length_mark_configurable(self):
        assert normalize_ipa("kisːa", keep_length=False) == "kisa"

    def test_tonal_combining_marks_only_stripped_when_tonal(self):
        tonal_text = "káta"
        assert normalize_ipa(tonal_text, tonal=True) == "kata"
        assert normalize_ipa(tonal_text, tonal=False) == unicodedata.normalize("NFC", tonal_text)

    def test_nasal_tilde_survives_tonal_stripping(self):
        assert normalize_ipa("ɔ̃", tonal=True) == "ɔ̃"

    def test_whitespace_removed(self):
        assert normalize_ipa("k æ\tt\n") == "kæt"

    def test_output_is_nfc(self):
        decomposed = "é"
        out = normalize_ipa(decomposed)
        assert out == "é"

    def test_idempotent(self):
        for text in ["ˈkæt.", "ka˥ta", "kisːa", "t͡ʃa"]:
            once = normalize_ipa(text)
            assert normalize_ipa(once) == once


class TestSegment:
    def test_empty(self, inv):
        seg = segment(inv, "", "strict")
        assert seg.phones == ()
        assert seg.residue == ()

    def test_affricate_longest_match(self, inv):
        assert segment(inv, "t͡ʃa", "strict").phones == ("t͡ʃ", "a")

    def test_aspirated_longest_match(self, inv):
        assert segment(inv, "kʰæt", "strict").phones == ("kʰ", "æ", "t")

    def test_strict_unmatched_raises_with_position(self, inv):
        with pytest.raises(SegmentationError) as exc_info:
            segment(inv, "ka9ta", "strict")
        assert exc_info.value.position == 2
        assert exc_info.value.char == "9"

    def test_lenient_records_residue(self, inv):
        seg = segment(inv, "ka9ta", "lenient")
        assert seg.phones == ("k", "a", "t", "a")
        assert seg.residue == ((2, "9"),)
        assert seg.reconstruct() == "ka9ta"

    def test_tokens_interleave_in_order(self, inv):
        seg = segment(inv, "9kʰa7", "lenient")
        assert seg.tokens() == ("9", "kʰ", "a", "7")

    def test_phones_are_inventory_keys(self, inv):
        seg = segment(inv, "t͡ʃiŋɡoːɲ", "strict")
        assert all(p in inv for p in seg.phones)

    def test_long_vowel_single_phone(self, inv):
        assert segment(inv, "soː", "strict").phones == ("s", "oː")


class TestJoin:
    def test_basic(self):
        assert join(["k", "æ", "t"]) == "kæt"

    def test_empty(self):
        assert join([]) == ""

    def test_affricate(self):
        assert join(["t͡ʃ", "a"]) == "t͡ʃa"


_POOL = ["k", "kʰ", "t͡ʃ", "a", "æ", "oː", "ɲ", "s", "sː", "ŋ", "k͡p", "t", "i"]


@settings(max_examples=200, deadline=None)
@given(phones=st.lists(st.sampled_from(_POOL), min_size=0, max_size=12))
def test_character_level_round_trip(phones):
    from ipakit.inventory import default_inventory

    inv = default_inventory()
    text = join(phones)
    seg = segment(inv, text, "strict")
    assert join(seg.phones) == text


@settings(max_examples=200, deadline=None)
@given(text=st.text(min_size=0, max_size=30))
def test_lenient_reconstruction_property(text):
    from ipakit.inventory import default_inventory

    inv = default_inventory()
    normalized = normalize_ipa(text)
    seg = segment(inv, normalized, "lenient")
    assert seg.reconstruct() == normalized
    assert all(p in inv for p in seg.phones)
