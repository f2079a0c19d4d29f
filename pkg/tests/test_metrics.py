import random

import pytest

from ipakit.metrics import (
    EditCosts,
    UNIT_COSTS,
    UtteranceScore,
    aggregate,
    cer,
    edit_distance,
    feature_costs,
    feature_substitution_cost,
    macro_mean,
    matches_macro_mean,
    per,
    pfer,
    unit_substitution,
)
from oracles import brute_force_edit_distance

ALPHABET = ["k", "kʰ", "p", "b", "a", "æ", "t͡ʃ", "s", "ʃ", "n"]


def random_pair(rng, max_len=4):
    return (
        [rng.choice(ALPHABET) for _ in range(rng.randint(0, max_len))],
        [rng.choice(ALPHABET) for _ in range(rng.randint(0, max_len))],
    )


class TestEditDistance:
    def test_identity(self):
        assert edit_distance(["k", "æ", "t"], ["k", "æ", "t"]) == 0.0

    def test_single_deletion(self):
        assert edit_distance(["k", "æ", "t"], ["k", "æ"]) == 1.0

    def test_empty_cases(self):
        assert edit_distance([], []) == 0.0
        assert edit_distance(["a"], []) == 1.0
        assert edit_distance([], ["a", "b"]) == 2.0

    def test_matches_brute_force_unit(self):
        rng = random.Random(11)
        for _ in range(50):
            ref, hyp = random_pair(rng)
            assert edit_distance(ref, hyp, UNIT_COSTS) == brute_force_edit_distance(ref, hyp, UNIT_COSTS)

    def test_matches_brute_force_feature(self, inv):
        rng = random.Random(13)
        costs = feature_costs(inv)
        for _ in range(50):
            ref, hyp = random_pair(rng)
            assert edit_distance(ref, hyp, costs) == pytest.approx(
                brute_force_edit_distance(ref, hyp, costs), abs=1e-12
            )


class TestPer:
    def test_identical(self):
        assert per(["k", "æ", "t"], ["k", "æ", "t"]) == 0.0

    def test_one_substitution_over_three(self):
        assert per(["k", "æ", "t"], ["kʰ", "æ", "t"]) == pytest.approx(1 / 3)

    def test_rate_can_exceed_one(self):
        assert per(["a"], ["t", "a", "s"]) == pytest.approx(2.0)

    def test_empty_reference_floor(self):
        assert per([], ["a"]) == 1.0


class TestCer:
    def test_identical(self):
        assert cer("abc", "abc") == 0.0

    def test_one_char(self):
        assert cer("abc", "axc") == pytest.approx(1 / 3)

    def test_empty_ref(self):
        assert cer("", "a") == 1.0


class TestFeatureCost:
    def test_identity(self, inv):
        assert feature_substitution_cost(inv, "k", "k") == 0.0

    def test_aspiration_one_twentyfourth(self, inv):
        assert feature_substitution_cost(inv, "k", "kʰ") == pytest.approx(1 / 24, abs=1e-15)

    def test_out_of_inventory_full_cost(self, inv):
        assert feature_substitution_cost(inv, "k", "☃") == 1.0
        assert feature_substitution_cost(inv, "☃", "☃") == 0.0

    def test_symmetric_and_bounded(self, inv):
        for a in ALPHABET:
            for b in ALPHABET:
                cost_ab = feature_substitution_cost(inv, a, b)
                assert cost_ab == feature_substitution_cost(inv, b, a)
                assert 0.0 <= cost_ab <= 1.0


class TestPfer:
    def test_identical(self, inv):
        assert pfer(inv, ["k", "æ", "t"], ["k", "æ", "t"]) == 0.0

    def test_aspiration_substitution(self, inv):
        assert pfer(inv, ["k", "æ", "t"], ["kʰ", "æ", "t"]) == pytest.approx(1 / 72)

    def test_deletion_costs_one(self, inv):
        assert pfer(inv, ["k", "æ", "t"], ["æ", "t"]) == pytest.approx(1 / 3)

    def test_pfer_never_exceeds_per(self, inv):
        rng = random.Random(17)
        for _ in range(200):
            ref, hyp = random_pair(rng, max_len=6)
            assert pfer(inv, ref, hyp) <= per(ref, hyp) + 1e-12

    def test_unit_override_recovers_per(self, inv):
        rng = random.Random(19)
        override = EditCosts(substitution=unit_substitution)
        for _ in range(100):
            ref, hyp = random_pair(rng, max_len=6)
            assert edit_distance(ref, hyp, override) / max(len(ref), 1) == pytest.approx(per(ref, hyp))


class TestMetricAxioms:
    def test_axioms_on_random_triples(self, inv):
        rng = random.Random(23)
        costs = feature_costs(inv)
        for _ in range(300):
            a, b = random_pair(rng, max_len=5)
            c = [rng.choice(ALPHABET) for _ in range(rng.randint(0, 5))]
            d_ab = edit_distance(a, b, costs)
            assert d_ab == pytest.approx(edit_distance(b, a, costs), abs=1e-9)
            assert edit_distance(a, a, costs) == 0.0
            d_ac = edit_distance(a, c, costs)
            d_bc = edit_distance(b, c, costs)
            assert d_ac <= d_ab + d_bc + 1e-9


class TestAggregate:
    def test_single_language_single_utterance(self):
        score = UtteranceScore(distance=1.0, ref_len=4)
        report = aggregate({"xx": [(score, score)]})
        assert report.overall_per == pytest.approx(0.25)
        assert report.overall_pfer == pytest.approx(0.25)

    def test_micro_average_within_language(self):
        # distances 1 and 3 over ref lengths 2 and 6: micro = 4/8.
        scores = [
            (UtteranceScore(1.0, 2), UtteranceScore(0.5, 2)),
            (UtteranceScore(3.0, 6), UtteranceScore(1.5, 6)),
        ]
        report = aggregate({"xx": scores})
        ls = report.per_language["xx"]
        assert ls.per_rate == pytest.approx(0.5)
        assert ls.pfer_rate == pytest.approx(0.25)
        assert ls.utterance_count == 2
        assert ls.total_ref_phones == 8
        assert ls.per_utterance_mean == pytest.approx((0.5 + 0.5) / 2)

    def test_overall_is_macro_mean(self):
        by_locale = {
            "aa": [(UtteranceScore(1.0, 10), UtteranceScore(0.5, 10))],
            "bb": [(UtteranceScore(3.0, 10), UtteranceScore(1.0, 10))],
        }
        report = aggregate(by_locale)
        rates = [ls.per_rate for ls in report.per_language.values()]
        assert report.overall_per == pytest.approx(sum(rates) / len(rates), abs=1e-12)

    def test_empty_input_is_error(self):
        with pytest.raises(ValueError):
            aggregate({})
        with pytest.raises(ValueError):
            aggregate({"xx": []})


class TestPublishedRowArithmetic:
    """Cross-checks of published per-language score rows against their
    printed overall cells (values are percentages)."""

    def test_seven_language_per_row(self):
        values = [17.363, 16.504, 14.337, 44.902, 29.615, 24.734, 26.855]
        assert macro_mean(values) == pytest.approx(24.901, abs=1e-3)
        assert matches_macro_mean(values, 24.901)

    def test_four_language_pfer_row(self):
        values = [20.790, 23.977, 21.292, 18.825]
        assert macro_mean(values) == pytest.approx(21.221, abs=1e-3)

    def test_annotator_agreement_row(self):
        values = [19.257, 22.129, 17.765, 19.132]
        assert macro_mean(values) == pytest.approx(19.571, abs=1e-3)

    def test_inconsistent_rows_flagged(self):
        # Two published rows whose printed overall is not the row mean.
        first_flagged_row = [70.891, 69.792, 68.691, 63.182]
        assert not matches_macro_mean(first_flagged_row, 63.182)
        second_flagged_row = [46.073, 36.297, 36.297, 30.050]
        assert not matches_macro_mean(second_flagged_row, 34.247)
