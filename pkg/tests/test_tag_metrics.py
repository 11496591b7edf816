import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from headtags.errors import EmptyInput
from headtags.gen_metrics import PRF
from headtags.tag_metrics import (
    TagEvalConfig,
    f1_at_k,
    f1_at_m,
    f1_at_o,
    macro_report,
    match_count,
)

tags = st.lists(st.sampled_from(["alpha", "beta", "gamma", "delta", "epsilon"]),
                max_size=6)


class TestMatchCount:
    def test_two_shared(self):
        assert match_count(["a", "b", "c"], ["b", "c", "d"], "en") == 2

    def test_stemmed_match(self):
        # Both sides normalize to "run" under the English stemmer.
        assert match_count(["Running"], ["run"], "en") == 1

    def test_empty_pred(self):
        assert match_count([], ["a"], "en") == 0

    def test_duplicates_collapse(self):
        assert match_count(["a", "a", "a"], ["a"], "en") == 1


class TestF1AtK:
    def test_worked_prf_fixture(self):
        got = f1_at_k(["a", "b", "c"], ["b", "c", "d"], 3, "en")
        assert got.precision == pytest.approx(2 / 3, abs=1e-12)
        assert got.recall == pytest.approx(2 / 3, abs=1e-12)
        assert got.f1 == pytest.approx(2 / 3, abs=1e-12)

    def test_perfect_at_gold_size(self):
        got = f1_at_k(["b", "a"], ["a", "b"], 2, "en")
        assert got == PRF(1.0, 1.0, 1.0)

    def test_truncation_arithmetic(self):
        got = f1_at_k(["a", "b", "c", "d", "e"], ["a", "e"], 3, "en")
        assert got.precision == pytest.approx(1 / 3)
        assert got.recall == pytest.approx(1 / 2)
        assert got.f1 == pytest.approx(0.4)

    def test_k_must_be_positive(self):
        with pytest.raises(ValueError):
            f1_at_k(["a"], ["a"], 0, "en")

    def test_empty_pred_scores_zero(self):
        assert f1_at_k([], ["a"], 3, "en") == PRF(0.0, 0.0, 0.0)

    def test_precision_denominator_is_evaluated_count(self):
        # Two predictions, k=5: denominator stays 2.
        got = f1_at_k(["a", "x"], ["a"], 5, "en")
        assert got.precision == pytest.approx(0.5)


class TestF1AtM:
    def test_exact_match(self):
        assert f1_at_m(["a", "b"], ["a", "b"], "en") == PRF(1.0, 1.0, 1.0)

    def test_overprediction(self):
        got = f1_at_m(["a", "b", "c", "d"], ["a"], "en")
        assert got.precision == pytest.approx(0.25)
        assert got.recall == pytest.approx(1.0)
        assert got.f1 == pytest.approx(0.4)

    def test_empty_pred(self):
        assert f1_at_m([], ["a"], "en") == PRF(0.0, 0.0, 0.0)


class TestF1AtO:
    def test_identity(self):
        assert f1_at_o(["a", "b"], ["b", "a"], "en") == PRF(1.0, 1.0, 1.0)

    def test_fully_wrong(self):
        assert f1_at_o(["x", "y", "z"], ["a", "b", "c"], "en").f1 == 0.0

    def test_two_of_three(self):
        got = f1_at_o(["a", "b", "q"], ["a", "b", "c"], "en")
        assert got.f1 == pytest.approx(2 / 3)


class TestMacroReport:
    def test_single_record_is_itself(self):
        report = macro_report([PRF(0.25, 0.5, 1 / 3)])
        assert report["precision"] == pytest.approx(0.25)
        assert report["recall"] == pytest.approx(0.5)
        assert report["f1"] == pytest.approx(1 / 3)

    def test_mean_of_extremes(self):
        report = macro_report([PRF(1, 1, 1), PRF(0, 0, 0)])
        assert report["precision"] == report["recall"] == report["f1"] == 0.5

    def test_empty_raises(self):
        with pytest.raises(EmptyInput):
            macro_report([])

    @given(st.lists(
        st.builds(
            lambda p, r: PRF(p, r, 0.0 if p + r == 0 else 2 * p * r / (p + r)),
            st.floats(0, 1), st.floats(0, 1),
        ),
        min_size=1, max_size=20,
    ))
    def test_matches_bruteforce_mean(self, scores):
        report = macro_report(scores)
        assert report["f1"] == pytest.approx(sum(s.f1 for s in scores) / len(scores))


class TestConfig:
    def test_defaults(self):
        config = TagEvalConfig("en")
        assert config.k_values == (3, 5)
        assert config.dedup is True

    def test_k_values_validated(self):
        with pytest.raises(ValueError):
            TagEvalConfig("en", k_values=(0,))


class TestDedupSwitch:
    def test_duplicates_collapse_by_default(self):
        got = f1_at_m(["a", "a", "a"], ["a"], "en")
        assert got == PRF(1.0, 1.0, 1.0)

    def test_dedup_off_counts_occurrences(self):
        got = f1_at_m(["a", "a", "b"], ["a", "c"], "en", dedup=False)
        assert got.precision == pytest.approx(2 / 3)
        assert got.recall == pytest.approx(1 / 2)

    def test_dedup_off_never_beats_recall(self):
        base = f1_at_m(["a", "a"], ["a", "b"], "en", dedup=False)
        assert base.recall == pytest.approx(1 / 2)


@given(tags, tags)
@settings(max_examples=200)
def test_big_k_equals_f1_at_m(pred, gold):
    assert f1_at_k(pred, gold, 50, "en") == f1_at_m(pred, gold, "en")


@given(tags, tags, st.randoms(use_true_random=False))
@settings(max_examples=200)
def test_permuting_gold_changes_nothing(pred, gold, rng):
    shuffled = list(gold)
    rng.shuffle(shuffled)
    assert f1_at_k(pred, gold, 3, "en") == f1_at_k(pred, shuffled, 3, "en")
    assert f1_at_m(pred, gold, "en") == f1_at_m(pred, shuffled, "en")


@given(tags, tags, st.randoms(use_true_random=False))
@settings(max_examples=200)
def test_permuting_pred_preserves_set_metrics(pred, gold, rng):
    shuffled = list(pred)
    rng.shuffle(shuffled)
    assert f1_at_m(pred, gold, "en") == f1_at_m(shuffled, gold, "en")
    assert f1_at_o(pred, gold, "en") == f1_at_o(shuffled, gold, "en")


@given(tags, st.lists(st.sampled_from(["alpha", "beta", "gamma"]), min_size=1, max_size=4))
@settings(max_examples=200)
def test_adding_matching_prediction_never_drops_recall(pred, gold):
    before = f1_at_m(pred, gold, "en").recall
    after = f1_at_m(pred + [gold[0]], gold, "en").recall
    assert after >= before - 1e-12


@given(tags, tags)
@settings(max_examples=200)
def test_components_bounded_and_zero_iff_disjoint(pred, gold):
    got = f1_at_m(pred, gold, "en")
    assert 0.0 <= got.precision <= 1.0
    assert 0.0 <= got.recall <= 1.0
    assert 0.0 <= got.f1 <= 1.0
    disjoint = match_count(pred, gold, "en") == 0
    assert (got.f1 == 0.0) == disjoint
