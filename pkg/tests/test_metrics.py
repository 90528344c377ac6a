"""Metric correctness against independent oracles and hand-derived values."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sumbench.baseline import Candidate
from sumbench.metrics import (
    MetricConfig,
    MetricReport,
    MetricsError,
    Prf,
    content_f1,
    content_tokens,
    lcs_length,
    rouge_l,
    rouge_n,
    score_corpus,
    tokenize_for_metric,
)

BUZZ_PHRASE = "learn from experts how to in this free online video"


def lcs_by_enumeration(a, b):
    """Brute force: try every subsequence of the shorter side."""
    short, other = (a, b) if len(a) <= len(b) else (b, a)
    best = 0
    for mask in range(1 << len(short)):
        sub = [short[i] for i in range(len(short)) if mask >> i & 1]
        if len(sub) > best and _is_subsequence(sub, other):
            best = len(sub)
    return best


def _is_subsequence(sub, seq):
    it = iter(seq)
    return all(tok in it for tok in sub)


def lcs_by_dp_table(a, b):
    """Full-table dynamic program, written independently of the metric."""
    m, n = len(a), len(b)
    table = [[0] * (n + 1) for _ in range(m + 1)]
    for i in range(1, m + 1):
        for j in range(1, n + 1):
            if a[i - 1] == b[j - 1]:
                table[i][j] = table[i - 1][j - 1] + 1
            else:
                table[i][j] = max(table[i - 1][j], table[i][j - 1])
    return table[m][n]


def test_lcs_oracles_agree_with_each_other():
    rng = random.Random(13)
    for _ in range(200):
        a = [rng.choice("abcd") for _ in range(rng.randint(0, 8))]
        b = [rng.choice("abcd") for _ in range(rng.randint(0, 8))]
        assert lcs_by_enumeration(a, b) == lcs_by_dp_table(a, b)


def test_lcs_length_matches_enumeration_oracle():
    rng = random.Random(29)
    for _ in range(300):
        a = [rng.choice("abcde") for _ in range(rng.randint(0, 8))]
        b = [rng.choice("abcde") for _ in range(rng.randint(0, 8))]
        assert lcs_length(a, b) == lcs_by_enumeration(a, b)


class TestTokenizer:
    def test_strips_outer_punctuation(self):
        assert tokenize_for_metric("Mix the epoxy.") == ["mix", "the", "epoxy"]

    def test_keeps_placeholder(self):
        assert tokenize_for_metric("<person> waves") == ["<person>", "waves"]

    def test_placeholder_with_trailing_punctuation(self):
        assert tokenize_for_metric("thanks, <person>!") == ["thanks", "<person>"]

    def test_empty(self):
        assert tokenize_for_metric("") == []

    def test_inner_apostrophe_kept(self):
        assert tokenize_for_metric("don't stop") == ["don't", "stop"]


class TestRougeN:
    def test_identity(self):
        prf = rouge_n(["the", "cat", "sat"], ["the", "cat", "sat"], 1)
        assert prf == Prf(1.0, 1.0, 1.0)

    def test_partial_overlap(self):
        prf = rouge_n(["the", "cat"], ["the", "cat", "sat"], 1)
        assert prf.precision == 1.0
        assert prf.recall == pytest.approx(2 / 3)
        assert prf.f1 == pytest.approx(0.8)

    def test_disjoint(self):
        prf = rouge_n(["a", "b"], ["c", "d"], 1)
        assert prf == Prf(0.0, 0.0, 0.0)

    def test_bigrams_clipped(self):
        # candidate repeats a bigram that appears once in the reference
        prf = rouge_n(["a", "b", "a", "b"], ["a", "b", "c"], 2)
        assert prf.precision == pytest.approx(1 / 3)
        assert prf.recall == pytest.approx(1 / 2)

    def test_empty_candidate(self):
        prf = rouge_n([], ["a"], 1)
        assert prf == Prf(0.0, 0.0, 0.0)

    def test_n_shorter_than_sequences(self):
        assert rouge_n(["a"], ["a"], 2) == Prf(0.0, 0.0, 0.0)

    @given(
        st.lists(st.sampled_from("abcd"), max_size=10),
        st.lists(st.sampled_from("abcd"), max_size=10),
        st.integers(min_value=1, max_value=3),
    )
    def test_duality(self, cand, ref, n):
        assert rouge_n(cand, ref, n).precision == rouge_n(ref, cand, n).recall


class TestRougeL:
    def test_derived_fixture(self):
        # reference [a,b,c,d], candidate [a,c,d]: LCS 3 (checked via oracle)
        assert lcs_by_enumeration(["a", "c", "d"], ["a", "b", "c", "d"]) == 3
        prf = rouge_l(["a", "c", "d"], ["a", "b", "c", "d"])
        assert prf.precision == 1.0
        assert prf.recall == 0.75
        assert prf.f1 == pytest.approx(6 / 7)

    def test_identity(self):
        assert rouge_l(["x", "y"], ["x", "y"]) == Prf(1.0, 1.0, 1.0)

    def test_reversal_of_distinct_tokens(self):
        ref = ["a", "b", "c", "d"]
        cand = list(reversed(ref))
        assert lcs_by_enumeration(cand, ref) == 1
        prf = rouge_l(cand, ref)
        assert prf.f1 == pytest.approx(0.25)

    def test_empty_sides(self):
        assert rouge_l([], ["a"]) == Prf(0.0, 0.0, 0.0)
        assert rouge_l(["a"], []) == Prf(0.0, 0.0, 0.0)

    @given(
        st.lists(st.sampled_from("abc"), max_size=9),
        st.lists(st.sampled_from("abc"), max_size=9),
    )
    @settings(max_examples=200)
    def test_matches_dp_oracle(self, cand, ref):
        assert lcs_length(cand, ref) == lcs_by_dp_table(cand, ref)


class TestContentF1:
    def test_pure_buzz_candidate_scores_zero(self):
        config = MetricConfig()
        cand = tokenize_for_metric(BUZZ_PHRASE)
        ref = tokenize_for_metric("prune the roses near the root")
        assert content_f1(cand, ref, config) == 0.0

    def test_identity_scores_one(self):
        config = MetricConfig()
        tokens = tokenize_for_metric("prune the roses near the root")
        assert content_f1(tokens, tokens, config) == 1.0

    def test_reversal_penalty(self):
        config = MetricConfig()
        ref = ["plant", "flower", "garden", "water"]
        cand = ["water", "garden", "flower", "plant"]
        assert content_f1(cand, ref, config) == 0.5

    def test_buzz_phrase_append_is_invariant(self):
        config = MetricConfig()
        ref = tokenize_for_metric("sand the board then paint it")
        cand = tokenize_for_metric("sand the board gently")
        appended = cand + tokenize_for_metric(BUZZ_PHRASE)
        assert content_f1(appended, ref, config) == content_f1(cand, ref, config)

    def test_stopword_append_is_invariant(self):
        config = MetricConfig()
        ref = tokenize_for_metric("sand the board then paint it")
        cand = tokenize_for_metric("sand the board gently")
        assert content_f1(cand + ["the", "of", "and"], ref, config) == content_f1(
            cand, ref, config
        )

    def test_zero_content_reference(self):
        config = MetricConfig()
        assert content_f1(["paint"], ["the", "of"], config) == 0.0

    def test_content_tokens_removes_buzz_before_stopwords(self):
        config = MetricConfig()
        tokens = tokenize_for_metric(f"first {BUZZ_PHRASE} second")
        assert content_tokens(tokens, config) == ["first", "second"]

    def test_gamma_zero_disables_penalty(self):
        config = MetricConfig(penalty_gamma=0.0)
        ref = ["plant", "flower", "garden", "water"]
        cand = ["water", "garden", "flower", "plant"]
        assert content_f1(cand, ref, config) == 1.0

    @given(
        st.lists(st.sampled_from(["plant", "water", "soil", "the", "and"]), max_size=8),
        st.lists(st.sampled_from(["plant", "water", "soil", "the", "and"]), max_size=8),
    )
    def test_score_in_unit_interval(self, cand, ref):
        score = content_f1(cand, ref, MetricConfig())
        assert 0.0 <= score <= 1.0


class TestMetricConfig:
    def test_gamma_bounds(self):
        with pytest.raises(MetricsError):
            MetricConfig(penalty_gamma=1.5)

    def test_beta_positive(self):
        with pytest.raises(MetricsError):
            MetricConfig(penalty_beta=0.0)

    def test_rouge_orders_subset(self):
        with pytest.raises(MetricsError):
            MetricConfig(rouge_orders=frozenset({3}))

    def test_stoplist_lowercased(self):
        config = MetricConfig(stoplist=frozenset({"The", "AND"}))
        assert config.stoplist == frozenset({"the", "and"})


class TestScoreCorpus:
    def _candidates(self):
        return [
            Candidate("a", "the cat sat", "external_model", "m"),
            Candidate("b", "dogs bark", "external_model", "m"),
        ]

    def test_aggregate_is_mean(self):
        refs = {"a": "the cat sat", "b": "dogs bark loudly today"}
        report = score_corpus(self._candidates(), refs, MetricConfig())
        r1 = report.aggregates["rouge-1"]
        a = report.per_doc["a"]["rouge-1"]
        b = report.per_doc["b"]["rouge-1"]
        assert r1.f1 == pytest.approx((a.f1 + b.f1) / 2)

    def test_single_doc_aggregate_equals_per_doc(self):
        refs = {"a": "the cat sat"}
        report = score_corpus(self._candidates()[:1], refs, MetricConfig())
        assert report.aggregates["rouge-1"] == report.per_doc["a"]["rouge-1"]

    def test_missing_reference_is_error(self):
        with pytest.raises(MetricsError, match="b"):
            score_corpus(self._candidates(), {"a": "the cat sat"}, MetricConfig())

    def test_uncovered_references_listed(self):
        refs = {"a": "the cat sat", "b": "dogs bark", "c": "unseen"}
        report = score_corpus(self._candidates(), refs, MetricConfig())
        assert report.missing == ["c"]

    def test_duplicate_candidate_rejected(self):
        cands = self._candidates() + [Candidate("a", "again", "external_model", "m")]
        with pytest.raises(MetricsError, match="a"):
            score_corpus(cands, {"a": "x y", "b": "z"}, MetricConfig())

    def test_json_round_trip(self, tmp_path):
        refs = {"a": "the cat sat", "b": "dogs bark loudly"}
        report = score_corpus(self._candidates(), refs, MetricConfig())
        report.name = "round-trip"
        path = report.write_json(tmp_path / "report.json")
        loaded = MetricReport.read_json(path)
        assert loaded == report

    def test_csv_has_expected_columns(self, tmp_path):
        refs = {"a": "the cat sat", "b": "dogs bark"}
        report = score_corpus(self._candidates(), refs, MetricConfig())
        path = report.write_csv(tmp_path / "report.csv")
        lines = path.read_text().splitlines()
        assert lines[0] == "doc_id,metric,precision,recall,f1"
        # 2 docs x 4 metrics + 4 aggregate rows
        assert len(lines) == 1 + 2 * 4 + 4
