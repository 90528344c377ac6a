"""Lead-N, word dedup, and candidate ingestion."""

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sumbench.baseline import (
    BaselineError,
    dedup_words,
    lead_n,
    load_candidates,
    save_candidates,
)
from sumbench.corpus import Document

PAPER_DEGENERATE = (
    "learn how to do the the the a in this free video clip clip clip series "
    "clip clip on how to make a and expert chef and expert in this unique and "
    "expert and expert. to utilize and professional . this unique expert for "
    "a professional."
)


def doc_with_sentences(n=5):
    sentences = [f"sentence {i}." for i in range(1, n + 1)]
    return Document(id="d1", raw_text=" ".join(sentences), sentences=sentences)


class TestLeadN:
    def test_first_three(self):
        candidate = lead_n(doc_with_sentences(5), 3)
        assert candidate.text == "sentence 1. sentence 2. sentence 3."
        assert candidate.origin == "lead_n"
        assert candidate.model_tag == "lead-3"

    def test_clamps_to_sentence_count(self):
        candidate = lead_n(doc_with_sentences(2), 3)
        assert candidate.text == "sentence 1. sentence 2."

    def test_unsegmented_document_errors_towards_preprocess(self):
        doc = Document(id="d1", raw_text="no sentences yet")
        with pytest.raises(BaselineError, match="preprocess"):
            lead_n(doc, 3)

    def test_n_must_be_positive(self):
        with pytest.raises(BaselineError):
            lead_n(doc_with_sentences(), 0)

    def test_prefix_property(self):
        doc = doc_with_sentences(6)
        for n in range(1, 8):
            text = lead_n(doc, n).text
            assert " ".join(doc.sentences).startswith(text)


def has_adjacent_repeat(tokens, max_ngram):
    for k in range(1, max_ngram + 1):
        for i in range(len(tokens) - 2 * k + 1):
            if tokens[i : i + k] == tokens[i + k : i + 2 * k]:
                return True
    return False


class TestDedupWords:
    def test_repeated_unigram(self):
        assert dedup_words("learn how to do the the the a") == "learn how to do the a"

    def test_mixed_repeats(self):
        assert dedup_words("clip clip clip series clip clip") == "clip series clip"

    def test_identity_on_repeat_free(self):
        text = "make a clean cut along the line"
        assert dedup_words(text) == text

    def test_phrase_collapsed_before_words(self):
        assert dedup_words("clip clip clip series clip clip series") == "clip series"

    def test_paper_degenerate_output_becomes_repeat_free(self):
        cleaned = dedup_words(PAPER_DEGENERATE)
        assert not has_adjacent_repeat(cleaned.split(), 3)
        assert dedup_words(cleaned) == cleaned

    def test_bigram_collapse(self):
        assert dedup_words("turn it turn it off") == "turn it off"

    @given(st.lists(st.sampled_from("abc"), max_size=20), st.integers(1, 4))
    def test_fixpoint_and_idempotence(self, tokens, max_ngram):
        text = " ".join(tokens)
        out = dedup_words(text, max_ngram)
        assert not has_adjacent_repeat(out.split(), max_ngram)
        assert dedup_words(out, max_ngram) == out
        assert len(out.split()) <= len(tokens)


class TestLoadCandidates:
    def test_three_valid_lines(self, tmp_path):
        path = tmp_path / "c.jsonl"
        rows = [{"doc_id": f"d{i}", "text": f"summary {i}"} for i in range(3)]
        path.write_text("\n".join(json.dumps(r) for r in rows) + "\n")
        loaded = load_candidates(path, model_tag="bert")
        assert len(loaded.candidates) == 3
        assert all(c.origin == "external_model" for c in loaded.candidates)
        assert all(c.model_tag == "bert" for c in loaded.candidates)

    def test_unknown_ids_reported(self, tmp_path):
        path = tmp_path / "c.jsonl"
        rows = [{"doc_id": "known", "text": "a"}, {"doc_id": "ghost", "text": "b"}]
        path.write_text("\n".join(json.dumps(r) for r in rows) + "\n")
        loaded = load_candidates(path, model_tag="m", known_ids={"known"})
        assert [c.doc_id for c in loaded.candidates] == ["known"]
        assert loaded.unknown_ids == ["ghost"]

    def test_empty_file_warns(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_text("")
        with pytest.warns(UserWarning):
            loaded = load_candidates(path, model_tag="m")
        assert loaded.candidates == []

    def test_malformed_line_names_number(self, tmp_path):
        path = tmp_path / "c.jsonl"
        path.write_text('{"doc_id": "a", "text": "ok"}\n{"oops": true}\n')
        with pytest.raises(BaselineError, match=":2"):
            load_candidates(path, model_tag="m")

    def test_round_trip(self, tmp_path):
        path = tmp_path / "c.jsonl"
        rows = [{"doc_id": "a", "text": "first"}, {"doc_id": "b", "text": "second"}]
        path.write_text("\n".join(json.dumps(r) for r in rows) + "\n")
        loaded = load_candidates(path, model_tag="m")
        out = save_candidates(loaded.candidates, tmp_path / "again.jsonl")
        assert load_candidates(out, model_tag="m").candidates == loaded.candidates
