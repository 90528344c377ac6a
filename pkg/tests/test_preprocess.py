"""Pipeline step behavior: segmentation, punctuation, anonymization, intros."""

from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sumbench.corpus import Document
from sumbench.preprocess import (
    Pipeline,
    PipelineConfig,
    PipelineError,
    anonymize_entities,
    normalize_case,
    restore_punctuation,
    run_pipeline,
    segment_sentences,
    strip_introduction,
)


class TestSegmentSentences:
    def test_terminal_punctuation(self):
        assert segment_sentences("i like tea. you like coffee.") == [
            "i like tea.",
            "you like coffee.",
        ]

    def test_long_unpunctuated_run_capped(self):
        text = " ".join(f"w{i}" for i in range(130))
        sentences = segment_sentences(text, max_sentence_tokens=60)
        assert len(sentences) == 3
        assert all(len(s.split()) <= 60 for s in sentences)
        assert " ".join(sentences) == text

    def test_marker_split(self):
        assert segment_sentences("grab the drill and then set the torque") == [
            "grab the drill",
            "and then set the torque",
        ]

    def test_single_token_markers(self):
        assert segment_sentences("loosen the bolt now tighten it") == [
            "loosen the bolt",
            "now tighten it",
        ]

    def test_marker_never_opens_empty_sentence(self):
        assert segment_sentences("so grab the drill") == ["so grab the drill"]

    def test_plain_and_is_not_a_marker(self):
        assert segment_sentences("sand and paint the door") == ["sand and paint the door"]

    def test_whitespace_only_gives_empty_list(self):
        assert segment_sentences("   \n ") == []

    def test_question_and_exclamation(self):
        assert segment_sentences("is it on? great! proceed") == [
            "is it on?",
            "great!",
            "proceed",
        ]

    @given(
        st.lists(
            st.sampled_from(["fit", "the", "pipe.", "seal", "it", "now", "and", "then"]),
            min_size=1,
            max_size=80,
        )
    )
    def test_token_conservation(self, tokens):
        text = " ".join(tokens)
        segmented = segment_sentences(text, max_sentence_tokens=7)
        assert Counter(" ".join(segmented).split()) == Counter(text.split())


class TestRestorePunctuation:
    def test_appends_period(self):
        assert restore_punctuation(["hello there"]) == "hello there."

    def test_keeps_question_mark(self):
        assert restore_punctuation(["is it on?"]) == "is it on?"

    def test_per_sentence(self):
        assert restore_punctuation(["step one", "step two."]) == "step one. step two."

    def test_collapses_terminal_runs(self):
        assert restore_punctuation(["wow!!", "really?!"]) == "wow! really!"

    @given(st.lists(st.sampled_from(["fit the pipe", "ready?", "done.", "go!"]), max_size=6))
    def test_idempotent(self, sentences):
        once = restore_punctuation(sentences)
        assert restore_punctuation(segment_sentences(once)) == once


class TestAnonymize:
    def test_single_name(self):
        assert anonymize_entities("this is john smith", ["john smith"]) == "this is <person>"

    def test_no_hits_identity(self):
        text = "tighten the chuck before drilling"
        assert anonymize_entities(text, ["john smith"]) == text

    def test_longest_match_first(self):
        out = anonymize_entities("john smith met john", ["john smith", "john"])
        assert out == "<person> met <person>"

    def test_case_insensitive(self):
        assert anonymize_entities("talk to John SMITH today", ["john smith"]) == (
            "talk to <person> today"
        )

    def test_whole_word_only(self):
        assert anonymize_entities("johnson is a surname", ["john"]) == "johnson is a surname"

    def test_empty_gazetteer_warns_and_returns_input(self):
        with pytest.warns(UserWarning):
            assert anonymize_entities("hello world", []) == "hello world"


class TestStripIntroduction:
    def test_greeting_and_self_intro_removed(self):
        sentences = ["hi!", "hello, this is <person>.", "today we prune roses."]
        assert strip_introduction(sentences) == ["today we prune roses."]

    def test_no_match_unchanged(self):
        assert strip_introduction(["mix the epoxy first."]) == ["mix the epoxy first."]

    def test_never_empties(self):
        assert strip_introduction(["hello!"]) == ["hello!"]

    def test_at_most_two_removed(self):
        sentences = ["hi.", "hello.", "hey there.", "work begins."]
        assert strip_introduction(sentences) == ["hey there.", "work begins."]

    def test_non_leading_match_kept(self):
        sentences = ["start the saw.", "this is the hard part."]
        assert strip_introduction(sentences) == sentences

    def test_welcome_to_removed(self):
        sentences = ["welcome to the workshop.", "clamp the board."]
        assert strip_introduction(sentences) == ["clamp the board."]

    def test_custom_rules(self):
        sentences = ["subscribe below.", "cut the pipe."]
        assert strip_introduction(sentences, (r"^subscribe\b",)) == ["cut the pipe."]


class TestNormalizeCase:
    def test_lowercases(self):
        assert normalize_case("Mix The EPOXY") == "mix the epoxy"

    def test_preserves_placeholder(self):
        assert normalize_case("<person> waves") == "<person> waves"

    def test_preserves_uppercase_placeholder_verbatim(self):
        assert normalize_case("<PERSON> Waves") == "<PERSON> waves"

    def test_idempotent(self):
        text = "already lower case."
        assert normalize_case(text) == text


class TestRunPipeline:
    def test_full_default_pipeline(self):
        doc = Document(id="v1", raw_text="Hi! This is John Smith. Plug in the router")
        config = PipelineConfig(gazetteer_path=None)
        out = run_pipeline(doc, config, gazetteer=["john smith"])
        assert out.sentences == ["plug in the router."]
        assert out.raw_text == "plug in the router."

    def test_normalize_only_still_segments(self):
        doc = Document(id="v1", raw_text="Mix The EPOXY. Wait An Hour")
        config = PipelineConfig(steps=("normalize_case",))
        out = run_pipeline(doc, config)
        assert out.raw_text == "mix the epoxy. wait an hour"
        assert out.sentences == ["mix the epoxy.", "wait an hour"]

    def test_deterministic(self):
        doc = Document(
            id="v1",
            raw_text="Hello, this is Jane Doe and then we fix the fence okay let us start",
        )
        config = PipelineConfig()
        first = run_pipeline(doc, config, gazetteer=["jane doe"])
        second = run_pipeline(doc, config, gazetteer=["jane doe"])
        assert first == second

    def test_summary_lowercased_by_default(self):
        doc = Document(
            id="v1", raw_text="Plug it in.", reference_summary="Plugging In The Router"
        )
        out = run_pipeline(doc, PipelineConfig(steps=("segment", "normalize_case")))
        assert out.reference_summary == "plugging in the router"

    def test_summary_untouched_when_none_mode(self):
        doc = Document(id="v1", raw_text="Plug it in.", reference_summary="Keep CASE")
        pipeline = Pipeline(PipelineConfig(steps=("normalize_case",)))
        assert pipeline.run(doc, summary_mode="none").reference_summary == "Keep CASE"

    def test_anonymize_requires_gazetteer_path(self):
        with pytest.raises(PipelineError):
            PipelineConfig(steps=("segment", "anonymize")).validate()

    def test_repeated_step_rejected(self):
        with pytest.raises(PipelineError):
            PipelineConfig(steps=("segment", "segment")).validate()

    def test_unknown_step_rejected(self):
        with pytest.raises(PipelineError):
            PipelineConfig(steps=("segment", "stem")).validate()

    def test_intro_strip_never_empties_document(self):
        doc = Document(id="v1", raw_text="Hello! Hi there everyone")
        config = PipelineConfig(steps=("segment", "restore_punct", "strip_intro", "normalize_case"))
        out = run_pipeline(doc, config)
        assert out.sentences

    def test_gazetteer_from_file(self, tmp_path):
        names = tmp_path / "names.txt"
        names.write_text("jane doe\njohn smith\n", encoding="utf-8")
        config = PipelineConfig(gazetteer_path=names)
        doc = Document(id="v1", raw_text="Ask Jane Doe. Then sand the door")
        out = run_pipeline(doc, config)
        assert "<person>" in out.raw_text
        assert "jane" not in out.raw_text
