"""Transcript preprocessing pipeline.

ASR output arrives as a long run of words with unreliable punctuation and
casing. The pipeline restores sentence boundaries and terminal punctuation,
strips greeting/introduction sentences, replaces known names with a
placeholder, and lowercases the text, producing model- and metric-ready
documents.

Every step is a deterministic rule-based pure function so results are
reproducible and auditable; no external NLP models are involved.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field, replace
from pathlib import Path

from .corpus import Document

PLACEHOLDER = "<person>"

STEP_NAMES = ("segment", "restore_punct", "anonymize", "strip_intro", "normalize_case")

DEFAULT_STEPS = ("segment", "restore_punct", "strip_intro", "anonymize", "normalize_case")

#: Markers that open a new clause in unpunctuated speech. "and then" spans
#: two tokens; the rest are single tokens.
DISCOURSE_MARKERS = ("so", "and then", "now", "okay", "next")

#: Anchored, case-insensitive patterns matched against the leading sentences:
#: greetings, self-introductions, and channel plugs.
DEFAULT_INTRO_RULES = (
    r"^(?:hi|hello|hey)\b",
    r"^this is\b",
    r"^my name is\b",
    r"^welcome to\b",
)

_TERMINALS = ".?!"
_TRAILING_WRAPPERS = "\"')]}"

_SINGLE_MARKERS = frozenset(m for m in DISCOURSE_MARKERS if " " not in m)

_PLACEHOLDER_SPLIT = re.compile(r"(<[^<>\s]+>)")


class PipelineError(Exception):
    """Raised for invalid pipeline configuration or failed steps."""


@dataclass
class PipelineConfig:
    """Ordered step list plus the knobs the steps need."""

    steps: tuple[str, ...] = DEFAULT_STEPS
    gazetteer_path: Path | None = None
    intro_rules: tuple[str, ...] = DEFAULT_INTRO_RULES
    max_sentence_tokens: int = 60

    def validate(self, gazetteer_provided: bool = False) -> None:
        if not self.steps:
            raise PipelineError("pipeline must have at least one step")
        unknown = [s for s in self.steps if s not in STEP_NAMES]
        if unknown:
            raise PipelineError(f"unknown step(s): {', '.join(unknown)}")
        if len(set(self.steps)) != len(self.steps):
            raise PipelineError("pipeline steps must not repeat")
        if "anonymize" in self.steps and self.gazetteer_path is None and not gazetteer_provided:
            raise PipelineError("anonymize step requires gazetteer_path")
        if self.max_sentence_tokens < 5:
            raise PipelineError("max_sentence_tokens must be at least 5")


def load_gazetteer(path: str | Path) -> list[str]:
    """One name per line, UTF-8; blank lines ignored."""
    names = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        name = " ".join(line.split())
        if name:
            names.append(name)
    return names


def _ends_sentence(token: str) -> bool:
    stripped = token.rstrip(_TRAILING_WRAPPERS)
    return bool(stripped) and stripped[-1] in _TERMINALS


def _marker_at(tokens: list[str], i: int) -> bool:
    word = tokens[i].lower()
    if word in _SINGLE_MARKERS:
        return True
    return word == "and" and i + 1 < len(tokens) and tokens[i + 1].lower() == "then"


def _split_run(tokens: list[str], max_tokens: int) -> list[str]:
    pieces: list[list[str]] = []
    current: list[str] = []
    for i, token in enumerate(tokens):
        if current and _marker_at(tokens, i):
            pieces.append(current)
            current = []
        current.append(token)
        if len(current) >= max_tokens:
            pieces.append(current)
            current = []
    if current:
        pieces.append(current)
    return [" ".join(p) for p in pieces]


def segment_sentences(text: str, max_sentence_tokens: int = 60) -> list[str]:
    """Split text into sentences without dropping or reordering any token.

    Splits at terminal punctuation when present. Runs without terminal
    punctuation split before a discourse marker or at max_sentence_tokens,
    whichever comes first.
    """
    tokens = text.split()
    if not tokens:
        return []
    sentences: list[str] = []
    current: list[str] = []
    for token in tokens:
        current.append(token)
        if _ends_sentence(token):
            sentences.append(" ".join(current))
            current = []
    if current:
        sentences.extend(_split_run(current, max_sentence_tokens))
    return sentences


def _terminate(sentence: str) -> str:
    s = sentence.strip()
    if not s:
        return s
    trimmed = s.rstrip(_TERMINALS)
    if trimmed == s:
        return s + "."
    mark = s[len(trimmed) :][-1]
    return trimmed.rstrip() + mark


def restore_punctuation(sentences: list[str]) -> str:
    """Ensure each sentence ends with exactly one of . ? ! and join them.

    A period is appended where no terminal mark exists; runs of terminal
    marks collapse to the last one. Idempotent.
    """
    return " ".join(_terminate(s) for s in sentences if s.strip())


def _gazetteer_pattern(names: list[str]) -> re.Pattern:
    # longest first so alternation prefers the longest span
    ordered = sorted({" ".join(n.split()) for n in names if n.strip()}, key=len, reverse=True)
    branches = [r"\s+".join(re.escape(tok) for tok in name.split()) for name in ordered]
    return re.compile(r"\b(?:" + "|".join(branches) + r")\b", re.IGNORECASE)


def anonymize_entities(text: str, gazetteer: list[str]) -> str:
    """Replace every gazetteer name with the placeholder token.

    Matching is case-insensitive on whole-word spans, longest match first.
    An empty gazetteer leaves the text unchanged and emits a warning.
    """
    if not any(n.strip() for n in gazetteer):
        warnings.warn("empty gazetteer: no entities anonymized", stacklevel=2)
        return text
    return _gazetteer_pattern(gazetteer).sub(PLACEHOLDER, text)


def strip_introduction(
    sentences: list[str], intro_rules: tuple[str, ...] | None = None
) -> list[str]:
    """Drop leading greeting/introduction sentences.

    Only the first two sentences are candidates and at least one sentence
    always survives.
    """
    patterns = [
        re.compile(rule, re.IGNORECASE)
        for rule in (DEFAULT_INTRO_RULES if intro_rules is None else intro_rules)
    ]
    out = list(sentences)
    removed = 0
    while removed < 2 and len(out) > 1:
        head = out[0].strip()
        if not any(p.search(head) for p in patterns):
            break
        out.pop(0)
        removed += 1
    return out


def normalize_case(text: str) -> str:
    """Lowercase all cased letters, preserving placeholder tokens verbatim."""
    parts = _PLACEHOLDER_SPLIT.split(text)
    return "".join(p if _PLACEHOLDER_SPLIT.fullmatch(p) else p.lower() for p in parts)


class Pipeline:
    """A configured pipeline with the gazetteer loaded once."""

    def __init__(self, config: PipelineConfig, gazetteer: list[str] | None = None):
        config.validate(gazetteer_provided=gazetteer is not None)
        self.config = config
        if gazetteer is not None:
            self.gazetteer = list(gazetteer)
        elif config.gazetteer_path is not None:
            self.gazetteer = load_gazetteer(config.gazetteer_path)
        else:
            self.gazetteer = []
        self._warned_empty = False

    def _apply(self, step: str, sentences: list[str] | None, text: str):
        if step == "segment":
            source = text if sentences is None else " ".join(sentences)
            return segment_sentences(source, self.config.max_sentence_tokens), text
        if step == "restore_punct":
            if sentences is None:
                sentences = segment_sentences(text, self.config.max_sentence_tokens)
            return [_terminate(s) for s in sentences if s.strip()], text
        if step == "strip_intro":
            if sentences is None:
                sentences = segment_sentences(text, self.config.max_sentence_tokens)
            return strip_introduction(sentences, self.config.intro_rules), text
        if step == "anonymize":
            if not self.gazetteer:
                if not self._warned_empty:
                    warnings.warn("empty gazetteer: no entities anonymized", stacklevel=2)
                    self._warned_empty = True
                return sentences, text
            pattern = _gazetteer_pattern(self.gazetteer)
            if sentences is None:
                return sentences, pattern.sub(PLACEHOLDER, text)
            return [pattern.sub(PLACEHOLDER, s) for s in sentences], text
        if step == "normalize_case":
            if sentences is None:
                return sentences, normalize_case(text)
            return [normalize_case(s) for s in sentences], text
        raise PipelineError(f"unknown step {step!r}")

    def run(self, document: Document, summary_mode: str = "lower") -> Document:
        """Apply the configured steps and return a new Document.

        The source text is always processed; the reference summary is
        lowercased by default (summary_mode="lower"), passed through the
        full pipeline with "full", or left alone with "none".
        """
        if summary_mode not in ("lower", "full", "none"):
            raise PipelineError(f"unknown summary_mode {summary_mode!r}")
        sentences: list[str] | None = None
        text = document.raw_text
        for step in self.config.steps:
            try:
                sentences, text = self._apply(step, sentences, text)
            except PipelineError:
                raise
            except Exception as exc:
                raise PipelineError(f"step {step!r} failed: {exc}") from exc
        if sentences is None:
            sentences = segment_sentences(text, self.config.max_sentence_tokens)

        summary = document.reference_summary
        if summary is not None and summary_mode == "lower":
            summary = normalize_case(summary)
        elif summary is not None and summary_mode == "full" and summary.split():
            summary_doc = self.run(
                replace(document, raw_text=summary, sentences=[], reference_summary=None),
                summary_mode="none",
            )
            summary = summary_doc.raw_text

        return replace(
            document,
            raw_text=" ".join(sentences),
            sentences=sentences,
            reference_summary=summary,
        )


def run_pipeline(
    document: Document,
    config: PipelineConfig,
    gazetteer: list[str] | None = None,
    summary_mode: str = "lower",
) -> Document:
    """Single-document convenience wrapper around Pipeline."""
    return Pipeline(config, gazetteer=gazetteer).run(document, summary_mode=summary_mode)


def config_from_toml(path: str | Path) -> PipelineConfig:
    """Read a pipeline config from TOML.

    Recognized keys: steps (list), gazetteer (path), intro_rules (list of
    patterns or a path to one pattern per line), max_sentence_tokens.
    """
    try:
        import tomllib
    except ModuleNotFoundError:
        import tomli as tomllib

    path = Path(path)
    with path.open("rb") as handle:
        data = tomllib.load(handle)

    steps = tuple(data.get("steps", DEFAULT_STEPS))
    gazetteer_path = data.get("gazetteer")
    if gazetteer_path is not None:
        gazetteer_path = (path.parent / gazetteer_path).resolve()
    rules = data.get("intro_rules")
    if isinstance(rules, str):
        rules_file = (path.parent / rules).resolve()
        rules = [l for l in rules_file.read_text(encoding="utf-8").splitlines() if l.strip()]
    config = PipelineConfig(
        steps=steps,
        gazetteer_path=gazetteer_path,
        intro_rules=tuple(rules) if rules is not None else DEFAULT_INTRO_RULES,
        max_sentence_tokens=int(data.get("max_sentence_tokens", 60)),
    )
    config.validate()
    return config
