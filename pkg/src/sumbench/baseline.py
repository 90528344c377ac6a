"""Lead-N baseline, word dedup, and external candidate ingestion.

Abstractive model outputs enter the workbench as JSONL candidate files;
this module also provides the extractive Lead-N baseline and the adjacent
n-gram dedup used to clean degenerate decoder output.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple

from .corpus import Document

ORIGINS = ("human_reference", "lead_n", "external_model")


class BaselineError(Exception):
    pass


@dataclass
class Candidate:
    """A summary for a document, tagged by origin."""

    doc_id: str
    text: str
    origin: str
    model_tag: str | None = None

    def __post_init__(self):
        if not self.doc_id:
            raise BaselineError("candidate doc_id must be nonempty")
        if not self.text.split():
            raise BaselineError(f"candidate for {self.doc_id!r} has empty text")
        if self.origin not in ORIGINS:
            raise BaselineError(f"unknown candidate origin {self.origin!r}")


def lead_n(document: Document, n: int) -> Candidate:
    """First min(n, sentence_count) sentences joined by single spaces."""
    if n < 1:
        raise BaselineError("n must be at least 1")
    if not document.sentences:
        raise BaselineError(
            f"document {document.id!r} has no sentences; run the preprocess "
            "pipeline before taking a Lead-N baseline"
        )
    return Candidate(
        doc_id=document.id,
        text=" ".join(document.sentences[:n]),
        origin="lead_n",
        model_tag=f"lead-{n}",
    )


def dedup_words(text: str, max_ngram: int = 3) -> str:
    """Collapse immediately repeated k-grams (k = max_ngram down to 1).

    Runs to fixpoint: the output contains no adjacent repeated k-gram for
    any k <= max_ngram. Token order is otherwise preserved. Idempotent.
    """
    if max_ngram < 1:
        raise BaselineError("max_ngram must be at least 1")
    tokens = text.split()
    changed = True
    while changed:
        changed = False
        for k in range(max_ngram, 0, -1):
            i = 0
            while i + 2 * k <= len(tokens):
                if tokens[i : i + k] == tokens[i + k : i + 2 * k]:
                    del tokens[i + k : i + 2 * k]
                    changed = True
                else:
                    i += 1
    return " ".join(tokens)


class CandidateLoad(NamedTuple):
    candidates: list[Candidate]
    unknown_ids: list[str]


def load_candidates(
    path: str | Path,
    model_tag: str,
    known_ids: set[str] | None = None,
) -> CandidateLoad:
    """Read external-model candidates from JSONL of {doc_id, text}.

    When known_ids is given, candidates referencing unknown documents are
    excluded from the result and reported in unknown_ids.
    """
    path = Path(path)
    if not path.exists():
        raise BaselineError(f"candidate file not found: {path}")
    candidates: list[Candidate] = []
    unknown: list[str] = []
    with path.open("r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise BaselineError(f"{path}:{lineno}: invalid JSON ({exc.msg})") from exc
            if not isinstance(record, dict) or "doc_id" not in record or "text" not in record:
                raise BaselineError(f"{path}:{lineno}: expected object with doc_id and text")
            doc_id = str(record["doc_id"])
            if known_ids is not None and doc_id not in known_ids:
                unknown.append(doc_id)
                continue
            candidates.append(
                Candidate(
                    doc_id=doc_id,
                    text=str(record["text"]),
                    origin="external_model",
                    model_tag=model_tag,
                )
            )
    if not candidates and not unknown:
        warnings.warn(f"{path}: no candidates loaded", stacklevel=2)
    return CandidateLoad(candidates, unknown)


def save_candidates(candidates: list[Candidate], path: str | Path) -> Path:
    """Write candidates as JSONL of {doc_id, text}."""
    path = Path(path)
    with path.open("w", encoding="utf-8") as handle:
        for candidate in candidates:
            handle.write(
                json.dumps({"doc_id": candidate.doc_id, "text": candidate.text}, sort_keys=True)
                + "\n"
            )
    return path
