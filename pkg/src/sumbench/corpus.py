"""Corpus ingestion and statistics.

Heterogeneous sources (news articles, How-To articles, video transcripts,
subtitle files) are normalized into one document model. JSONL is the
interchange format: one record per line with fields ``id``, ``source``,
``text`` and optional ``summary`` / ``meta`` / ``sentences``.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

SOURCES = ("cnn_dm", "wikihow", "how2", "youtube", "howto100m", "other")

SUBTITLE_FORMATS = ("vtt", "srt", "plain")


class CorpusError(Exception):
    """Raised for malformed corpus files or invariant violations."""


@dataclass
class Document:
    """One source text (article or transcript) with optional reference summary."""

    id: str
    source: str = "other"
    raw_text: str = ""
    sentences: list[str] = field(default_factory=list)
    reference_summary: str | None = None
    meta: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        if not self.id:
            raise CorpusError("document id must be nonempty")
        if self.source not in SOURCES:
            raise CorpusError(
                f"unknown source {self.source!r} for document {self.id!r}; "
                f"expected one of {', '.join(SOURCES)}"
            )
        if not self.raw_text.split():
            raise CorpusError(f"document {self.id!r} has no non-whitespace text")

    def word_count(self) -> int:
        return len(self.raw_text.split())

    def to_record(self) -> dict:
        record: dict = {"id": self.id, "source": self.source, "text": self.raw_text}
        if self.reference_summary is not None:
            record["summary"] = self.reference_summary
        if self.meta:
            record["meta"] = dict(self.meta)
        if self.sentences:
            record["sentences"] = list(self.sentences)
        return record

    @classmethod
    def from_record(cls, record: dict) -> "Document":
        missing = [key for key in ("id", "source", "text") if key not in record]
        if missing:
            raise CorpusError(f"record missing required field(s): {', '.join(missing)}")
        return cls(
            id=str(record["id"]),
            source=str(record["source"]),
            raw_text=str(record["text"]),
            sentences=[str(s) for s in record.get("sentences", [])],
            reference_summary=(
                str(record["summary"]) if record.get("summary") is not None else None
            ),
            meta={str(k): str(v) for k, v in record.get("meta", {}).items()},
        )


@dataclass
class CorpusStats:
    doc_count: int
    min_words: int
    max_words: int
    avg_words: float


@dataclass
class Corpus:
    """An ordered collection of documents with unique ids."""

    documents: list[Document] = field(default_factory=list)

    def __post_init__(self):
        seen: set[str] = set()
        for doc in self.documents:
            if doc.id in seen:
                raise CorpusError(f"duplicate document id {doc.id!r}")
            seen.add(doc.id)

    def __len__(self) -> int:
        return len(self.documents)

    def __iter__(self) -> Iterator[Document]:
        return iter(self.documents)

    def __getitem__(self, index: int) -> Document:
        return self.documents[index]

    def ids(self) -> list[str]:
        return [doc.id for doc in self.documents]

    def get(self, doc_id: str) -> Document | None:
        for doc in self.documents:
            if doc.id == doc_id:
                return doc
        return None

    def save(self, path: str | Path) -> Path:
        """Serialize to JSONL, one document per line, order preserved."""
        path = Path(path)
        with path.open("w", encoding="utf-8") as handle:
            for doc in self.documents:
                handle.write(json.dumps(doc.to_record(), sort_keys=True) + "\n")
        return path


def ingest_jsonl(path: str | Path) -> Corpus:
    """Read a JSONL corpus file, preserving document order.

    Raises CorpusError naming the offending line on malformed records and
    the offending id on duplicates.
    """
    path = Path(path)
    if not path.exists():
        raise CorpusError(f"corpus file not found: {path}")
    documents: list[Document] = []
    seen: set[str] = set()
    with path.open("r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"{path}:{lineno}: invalid JSON ({exc.msg})") from exc
            if not isinstance(record, dict):
                raise CorpusError(f"{path}:{lineno}: record is not an object")
            try:
                doc = Document.from_record(record)
            except CorpusError as exc:
                raise CorpusError(f"{path}:{lineno}: {exc}") from exc
            if doc.id in seen:
                raise CorpusError(f"{path}:{lineno}: duplicate document id {doc.id!r}")
            seen.add(doc.id)
            documents.append(doc)
    return Corpus(documents)


_VTT_TIMESTAMP = re.compile(r"^(?:\d{1,2}:)?\d{2}:\d{2}\.\d{3}$")
_SRT_TIMESTAMP = re.compile(r"^\d{1,2}:\d{2}:\d{2},\d{3}$")


def _cue_seconds(stamp: str, sep: str) -> float:
    main, frac = stamp.rsplit(sep, 1)
    parts = [int(p) for p in main.split(":")]
    while len(parts) < 3:
        parts.insert(0, 0)
    hours, minutes, seconds = parts
    return hours * 3600 + minutes * 60 + seconds + int(frac) / 1000.0


def _parse_vtt(text: str) -> list[tuple[float, str]]:
    lines = text.splitlines()
    if not lines or not lines[0].strip().startswith("WEBVTT"):
        raise CorpusError("not a WebVTT file: missing WEBVTT header")
    cues: list[tuple[float, str]] = []
    index = 0
    i = 1
    while i < len(lines):
        line = lines[i].strip()
        if not line or line.startswith(("NOTE", "STYLE", "REGION")):
            # skip blank lines and non-cue blocks
            if line.startswith(("NOTE", "STYLE", "REGION")):
                while i < len(lines) and lines[i].strip():
                    i += 1
            i += 1
            continue
        if "-->" not in line:
            # optional cue identifier line
            i += 1
            if i >= len(lines) or "-->" not in lines[i]:
                raise CorpusError(f"cue {index}: expected timestamp line, got {line!r}")
            line = lines[i].strip()
        start_raw = line.split("-->")[0].strip().split(" ")[0]
        if not _VTT_TIMESTAMP.match(start_raw):
            raise CorpusError(f"cue {index}: malformed timestamp {start_raw!r}")
        i += 1
        body: list[str] = []
        while i < len(lines) and lines[i].strip():
            body.append(lines[i].strip())
            i += 1
        cue_text = " ".join(" ".join(body).split())
        if cue_text:
            cues.append((_cue_seconds(start_raw, "."), cue_text))
        index += 1
    return cues


def _parse_srt(text: str) -> list[tuple[float, str]]:
    cues: list[tuple[float, str]] = []
    blocks = re.split(r"\n\s*\n", text.strip())
    for index, block in enumerate(b for b in blocks if b.strip()):
        lines = [l.strip() for l in block.splitlines() if l.strip()]
        if not lines:
            continue
        # first line is the cue number, second the timing
        if lines[0].isdigit():
            lines = lines[1:]
        if not lines or "-->" not in lines[0]:
            raise CorpusError(f"cue {index}: missing '-->' timing line")
        start_raw = lines[0].split("-->")[0].strip()
        if not _SRT_TIMESTAMP.match(start_raw):
            raise CorpusError(f"cue {index}: malformed timestamp {start_raw!r}")
        cue_text = " ".join(" ".join(lines[1:]).split())
        if cue_text:
            cues.append((_cue_seconds(start_raw, ","), cue_text))
    return cues


def ingest_subtitles(
    path: str | Path,
    format: str,
    doc_id: str | None = None,
    source: str = "other",
) -> Document:
    """Flatten a subtitle file into a single Document.

    Cue texts are concatenated in timestamp order with single-space joins;
    timing is discarded. Consecutive identical cue texts (rolling-caption
    artifacts) collapse to one occurrence.
    """
    if format not in SUBTITLE_FORMATS:
        raise CorpusError(f"unknown subtitle format {format!r}")
    path = Path(path)
    if not path.exists():
        raise CorpusError(f"subtitle file not found: {path}")
    text = path.read_text(encoding="utf-8")
    if format == "plain":
        raw = " ".join(text.split())
        if not raw:
            raise CorpusError(f"{path}: file is empty")
        return Document(id=doc_id or path.stem, source=source, raw_text=raw)

    cues = _parse_vtt(text) if format == "vtt" else _parse_srt(text)
    if not cues:
        raise CorpusError(f"{path}: no cues found")
    cues.sort(key=lambda cue: cue[0])
    texts: list[str] = []
    for _, cue_text in cues:
        if texts and texts[-1] == cue_text:
            continue
        texts.append(cue_text)
    return Document(
        id=doc_id or path.stem,
        source=source,
        raw_text=" ".join(texts),
        meta={"subtitle_format": format},
    )


def corpus_stats(corpus: Corpus) -> CorpusStats:
    """Word-count statistics over whitespace-tokenized raw text."""
    if len(corpus) == 0:
        raise CorpusError("cannot compute stats of an empty corpus")
    counts = [doc.word_count() for doc in corpus]
    return CorpusStats(
        doc_count=len(counts),
        min_words=min(counts),
        max_words=max(counts),
        avg_words=sum(counts) / len(counts),
    )


def split(
    corpus: Corpus,
    fractions: tuple[float, float, float],
    seed: int,
) -> tuple[Corpus, Corpus, Corpus]:
    """Deterministically partition a corpus into train/val/test.

    Sizes are floor(n * fraction) with the remainder distributed to the
    largest fractional parts. Relative document order is preserved within
    each part.
    """
    if len(fractions) != 3:
        raise CorpusError("expected exactly three fractions (train, val, test)")
    if any(f < 0 for f in fractions):
        raise CorpusError("fractions must be nonnegative")
    if abs(sum(fractions) - 1.0) > 1e-9:
        raise CorpusError(f"fractions must sum to 1, got {sum(fractions)}")

    n = len(corpus)
    sizes = [int(n * f) for f in fractions]
    remainders = [n * f - s for f, s in zip(fractions, sizes)]
    for _ in range(n - sum(sizes)):
        largest = max(range(3), key=lambda i: (remainders[i], -i))
        sizes[largest] += 1
        remainders[largest] = -1.0

    indices = list(range(n))
    random.Random(seed).shuffle(indices)
    parts: list[list[Document]] = []
    offset = 0
    for size in sizes:
        chosen = sorted(indices[offset : offset + size])
        parts.append([corpus[i] for i in chosen])
        offset += size
    train, val, test = parts
    return Corpus(train), Corpus(val), Corpus(test)


def merge(corpora: list[Corpus]) -> Corpus:
    """Union of corpora; duplicate ids raise."""
    documents: list[Document] = []
    for corpus in corpora:
        documents.extend(corpus.documents)
    return Corpus(documents)
