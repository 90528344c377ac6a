"""ROUGE-N, ROUGE-L, and Content-F1 scoring.

All metrics share one tokenizer (lowercase, whitespace split, outer
punctuation stripped) so candidate/reference comparisons are internally
consistent. No stemming, no synonym matching.

Content-F1 scores only content words: stopwords and domain buzz phrases
("in this free online video", ...) are removed from both sides, remaining
unigrams are aligned greedily in order, and fragmented alignments pay a
penalty of gamma * (chunks / matches) ** beta.
"""

from __future__ import annotations

import csv
import io
import json
import string
from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

_PUNCT = string.punctuation
_PUNCT_NO_ANGLES = _PUNCT.replace("<", "").replace(">", "")

#: Canonical column order for reports and comparison tables.
METRIC_ORDER = ("rouge-1", "rouge-2", "rouge-l", "content-f1")


class MetricsError(Exception):
    pass


def _data_text(name: str) -> str:
    return resources.files("sumbench").joinpath("data", name).read_text(encoding="utf-8")


def default_stoplist() -> frozenset[str]:
    return frozenset(w.strip().lower() for w in _data_text("stopwords.txt").splitlines() if w.strip())


def default_buzz_phrases() -> tuple[tuple[str, ...], ...]:
    phrases = []
    for line in _data_text("buzz_phrases.txt").splitlines():
        tokens = tuple(tokenize_for_metric(line))
        if tokens:
            phrases.append(tokens)
    return tuple(phrases)


def load_stoplist(path: str | Path) -> frozenset[str]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return frozenset(w.strip().lower() for w in lines if w.strip())


def load_buzz_phrases(path: str | Path) -> tuple[tuple[str, ...], ...]:
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    return tuple(tuple(tokenize_for_metric(l)) for l in lines if l.strip())


@dataclass
class MetricConfig:
    rouge_orders: frozenset[int] = frozenset({1, 2})
    include_rouge_l: bool = True
    stoplist: frozenset[str] | None = None
    buzz_phrases: tuple[tuple[str, ...], ...] | None = None
    penalty_gamma: float = 0.5
    penalty_beta: float = 3.0

    def __post_init__(self):
        if self.stoplist is None:
            self.stoplist = default_stoplist()
        else:
            self.stoplist = frozenset(w.lower() for w in self.stoplist)
        if self.buzz_phrases is None:
            self.buzz_phrases = default_buzz_phrases()
        self.rouge_orders = frozenset(self.rouge_orders)
        if not self.rouge_orders <= {1, 2}:
            raise MetricsError("rouge_orders must be a subset of {1, 2}")
        if not 0.0 <= self.penalty_gamma <= 1.0:
            raise MetricsError("penalty_gamma must be in [0, 1]")
        if self.penalty_beta <= 0.0:
            raise MetricsError("penalty_beta must be positive")

    def metric_names(self) -> list[str]:
        names = [f"rouge-{n}" for n in sorted(self.rouge_orders)]
        if self.include_rouge_l:
            names.append("rouge-l")
        names.append("content-f1")
        return names

    def snapshot(self) -> dict:
        """JSON-safe view for report provenance."""
        return {
            "rouge_orders": sorted(self.rouge_orders),
            "include_rouge_l": self.include_rouge_l,
            "stoplist_size": len(self.stoplist),
            "buzz_phrases": [" ".join(p) for p in self.buzz_phrases],
            "penalty_gamma": self.penalty_gamma,
            "penalty_beta": self.penalty_beta,
        }


@dataclass(frozen=True)
class Prf:
    precision: float
    recall: float
    f1: float

    @classmethod
    def from_pr(cls, precision: float, recall: float) -> "Prf":
        if precision + recall > 0:
            f1 = 2 * precision * recall / (precision + recall)
        else:
            f1 = 0.0
        return cls(precision, recall, f1)


def tokenize_for_metric(text: str) -> list[str]:
    """Lowercase, whitespace split, strip outer punctuation per token.

    Placeholder tokens like ``<person>`` are kept intact; tokens that are
    pure punctuation are dropped.
    """
    tokens = []
    for raw in text.lower().split():
        tok = raw.strip(_PUNCT_NO_ANGLES)
        if not (tok.startswith("<") and tok.endswith(">") and len(tok) > 2):
            tok = raw.strip(_PUNCT)
        if tok:
            tokens.append(tok)
    return tokens


def _ngrams(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def rouge_n(candidate: list[str], reference: list[str], n: int) -> Prf:
    """Clipped n-gram overlap precision/recall/F1."""
    if n < 1:
        raise MetricsError("n must be at least 1")
    cand_ngrams = _ngrams(candidate, n)
    ref_ngrams = _ngrams(reference, n)
    cand_total = sum(cand_ngrams.values())
    ref_total = sum(ref_ngrams.values())
    overlap = sum((cand_ngrams & ref_ngrams).values())
    precision = overlap / cand_total if cand_total else 0.0
    recall = overlap / ref_total if ref_total else 0.0
    return Prf.from_pr(precision, recall)


def lcs_length(a: list[str], b: list[str]) -> int:
    """Longest common subsequence length, two-row dynamic program."""
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        row = [0]
        for j, y in enumerate(b, start=1):
            if x == y:
                row.append(prev[j - 1] + 1)
            else:
                row.append(max(prev[j], row[j - 1]))
        prev = row
    return prev[-1]


def rouge_l(candidate: list[str], reference: list[str]) -> Prf:
    """LCS-based precision/recall/F1."""
    length = lcs_length(candidate, reference)
    precision = length / len(candidate) if candidate else 0.0
    recall = length / len(reference) if reference else 0.0
    return Prf.from_pr(precision, recall)


def _remove_buzz(tokens: list[str], phrases: tuple[tuple[str, ...], ...]) -> list[str]:
    if not phrases:
        return list(tokens)
    ordered = sorted((p for p in phrases if p), key=len, reverse=True)
    out: list[str] = []
    i = 0
    while i < len(tokens):
        for phrase in ordered:
            if tuple(tokens[i : i + len(phrase)]) == phrase:
                i += len(phrase)
                break
        else:
            out.append(tokens[i])
            i += 1
    return out


def content_tokens(tokens: list[str], config: MetricConfig) -> list[str]:
    """Drop buzz-phrase occurrences, then stopwords."""
    kept = _remove_buzz(tokens, config.buzz_phrases)
    return [t for t in kept if t not in config.stoplist]


def _greedy_align(candidate: list[str], reference: list[str]) -> tuple[int, int]:
    """Match each candidate token (left to right) to the first unused
    identical reference token. Returns (matches, chunk count) where a chunk
    is a maximal run of matches adjacent in both sequences.
    """
    positions: dict[str, deque[int]] = defaultdict(deque)
    for j, token in enumerate(reference):
        positions[token].append(j)
    pairs: list[tuple[int, int]] = []
    for i, token in enumerate(candidate):
        queue = positions.get(token)
        if queue:
            pairs.append((i, queue.popleft()))
    chunks = 0
    prev: tuple[int, int] | None = None
    for i, j in pairs:
        if prev is None or i != prev[0] + 1 or j != prev[1] + 1:
            chunks += 1
        prev = (i, j)
    return len(pairs), chunks


def content_f1(candidate: list[str], reference: list[str], config: MetricConfig) -> float:
    """Weighted F1 over content words with a fragmentation penalty.

    Either side reducing to zero content words scores 0. A single-chunk
    alignment pays no penalty, so identical content scores exactly 1.0.
    """
    cand = content_tokens(candidate, config)
    ref = content_tokens(reference, config)
    if not cand or not ref:
        return 0.0
    matches, chunks = _greedy_align(cand, ref)
    if matches == 0:
        return 0.0
    precision = matches / len(cand)
    recall = matches / len(ref)
    f1 = 2 * precision * recall / (precision + recall)
    if chunks <= 1:
        penalty = 0.0
    else:
        penalty = config.penalty_gamma * (chunks / matches) ** config.penalty_beta
    return f1 * (1.0 - penalty)


@dataclass
class MetricReport:
    """Per-document scores plus arithmetic-mean aggregates."""

    name: str = ""
    per_doc: dict[str, dict[str, Prf | float]] = field(default_factory=dict)
    aggregates: dict[str, Prf | float] = field(default_factory=dict)
    missing: list[str] = field(default_factory=list)
    provenance: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        def encode(value):
            if isinstance(value, Prf):
                return {"precision": value.precision, "recall": value.recall, "f1": value.f1}
            return value

        return {
            "name": self.name,
            "per_doc": {
                doc_id: {metric: encode(v) for metric, v in scores.items()}
                for doc_id, scores in self.per_doc.items()
            },
            "aggregates": {metric: encode(v) for metric, v in self.aggregates.items()},
            "missing": list(self.missing),
            "provenance": self.provenance,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "MetricReport":
        def decode(value):
            if isinstance(value, dict):
                return Prf(value["precision"], value["recall"], value["f1"])
            return float(value)

        return cls(
            name=data.get("name", ""),
            per_doc={
                doc_id: {metric: decode(v) for metric, v in scores.items()}
                for doc_id, scores in data.get("per_doc", {}).items()
            },
            aggregates={m: decode(v) for m, v in data.get("aggregates", {}).items()},
            missing=list(data.get("missing", [])),
            provenance=data.get("provenance", {}),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2) + "\n"

    def write_json(self, path: str | Path) -> Path:
        path = Path(path)
        path.write_text(self.to_json(), encoding="utf-8")
        return path

    @classmethod
    def read_json(cls, path: str | Path) -> "MetricReport":
        return cls.from_json_dict(json.loads(Path(path).read_text(encoding="utf-8")))

    def csv_rows(self) -> list[list[str]]:
        rows = [["doc_id", "metric", "precision", "recall", "f1"]]

        def row(doc_id, metric, value):
            if isinstance(value, Prf):
                return [doc_id, metric, repr(value.precision), repr(value.recall), repr(value.f1)]
            return [doc_id, metric, "", "", repr(value)]

        for doc_id in sorted(self.per_doc):
            for metric in sorted(self.per_doc[doc_id], key=metric_sort_key):
                rows.append(row(doc_id, metric, self.per_doc[doc_id][metric]))
        for metric in sorted(self.aggregates, key=metric_sort_key):
            rows.append(row("ALL", metric, self.aggregates[metric]))
        return rows

    def write_csv(self, path: str | Path) -> Path:
        path = Path(path)
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerows(self.csv_rows())
        path.write_text(buffer.getvalue(), encoding="utf-8")
        return path


def metric_sort_key(name: str):
    try:
        return (METRIC_ORDER.index(name), name)
    except ValueError:
        return (len(METRIC_ORDER), name)


def _mean(values: list[float]) -> float:
    return sum(values) / len(values)


def score_pair(candidate_text: str, reference_text: str, config: MetricConfig) -> dict:
    """Score one candidate/reference pair under every configured metric."""
    cand = tokenize_for_metric(candidate_text)
    ref = tokenize_for_metric(reference_text)
    scores: dict[str, Prf | float] = {}
    for n in sorted(config.rouge_orders):
        scores[f"rouge-{n}"] = rouge_n(cand, ref, n)
    if config.include_rouge_l:
        scores["rouge-l"] = rouge_l(cand, ref)
    scores["content-f1"] = content_f1(cand, ref, config)
    return scores


def score_corpus(candidates, references: dict[str, str], config: MetricConfig | None = None) -> MetricReport:
    """Score candidates against their references and aggregate.

    ``references`` maps doc_id to reference text. Every candidate must have
    a reference; reference documents with no candidate are listed in the
    report's ``missing`` field, not silently skipped.
    """
    if config is None:
        config = MetricConfig()
    seen: set[str] = set()
    for candidate in candidates:
        if candidate.doc_id in seen:
            raise MetricsError(f"multiple candidates for document {candidate.doc_id!r}")
        seen.add(candidate.doc_id)
    unreferenced = sorted(c.doc_id for c in candidates if c.doc_id not in references)
    if unreferenced:
        raise MetricsError(
            "missing reference for document(s): " + ", ".join(unreferenced)
        )

    per_doc: dict[str, dict[str, Prf | float]] = {}
    for candidate in candidates:
        per_doc[candidate.doc_id] = score_pair(
            candidate.text, references[candidate.doc_id], config
        )

    aggregates: dict[str, Prf | float] = {}
    if per_doc:
        for metric in config.metric_names():
            values = [per_doc[doc_id][metric] for doc_id in per_doc]
            if isinstance(values[0], Prf):
                aggregates[metric] = Prf(
                    _mean([v.precision for v in values]),
                    _mean([v.recall for v in values]),
                    _mean([v.f1 for v in values]),
                )
            else:
                aggregates[metric] = _mean(values)

    missing = sorted(doc_id for doc_id in references if doc_id not in seen)
    return MetricReport(per_doc=per_doc, aggregates=aggregates, missing=missing)


def config_from_dict(data: dict, base_dir: Path) -> MetricConfig:
    """Build a MetricConfig from a parsed TOML table.

    ``stoplist`` and ``buzz_phrases`` may name files (one entry per line,
    resolved against base_dir); omitted keys use packaged defaults.
    """
    stoplist = None
    if "stoplist" in data:
        stoplist = load_stoplist((base_dir / data["stoplist"]).resolve())
    buzz = None
    if "buzz_phrases" in data:
        buzz = load_buzz_phrases((base_dir / data["buzz_phrases"]).resolve())
    return MetricConfig(
        rouge_orders=frozenset(data.get("rouge_orders", (1, 2))),
        include_rouge_l=bool(data.get("include_rouge_l", True)),
        stoplist=stoplist,
        buzz_phrases=buzz,
        penalty_gamma=float(data.get("penalty_gamma", 0.5)),
        penalty_beta=float(data.get("penalty_beta", 3.0)),
    )


def config_from_toml(path: str | Path) -> MetricConfig:
    """Read a metric config file (TOML)."""
    try:
        import tomllib
    except ModuleNotFoundError:
        import tomli as tomllib

    path = Path(path)
    with path.open("rb") as handle:
        data = tomllib.load(handle)
    return config_from_dict(data, path.parent)
