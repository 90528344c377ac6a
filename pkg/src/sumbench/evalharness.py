"""End-to-end evaluation runs and cross-system comparison tables.

A run generates or loads candidates for a preprocessed corpus, optionally
dedup-postprocesses them, scores them, and persists a report whose content
is a pure function of its inputs (provenance carries content hashes, so
identical inputs give byte-identical reports).
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass, field
from pathlib import Path

from .baseline import Candidate, dedup_words, lead_n, load_candidates
from .corpus import Corpus
from .metrics import (
    METRIC_ORDER,
    MetricConfig,
    MetricReport,
    Prf,
    config_from_dict,
    score_corpus,
)

CANDIDATE_SOURCES = ("lead_n", "external_file")


class EvalError(Exception):
    pass


@dataclass
class RunSpec:
    name: str
    candidate_source: str
    n: int | None = None
    candidate_path: Path | None = None
    metric_config: MetricConfig = field(default_factory=MetricConfig)
    postprocess_dedup: bool = False
    dedup_max_ngram: int = 3

    def validate(self) -> None:
        if not self.name:
            raise EvalError("run name must be nonempty")
        if self.candidate_source not in CANDIDATE_SOURCES:
            raise EvalError(f"unknown candidate_source {self.candidate_source!r}")
        if self.candidate_source == "lead_n" and (self.n is None or self.n < 1):
            raise EvalError("lead_n runs require n >= 1")
        if self.candidate_source == "external_file" and self.candidate_path is None:
            raise EvalError("external_file runs require candidate_path")


def _corpus_hash(corpus: Corpus) -> str:
    digest = hashlib.sha256()
    for doc in corpus:
        digest.update(json.dumps(doc.to_record(), sort_keys=True).encode("utf-8"))
        digest.update(b"\n")
    return digest.hexdigest()


def _candidates_hash(candidates: list[Candidate]) -> str:
    digest = hashlib.sha256()
    for cand in sorted(candidates, key=lambda c: c.doc_id):
        digest.update(json.dumps([cand.doc_id, cand.text], sort_keys=True).encode("utf-8"))
        digest.update(b"\n")
    return digest.hexdigest()


def run_eval(spec: RunSpec, corpus: Corpus, out_dir: str | Path | None = None) -> MetricReport:
    """Execute one evaluation run and optionally persist <name>.json.

    Scored documents must carry references; missing ones raise with the
    offending doc ids listed.
    """
    spec.validate()

    unknown: list[str] = []
    if spec.candidate_source == "lead_n":
        candidates = [lead_n(doc, spec.n) for doc in corpus]
    else:
        loaded = load_candidates(
            spec.candidate_path, model_tag=spec.name, known_ids=set(corpus.ids())
        )
        candidates = loaded.candidates
        unknown = loaded.unknown_ids

    if spec.postprocess_dedup:
        candidates = [
            Candidate(c.doc_id, dedup_words(c.text, spec.dedup_max_ngram), c.origin, c.model_tag)
            for c in candidates
        ]

    scored_ids = {c.doc_id for c in candidates}
    unreferenced = sorted(
        doc.id for doc in corpus if doc.id in scored_ids and doc.reference_summary is None
    )
    if unreferenced:
        raise EvalError(
            "missing reference summaries for document(s): " + ", ".join(unreferenced)
        )
    references = {
        doc.id: doc.reference_summary
        for doc in corpus
        if doc.reference_summary is not None
    }

    report = score_corpus(candidates, references, spec.metric_config)
    report.name = spec.name
    report.provenance = {
        "run_name": spec.name,
        "candidate_source": spec.candidate_source,
        "corpus_sha256": _corpus_hash(corpus),
        "candidates_sha256": _candidates_hash(candidates),
        "metric_config": spec.metric_config.snapshot(),
        "unknown_candidate_ids": sorted(set(unknown)),
    }
    if out_dir is not None:
        out_dir = Path(out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        report.write_json(out_dir / f"{spec.name}.json")
    return report


@dataclass
class ComparisonTable:
    """Rows are runs, columns are aggregate metrics; None marks absence."""

    metrics: list[str]
    rows: list[tuple[str, dict[str, float | None]]]

    def cell(self, run_name: str, metric: str) -> float | None:
        for name, values in self.rows:
            if name == run_name:
                return values.get(metric)
        raise EvalError(f"no run named {run_name!r} in comparison")

    def to_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(["run"] + self.metrics)
        for name, values in self.rows:
            writer.writerow(
                [name]
                + ["" if values.get(m) is None else repr(values[m]) for m in self.metrics]
            )
        return buffer.getvalue()

    def to_text(self) -> str:
        headers = ["run"] + self.metrics
        table = [headers]
        for name, values in self.rows:
            table.append(
                [name]
                + [
                    "n/a" if values.get(m) is None else f"{values[m]:.4f}"
                    for m in self.metrics
                ]
            )
        widths = [max(len(row[i]) for row in table) for i in range(len(headers))]
        lines = []
        for index, row in enumerate(table):
            lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
            if index == 0:
                lines.append("  ".join("-" * w for w in widths))
        return "\n".join(lines) + "\n"


def _aggregate_value(value) -> float:
    return value.f1 if isinstance(value, Prf) else float(value)


def compare(
    reports: list[MetricReport],
    static_rows: dict[str, dict[str, float]] | None = None,
) -> ComparisonTable:
    """Build a Table-1-style comparison of aggregate scores.

    Static rows let externally cited numbers sit alongside computed runs;
    they are never recomputed. Missing metrics stay absent, never zero.
    """
    if not reports and not static_rows:
        raise EvalError("compare needs at least one report")
    present: set[str] = set()
    for report in reports:
        present.update(report.aggregates)
    for values in (static_rows or {}).values():
        present.update(values)
    metrics = [m for m in METRIC_ORDER if m in present]
    metrics += sorted(present - set(metrics))

    rows: list[tuple[str, dict[str, float | None]]] = []
    for report in reports:
        values = {
            m: _aggregate_value(report.aggregates[m]) if m in report.aggregates else None
            for m in metrics
        }
        rows.append((report.name or "unnamed", values))
    for name, cited in (static_rows or {}).items():
        rows.append((name, {m: cited.get(m) for m in metrics}))
    return ComparisonTable(metrics=metrics, rows=rows)


def spec_from_toml(path: str | Path) -> RunSpec:
    """Read a run spec from TOML; [metrics] table configures scoring."""
    try:
        import tomllib
    except ModuleNotFoundError:
        import tomli as tomllib

    path = Path(path)
    with path.open("rb") as handle:
        data = tomllib.load(handle)
    if "metrics" in data:
        metric_config = config_from_dict(data["metrics"], path.parent)
    else:
        metric_config = MetricConfig()
    candidate_path = data.get("candidate_path")
    spec = RunSpec(
        name=data.get("name", path.stem),
        candidate_source=data.get("candidate_source", "lead_n"),
        n=int(data["n"]) if "n" in data else None,
        candidate_path=(path.parent / candidate_path).resolve() if candidate_path else None,
        metric_config=metric_config,
        postprocess_dedup=bool(data.get("postprocess_dedup", False)),
        dedup_max_ngram=int(data.get("dedup_max_ngram", 3)),
    )
    spec.validate()
    return spec
