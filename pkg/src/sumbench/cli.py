"""Single command-line entry point for every workbench workflow.

Exit codes: 0 success, 1 user error (bad arguments, unreadable inputs,
validation failures), 2 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import baseline, corpus, curriculum, evalharness, metrics, preprocess, surveyd

USER_ERRORS = (
    corpus.CorpusError,
    preprocess.PipelineError,
    baseline.BaselineError,
    metrics.MetricsError,
    curriculum.ScheduleError,
    evalharness.EvalError,
    surveyd.SurveyError,
    FileNotFoundError,
    ValueError,
)


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 1


def _require_files(*paths: str | Path | None) -> None:
    for path in paths:
        if path is not None and not Path(path).exists():
            raise FileNotFoundError(f"input file not found: {path}")


# ---------------------------------------------------------------- corpus

def _cmd_corpus_ingest(args) -> int:
    _require_files(*args.inputs)
    if args.format == "jsonl":
        if len(args.inputs) != 1:
            return _fail("jsonl ingest takes exactly one input file")
        loaded = corpus.ingest_jsonl(args.inputs[0])
    else:
        docs = [
            corpus.ingest_subtitles(path, format=args.format, source=args.source)
            for path in args.inputs
        ]
        loaded = corpus.Corpus(docs)
    loaded.save(args.out)
    print(f"wrote {len(loaded)} document(s) to {args.out}")
    return 0


def _cmd_corpus_stats(args) -> int:
    _require_files(args.corpus)
    stats = corpus.corpus_stats(corpus.ingest_jsonl(args.corpus))
    print(f"documents: {stats.doc_count}")
    print(f"min words: {stats.min_words}")
    print(f"max words: {stats.max_words}")
    print(f"avg words: {stats.avg_words:.1f}")
    return 0


# ------------------------------------------------------------- preprocess

def _cmd_preprocess_run(args) -> int:
    _require_files(args.config, getattr(args, "in"))
    if args.config is not None:
        config = preprocess.config_from_toml(args.config)
    else:
        # no gazetteer available without a config, so skip anonymization
        config = preprocess.PipelineConfig(
            steps=("segment", "restore_punct", "strip_intro", "normalize_case")
        )
    pipeline = preprocess.Pipeline(config)
    source = corpus.ingest_jsonl(getattr(args, "in"))
    processed = corpus.Corpus([pipeline.run(doc, summary_mode=args.summaries) for doc in source])
    processed.save(args.out)
    print(f"processed {len(processed)} document(s) to {args.out}")
    return 0


# --------------------------------------------------------------- baseline

def _cmd_baseline_lead(args) -> int:
    _require_files(getattr(args, "in"))
    source = corpus.ingest_jsonl(getattr(args, "in"))
    candidates = [baseline.lead_n(doc, args.n) for doc in source]
    baseline.save_candidates(candidates, args.out)
    print(f"wrote {len(candidates)} lead-{args.n} candidate(s) to {args.out}")
    return 0


def _cmd_baseline_dedup(args) -> int:
    if args.text is not None:
        print(baseline.dedup_words(args.text, args.max_ngram))
        return 0
    if getattr(args, "in") is None or args.out is None:
        return _fail("dedup needs --in and --out (or --text)")
    _require_files(getattr(args, "in"))
    loaded = baseline.load_candidates(getattr(args, "in"), model_tag="dedup")
    deduped = [
        baseline.Candidate(
            c.doc_id, baseline.dedup_words(c.text, args.max_ngram), c.origin, c.model_tag
        )
        for c in loaded.candidates
    ]
    baseline.save_candidates(deduped, args.out)
    print(f"deduped {len(deduped)} candidate(s) to {args.out}")
    return 0


# ---------------------------------------------------------------- metrics

def _cmd_metrics_score(args) -> int:
    _require_files(args.candidates, args.refs, args.config)
    config = metrics.config_from_toml(args.config) if args.config else metrics.MetricConfig()
    refs_corpus = corpus.ingest_jsonl(args.refs)
    references = {
        doc.id: doc.reference_summary
        for doc in refs_corpus
        if doc.reference_summary is not None
    }
    loaded = baseline.load_candidates(args.candidates, model_tag=args.name)
    report = metrics.score_corpus(loaded.candidates, references, config)
    report.name = args.name
    if args.out:
        report.write_json(args.out)
    if args.csv:
        report.write_csv(args.csv)
    for metric in sorted(report.aggregates, key=metrics.metric_sort_key):
        value = report.aggregates[metric]
        shown = value.f1 if isinstance(value, metrics.Prf) else value
        print(f"{metric}: {shown:.4f}")
    if report.missing:
        print(f"documents without candidates: {', '.join(report.missing)}", file=sys.stderr)
    return 0


# --------------------------------------------------------------- schedule

def _cmd_schedule_build(args) -> int:
    _require_files(args.spec)
    spec, paths = curriculum.spec_from_toml(args.spec)
    _require_files(*paths.values())
    corpora = {cid: corpus.ingest_jsonl(path) for cid, path in paths.items()}
    manifest = curriculum.build_schedule(spec, corpora)
    manifest.write(args.out)
    print(
        f"wrote {len(manifest.batches)} batch(es), "
        f"{len(manifest.example_ids())} example(s) to {args.out}"
    )
    return 0


def _cmd_schedule_trainer(args) -> int:
    overrides = {}
    for item in args.set or []:
        key, _, value = item.partition("=")
        if not _:
            return _fail(f"--set expects key=value, got {item!r}")
        field_type = curriculum.TrainerManifest.__dataclass_fields__.get(key)
        if field_type is None:
            return _fail(f"unknown trainer field {key!r}")
        caster = int if field_type.type in ("int",) else float
        overrides[key] = caster(value)
    manifest = curriculum.emit_trainer_manifest(args.out, **overrides)
    print(f"wrote trainer manifest to {args.out}")
    print(manifest.to_toml(), end="")
    return 0


# ------------------------------------------------------------------- eval

def _cmd_eval_run(args) -> int:
    _require_files(args.spec, args.corpus)
    spec = evalharness.spec_from_toml(args.spec)
    run_corpus = corpus.ingest_jsonl(args.corpus)
    report = evalharness.run_eval(spec, run_corpus, out_dir=args.out_dir)
    print(f"report written to {Path(args.out_dir) / (spec.name + '.json')}")
    for metric in sorted(report.aggregates, key=metrics.metric_sort_key):
        value = report.aggregates[metric]
        shown = value.f1 if isinstance(value, metrics.Prf) else value
        print(f"{metric}: {shown:.4f}")
    return 0


def _cmd_eval_compare(args) -> int:
    _require_files(*args.reports, args.static)
    reports = [metrics.MetricReport.read_json(path) for path in args.reports]
    static_rows = None
    if args.static:
        static_rows = json.loads(Path(args.static).read_text(encoding="utf-8"))
    table = evalharness.compare(reports, static_rows=static_rows)
    print(table.to_text(), end="")
    if args.out:
        out = Path(args.out)
        out.parent.mkdir(parents=True, exist_ok=True)
        out.with_suffix(".csv").write_text(table.to_csv(), encoding="utf-8")
        out.with_suffix(".txt").write_text(table.to_text(), encoding="utf-8")
        written = [out.with_suffix(".csv"), out.with_suffix(".txt")]
        if not args.no_figure:
            from .figures import render_comparison

            written.append(render_comparison(table, out.with_suffix(".png")))
        print("wrote " + ", ".join(str(p) for p in written))
    return 0


# ----------------------------------------------------------------- survey

def _cmd_survey_build(args) -> int:
    _require_files(args.machine, args.human)
    machine_pool = baseline.load_candidates(args.machine, model_tag="machine").candidates
    human_pool = baseline.load_candidates(args.human, model_tag="human").candidates
    for candidate in human_pool:
        candidate.origin = "human_reference"
    survey = surveyd.build_survey(
        machine_pool, human_pool, k=args.k, seed=args.seed, survey_id=args.id
    )
    survey.save(args.out)
    print(f"wrote survey {survey.survey_id!r} with {len(survey.items)} item(s) to {args.out}")
    return 0


def _cmd_survey_serve(args) -> int:
    _require_files(args.survey)
    import uvicorn

    from .surveyapi import bind_address, create_app

    survey = surveyd.Survey.load(args.survey)
    log = surveyd.ResponseLog(args.log)
    service = surveyd.SurveyService(survey, log)
    app = create_app(service, static_dir=args.static_dir)
    host, port = bind_address()
    if args.host:
        host = args.host
    if args.port:
        port = args.port
    uvicorn.run(app, host=host, port=port, log_level="info")
    return 0


def _cmd_survey_export(args) -> int:
    _require_files(args.survey)
    survey = surveyd.Survey.load(args.survey)
    log = surveyd.ResponseLog(args.log)
    agg = surveyd.aggregate(survey, log)
    paths = surveyd.export_results(agg, log, args.out)
    written = list(paths.values())
    if not args.no_figures:
        from .figures import render_survey_aggregate

        written.extend(render_survey_aggregate(agg, args.out))
    print("wrote " + ", ".join(str(p) for p in written))
    return 0


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sumbench",
        description="Summarization evaluation workbench: ingest, preprocess, "
        "baseline, score, schedule, eval, survey.",
    )
    top = parser.add_subparsers(dest="command", required=True)

    # corpus
    p_corpus = top.add_parser("corpus", help="ingest corpora and report statistics")
    sp = p_corpus.add_subparsers(dest="subcommand", required=True)
    p = sp.add_parser("ingest", help="normalize inputs into a corpus JSONL")
    p.add_argument("inputs", nargs="+", help="input file(s)")
    p.add_argument("--format", required=True, choices=("jsonl", "vtt", "srt", "plain"))
    p.add_argument("--out", required=True, help="output corpus JSONL")
    p.add_argument("--source", default="other", choices=corpus.SOURCES,
                   help="source tag for subtitle/plain inputs")
    p.set_defaults(func=_cmd_corpus_ingest)
    p = sp.add_parser("stats", help="word-count statistics for a corpus")
    p.add_argument("corpus", help="corpus JSONL")
    p.set_defaults(func=_cmd_corpus_stats)

    # preprocess
    p_pre = top.add_parser("preprocess", help="run the transcript cleanup pipeline")
    sp = p_pre.add_subparsers(dest="subcommand", required=True)
    p = sp.add_parser("run", help="apply the pipeline to a corpus")
    p.add_argument("--config", help="pipeline TOML (default: built-in steps, no anonymize)")
    p.add_argument("--in", dest="in", required=True, help="input corpus JSONL")
    p.add_argument("--out", required=True, help="output corpus JSONL")
    p.add_argument("--summaries", default="lower", choices=("lower", "full", "none"),
                   help="how to treat reference summaries")
    p.set_defaults(func=_cmd_preprocess_run)

    # baseline
    p_base = top.add_parser("baseline", help="Lead-N candidates and word dedup")
    sp = p_base.add_subparsers(dest="subcommand", required=True)
    p = sp.add_parser("lead", help="emit Lead-N candidates for a preprocessed corpus")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--in", dest="in", required=True, help="preprocessed corpus JSONL")
    p.add_argument("--out", required=True, help="candidate JSONL")
    p.set_defaults(func=_cmd_baseline_lead)
    p = sp.add_parser("dedup", help="collapse adjacent repeated n-grams")
    p.add_argument("--max-ngram", type=int, default=3)
    p.add_argument("--in", dest="in", help="candidate JSONL")
    p.add_argument("--out", help="output candidate JSONL")
    p.add_argument("--text", help="dedup a single string to stdout")
    p.set_defaults(func=_cmd_baseline_dedup)

    # metrics
    p_met = top.add_parser("metrics", help="score candidates against references")
    sp = p_met.add_subparsers(dest="subcommand", required=True)
    p = sp.add_parser("score", help="ROUGE and Content-F1 for a candidate file")
    p.add_argument("--candidates", required=True, help="candidate JSONL")
    p.add_argument("--refs", required=True, help="corpus JSONL carrying reference summaries")
    p.add_argument("--config", help="metric config TOML")
    p.add_argument("--out", help="report JSON path")
    p.add_argument("--csv", help="report CSV path")
    p.add_argument("--name", default="run", help="report name")
    p.set_defaults(func=_cmd_metrics_score)

    # schedule
    p_sched = top.add_parser("schedule", help="curriculum schedules and trainer manifest")
    sp = p_sched.add_subparsers(dest="subcommand", required=True)
    p = sp.add_parser("build", help="build a schedule manifest from a spec")
    p.add_argument("--spec", required=True, help="schedule spec TOML")
    p.add_argument("--out", required=True, help="manifest JSON path")
    p.set_defaults(func=_cmd_schedule_build)
    p = sp.add_parser("trainer", help="emit the trainer hyperparameter manifest")
    p.add_argument("--out", required=True, help="trainer TOML path")
    p.add_argument("--set", action="append", metavar="KEY=VALUE",
                   help="override a manifest field (repeatable)")
    p.set_defaults(func=_cmd_schedule_trainer)

    # eval
    p_eval = top.add_parser("eval", help="end-to-end evaluation runs and comparisons")
    sp = p_eval.add_subparsers(dest="subcommand", required=True)
    p = sp.add_parser("run", help="execute a run spec against a corpus")
    p.add_argument("--spec", required=True, help="run spec TOML")
    p.add_argument("--corpus", required=True, help="preprocessed corpus JSONL")
    p.add_argument("--out-dir", default="runs", help="report directory")
    p.set_defaults(func=_cmd_eval_run)
    p = sp.add_parser("compare", help="tabulate aggregate metrics across runs")
    p.add_argument("reports", nargs="+", help="report JSON file(s)")
    p.add_argument("--static", help="JSON of cited static rows {name: {metric: value}}")
    p.add_argument("--out", help="output basename; writes .csv, .txt and .png")
    p.add_argument("--no-figure", action="store_true", help="skip the chart")
    p.set_defaults(func=_cmd_eval_compare)

    # survey
    p_sur = top.add_parser("survey", help="blind human-evaluation service")
    sp = p_sur.add_subparsers(dest="subcommand", required=True)
    p = sp.add_parser("build", help="sample survey items from candidate pools")
    p.add_argument("--machine", required=True, help="machine candidate JSONL")
    p.add_argument("--human", required=True, help="human reference JSONL")
    p.add_argument("--k", type=int, default=25)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--id", default="survey", help="survey id")
    p.add_argument("--out", required=True, help="survey definition JSON")
    p.set_defaults(func=_cmd_survey_build)
    p = sp.add_parser("serve", help="serve the survey HTTP API")
    p.add_argument("--survey", required=True, help="survey definition JSON")
    p.add_argument("--log", required=True, help="append-only response log JSONL")
    p.add_argument("--host", help="override bind host")
    p.add_argument("--port", type=int, help="override bind port")
    p.add_argument("--static-dir", help="directory of UI assets to serve at /")
    p.set_defaults(func=_cmd_survey_serve)
    p = sp.add_parser("export", help="export responses CSV, aggregate JSON and charts")
    p.add_argument("--survey", required=True, help="survey definition JSON")
    p.add_argument("--log", required=True, help="response log JSONL")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--no-figures", action="store_true", help="skip the charts")
    p.set_defaults(func=_cmd_survey_export)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; 1 is our user-error code
        return 0 if exc.code == 0 else 1
    try:
        return args.func(args)
    except USER_ERRORS as exc:
        return _fail(str(exc))
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
