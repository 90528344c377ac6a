"""sumbench: a workbench for How-To summarization corpora and evaluation.

Corpus ingestion, ASR-transcript preprocessing, Lead-N baselines, word
dedup, ROUGE / Content-F1 scoring, curriculum training schedules, and a
blind human-evaluation survey service.
"""

from .baseline import Candidate, dedup_words, lead_n, load_candidates
from .corpus import (
    Corpus,
    CorpusStats,
    Document,
    corpus_stats,
    ingest_jsonl,
    ingest_subtitles,
    split,
)
from .curriculum import (
    ScheduleManifest,
    ScheduleSpec,
    Stage,
    TrainerManifest,
    build_schedule,
    emit_trainer_manifest,
    sample_dataset,
)
from .evalharness import ComparisonTable, RunSpec, compare, run_eval
from .metrics import (
    MetricConfig,
    MetricReport,
    Prf,
    content_f1,
    rouge_l,
    rouge_n,
    score_corpus,
    tokenize_for_metric,
)
from .preprocess import (
    Pipeline,
    PipelineConfig,
    anonymize_entities,
    normalize_case,
    restore_punctuation,
    run_pipeline,
    segment_sentences,
    strip_introduction,
)
from .surveyd import (
    ResponseLog,
    Survey,
    SurveyAggregate,
    SurveyItem,
    SurveyResponse,
    SurveyService,
    aggregate,
    build_survey,
    export_results,
)

__version__ = "0.1.0"

__all__ = [
    "Candidate",
    "ComparisonTable",
    "Corpus",
    "CorpusStats",
    "Document",
    "MetricConfig",
    "MetricReport",
    "Pipeline",
    "PipelineConfig",
    "Prf",
    "ResponseLog",
    "RunSpec",
    "ScheduleManifest",
    "ScheduleSpec",
    "Stage",
    "Survey",
    "SurveyAggregate",
    "SurveyItem",
    "SurveyResponse",
    "SurveyService",
    "TrainerManifest",
    "aggregate",
    "anonymize_entities",
    "build_schedule",
    "build_survey",
    "compare",
    "content_f1",
    "corpus_stats",
    "dedup_words",
    "emit_trainer_manifest",
    "export_results",
    "ingest_jsonl",
    "ingest_subtitles",
    "lead_n",
    "load_candidates",
    "normalize_case",
    "restore_punctuation",
    "rouge_l",
    "rouge_n",
    "run_eval",
    "run_pipeline",
    "sample_dataset",
    "score_corpus",
    "segment_sentences",
    "split",
    "strip_introduction",
    "tokenize_for_metric",
]
