"""Training-schedule and trainer-manifest generation.

The workbench never trains a model. It emits (a) an ordered or seeded
random schedule of example ids cut into batches and (b) a TOML manifest of
trainer hyperparameters (dual Adam learning rates) for an external
fine-tuning system to consume.
"""

from __future__ import annotations

import json
import random
import zlib
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

from .corpus import Corpus

MODES = ("ordered", "random")


class ScheduleError(Exception):
    pass


@dataclass
class Stage:
    corpus_id: str
    sampling_rate: float = 1.0

    def __post_init__(self):
        if not self.corpus_id:
            raise ScheduleError("stage corpus_id must be nonempty")
        if not 0.0 < self.sampling_rate <= 1.0:
            raise ScheduleError(
                f"sampling_rate must be in (0, 1], got {self.sampling_rate}"
            )


@dataclass
class ScheduleSpec:
    stages: list[Stage]
    mode: str = "ordered"
    seed: int = 0
    batch_size: int = 50
    shuffle_within_stage: bool = False

    def validate(self) -> None:
        if not self.stages:
            raise ScheduleError("schedule needs at least one stage")
        if self.mode not in MODES:
            raise ScheduleError(f"unknown mode {self.mode!r}; expected ordered or random")
        if self.batch_size < 1:
            raise ScheduleError("batch_size must be at least 1")


@dataclass
class ScheduleManifest:
    """Ordered batches of example ids.

    In ordered mode batches never cross stage boundaries; stage_boundaries[i]
    is the index one past the last batch of stage i.
    """

    batches: list[list[str]]
    stage_boundaries: list[int]
    mode: str
    seed: int
    batch_size: int

    def example_ids(self) -> list[str]:
        return [ex for batch in self.batches for ex in batch]

    def to_json(self) -> str:
        payload = {
            "mode": self.mode,
            "seed": self.seed,
            "batch_size": self.batch_size,
            "stage_boundaries": self.stage_boundaries,
            "batches": self.batches,
        }
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"

    def write(self, path: str | Path) -> Path:
        path = Path(path)
        path.write_text(self.to_json(), encoding="utf-8")
        return path

    @classmethod
    def read(cls, path: str | Path) -> "ScheduleManifest":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls(
            batches=[list(b) for b in data["batches"]],
            stage_boundaries=list(data["stage_boundaries"]),
            mode=data["mode"],
            seed=data["seed"],
            batch_size=data["batch_size"],
        )


@dataclass
class TrainerManifest:
    """Dual-optimizer hyperparameters for the external trainer.

    The decoder rate must stay above the encoder rate: the encoder is
    nearly frozen while the decoder learns from scratch.
    """

    encoder_lr: float = 0.002
    decoder_lr: float = 0.2
    adam_beta1: float = 0.9
    adam_beta2: float = 0.999
    train_steps: int = 210_000
    epochs: int = 20
    batch_size: int = 50

    def __post_init__(self):
        for name in ("encoder_lr", "decoder_lr", "adam_beta1", "adam_beta2",
                     "train_steps", "epochs", "batch_size"):
            if getattr(self, name) <= 0:
                raise ScheduleError(f"{name} must be positive")
        if self.decoder_lr <= self.encoder_lr:
            raise ScheduleError(
                f"decoder_lr ({self.decoder_lr}) must exceed encoder_lr ({self.encoder_lr})"
            )

    def to_toml(self) -> str:
        lines = []
        for name in ("encoder_lr", "decoder_lr", "adam_beta1", "adam_beta2",
                     "train_steps", "epochs", "batch_size"):
            lines.append(f"{name} = {getattr(self, name)!r}")
        return "\n".join(lines) + "\n"

    def write(self, path: str | Path) -> Path:
        path = Path(path)
        path.write_text(self.to_toml(), encoding="utf-8")
        return path

    @classmethod
    def read(cls, path: str | Path) -> "TrainerManifest":
        try:
            import tomllib
        except ModuleNotFoundError:
            import tomli as tomllib
        with Path(path).open("rb") as handle:
            data = tomllib.load(handle)
        return cls(**data)


def sample_dataset(corpus: Corpus, rate: float, seed: int) -> Corpus:
    """Keep each document independently with probability ``rate``.

    Deterministic per (corpus, rate, seed); rate 1.0 is the identity.
    """
    if not 0.0 < rate <= 1.0:
        raise ScheduleError(f"rate must be in (0, 1], got {rate}")
    rng = random.Random(seed)
    kept = [doc for doc in corpus if rng.random() < rate]
    return Corpus(kept)


def _stage_seed(seed: int, stage_index: int) -> int:
    # distinct, reproducible stream per stage
    return zlib.crc32(f"{seed}:{stage_index}".encode("ascii"))


def _chunk(ids: list[str], size: int) -> list[list[str]]:
    return [ids[i : i + size] for i in range(0, len(ids), size)]


def build_schedule(spec: ScheduleSpec, corpora: Mapping[str, Corpus]) -> ScheduleManifest:
    """Sample each stage, order or shuffle, and cut into batches.

    Ordered mode emits all stage-1 examples before any stage-2 example and
    batches never straddle a stage boundary. Random mode shuffles the union
    of sampled examples under the spec seed.
    """
    spec.validate()
    for stage in spec.stages:
        if stage.corpus_id not in corpora:
            raise ScheduleError(f"unknown corpus_id {stage.corpus_id!r}")

    stage_ids: list[list[str]] = []
    for index, stage in enumerate(spec.stages):
        sampled = sample_dataset(
            corpora[stage.corpus_id], stage.sampling_rate, _stage_seed(spec.seed, index)
        )
        ids = [doc.id for doc in sampled]
        if spec.shuffle_within_stage:
            random.Random(_stage_seed(spec.seed, index) ^ 0xA5A5).shuffle(ids)
        stage_ids.append(ids)

    flat = [ex for ids in stage_ids for ex in ids]
    duplicates = {ex for ex in flat if flat.count(ex) > 1} if len(set(flat)) != len(flat) else set()
    if duplicates:
        raise ScheduleError(
            "example id(s) appear in multiple stages: " + ", ".join(sorted(duplicates))
        )

    if spec.mode == "ordered":
        batches: list[list[str]] = []
        boundaries: list[int] = []
        for ids in stage_ids:
            batches.extend(_chunk(ids, spec.batch_size))
            boundaries.append(len(batches))
    else:
        pool = list(flat)
        random.Random(spec.seed).shuffle(pool)
        batches = _chunk(pool, spec.batch_size)
        boundaries = []

    return ScheduleManifest(
        batches=batches,
        stage_boundaries=boundaries,
        mode=spec.mode,
        seed=spec.seed,
        batch_size=spec.batch_size,
    )


def emit_trainer_manifest(out: str | Path, **overrides) -> TrainerManifest:
    """Write the trainer manifest, defaults unless overridden."""
    manifest = TrainerManifest(**overrides)
    manifest.write(out)
    return manifest


def spec_from_toml(path: str | Path) -> tuple[ScheduleSpec, dict[str, Path]]:
    """Read a schedule spec from TOML.

    Each [[stages]] table names a corpus JSONL path (``corpus``) with an
    optional ``id`` (default: file stem) and ``rate``. Returns the spec and
    a map of corpus_id to resolved path for the caller to load.
    """
    try:
        import tomllib
    except ModuleNotFoundError:
        import tomli as tomllib

    path = Path(path)
    with path.open("rb") as handle:
        data = tomllib.load(handle)
    stages = []
    paths: dict[str, Path] = {}
    for entry in data.get("stages", []):
        if "corpus" not in entry:
            raise ScheduleError(f"{path}: stage missing 'corpus' path")
        corpus_path = (path.parent / entry["corpus"]).resolve()
        corpus_id = entry.get("id", Path(entry["corpus"]).stem)
        stages.append(Stage(corpus_id=corpus_id, sampling_rate=float(entry.get("rate", 1.0))))
        paths[corpus_id] = corpus_path
    spec = ScheduleSpec(
        stages=stages,
        mode=data.get("mode", "ordered"),
        seed=int(data.get("seed", 0)),
        batch_size=int(data.get("batch_size", 50)),
        shuffle_within_stage=bool(data.get("shuffle_within_stage", False)),
    )
    spec.validate()
    return spec, paths
