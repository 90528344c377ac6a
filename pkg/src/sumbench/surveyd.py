"""Blind human-evaluation survey service.

Judges see lowercased summaries with no hint of whether a human or a
machine wrote them, answer a Turing question (human or machine?), and rate
five quality criteria on a 1-5 scale. Provenance stays server-side;
responses go to an append-only JSONL log from which all aggregates are
recomputable.
"""

from __future__ import annotations

import csv
import io
import json
import os
import random
import secrets
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable

from .baseline import Candidate
from .preprocess import normalize_case

CRITERIA = ("fluency", "usefulness", "succinctness", "consistency", "realisticity")

PROVENANCES = ("human", "machine")

RATING_LABELS = {1: "Bad", 2: "Below Average", 3: "Average", 4: "Good", 5: "Great"}

CRITERION_PROMPTS = {
    "fluency": "Does the text have a natural flow and rhythm?",
    "usefulness": (
        "Does it have enough information to make a user decide whether "
        "they want to spend time watching the video?"
    ),
    "succinctness": "Does the text look concise or does it have redundancy?",
    "consistency": (
        "Are there any non sequiturs - ambiguous, confusing or "
        "contradicting statements in the text?"
    ),
    "realisticity": (
        "Is there anything that seems far-fetched and bizarre in word "
        "combinations and doesn't look \"normal\"?"
    ),
}


class SurveyError(Exception):
    pass


class ValidationFailure(SurveyError):
    """A response violates the rating or answer contract."""


class DuplicateResponse(SurveyError):
    """A (session, item) pair was already answered."""


class UnknownSession(SurveyError):
    pass


@dataclass
class SurveyItem:
    item_id: str
    summary_text: str
    provenance: str  # never serialized to judges
    doc_id: str

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise SurveyError(f"unknown provenance {self.provenance!r}")
        if any(ch.isupper() for ch in self.summary_text):
            raise SurveyError(f"item {self.item_id!r} text must be lowercase")


@dataclass
class Survey:
    survey_id: str
    items: list[SurveyItem]
    seed: int

    def item_ids(self) -> list[str]:
        return [item.item_id for item in self.items]

    def get(self, item_id: str) -> SurveyItem:
        for item in self.items:
            if item.item_id == item_id:
                return item
        raise SurveyError(f"unknown item {item_id!r}")

    def to_json_dict(self) -> dict:
        return {
            "survey_id": self.survey_id,
            "seed": self.seed,
            "items": [
                {
                    "item_id": item.item_id,
                    "summary_text": item.summary_text,
                    "provenance": item.provenance,
                    "doc_id": item.doc_id,
                }
                for item in self.items
            ],
        }

    def save(self, path: str | Path) -> Path:
        path = Path(path)
        path.write_text(
            json.dumps(self.to_json_dict(), sort_keys=True, indent=2) + "\n",
            encoding="utf-8",
        )
        return path

    @classmethod
    def load(cls, path: str | Path) -> "Survey":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        return cls(
            survey_id=data["survey_id"],
            seed=data["seed"],
            items=[SurveyItem(**item) for item in data["items"]],
        )


@dataclass
class SurveyResponse:
    session_id: str
    item_id: str
    turing_answer: str
    ratings: dict[str, int]
    submitted_at: str = ""

    def validate(self) -> None:
        if self.turing_answer not in PROVENANCES:
            raise ValidationFailure(
                f"turing_answer must be 'human' or 'machine', got {self.turing_answer!r}"
            )
        missing = [c for c in CRITERIA if c not in self.ratings]
        if missing:
            raise ValidationFailure(f"missing rating(s): {', '.join(missing)}")
        extra = [c for c in self.ratings if c not in CRITERIA]
        if extra:
            raise ValidationFailure(f"unknown rating criteria: {', '.join(extra)}")
        for criterion, value in self.ratings.items():
            if not isinstance(value, int) or isinstance(value, bool) or not 1 <= value <= 5:
                raise ValidationFailure(
                    f"rating {criterion}={value!r} outside the 1..5 scale"
                )

    def to_json_dict(self) -> dict:
        return {
            "session_id": self.session_id,
            "item_id": self.item_id,
            "turing_answer": self.turing_answer,
            "ratings": dict(self.ratings),
            "submitted_at": self.submitted_at,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "SurveyResponse":
        return cls(
            session_id=data["session_id"],
            item_id=data["item_id"],
            turing_answer=data["turing_answer"],
            ratings={k: int(v) for k, v in data["ratings"].items()},
            submitted_at=data.get("submitted_at", ""),
        )


def build_survey(
    machine_pool: list[Candidate],
    human_pool: list[Candidate],
    k: int,
    seed: int,
    survey_id: str = "survey",
) -> Survey:
    """Sample k summaries without replacement from the combined pools.

    Texts are lowercased (placeholders preserved) so casing cannot leak
    authorship; provenance is kept on the item for server-side aggregation
    only.
    """
    if not machine_pool or not human_pool:
        raise SurveyError("both pools must be nonempty")
    combined = [("machine", c) for c in machine_pool] + [("human", c) for c in human_pool]
    if k < 1 or k > len(combined):
        raise SurveyError(f"k must be in 1..{len(combined)}, got {k}")
    chosen = random.Random(seed).sample(combined, k)
    items = [
        SurveyItem(
            item_id=f"item-{index:03d}",
            summary_text=normalize_case(candidate.text),
            provenance=provenance,
            doc_id=candidate.doc_id,
        )
        for index, (provenance, candidate) in enumerate(chosen)
    ]
    return Survey(survey_id=survey_id, items=items, seed=seed)


class ResponseLog:
    """Append-only JSONL response log; recorded responses are never mutated."""

    def __init__(self, path: str | Path):
        self.path = Path(path)
        self._keys: set[tuple[str, str]] = set()
        self._responses: list[SurveyResponse] = []
        if self.path.exists():
            for line in self.path.read_text(encoding="utf-8").splitlines():
                if not line.strip():
                    continue
                response = SurveyResponse.from_json_dict(json.loads(line))
                self._keys.add((response.session_id, response.item_id))
                self._responses.append(response)

    def __len__(self) -> int:
        return len(self._responses)

    def __iter__(self):
        return iter(self._responses)

    def has(self, session_id: str, item_id: str) -> bool:
        return (session_id, item_id) in self._keys

    def append(self, response: SurveyResponse) -> None:
        response.validate()
        key = (response.session_id, response.item_id)
        if key in self._keys:
            raise DuplicateResponse(
                f"session {response.session_id!r} already answered item {response.item_id!r}"
            )
        with self.path.open("a", encoding="utf-8") as handle:
            handle.write(json.dumps(response.to_json_dict(), sort_keys=True) + "\n")
            handle.flush()
            os.fsync(handle.fileno())
        self._keys.add(key)
        self._responses.append(response)


@dataclass
class SurveyAggregate:
    survey_id: str
    response_count: int
    fp_ratio: float
    fn_ratio: float
    perfect_score_sessions: int
    per_item: dict[str, dict[str, int]]
    rating_histograms: dict[str, list[int]]

    def to_json_dict(self) -> dict:
        return {
            "survey_id": self.survey_id,
            "response_count": self.response_count,
            "fp_ratio": self.fp_ratio,
            "fn_ratio": self.fn_ratio,
            "perfect_score_sessions": self.perfect_score_sessions,
            "per_item": {k: dict(v) for k, v in self.per_item.items()},
            "rating_histograms": {k: list(v) for k, v in self.rating_histograms.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2) + "\n"


def aggregate_schema() -> dict:
    text = resources.files("sumbench").joinpath("data", "survey_aggregate.schema.json")
    return json.loads(text.read_text(encoding="utf-8"))


def aggregate(survey: Survey, responses: Iterable[SurveyResponse]) -> SurveyAggregate:
    """Recompute FP/FN and rating aggregates from the raw response log.

    FP: a machine item judged human. FN: a human item judged machine.
    Ratios divide by the judgment count on items of the matching
    provenance. A perfect-score session answered every item and got every
    Turing answer right.
    """
    per_item = {
        item.item_id: {"fp_count": 0, "fn_count": 0, "judgments": 0}
        for item in survey.items
    }
    histograms = {criterion: [0, 0, 0, 0, 0] for criterion in CRITERIA}
    machine_judgments = 0
    human_judgments = 0
    fp_total = 0
    fn_total = 0
    sessions: dict[str, list[bool]] = {}
    count = 0

    for response in responses:
        response.validate()
        item = survey.get(response.item_id)
        counts = per_item[item.item_id]
        counts["judgments"] += 1
        count += 1
        correct = response.turing_answer == item.provenance
        if item.provenance == "machine":
            machine_judgments += 1
            if response.turing_answer == "human":
                counts["fp_count"] += 1
                fp_total += 1
        else:
            human_judgments += 1
            if response.turing_answer == "machine":
                counts["fn_count"] += 1
                fn_total += 1
        for criterion, value in response.ratings.items():
            histograms[criterion][value - 1] += 1
        sessions.setdefault(response.session_id, []).append(correct)

    perfect = sum(
        1
        for answers in sessions.values()
        if len(answers) == len(survey.items) and all(answers)
    )
    return SurveyAggregate(
        survey_id=survey.survey_id,
        response_count=count,
        fp_ratio=fp_total / machine_judgments if machine_judgments else 0.0,
        fn_ratio=fn_total / human_judgments if human_judgments else 0.0,
        perfect_score_sessions=perfect,
        per_item=per_item,
        rating_histograms=histograms,
    )


def export_results(
    agg: SurveyAggregate,
    responses: Iterable[SurveyResponse],
    out_dir: str | Path,
) -> dict[str, Path]:
    """Write responses.csv and aggregate.json; the pair round-trips.

    Importing the CSV and re-aggregating reproduces the JSON exactly.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["session_id", "item_id", "turing_answer", *CRITERIA, "submitted_at"])
    for response in responses:
        writer.writerow(
            [
                response.session_id,
                response.item_id,
                response.turing_answer,
                *[response.ratings[c] for c in CRITERIA],
                response.submitted_at,
            ]
        )
    responses_csv = out_dir / "responses.csv"
    responses_csv.write_text(buffer.getvalue(), encoding="utf-8")

    aggregate_json = out_dir / "aggregate.json"
    aggregate_json.write_text(agg.to_json(), encoding="utf-8")
    return {"responses_csv": responses_csv, "aggregate_json": aggregate_json}


def import_responses_csv(path: str | Path) -> list[SurveyResponse]:
    """Read back a responses.csv produced by export_results."""
    responses = []
    with Path(path).open("r", encoding="utf-8", newline="") as handle:
        for row in csv.DictReader(handle):
            responses.append(
                SurveyResponse(
                    session_id=row["session_id"],
                    item_id=row["item_id"],
                    turing_answer=row["turing_answer"],
                    ratings={c: int(row[c]) for c in CRITERIA},
                    submitted_at=row.get("submitted_at", ""),
                )
            )
    return responses


@dataclass
class _Session:
    token: str
    item_order: list[str]
    answered: set[str] = field(default_factory=set)


class SurveyService:
    """Session bookkeeping over an immutable survey and an append-only log."""

    def __init__(self, survey: Survey, log: ResponseLog, rng: random.Random | None = None):
        self.survey = survey
        self.log = log
        self._rng = rng if rng is not None else random.Random()
        self._sessions: dict[str, _Session] = {}
        # resume sessions present in an existing log
        for response in log:
            session = self._sessions.get(response.session_id)
            if session is None:
                session = _Session(token=response.session_id, item_order=survey.item_ids())
                self._sessions[response.session_id] = session
            session.answered.add(response.item_id)

    def new_session(self) -> _Session:
        """Fresh anonymous token with an independently shuffled item order."""
        token = secrets.token_hex(16)
        order = self.survey.item_ids()
        self._rng.shuffle(order)
        session = _Session(token=token, item_order=order)
        self._sessions[token] = session
        return session

    def session(self, token: str) -> _Session:
        if token not in self._sessions:
            raise UnknownSession(f"unknown session token {token!r}")
        return self._sessions[token]

    def next_item(self, token: str) -> SurveyItem | None:
        session = self.session(token)
        for item_id in session.item_order:
            if item_id not in session.answered:
                return self.survey.get(item_id)
        return None

    def record_response(
        self,
        token: str,
        item_id: str,
        turing_answer: str,
        ratings: dict[str, int],
        submitted_at: str = "",
    ) -> SurveyResponse:
        session = self.session(token)
        if item_id not in session.item_order:
            raise ValidationFailure(f"item {item_id!r} is not part of this survey")
        response = SurveyResponse(
            session_id=token,
            item_id=item_id,
            turing_answer=turing_answer,
            ratings=ratings,
            submitted_at=submitted_at,
        )
        self.log.append(response)
        session.answered.add(item_id)
        return response

    def progress(self, token: str) -> tuple[int, int]:
        session = self.session(token)
        return len(session.answered), len(self.survey.items)

    def aggregate(self) -> SurveyAggregate:
        return aggregate(self.survey, self.log)
