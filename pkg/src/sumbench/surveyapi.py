"""HTTP JSON API over the survey service.

Judge-facing payloads are built from explicit response models that carry
no provenance field; the admin aggregate endpoint is gated by a token
taken from the SUMBENCH_ADMIN_TOKEN environment variable.
"""

from __future__ import annotations

import os
from pathlib import Path

from fastapi import FastAPI, Header, HTTPException
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .surveyd import (
    CRITERIA,
    CRITERION_PROMPTS,
    RATING_LABELS,
    DuplicateResponse,
    SurveyService,
    UnknownSession,
    ValidationFailure,
)

ADMIN_TOKEN_ENV = "SUMBENCH_ADMIN_TOKEN"
BIND_ENV = "SUMBENCH_BIND"
DEFAULT_BIND = "127.0.0.1:8765"


class SessionOut(BaseModel):
    token: str
    item_order: list[str]
    total: int


class NextItemOut(BaseModel):
    done: bool
    item_id: str | None = None
    text: str | None = None
    answered: int
    total: int


class ResponseIn(BaseModel):
    item_id: str
    turing_answer: str
    ratings: dict[str, int]
    submitted_at: str = ""


class AckOut(BaseModel):
    ok: bool
    answered: int
    total: int


class FormSpecOut(BaseModel):
    criteria: list[str]
    prompts: dict[str, str]
    rating_labels: dict[int, str]


def bind_address() -> tuple[str, int]:
    raw = os.environ.get(BIND_ENV, DEFAULT_BIND)
    host, _, port = raw.rpartition(":")
    if not host or not port.isdigit():
        raise ValueError(f"{BIND_ENV} must look like host:port, got {raw!r}")
    return host, int(port)


def create_app(
    service: SurveyService,
    admin_token: str | None = None,
    static_dir: str | Path | None = None,
) -> FastAPI:
    if admin_token is None:
        admin_token = os.environ.get(ADMIN_TOKEN_ENV)
    app = FastAPI(title="sumbench survey", version="0.1.0")

    @app.get("/survey/{survey_id}/session", response_model=SessionOut)
    def new_session(survey_id: str) -> SessionOut:
        if survey_id != service.survey.survey_id:
            raise HTTPException(status_code=404, detail=f"no survey named {survey_id!r}")
        session = service.new_session()
        return SessionOut(
            token=session.token,
            item_order=list(session.item_order),
            total=len(session.item_order),
        )

    @app.get("/survey/{survey_id}/form", response_model=FormSpecOut)
    def form_spec(survey_id: str) -> FormSpecOut:
        if survey_id != service.survey.survey_id:
            raise HTTPException(status_code=404, detail=f"no survey named {survey_id!r}")
        return FormSpecOut(
            criteria=list(CRITERIA),
            prompts=dict(CRITERION_PROMPTS),
            rating_labels=dict(RATING_LABELS),
        )

    @app.get("/session/{token}/next", response_model=NextItemOut)
    def next_item(token: str) -> NextItemOut:
        try:
            item = service.next_item(token)
            answered, total = service.progress(token)
        except UnknownSession as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
        if item is None:
            return NextItemOut(done=True, answered=answered, total=total)
        return NextItemOut(
            done=False,
            item_id=item.item_id,
            text=item.summary_text,
            answered=answered,
            total=total,
        )

    @app.post("/session/{token}/response", response_model=AckOut)
    def record_response(token: str, body: ResponseIn) -> AckOut:
        try:
            service.record_response(
                token,
                item_id=body.item_id,
                turing_answer=body.turing_answer,
                ratings=body.ratings,
                submitted_at=body.submitted_at,
            )
        except UnknownSession as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
        except DuplicateResponse as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        except ValidationFailure as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        answered, total = service.progress(token)
        return AckOut(ok=True, answered=answered, total=total)

    @app.get("/survey/{survey_id}/aggregate")
    def survey_aggregate(
        survey_id: str, x_admin_token: str | None = Header(default=None)
    ) -> dict:
        if survey_id != service.survey.survey_id:
            raise HTTPException(status_code=404, detail=f"no survey named {survey_id!r}")
        if not admin_token:
            raise HTTPException(status_code=403, detail="admin token not configured")
        if x_admin_token != admin_token:
            raise HTTPException(status_code=403, detail="bad admin token")
        return service.aggregate().to_json_dict()

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app


#: Routes whose payloads judges can see; the admin aggregate route is excluded.
JUDGE_ROUTES = (
    "/survey/{survey_id}/session",
    "/survey/{survey_id}/form",
    "/session/{token}/next",
    "/session/{token}/response",
)
