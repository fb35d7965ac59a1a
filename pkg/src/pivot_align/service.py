"""HTTP matching service: a single POST endpoint around the pivot
pipeline plus a health probe.

The host process loads glossaries and matcher settings once at startup;
requests may override matcher knobs (``match.*`` keys) but never file
paths or the pivot language, since the loaded resources are tied to
both.
"""

from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel, ConfigDict, Field

from .alignment import parse_alignment_tsv, serialize_alignment_tsv
from .config import PipelineConfig, apply_overrides
from .errors import AlignmentFormatError, ConfigError, OntologyError, StageError
from .pipeline import load_bundle, pivot_match
from .turtle import parse_turtle


class MatchRequest(BaseModel):
    """Two Turtle documents plus optional overrides and input alignment."""

    model_config = ConfigDict(populate_by_name=True)

    ontology1: str
    ontology2: str
    config: "Optional[dict[str, str]]" = None
    input_alignment: Optional[str] = Field(default=None, alias="inputAlignment")


class MatchResponse(BaseModel):
    """Alignment TSV text and the run report."""

    alignment: str
    report: dict


def create_app(cfg: Optional[PipelineConfig] = None) -> FastAPI:
    """Build the service application around one host configuration.

    Resource files are loaded eagerly so a bad configuration fails at
    startup, not on the first request.
    """
    host_cfg = cfg if cfg is not None else PipelineConfig()
    bundle = load_bundle(host_cfg)
    app = FastAPI(title="pivot-align", docs_url=None, redoc_url=None)

    @app.exception_handler(RequestValidationError)
    async def malformed_body(request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": exc.errors()})

    @app.get("/health")
    def health() -> PlainTextResponse:
        return PlainTextResponse("ok")

    @app.post("/match", response_model=MatchResponse)
    def match(request: MatchRequest) -> MatchResponse:
        effective = host_cfg
        if request.config:
            if "pivot_lang" in request.config:
                raise HTTPException(
                    400, "config: pivot_lang cannot be overridden per request"
                )
            try:
                effective = apply_overrides(host_cfg, request.config)
            except ConfigError as exc:
                raise HTTPException(400, f"config: {exc}") from None

        ontologies = []
        for name, text in (("ontology1", request.ontology1), ("ontology2", request.ontology2)):
            try:
                ontologies.append(parse_turtle(text))
            except OntologyError as exc:
                raise HTTPException(400, f"parse: {name}: {exc}") from None

        input_alignment = None
        if request.input_alignment:
            try:
                input_alignment = parse_alignment_tsv(request.input_alignment)
            except AlignmentFormatError as exc:
                raise HTTPException(400, f"parse: inputAlignment: {exc}") from None

        try:
            alignment, report = pivot_match(
                ontologies[0], ontologies[1], bundle, effective, input_alignment
            )
        except StageError as exc:
            raise HTTPException(422, str(exc)) from None
        return MatchResponse(
            alignment=serialize_alignment_tsv(alignment), report=report.to_dict()
        )

    return app
