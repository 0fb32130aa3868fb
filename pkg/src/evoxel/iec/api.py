"""HTTP+JSON surface for interactive evolution sessions.

Endpoints (versioned by the payload's schema_version, which mirrors the
block schema file):

    POST /sessions                       create; body = config overrides
    GET  /sessions/{id}/generation       idempotent current-generation payload
    POST /sessions/{id}/choice           {"generation": g, "index": i}
    POST /sessions/{id}/reroll           {"generation": g}
    GET  /schema                         the shipped block schema (ids, colors)

The session UI (if built) is served from the repository's frontend/dist.
"""
from __future__ import annotations

from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, Field

from .. import blocks
from ..evolve import FilteredChoiceError
from .session import (IecConfig, RerollUnavailableError, SessionStore,
                      StaleGenerationError)


class CreateSessionRequest(BaseModel):
    seed: int = 0
    n_candidates: int = Field(default=9, ge=2, le=64)
    box_extent: tuple[int, int, int] = (10, 10, 10)
    palette: Optional[list[str]] = None
    with_orientation: bool = True
    symmetrize: bool = False
    activations: str = "default"
    min_size: int = Field(default=8, ge=0)
    goal: str = ""


class ChoiceRequest(BaseModel):
    generation: int
    index: int


class RerollRequest(BaseModel):
    generation: int


def create_app(store: Optional[SessionStore] = None,
               ui_dir: Optional[Path] = None) -> FastAPI:
    store = store if store is not None else SessionStore()
    app = FastAPI(title="interactive evolution session service")
    app.state.store = store

    def _session(session_id: str):
        try:
            return store.get(session_id)
        except KeyError:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id}")

    @app.post("/sessions")
    def create_session(req: CreateSessionRequest):
        kwargs = req.model_dump()
        palette = kwargs.pop("palette")
        if palette is not None:
            unknown = [n for n in palette if n not in blocks.BlockType.__members__]
            if unknown:
                raise HTTPException(status_code=400,
                                    detail=f"unknown block types: {unknown}")
            kwargs["palette"] = tuple(palette)
        kwargs["box_extent"] = tuple(kwargs["box_extent"])
        try:
            config = IecConfig(**kwargs)
            session = store.create(config)
        except ValueError as e:
            raise HTTPException(status_code=400, detail=str(e))
        return JSONResponse(session.payload())

    @app.get("/sessions/{session_id}/generation")
    def get_generation(session_id: str):
        return JSONResponse(_session(session_id).payload())

    @app.post("/sessions/{session_id}/choice")
    def submit_choice(session_id: str, req: ChoiceRequest):
        session = _session(session_id)
        try:
            return JSONResponse(session.submit_choice(req.index, req.generation))
        except StaleGenerationError as e:
            raise HTTPException(status_code=409, detail=str(e))
        except (FilteredChoiceError, ValueError) as e:
            raise HTTPException(status_code=400, detail=str(e))

    @app.post("/sessions/{session_id}/reroll")
    def reroll(session_id: str, req: RerollRequest):
        session = _session(session_id)
        try:
            return JSONResponse(session.reroll(req.generation))
        except StaleGenerationError as e:
            raise HTTPException(status_code=409, detail=str(e))
        except RerollUnavailableError as e:
            raise HTTPException(status_code=409, detail=str(e))

    @app.get("/schema")
    def get_schema():
        return {
            "schema_version": blocks.schema_version(),
            "orientations": ["NORTH", "WEST", "EAST", "SOUTH", "UP", "DOWN"],
            "blocks": [vars(info) for info in blocks.registry()],
        }

    if ui_dir is None:
        ui_dir = Path(__file__).resolve().parents[3] / "frontend" / "dist"
    if ui_dir.is_dir():
        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")
    return app
