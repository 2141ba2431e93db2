"""Streaming inference and translation service.

HTTP for the unary endpoints, a websocket for frame streaming. The stream
handler is a strict receive -> predict -> reply loop, so at most one
unanswered frame exists per connection and backpressure falls out of the
transport instead of an in-process queue. Model, dictionary and news store
are loaded once at startup and never mutated by requests.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np
from fastapi import FastAPI, HTTPException, Query, WebSocket, WebSocketDisconnect
from pydantic import BaseModel, Field

from ._assets import packaged_data_dir
from .content import ContentRequest, NewsStore, build_bundle
from .landmarks import Hand, LandmarkFrame
from .model import ResidualMlpModel, predict
from .quantize import load_model
from .signplan import PhraseDictionary, translate

MAX_MESSAGE_BYTES = 64 * 1024

ENV_MODEL = "SANVAAD_MODEL"
ENV_PORT = "SANVAAD_PORT"
ENV_HOST = "SANVAAD_HOST"
ENV_DICTIONARY = "SANVAAD_DICTIONARY"
ENV_STORE_DIR = "SANVAAD_STORE_DIR"


class ServiceError(RuntimeError):
    """Startup failure; the message names the offending file."""


@dataclass(frozen=True)
class ServiceConfig:
    model_path: str
    host: str = "127.0.0.1"
    port: int = 8000
    dictionary_path: Optional[str] = None  # None -> packaged manifest
    store_dir: Optional[str] = None  # None -> packaged news fixtures
    top_k: int = 3
    stop_keywords: Optional[tuple] = None  # None -> manifest's own

    def __post_init__(self):
        if not (0 < self.port < 65536):
            raise ValueError(f"port must be in (0, 65536), got {self.port}")
        if self.top_k < 1:
            raise ValueError(f"top_k must be >= 1, got {self.top_k}")


def load_config(path=None, env=None) -> ServiceConfig:
    """Config from an optional JSON file, then environment overrides."""
    env = os.environ if env is None else env
    raw: dict = {}
    if path is not None:
        with open(path, "r", encoding="utf-8") as fh:
            try:
                raw = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ServiceError(f"{path}: invalid config JSON ({exc.msg})") from exc
        unknown = set(raw) - {f for f in ServiceConfig.__dataclass_fields__}
        if unknown:
            raise ServiceError(f"{path}: unknown config keys {sorted(unknown)}")
    if ENV_MODEL in env:
        raw["model_path"] = env[ENV_MODEL]
    if ENV_PORT in env:
        raw["port"] = int(env[ENV_PORT])
    if ENV_HOST in env:
        raw["host"] = env[ENV_HOST]
    if ENV_DICTIONARY in env:
        raw["dictionary_path"] = env[ENV_DICTIONARY]
    if ENV_STORE_DIR in env:
        raw["store_dir"] = env[ENV_STORE_DIR]
    if "model_path" not in raw:
        raise ServiceError("no model configured: set model_path or " + ENV_MODEL)
    if "stop_keywords" in raw and raw["stop_keywords"] is not None:
        raw["stop_keywords"] = tuple(raw["stop_keywords"])
    return ServiceConfig(**raw)


class FrameMessage(BaseModel):
    seq: int = Field(ge=0)
    left: Optional[list[list[float]]] = None
    right: Optional[list[list[float]]] = None


class PredictionMessage(BaseModel):
    seq: int
    label: str
    confidence: float
    top_k: list[tuple[str, float]]


class TranslateRequest(BaseModel):
    text: str


def frame_from_message(msg: FrameMessage) -> LandmarkFrame:
    left = Hand(np.asarray(msg.left, dtype=np.float64)) if msg.left is not None else None
    right = Hand(np.asarray(msg.right, dtype=np.float64)) if msg.right is not None else None
    return LandmarkFrame(left=left, right=right)


def _predict_message(model: ResidualMlpModel, msg: FrameMessage, top_k: int) -> dict:
    frame = frame_from_message(msg)
    if frame.hand_count == 0:
        raise ValueError("no hands")
    p = predict(model, frame, top_k=top_k)
    return {
        "seq": msg.seq,
        "label": p.label,
        "confidence": p.confidence,
        "top_k": [[label, prob] for label, prob in p.top_k],
    }


def _load_dictionary(config: ServiceConfig) -> PhraseDictionary:
    path = config.dictionary_path or packaged_data_dir() / "dictionary.json"
    if not Path(path).is_file():
        raise ServiceError(f"dictionary manifest not found: {path}")
    with open(path, "r", encoding="utf-8") as fh:
        try:
            manifest = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ServiceError(f"{path}: invalid dictionary JSON ({exc.msg})") from exc
    stop = config.stop_keywords if config.stop_keywords is not None else manifest.get("stop_keywords")
    return PhraseDictionary(
        phrases=manifest.get("phrases", {}), synonyms=manifest.get("synonyms"), stop_keywords=stop
    )


def create_app(config: ServiceConfig) -> FastAPI:
    """Load everything up front and wire the endpoints; all handlers are
    read-only against the loaded state."""
    if not Path(config.model_path).is_file():
        raise ServiceError(f"model file not found: {config.model_path}")
    model = load_model(config.model_path)
    dictionary = _load_dictionary(config)
    store_dir = Path(config.store_dir) if config.store_dir else packaged_data_dir() / "news"
    if config.store_dir and not store_dir.is_dir():
        raise ServiceError(f"news store directory not found: {store_dir}")
    store = NewsStore(store_dir)

    app = FastAPI(title="sanvaad", version=model.meta.get("format_version", "1"))
    app.state.config = config
    app.state.model = model

    @app.get("/health")
    def health():
        return {
            "status": "ok",
            "model": {
                "classes": len(model.codec.classes),
                "precision": model.meta.get("precision", "float32"),
                "spec": model.spec.to_dict(),
            },
        }

    @app.post("/classify", response_model=PredictionMessage)
    def classify(frame: FrameMessage):
        try:
            return _predict_message(model, frame, config.top_k)
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc

    @app.post("/translate")
    def translate_text(req: TranslateRequest):
        return translate(req.text, dictionary).to_dict()

    @app.get("/content")
    def content(lang: str = Query(default="english"), topic: str = Query(...)):
        return build_bundle(store, ContentRequest(language=lang, topic=topic)).to_dict()

    @app.websocket("/stream")
    async def stream(ws: WebSocket):
        # One frame in flight at a time: the loop never reads the next
        # message before answering the current one.
        await ws.accept()
        try:
            while True:
                raw = await ws.receive_text()
                await ws.send_json(_answer_raw(model, raw, config.top_k))
        except WebSocketDisconnect:
            return

    return app


def _answer_raw(model: ResidualMlpModel, raw: str, top_k: int) -> dict:
    """Answer one stream message; malformed input yields an error reply
    instead of closing the connection."""
    if len(raw.encode("utf-8")) > MAX_MESSAGE_BYTES:
        return {"error": f"oversized message: over {MAX_MESSAGE_BYTES} bytes"}
    try:
        payload = json.loads(raw)
    except json.JSONDecodeError as exc:
        return {"error": f"malformed message: {exc.msg}"}
    seq = payload.get("seq") if isinstance(payload, dict) else None
    try:
        msg = FrameMessage.model_validate(payload)
        return _predict_message(model, msg, top_k)
    except ValueError as exc:
        reply = {"error": _short_error(exc)}
        if isinstance(seq, int):
            reply["seq"] = seq
        return reply


def _short_error(exc: Exception) -> str:
    text = str(exc)
    return text.splitlines()[0] if text else exc.__class__.__name__


def serve(config: ServiceConfig):
    """Blocking entry point; binds and serves until interrupted."""
    import uvicorn

    app = create_app(config)
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")


def app_from_env() -> FastAPI:
    """Factory for `uvicorn sanvaad.service:app_from_env --factory`."""
    return create_app(load_config(env=os.environ))


__all__ = [
    "FrameMessage",
    "PredictionMessage",
    "ServiceConfig",
    "ServiceError",
    "TranslateRequest",
    "create_app",
    "frame_from_message",
    "load_config",
    "packaged_data_dir",
    "serve",
]
