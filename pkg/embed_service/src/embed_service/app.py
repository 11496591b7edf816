"""HTTP surface: /embed/text, /embed/image, /health.

Request bodies are UTF-8 JSON. Responses carry the constant embedding
dimension and one unit-norm vector per input, in input order. Batches are
capped (413 beyond the limit, 400 when empty); an unloadable model makes
every endpoint answer 503.
"""

from __future__ import annotations

import base64
import binascii
import os
import threading

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel

from .backends import EmbeddingBackend, backend_from_name, l2_normalize

DEFAULT_BATCH_LIMIT = 64


class TextBatch(BaseModel):
    texts: list[str]


class ImageBatch(BaseModel):
    images: list[str]


class EmbedResponse(BaseModel):
    dim: int
    vectors: list[list[float]]


def create_app(
    backend: EmbeddingBackend | None = None,
    batch_limit: int | None = None,
) -> FastAPI:
    if backend is None:
        backend = backend_from_name(os.environ.get("EMBED_SERVICE_MODEL", "toy"))
    if batch_limit is None:
        batch_limit = int(
            os.environ.get("EMBED_SERVICE_BATCH_LIMIT", DEFAULT_BATCH_LIMIT)
        )

    app = FastAPI(title="embed-service")
    state = {"loaded": False, "error": None}
    # One model instance; concurrent requests take turns at the encoder.
    model_lock = threading.Lock()

    def ensure_loaded():
        if state["loaded"]:
            return
        with model_lock:
            if state["loaded"]:
                return
            try:
                backend.load()
                state["loaded"] = True
                state["error"] = None
            except Exception as exc:  # model download/load failures
                state["error"] = str(exc)
                raise HTTPException(503, detail=f"model not loaded: {exc}")

    def check_batch(n: int):
        if n == 0:
            raise HTTPException(400, detail="empty batch")
        if n > batch_limit:
            raise HTTPException(413, detail=f"batch exceeds limit of {batch_limit}")

    @app.post("/embed/text", response_model=EmbedResponse)
    def embed_text(batch: TextBatch) -> EmbedResponse:
        check_batch(len(batch.texts))
        ensure_loaded()
        with model_lock:
            vectors = backend.embed_texts(batch.texts)
        return EmbedResponse(
            dim=backend.dim,
            vectors=[l2_normalize(v, backend.dim) for v in vectors],
        )

    @app.post("/embed/image", response_model=EmbedResponse)
    def embed_image(batch: ImageBatch) -> EmbedResponse:
        check_batch(len(batch.images))
        ensure_loaded()
        decoded = []
        for i, payload in enumerate(batch.images):
            try:
                decoded.append(base64.b64decode(payload, validate=True))
            except (binascii.Error, ValueError):
                raise HTTPException(422, detail=f"image {i} is not valid base64")
        try:
            with model_lock:
                vectors = backend.embed_images(decoded)
        except Exception:
            raise HTTPException(422, detail="undecodable image payload")
        return EmbedResponse(
            dim=backend.dim,
            vectors=[l2_normalize(v, backend.dim) for v in vectors],
        )

    @app.get("/health")
    def health():
        if not state["loaded"]:
            try:
                ensure_loaded()
            except HTTPException:
                detail = {"status": "unavailable", "error": state["error"]}
                raise HTTPException(503, detail=detail)
        return {"status": "ok", "dim": backend.dim, "model": backend.name}

    return app
