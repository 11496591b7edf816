"""Multimodal content selection: score sentences against image or caption
queries in a shared embedding space, keep the top K, and restore document
order.

Each image and caption is a separate query; a sentence's score is the sum
of its cosine similarities to every query. Selected sentences are returned
in their original article order regardless of score order.

Embeddings come from a provider. Two kinds are supported:

* contract providers expose ``text_embed(texts)`` and
  ``image_embed(image_ids)`` (the HTTP client below, or any model wrapper);
* key-addressed providers expose ``embed_keys(keys)`` over a precomputed
  table, keyed ``<record_id>#s<i>`` for sentences, ``<record_id>#c<j>`` for
  captions, and the raw image id for images.

The pipeline prefers ``embed_keys`` when present so fully precomputed runs
never need the original encoder.
"""

from __future__ import annotations

import base64
import json
import math
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import Protocol, Sequence, runtime_checkable

import httpx

from .corpus import ArticleRecord
from .errors import (
    DimMismatch,
    EmptyQueries,
    MissingEmbedding,
    MissingSelection,
    NoCaptions,
    NoImages,
    ProviderError,
)
from .segmenter import segment

DEFAULT_K_VALUES = (5, 10, 15)
DEFAULT_DIM = 512


@dataclass(frozen=True)
class EmbeddingVector:
    values: tuple[float, ...]

    def __post_init__(self):
        if not all(math.isfinite(v) for v in self.values):
            raise ValueError("embedding contains non-finite values")

    @property
    def dim(self) -> int:
        return len(self.values)


@runtime_checkable
class EmbeddingProvider(Protocol):
    def text_embed(self, texts: Sequence[str]) -> list[EmbeddingVector]: ...

    def image_embed(self, image_ids: Sequence[str]) -> list[EmbeddingVector]: ...


@runtime_checkable
class KeyedProvider(Protocol):
    def embed_keys(self, keys: Sequence[str]) -> list[EmbeddingVector]: ...


class ContentMode(Enum):
    ARTICLE_ONLY = "article"
    RETRIEVED_ONLY = "retrieved"
    RETRIEVED_PLUS_ARTICLE = "retrieved+article"


@dataclass(frozen=True)
class RetrievalSelection:
    indices: tuple[int, ...]
    scores: tuple[float, ...]
    k_requested: int
    k_effective: int


def cosine(a: EmbeddingVector, b: EmbeddingVector) -> float:
    """Cosine similarity; zero-norm vectors score 0 against everything."""
    if a.dim != b.dim:
        raise DimMismatch(b.dim, a.dim)
    dot = sum(x * y for x, y in zip(a.values, b.values))
    na = math.sqrt(sum(x * x for x in a.values))
    nb = math.sqrt(sum(y * y for y in b.values))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return max(-1.0, min(1.0, dot / (na * nb)))


def aggregate_scores(
    sentence_embs: Sequence[EmbeddingVector],
    query_embs: Sequence[EmbeddingVector],
) -> list[float]:
    """Per-sentence sum of cosine similarity over all queries."""
    if not query_embs:
        raise EmptyQueries("at least one query embedding is required")
    return [sum(cosine(s, q) for q in query_embs) for s in sentence_embs]


def select_top_k(scores: Sequence[float], k: int) -> RetrievalSelection:
    """Indices of the min(k, n) best scores, ties to the earlier sentence,
    reported in ascending document order."""
    if k < 1:
        raise ValueError("k must be >= 1")
    n = len(scores)
    k_effective = min(k, n)
    ranked = sorted(range(n), key=lambda i: (-scores[i], i))[:k_effective]
    indices = tuple(sorted(ranked))
    return RetrievalSelection(
        indices=indices,
        scores=tuple(scores[i] for i in indices),
        k_requested=k,
        k_effective=k_effective,
    )


def _embed_sentences(provider, record: ArticleRecord, sentences: list[str]):
    if isinstance(provider, KeyedProvider):
        keys = [f"{record.id}#s{i}" for i in range(len(sentences))]
        return provider.embed_keys(keys)
    return provider.text_embed(sentences)


def _run(record: ArticleRecord, k: int, provider, query_embs):
    spans = segment(record.body, record.language)
    sentences = [s.text for s in spans]
    try:
        sentence_embs = _embed_sentences(provider, record, sentences)
        queries = query_embs(sentences)
    except (MissingEmbedding, ProviderError):
        raise
    except Exception as exc:
        raise ProviderError(str(exc)) from exc
    scores = aggregate_scores(sentence_embs, queries)
    selection = select_top_k(scores, k)
    return selection, [sentences[i] for i in selection.indices]


def img_ret(
    record: ArticleRecord, k: int, provider
) -> tuple[RetrievalSelection, list[str]]:
    """Select the k body sentences most similar to the record's images."""
    if not record.image_ids:
        raise NoImages(f"record {record.id!r} has no images")

    def queries(_sentences):
        return provider.image_embed(list(record.image_ids))

    return _run(record, k, provider, queries)


def cap_ret(
    record: ArticleRecord, k: int, provider
) -> tuple[RetrievalSelection, list[str]]:
    """Select the k body sentences most similar to the record's captions."""
    if not record.captions:
        raise NoCaptions(f"record {record.id!r} has no captions")

    def queries(_sentences):
        if isinstance(provider, KeyedProvider):
            keys = [f"{record.id}#c{j}" for j in range(len(record.captions))]
            return provider.embed_keys(keys)
        return provider.text_embed(list(record.captions))

    return _run(record, k, provider, queries)


def build_selected_content(
    selection_sentences: Sequence[str] | None,
    record: ArticleRecord,
    mode: ContentMode,
) -> str:
    """Assemble the instruction input body for the chosen content setting."""
    if mode is ContentMode.ARTICLE_ONLY:
        return record.body
    if selection_sentences is None:
        raise MissingSelection(f"mode {mode.value} requires retrieved sentences")
    retrieved = " ".join(selection_sentences)
    if mode is ContentMode.RETRIEVED_ONLY:
        return retrieved
    return f"{retrieved} {record.body}"


# -- providers ----------------------------------------------------------------


class EmbeddingTable:
    """Immutable id -> vector store loaded from a JSON-lines file.

    The first line is a header ``{"dim": D}``; every further line is
    ``{"id": ..., "vector": [...]}`` with exactly D components.
    """

    def __init__(self, dim: int, vectors: dict[str, EmbeddingVector]):
        self.dim = dim
        self._vectors = dict(vectors)

    @classmethod
    def load(cls, path: str | Path) -> "EmbeddingTable":
        vectors: dict[str, EmbeddingVector] = {}
        dim = None
        with open(path, encoding="utf-8") as f:
            for line_no, line in enumerate(f, 1):
                if not line.strip():
                    continue
                obj = json.loads(line)
                if dim is None:
                    if "dim" not in obj:
                        raise ValueError(f"{path}: first line must be a dim header")
                    dim = int(obj["dim"])
                    continue
                vec = EmbeddingVector(tuple(float(x) for x in obj["vector"]))
                if vec.dim != dim:
                    raise DimMismatch(vec.dim, dim)
                vectors[obj["id"]] = vec
        if dim is None:
            raise ValueError(f"{path}: empty embedding table")
        return cls(dim, vectors)

    def get(self, key: str) -> EmbeddingVector | None:
        return self._vectors.get(key)

    def lookup(self, keys: Sequence[str]) -> list[EmbeddingVector]:
        out = []
        for key in keys:
            vec = self._vectors.get(key)
            if vec is None:
                raise MissingEmbedding(key)
            out.append(vec)
        return out

    def __len__(self) -> int:
        return len(self._vectors)


class TableEmbeddingProvider:
    """File-backed, key-addressed provider over a precomputed table."""

    def __init__(self, table: EmbeddingTable):
        self.table = table

    def embed_keys(self, keys: Sequence[str]) -> list[EmbeddingVector]:
        return self.table.lookup(keys)

    def image_embed(self, image_ids: Sequence[str]) -> list[EmbeddingVector]:
        return self.table.lookup(image_ids)


class HttpEmbeddingProvider:
    """Wire client for the embedding service.

    ``image_embed`` resolves image ids to files under ``images_dir``,
    base64-encodes their bytes, and posts them to ``/embed/image``.
    """

    def __init__(
        self,
        base_url: str,
        images_dir: str | Path | None = None,
        client: httpx.Client | None = None,
        timeout: float = 30.0,
    ):
        self.base_url = base_url.rstrip("/")
        self.images_dir = Path(images_dir) if images_dir else None
        self._client = client or httpx.Client(timeout=timeout)

    def _post(self, endpoint: str, payload: dict) -> list[EmbeddingVector]:
        try:
            response = self._client.post(f"{self.base_url}{endpoint}", json=payload)
            response.raise_for_status()
            body = response.json()
        except httpx.HTTPError as exc:
            raise ProviderError(f"{endpoint}: {exc}") from exc
        return [EmbeddingVector(tuple(float(x) for x in v)) for v in body["vectors"]]

    def text_embed(self, texts: Sequence[str]) -> list[EmbeddingVector]:
        return self._post("/embed/text", {"texts": list(texts)})

    def image_embed(self, image_ids: Sequence[str]) -> list[EmbeddingVector]:
        if self.images_dir is None:
            raise ProviderError("image embedding requires an images_dir")
        images = []
        for image_id in image_ids:
            path = self.images_dir / image_id
            if not path.is_file():
                raise MissingEmbedding(image_id)
            images.append(base64.b64encode(path.read_bytes()).decode("ascii"))
        return self._post("/embed/image", {"images": images})
