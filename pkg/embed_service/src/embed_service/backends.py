"""Embedding model backends.

A backend maps batches of texts or decoded images to raw vectors of a fixed
dimension; the HTTP layer L2-normalizes whatever comes back. Two backends
ship here:

* ClipBackend wraps the multilingual CLIP text encoder and its paired image
  encoder via sentence-transformers. Loading happens lazily on first use and
  requires the model weights to be available locally or downloadable.
* ToyAlignedBackend is a deterministic, dependency-light stand-in that maps
  color words and image pixel statistics into one shared feature basis, so
  matched text-image pairs score higher than mismatched ones. It exists for
  tests and offline development; swap in ClipBackend for real embeddings.
"""

from __future__ import annotations

import hashlib
import io
import math
from typing import Protocol, Sequence

from PIL import Image, ImageStat

DEFAULT_DIM = 512

_COLOR_FEATURES = {
    "red": (1.0, 0.0, 0.0),
    "green": (0.0, 1.0, 0.0),
    "blue": (0.0, 0.0, 1.0),
    "white": (1.0, 1.0, 1.0),
    "black": (0.0, 0.0, 0.0),
}


class EmbeddingBackend(Protocol):
    name: str
    dim: int

    def load(self) -> None: ...

    def embed_texts(self, texts: Sequence[str]) -> list[list[float]]: ...

    def embed_images(self, images: Sequence[bytes]) -> list[list[float]]: ...


class ToyAlignedBackend:
    """Deterministic shared text-image feature space.

    Dims 0..2 hold RGB evidence, dim 3 holds darkness; texts additionally
    spread hashed character trigrams over the remaining dims at small
    weight, which keeps distinct texts distinct without disturbing the
    cross-modal ranking.
    """

    name = "toy-aligned"

    def __init__(self, dim: int = DEFAULT_DIM):
        if dim < 8:
            raise ValueError("toy backend needs at least 8 dims")
        self.dim = dim

    def load(self) -> None:
        return None

    def _text_vector(self, text: str) -> list[float]:
        vec = [0.0] * self.dim
        words = text.lower().split()
        for word in words:
            feature = _COLOR_FEATURES.get(word.strip(".,!?"))
            if feature is None:
                continue
            vec[0] += feature[0]
            vec[1] += feature[1]
            vec[2] += feature[2]
            if feature == (0.0, 0.0, 0.0):
                vec[3] += 1.0
        padded = f"  {text.lower()}  "
        for i in range(len(padded) - 2):
            trigram = padded[i : i + 3]
            digest = hashlib.sha256(trigram.encode("utf-8")).digest()
            slot = 4 + int.from_bytes(digest[:4], "big") % (self.dim - 4)
            vec[slot] += 0.01
        return vec

    def _image_vector(self, data: bytes) -> list[float]:
        image = Image.open(io.BytesIO(data)).convert("RGB")
        r, g, b = (channel / 255.0 for channel in ImageStat.Stat(image).mean)
        vec = [0.0] * self.dim
        vec[0], vec[1], vec[2] = r, g, b
        vec[3] = 1.0 - max(r, g, b)
        return vec

    def embed_texts(self, texts: Sequence[str]) -> list[list[float]]:
        return [self._text_vector(t) for t in texts]

    def embed_images(self, images: Sequence[bytes]) -> list[list[float]]:
        return [self._image_vector(i) for i in images]


class ClipBackend:
    """Multilingual CLIP text tower plus the paired image tower."""

    def __init__(
        self,
        text_model: str = "sentence-transformers/clip-ViT-B-32-multilingual-v1",
        image_model: str = "sentence-transformers/clip-ViT-B-32",
        dim: int = DEFAULT_DIM,
    ):
        self.name = text_model
        self.dim = dim
        self._text_model_id = text_model
        self._image_model_id = image_model
        self._text_encoder = None
        self._image_encoder = None

    def load(self) -> None:
        if self._text_encoder is not None:
            return
        from sentence_transformers import SentenceTransformer

        self._text_encoder = SentenceTransformer(self._text_model_id)
        self._image_encoder = SentenceTransformer(self._image_model_id)

    def embed_texts(self, texts: Sequence[str]) -> list[list[float]]:
        self.load()
        return [list(map(float, v)) for v in self._text_encoder.encode(list(texts))]

    def embed_images(self, images: Sequence[bytes]) -> list[list[float]]:
        self.load()
        pil_images = [Image.open(io.BytesIO(data)).convert("RGB") for data in images]
        return [list(map(float, v)) for v in self._image_encoder.encode(pil_images)]


def l2_normalize(vector: Sequence[float], dim: int) -> list[float]:
    """Unit-norm copy; a zero vector falls back to a fixed basis vector so
    the service never emits an unnormalizable response."""
    norm = math.sqrt(sum(x * x for x in vector))
    if norm == 0.0:
        fallback = [0.0] * dim
        fallback[-1] = 1.0
        return fallback
    return [x / norm for x in vector]


def backend_from_name(name: str) -> EmbeddingBackend:
    if name == "toy":
        return ToyAlignedBackend()
    return ClipBackend(text_model=name)
