"""Instruction strings for joint headline + tag generation.

Input prefixes are English regardless of article language. Unrestricted
inputs read ``Generate Headline and Tag Words: {content}.`` and controlled
inputs verbalize the requested count, e.g. ``Generate Headline and Three
Tag Words: {content}.``. Targets read ``Headline is: {headline}. Tag words
are: {t1, t2, ...}.`` and parse_output inverts that format to evaluate
model generations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .corpus import ArticleRecord
from .errors import (
    EmptyContent,
    EmptyField,
    MissingMarker,
    OutOfRange,
    TagContainsDelimiter,
)

CONTROLLED = "controlled"
UNRESTRICTED = "unrestricted"

_HEADLINE_MARKER = "headline is:"
_TAGS_MARKER = "tag words are:"


@dataclass(frozen=True)
class GenerationMode:
    kind: str
    n: int | None = None

    def __post_init__(self):
        if self.kind == CONTROLLED:
            if self.n is None or self.n < 1:
                raise ValueError("controlled mode needs a positive tag count")
        elif self.kind == UNRESTRICTED:
            if self.n is not None:
                raise ValueError("unrestricted mode carries no tag count")
        else:
            raise ValueError(f"unknown mode kind {self.kind!r}")


def controlled(n: int) -> GenerationMode:
    return GenerationMode(CONTROLLED, n)


def unrestricted() -> GenerationMode:
    return GenerationMode(UNRESTRICTED)


@dataclass(frozen=True)
class InstructionExample:
    input_text: str
    target_text: str
    mode: GenerationMode
    record_id: str

    def to_json_obj(self) -> dict:
        return {
            "id": self.record_id,
            "input": self.input_text,
            "target": self.target_text,
            "mode": self.mode.kind,
            "n": self.mode.n,
        }


_ONES = (
    "", "One", "Two", "Three", "Four", "Five", "Six", "Seven", "Eight",
    "Nine", "Ten", "Eleven", "Twelve", "Thirteen", "Fourteen", "Fifteen",
    "Sixteen", "Seventeen", "Eighteen", "Nineteen",
)
_TENS = ("", "", "Twenty", "Thirty", "Forty", "Fifty", "Sixty", "Seventy",
         "Eighty", "Ninety")


def verbalize(n: int) -> str:
    """Capitalized English cardinal for 1..100."""
    if not 1 <= n <= 100:
        raise OutOfRange(f"can only verbalize 1..100, got {n}")
    if n == 100:
        return "One Hundred"
    if n < 20:
        return _ONES[n]
    tens, ones = divmod(n, 10)
    if ones == 0:
        return _TENS[tens]
    return f"{_TENS[tens]}-{_ONES[ones]}"


def build_input(content: str, mode: GenerationMode) -> str:
    if not content:
        raise EmptyContent("instruction content must be nonempty")
    if mode.kind == CONTROLLED:
        return f"Generate Headline and {verbalize(mode.n)} Tag Words: {content}."
    return f"Generate Headline and Tag Words: {content}."


def build_target(headline: str, tags: Sequence[str]) -> str:
    if not headline:
        raise EmptyField("headline must be nonempty")
    if not tags:
        raise EmptyField("tag list must be nonempty")
    for tag in tags:
        if "," in tag:
            raise TagContainsDelimiter(tag)
    return f"Headline is: {headline}. Tag words are: {', '.join(tags)}."


def _strip_trailing_period(text: str) -> str:
    text = text.strip()
    if text.endswith("."):
        text = text[:-1]
    return text


def parse_output(text: str, strict: bool = False) -> tuple[str, list[str]]:
    """Recover (headline, tags) from a generated target string.

    Markers are matched case-insensitively. In lenient mode a missing tag
    marker yields an empty tag list and a missing headline marker falls
    back to treating the leading text as the headline; strict mode raises
    MissingMarker instead.
    """
    lowered = text.lower()
    h_pos = lowered.find(_HEADLINE_MARKER)
    t_pos = lowered.find(_TAGS_MARKER)
    if h_pos < 0 and strict:
        raise MissingMarker("headline")
    if t_pos < 0 and strict:
        raise MissingMarker("tags")

    h_start = h_pos + len(_HEADLINE_MARKER) if h_pos >= 0 else 0
    h_end = t_pos if t_pos >= 0 else len(text)
    headline = _strip_trailing_period(text[h_start:h_end])

    tags: list[str] = []
    if t_pos >= 0:
        tail = _strip_trailing_period(text[t_pos + len(_TAGS_MARKER):])
        tags = [t.strip() for t in tail.split(",")]
        tags = [t for t in tags if t]
    return headline, tags


def build_example(
    record: ArticleRecord, mode: GenerationMode, content: str | None = None
) -> InstructionExample:
    """Instruction pair for one record; content defaults to the raw body.

    A controlled example must request exactly the record's tag count, since
    the target always lists every tag.
    """
    if mode.kind == CONTROLLED and mode.n != len(record.tags):
        raise ValueError(
            f"controlled mode asks for {mode.n} tags but record "
            f"{record.id!r} carries {len(record.tags)}"
        )
    return InstructionExample(
        input_text=build_input(content if content is not None else record.body, mode),
        target_text=build_target(record.headline, list(record.tags)),
        mode=mode,
        record_id=record.id,
    )


def mixture_assign(
    records: Sequence[ArticleRecord],
    controlled_fraction: float = 0.7,
    seed: int = 0,
) -> list[GenerationMode]:
    """Assign controlled/unrestricted modes in a seeded shuffle.

    Exactly ``round_half_up(fraction * n)`` records become controlled, each
    carrying its own tag count; the result is aligned with the input order.
    """
    if not 0.0 <= controlled_fraction <= 1.0:
        raise ValueError("controlled fraction must lie in [0, 1]")
    n = len(records)
    n_controlled = int(controlled_fraction * n + 0.5)
    order = list(range(n))
    random.Random(seed).shuffle(order)
    chosen = set(order[:n_controlled])
    return [
        controlled(len(record.tags)) if idx in chosen else unrestricted()
        for idx, record in enumerate(records)
    ]
