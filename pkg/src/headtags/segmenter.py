"""Rule-based multilingual sentence boundary detection.

One uniform engine driven by per-language rule tables (terminator codepoints
plus abbreviation lists) shipped under ``headtags/data/segmenter/``. A
boundary is placed after a run of terminator characters, and after any
closing quotes/brackets that trail it, when the terminator either does not
require following whitespace (CJK fullwidth stops) or is in fact followed by
whitespace or end of text. Dots inside decimal numbers never split because
the digit that follows them is not whitespace. Dots that close a listed
abbreviation are suppressed explicitly.

Span offsets are codepoint indices into the source string, so
``source[span.start:span.end] == span.text`` always holds.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .errors import UnsupportedLanguage

# Closing punctuation that may trail a terminator and stays attached to the
# preceding sentence.
_CLOSERS = frozenset("\"')]}»›”’）】」』〉》")


@dataclass(frozen=True)
class SentenceSpan:
    """One sentence: ``[start, end)`` codepoint offsets plus the trimmed text."""

    start: int
    end: int
    text: str


@dataclass(frozen=True)
class _RuleTable:
    language: str
    terminators: frozenset[str]
    needs_space: dict[str, bool]
    abbreviations: frozenset[str]


def _data_dir():
    return resources.files("headtags") / "data" / "segmenter"


@lru_cache(maxsize=None)
def supported_languages() -> tuple[str, ...]:
    """Language codes with a shipped rule table (the 20 dataset languages)."""
    names = [p.name[:-5] for p in _data_dir().iterdir() if p.name.endswith(".json")]
    return tuple(sorted(names))


@lru_cache(maxsize=None)
def _rules(language: str) -> _RuleTable:
    if language not in supported_languages():
        raise UnsupportedLanguage(language)
    raw = json.loads((_data_dir() / f"{language}.json").read_text("utf-8"))
    terms = {t["char"]: bool(t["needs_space"]) for t in raw["terminators"]}
    return _RuleTable(
        language=language,
        terminators=frozenset(terms),
        needs_space=terms,
        abbreviations=frozenset(a.lower() for a in raw["abbreviations"]),
    )


def _preceding_word(text: str, run_start: int, run_end: int) -> str:
    """The whitespace-delimited word that ends with the terminator run."""
    w = run_start
    while w > 0 and not text[w - 1].isspace():
        w -= 1
    word = text[w : run_end + 1]
    return word.lstrip("\"'([{«‹“‘").lower()


def segment(text: str, language: str) -> list[SentenceSpan]:
    """Split ``text`` into ordered, non-overlapping sentence spans.

    Every non-whitespace character lands in exactly one span; text without
    any terminator comes back as a single sentence. Whitespace-only input
    yields no spans.
    """
    rules = _rules(language)
    n = len(text)
    bounds: list[tuple[int, int]] = []
    seg_start = 0
    i = 0
    while i < n:
        if text[i] not in rules.terminators:
            i += 1
            continue
        run_start = i
        j = i
        while j + 1 < n and text[j + 1] in rules.terminators:
            j += 1
        k = j
        while k + 1 < n and text[k + 1] in _CLOSERS:
            k += 1
        followed = k + 1 >= n or text[k + 1].isspace()
        if not followed and rules.needs_space[text[j]]:
            i = j + 1
            continue
        if _preceding_word(text, run_start, j) in rules.abbreviations:
            i = j + 1
            continue
        bounds.append((seg_start, k + 1))
        seg_start = k + 1
        i = k + 1
    if seg_start < n:
        bounds.append((seg_start, n))

    spans: list[SentenceSpan] = []
    for a, b in bounds:
        while a < b and text[a].isspace():
            a += 1
        while b > a and text[b - 1].isspace():
            b -= 1
        if a < b:
            spans.append(SentenceSpan(a, b, text[a:b]))
    return spans
