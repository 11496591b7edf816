"""Multilingual token stemming used to normalize tag words before matching.

English runs the full Porter algorithm. Nine further languages (pt, es, fr,
ru, tr, ar, id, bn, hi) use light longest-suffix stripping driven by ordered
rule tables shipped under ``headtags/data/stemmer/``; each rule carries a
minimum-stem-length guard and a replacement strictly shorter than its
suffix, and rules are applied repeatedly until none fires, which makes the
table languages idempotent by construction. Chinese and Telugu pass through
unchanged, as do the remaining dataset languages without a table.

Tokens shorter than 3 codepoints are never stemmed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from ._porter import porter_stem
from .errors import UnsupportedLanguage
from .segmenter import supported_languages

_MIN_TOKEN_LEN = 3


@dataclass(frozen=True)
class _SuffixRule:
    suffix: str
    replace: str
    min_stem: int


def _table_dir():
    return resources.files("headtags") / "data" / "stemmer"


@lru_cache(maxsize=None)
def _table_languages() -> frozenset[str]:
    return frozenset(
        p.name[:-5] for p in _table_dir().iterdir() if p.name.endswith(".json")
    )


@lru_cache(maxsize=None)
def _load_table(language: str) -> tuple[_SuffixRule, ...]:
    raw = json.loads((_table_dir() / f"{language}.json").read_text("utf-8"))
    rules = tuple(
        _SuffixRule(r["suffix"], r["replace"], int(r["min_stem"]))
        for r in raw["rules"]
    )
    for r in rules:
        if len(r.replace) >= len(r.suffix):
            raise ValueError(
                f"non-shrinking rule {r.suffix!r}->{r.replace!r} in {language} table"
            )
    return rules


def _fold(text: str) -> str:
    # U+0130 expands under str.lower(); map it to plain "i" first so folding
    # never grows the token.
    return text.replace("İ", "i").lower()


def _strip_suffixes(token: str, rules: tuple[_SuffixRule, ...]) -> str:
    # First matching rule in table order wins; repeat until no rule applies.
    # Every application shrinks the token, so this terminates, and the fixed
    # point makes repeated stemming a no-op.
    while len(token) >= _MIN_TOKEN_LEN:
        for rule in rules:
            if token.endswith(rule.suffix) and (
                len(token) - len(rule.suffix) >= rule.min_stem
            ):
                token = token[: -len(rule.suffix)] + rule.replace
                break
        else:
            return token
    return token


def stem(token: str, language: str, *, passthrough_unsupported: bool = False) -> str:
    """Stem a single whitespace-free token.

    Unknown language codes raise UnsupportedLanguage unless the caller opts
    into passthrough mode.
    """
    if any(ch.isspace() for ch in token):
        raise ValueError(f"stem() takes a single token, got {token!r}")
    if language not in supported_languages():
        if passthrough_unsupported:
            return token
        raise UnsupportedLanguage(language)
    if language == "en":
        return porter_stem(_fold(token))
    if language in _table_languages():
        folded = _fold(token)
        if len(folded) < _MIN_TOKEN_LEN:
            return folded
        return _strip_suffixes(folded, _load_table(language))
    return token


def normalize_tag(
    tag: str, language: str, *, passthrough_unsupported: bool = False
) -> str:
    """Lowercase, collapse whitespace, and stem each token of a tag phrase."""
    tokens = _fold(tag).split()
    if not tokens:
        return ""
    stemmed = [
        stem(t, language, passthrough_unsupported=passthrough_unsupported)
        for t in tokens
    ]
    return " ".join(stemmed)
