"""Corpus ingestion, validation, splitting, and summary statistics.

The canonical corpus file is UTF-8 JSON lines, one record per line, with
fields exactly ``{id, language, headline, article, captions: [...],
image_ids: [...], tags: [...]}``. Records must carry a nonempty headline,
article body, and tag list; captions and image ids may each be empty and
nothing couples their lengths.
"""

from __future__ import annotations

import json
import random
import unicodedata
from dataclasses import dataclass
from pathlib import Path
from typing import Callable, Iterator, Sequence

from . import segmenter, stemmer
from .errors import (
    EmptyCorpus,
    MalformedLine,
    MissingField,
    RatioSum,
    UnsupportedLanguage,
)
from .gen_metrics import SubwordVocab, subword_tokenize

_FIELDS = ("id", "language", "headline", "article", "captions", "image_ids", "tags")

DEFAULT_SPLIT_RATIOS = (0.95, 0.01, 0.04)


@dataclass(frozen=True)
class ArticleRecord:
    id: str
    language: str
    headline: str
    body: str
    captions: tuple[str, ...] = ()
    image_ids: tuple[str, ...] = ()
    tags: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.headline.strip():
            raise ValueError(f"record {self.id!r}: empty headline")
        if not self.body.strip():
            raise ValueError(f"record {self.id!r}: empty body")
        if not self.tags or all(not t.strip() for t in self.tags):
            raise ValueError(f"record {self.id!r}: empty tag list")

    def to_json_obj(self) -> dict:
        return {
            "id": self.id,
            "language": self.language,
            "headline": self.headline,
            "article": self.body,
            "captions": list(self.captions),
            "image_ids": list(self.image_ids),
            "tags": list(self.tags),
        }


@dataclass
class CorpusStats:
    n_samples: int
    avg_words: float
    avg_sentences: float
    avg_headline_words: float
    novel_ngram_pct: dict[int, float]
    compression_ratio_pct: float
    avg_image_caption_pairs: float
    avg_tags: float
    present_tag_pct: float
    avg_subword_tokens: float | None = None

    def to_json_obj(self) -> dict:
        out = {
            "n_samples": self.n_samples,
            "avg_words": self.avg_words,
            "avg_sentences": self.avg_sentences,
            "avg_headline_words": self.avg_headline_words,
            "novel_ngram_pct": {str(n): v for n, v in self.novel_ngram_pct.items()},
            "compression_ratio_pct": self.compression_ratio_pct,
            "avg_image_caption_pairs": self.avg_image_caption_pairs,
            "avg_tags": self.avg_tags,
            "present_tag_pct": self.present_tag_pct,
        }
        if self.avg_subword_tokens is not None:
            out["avg_subword_tokens"] = self.avg_subword_tokens
        return out


def _parse_record(
    obj: object, line_no: int, languages: Sequence[str]
) -> ArticleRecord:
    if not isinstance(obj, dict):
        raise MalformedLine(line_no, "record is not an object")
    for name in _FIELDS:
        if name not in obj:
            raise MissingField(name, line_no)
    unknown = set(obj) - set(_FIELDS)
    if unknown:
        raise MalformedLine(line_no, f"unexpected fields {sorted(unknown)}")
    for name in ("id", "language", "headline", "article"):
        if not isinstance(obj[name], str):
            raise MalformedLine(line_no, f"field {name!r} must be a string")
    for name in ("captions", "image_ids", "tags"):
        value = obj[name]
        if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
            raise MalformedLine(line_no, f"field {name!r} must be a list of strings")
    if obj["language"] not in languages:
        raise UnsupportedLanguage(obj["language"], line_no)
    try:
        return ArticleRecord(
            id=obj["id"],
            language=obj["language"],
            headline=obj["headline"],
            body=obj["article"],
            captions=tuple(obj["captions"]),
            image_ids=tuple(obj["image_ids"]),
            tags=tuple(obj["tags"]),
        )
    except ValueError as exc:
        raise MalformedLine(line_no, str(exc)) from exc


def scan_corpus(
    path: str | Path, languages: Sequence[str] | None = None
) -> Iterator[tuple[int, ArticleRecord | Exception]]:
    """Yield (line_no, record-or-error) per nonempty line; never raises per line."""
    languages = languages if languages is not None else segmenter.supported_languages()
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, 1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                yield line_no, MalformedLine(line_no, f"invalid JSON: {exc.msg}")
                continue
            try:
                yield line_no, _parse_record(obj, line_no, languages)
            except Exception as exc:  # typed errors from _parse_record
                yield line_no, exc


def load_corpus(
    path: str | Path, languages: Sequence[str] | None = None
) -> list[ArticleRecord]:
    """Load all records in file order; raises on the first invalid line."""
    records = []
    for _, item in scan_corpus(path, languages):
        if isinstance(item, Exception):
            raise item
        records.append(item)
    return records


def write_corpus(records: Sequence[ArticleRecord], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for record in records:
            f.write(json.dumps(record.to_json_obj(), ensure_ascii=False) + "\n")


def split_corpus(
    records: Sequence[ArticleRecord],
    ratios: tuple[float, float, float] = DEFAULT_SPLIT_RATIOS,
    seed: int = 0,
) -> tuple[list[ArticleRecord], list[ArticleRecord], list[ArticleRecord]]:
    """Deterministic train/val/test split, stratified by language.

    Each language is shuffled and cut independently: val and test take
    ``floor(ratio * n)`` records and train absorbs the remainder, so the
    three outputs always partition the input. Record order inside each
    split follows the original corpus order.
    """
    err = abs(sum(ratios) - 1.0)
    if err > 1e-9:
        raise RatioSum(err)
    if any(r < 0 for r in ratios):
        raise RatioSum(sum(ratios) - 1.0)
    by_language: dict[str, list[int]] = {}
    for idx, record in enumerate(records):
        by_language.setdefault(record.language, []).append(idx)

    assignment: dict[int, int] = {}
    for language, indices in by_language.items():
        rng = random.Random(f"{seed}/{language}")
        shuffled = list(indices)
        rng.shuffle(shuffled)
        n = len(shuffled)
        n_val = int(ratios[1] * n)
        n_test = int(ratios[2] * n)
        n_train = n - n_val - n_test
        for pos, idx in enumerate(shuffled):
            assignment[idx] = 0 if pos < n_train else (1 if pos < n_train + n_val else 2)

    splits: tuple[list[ArticleRecord], ...] = ([], [], [])
    for idx, record in enumerate(records):
        splits[assignment[idx]].append(record)
    return splits


def _whitespace_words(text: str) -> list[str]:
    return text.split()


def _novel_ngram_fraction(head: list[str], body_set: set[tuple[str, ...]], n: int) -> float | None:
    total = len(head) - n + 1
    if total <= 0:
        return None
    novel = sum(
        1 for i in range(total) if tuple(head[i : i + n]) not in body_set
    )
    return novel / total


def _strip_edge_punct(word: str) -> str:
    start = 0
    end = len(word)
    while start < end and unicodedata.category(word[start]).startswith("P"):
        start += 1
    while end > start and unicodedata.category(word[end - 1]).startswith("P"):
        end -= 1
    return word[start:end]


def _contains_contiguous(haystack: list[str], needle: list[str]) -> bool:
    if not needle or len(needle) > len(haystack):
        return False
    return any(
        haystack[i : i + len(needle)] == needle
        for i in range(len(haystack) - len(needle) + 1)
    )


def compute_stats(
    records: Sequence[ArticleRecord],
    segment: Callable[[str, str], list] = segmenter.segment,
    normalize: Callable[[str, str], str] = stemmer.normalize_tag,
    vocab: SubwordVocab | None = None,
) -> CorpusStats:
    """Macro-averaged corpus statistics.

    Compression per record is ``(1 - |headline| / |body|) * 100`` in
    whitespace words; novel n-gram percentages count headline n-gram
    occurrences absent from the body (records too short for a given n are
    excluded from that average); a tag counts as present when its
    normalized token sequence occurs contiguously among the normalized
    body tokens.
    """
    if not records:
        raise EmptyCorpus("no records to summarize")

    n = len(records)
    words_sum = 0
    sents_sum = 0
    head_words_sum = 0
    compression_sum = 0.0
    pairs_sum = 0
    tags_sum = 0
    present_sum = 0.0
    subword_sum = 0
    novel_sums = {k: 0.0 for k in (1, 2, 3, 4)}
    novel_counts = {k: 0 for k in (1, 2, 3, 4)}

    for record in records:
        body_words = _whitespace_words(record.body)
        head_words = _whitespace_words(record.headline)
        words_sum += len(body_words)
        head_words_sum += len(head_words)
        sents_sum += len(segment(record.body, record.language))
        compression_sum += (1 - len(head_words) / len(body_words)) * 100
        pairs_sum += max(len(record.captions), len(record.image_ids))
        if vocab is not None:
            subword_sum += len(subword_tokenize(record.body, vocab))

        for k in (1, 2, 3, 4):
            body_set = {
                tuple(body_words[i : i + k]) for i in range(len(body_words) - k + 1)
            }
            frac = _novel_ngram_fraction(head_words, body_set, k)
            if frac is not None:
                novel_sums[k] += frac
                novel_counts[k] += 1

        norm_tags = []
        for tag in record.tags:
            norm = normalize(tag, record.language)
            if norm and norm not in norm_tags:
                norm_tags.append(norm)
        tags_sum += len(norm_tags)
        if norm_tags:
            body_norm = [
                normalize(_strip_edge_punct(w), record.language) for w in body_words
            ]
            hits = sum(
                1 for t in norm_tags if _contains_contiguous(body_norm, t.split())
            )
            present_sum += hits / len(norm_tags)

    return CorpusStats(
        n_samples=n,
        avg_words=words_sum / n,
        avg_sentences=sents_sum / n,
        avg_headline_words=head_words_sum / n,
        novel_ngram_pct={
            k: (novel_sums[k] / novel_counts[k] * 100 if novel_counts[k] else 0.0)
            for k in (1, 2, 3, 4)
        },
        compression_ratio_pct=compression_sum / n,
        avg_image_caption_pairs=pairs_sum / n,
        avg_tags=tags_sum / n,
        present_tag_pct=present_sum / n * 100,
        avg_subword_tokens=(subword_sum / n) if vocab is not None else None,
    )
