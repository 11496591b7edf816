"""Tag-word evaluation: precision/recall/F1 at K, M, and O cuts.

Predictions and references are normalized with the multilingual stemmer and
de-duplicated (order preserved) before counting, so surface variants of the
same tag match and repeated predictions cannot inflate precision. F1@K
truncates predictions to the first K in generation order; F1@M keeps the
model's own count; F1@O evaluates all predictions when the caller requested
exactly the reference count from controlled generation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import EmptyInput
from .gen_metrics import PRF, _prf
from .report import MetricReport
from .stemmer import normalize_tag


@dataclass(frozen=True)
class TagEvalConfig:
    language: str
    k_values: tuple[int, ...] = (3, 5)
    dedup: bool = True

    def __post_init__(self):
        if any(k < 1 for k in self.k_values):
            raise ValueError("k values must be >= 1")


def _normalized_dedup(tags: Iterable[str], language: str, dedup: bool = True) -> list[str]:
    seen: list[str] = []
    for tag in tags:
        norm = normalize_tag(tag, language)
        if not norm:
            continue
        if dedup and norm in seen:
            continue
        seen.append(norm)
    return seen


def match_count(
    pred: Sequence[str], gold: Sequence[str], language: str, dedup: bool = True
) -> int:
    """Size of the normalized prediction/reference intersection."""
    pred_set = set(_normalized_dedup(pred, language, dedup))
    gold_set = set(_normalized_dedup(gold, language, dedup))
    return len(pred_set & gold_set)


def _score(pred_norm: list[str], gold_set: set[str]) -> PRF:
    # With dedup off, repeated matching predictions inflate precision; the
    # default collapses duplicates first.
    if not pred_norm or not gold_set:
        return PRF(0.0, 0.0, 0.0)
    matches = sum(1 for p in pred_norm if p in gold_set)
    distinct = len({p for p in pred_norm if p in gold_set})
    return _prf(matches / len(pred_norm), distinct / len(gold_set))


def f1_at_k(
    pred: Sequence[str], gold: Sequence[str], k: int, language: str,
    dedup: bool = True,
) -> PRF:
    """Score the first min(k, |dedup(pred)|) predictions against gold."""
    if k < 1:
        raise ValueError("k must be >= 1")
    pred_norm = _normalized_dedup(pred, language, dedup)[:k]
    gold_set = set(_normalized_dedup(gold, language))
    return _score(pred_norm, gold_set)


def f1_at_m(
    pred: Sequence[str], gold: Sequence[str], language: str, dedup: bool = True
) -> PRF:
    """Score all predictions; the model chose how many to produce."""
    pred_norm = _normalized_dedup(pred, language, dedup)
    gold_set = set(_normalized_dedup(gold, language))
    return _score(pred_norm, gold_set)


def f1_at_o(
    pred: Sequence[str], gold: Sequence[str], language: str, dedup: bool = True
) -> PRF:
    """Score all predictions made under a request for exactly |gold| tags.

    The computation matches f1_at_m; the distinct name reports the
    controlled-generation setting where the requested count was the
    reference count.
    """
    return f1_at_m(pred, gold, language, dedup)


def macro_report(per_record: Sequence[PRF], prefix: str = "") -> MetricReport:
    """Arithmetic mean of each PRF component over records."""
    if not per_record:
        raise EmptyInput("macro_report needs at least one record")
    n = len(per_record)
    report = MetricReport()
    report.set(f"{prefix}precision", sum(s.precision for s in per_record) / n)
    report.set(f"{prefix}recall", sum(s.recall for s in per_record) / n)
    report.set(f"{prefix}f1", sum(s.f1 for s in per_record) / n)
    return report
