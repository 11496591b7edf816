"""Headline-quality metrics: subword ROUGE-1/2/L, corpus BLEU, length ratio.

ROUGE is computed over subword tokens so that scores stay comparable across
languages without word tokenizers. Subword tokenization is greedy
longest-match-first against a BERT-style vocabulary: the first piece of a
word is unmarked, continuation pieces carry the ``##`` marker, and a word
with an unmatchable prefix collapses to the unknown token.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

from .errors import EmptyReference, LengthMismatch

# Words longer than this become the unknown token outright, mirroring the
# reference WordPiece implementations.
_MAX_WORD_CHARS = 100


@dataclass(frozen=True)
class SubwordVocab:
    entries: frozenset[str]
    continuation_marker: str = "##"
    unknown_token: str = "[UNK]"

    def __post_init__(self):
        if self.unknown_token not in self.entries:
            raise ValueError(f"unknown token {self.unknown_token!r} not in vocabulary")

    @classmethod
    def load(cls, path: str | Path, *, continuation_marker: str = "##",
             unknown_token: str = "[UNK]") -> "SubwordVocab":
        """Read a BERT-compatible vocabulary file, one subword per line."""
        entries = []
        with open(path, encoding="utf-8") as f:
            for line in f:
                token = line.rstrip("\n")
                if token:
                    entries.append(token)
        return cls(frozenset(entries), continuation_marker, unknown_token)


@dataclass(frozen=True)
class PRF:
    precision: float
    recall: float
    f1: float


def _prf(precision: float, recall: float) -> PRF:
    if precision + recall == 0:
        return PRF(precision, recall, 0.0)
    return PRF(precision, recall, 2 * precision * recall / (precision + recall))


def subword_tokenize(text: str, vocab: SubwordVocab) -> list[str]:
    """Greedy longest-match-first decomposition of each whitespace word."""
    out: list[str] = []
    for word in text.split():
        if len(word) > _MAX_WORD_CHARS:
            out.append(vocab.unknown_token)
            continue
        pieces: list[str] = []
        start = 0
        while start < len(word):
            end = len(word)
            piece = None
            while start < end:
                candidate = word[start:end]
                if start > 0:
                    candidate = vocab.continuation_marker + candidate
                if candidate in vocab.entries:
                    piece = candidate
                    break
                end -= 1
            if piece is None:
                pieces = [vocab.unknown_token]
                break
            pieces.append(piece)
            start = end
        out.extend(pieces)
    return out


def _ngrams(tokens: list[str], n: int) -> Counter:
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))


def rouge_n(hyp_tokens: list[str], ref_tokens: list[str], n: int) -> PRF:
    """Clipped n-gram overlap precision/recall/F1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    hyp = _ngrams(hyp_tokens, n)
    ref = _ngrams(ref_tokens, n)
    overlap = sum((hyp & ref).values())
    p = overlap / sum(hyp.values()) if hyp else 0.0
    r = overlap / sum(ref.values()) if ref else 0.0
    return _prf(p, r)


def _lcs_len(a: list[str], b: list[str]) -> int:
    if not a or not b:
        return 0
    prev = [0] * (len(b) + 1)
    for x in a:
        cur = [0]
        for j, y in enumerate(b, 1):
            cur.append(prev[j - 1] + 1 if x == y else max(prev[j], cur[j - 1]))
        prev = cur
    return prev[-1]


def rouge_l(hyp_tokens: list[str], ref_tokens: list[str]) -> PRF:
    """LCS-based precision/recall/F1 over whole token lists."""
    lcs = _lcs_len(hyp_tokens, ref_tokens)
    p = lcs / len(hyp_tokens) if hyp_tokens else 0.0
    r = lcs / len(ref_tokens) if ref_tokens else 0.0
    return _prf(p, r)


def corpus_bleu(
    hyps: list[list[str]],
    refs: list[list[str]],
    max_n: int = 4,
    epsilon: float = 1e-9,
) -> float:
    """Corpus BLEU with brevity penalty.

    Zero modified precisions are replaced by ``epsilon`` instead of zeroing
    the whole score; an all-empty hypothesis corpus scores 0.
    """
    if len(hyps) != len(refs) or not hyps:
        raise LengthMismatch(
            f"need equally many non-zero hypotheses and references, "
            f"got {len(hyps)} vs {len(refs)}"
        )
    hyp_len = sum(len(h) for h in hyps)
    ref_len = sum(len(r) for r in refs)
    if hyp_len == 0:
        return 0.0
    log_p_sum = 0.0
    for n in range(1, max_n + 1):
        matches = 0
        total = 0
        for h, r in zip(hyps, refs):
            h_ngrams = _ngrams(h, n)
            if not h_ngrams:
                continue
            total += sum(h_ngrams.values())
            matches += sum((h_ngrams & _ngrams(r, n)).values())
        p = matches / total if total and matches else epsilon
        log_p_sum += math.log(p) / max_n
    bp = 1.0 if hyp_len > ref_len else math.exp(1 - ref_len / hyp_len)
    return bp * math.exp(log_p_sum)


def length_ratio(hyp_tokens: list[str], ref_tokens: list[str]) -> float:
    """Hypothesis length over reference length; lower is more concise."""
    if not ref_tokens:
        raise EmptyReference("length_ratio needs a nonempty reference")
    return len(hyp_tokens) / len(ref_tokens)
