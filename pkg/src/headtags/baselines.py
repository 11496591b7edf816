"""Extractive headline baselines: the article's first sentence, and the
sentence that maximizes ROUGE-2 F1 against the reference headline."""

from __future__ import annotations

from .corpus import ArticleRecord
from .gen_metrics import SubwordVocab, rouge_n, subword_tokenize
from .segmenter import segment


def lead_1(record: ArticleRecord) -> str:
    """First sentence of the body."""
    spans = segment(record.body, record.language)
    return spans[0].text


def ext_oracle(record: ArticleRecord, vocab: SubwordVocab) -> str:
    """Body sentence with the highest subword ROUGE-2 F1 against the
    headline; ties go to the earliest sentence."""
    spans = segment(record.body, record.language)
    ref_tokens = subword_tokenize(record.headline, vocab)
    best_text = spans[0].text
    best_f1 = -1.0
    for span in spans:
        f1 = rouge_n(subword_tokenize(span.text, vocab), ref_tokens, 2).f1
        if f1 > best_f1:
            best_f1 = f1
            best_text = span.text
    return best_text
