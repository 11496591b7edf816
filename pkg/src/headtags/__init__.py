"""Multilingual content-selection and evaluation toolkit for joint
headline + tag generation."""

from .corpus import (
    ArticleRecord,
    CorpusStats,
    compute_stats,
    load_corpus,
    scan_corpus,
    split_corpus,
    write_corpus,
)
from .gen_metrics import (
    PRF,
    SubwordVocab,
    corpus_bleu,
    length_ratio,
    rouge_l,
    rouge_n,
    subword_tokenize,
)
from .instruction import (
    GenerationMode,
    InstructionExample,
    build_example,
    build_input,
    build_target,
    controlled,
    mixture_assign,
    parse_output,
    unrestricted,
    verbalize,
)
from .retrieval import (
    ContentMode,
    EmbeddingTable,
    EmbeddingVector,
    HttpEmbeddingProvider,
    RetrievalSelection,
    TableEmbeddingProvider,
    aggregate_scores,
    build_selected_content,
    cap_ret,
    cosine,
    img_ret,
    select_top_k,
)
from .report import MetricReport
from .segmenter import SentenceSpan, segment, supported_languages
from .stemmer import normalize_tag, stem
from .tag_metrics import (
    TagEvalConfig,
    f1_at_k,
    f1_at_m,
    f1_at_o,
    macro_report,
    match_count,
)
from .baselines import ext_oracle, lead_1

__version__ = "0.1.0"

__all__ = [
    "ArticleRecord",
    "ContentMode",
    "CorpusStats",
    "EmbeddingTable",
    "EmbeddingVector",
    "GenerationMode",
    "HttpEmbeddingProvider",
    "InstructionExample",
    "MetricReport",
    "PRF",
    "RetrievalSelection",
    "SentenceSpan",
    "SubwordVocab",
    "TableEmbeddingProvider",
    "TagEvalConfig",
    "aggregate_scores",
    "build_example",
    "build_input",
    "build_selected_content",
    "build_target",
    "cap_ret",
    "compute_stats",
    "controlled",
    "corpus_bleu",
    "cosine",
    "ext_oracle",
    "f1_at_k",
    "f1_at_m",
    "f1_at_o",
    "img_ret",
    "lead_1",
    "length_ratio",
    "load_corpus",
    "macro_report",
    "match_count",
    "mixture_assign",
    "normalize_tag",
    "parse_output",
    "rouge_l",
    "rouge_n",
    "scan_corpus",
    "segment",
    "select_top_k",
    "split_corpus",
    "stem",
    "subword_tokenize",
    "supported_languages",
    "unrestricted",
    "verbalize",
    "write_corpus",
]
