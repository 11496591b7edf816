#!/usr/bin/env python3
"""Regenerate the frozen test fixtures under tests/data/.

Fixtures are checked in; rerunning this script must be a no-op unless the
fixture definitions below change. Reference implementations used as oracles
(a WordPiece tokenizer and a BLEU scorer) are only needed at generation
time, never at test time.

Usage: python scripts/make_fixtures.py [--only NAME ...]
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
DATA = ROOT / "tests" / "data"
sys.path.insert(0, str(ROOT / "src"))

from headtags.segmenter import segment  # noqa: E402


# -- fixture corpus -----------------------------------------------------------

FIXTURE_RECORDS = [
    {
        "id": "en-1",
        "language": "en",
        "headline": "Central bank raises interest rates again",
        "article": (
            "Markets opened quietly on Monday morning. "
            "Analysts had expected little movement before the announcement. "
            "The central bank raises interest rates again this quarter. "
            "Officials cited persistent inflation in housing and food. "
            "Economists warned that borrowing costs would stay high."
        ),
        "captions": [
            "Bank headquarters pictured at dawn",
            "Traders watch the rate announcement",
        ],
        "image_ids": ["img-en1-a", "img-en1-b"],
        "tags": ["economy", "interest rates", "banking"],
    },
    {
        "id": "en-2",
        "language": "en",
        "headline": "Coastal town rebuilds after storm",
        "article": (
            "Volunteers arrived with tools and timber at first light. "
            "The harbour wall had collapsed during the night. "
            "Fishing boats were carried two streets inland. "
            "Residents say the community will recover together."
        ),
        "captions": ["Damaged boats rest between houses"],
        "image_ids": ["img-en2-a"],
        "tags": ["weather", "storm damage", "community"],
    },
    {
        "id": "es-1",
        "language": "es",
        "headline": "El museo reabre sus puertas tras la reforma",
        "article": (
            "La ciudad celebró ayer una jornada histórica. "
            "El museo reabre sus puertas tras dos años de obras. "
            "Las nuevas salas muestran pinturas restauradas. "
            "Los visitantes llenaron los pasillos desde temprano."
        ),
        "captions": ["Visitantes frente a la fachada renovada"],
        "image_ids": ["img-es1-a"],
        "tags": ["cultura", "museo", "arte"],
    },
    {
        "id": "hi-1",
        "language": "hi",
        "headline": "शहर में नई रेल सेवा शुरू",
        "article": (
            "सुबह से ही स्टेशन पर भीड़ थी। "
            "शहर में नई रेल सेवा आज शुरू हुई। "
            "यात्रियों ने सुविधाओं की प्रशंसा की।"
        ),
        "captions": ["स्टेशन पर नई रेलगाड़ी"],
        "image_ids": ["img-hi1-a"],
        "tags": ["रेल", "परिवहन"],
    },
    {
        "id": "zh-1",
        "language": "zh",
        "headline": "新图书馆今日开放",
        "article": "市中心迎来久违的晴天。新图书馆今日正式开放。读者排队进入阅览室。",
        "captions": ["读者在图书馆门前排队"],
        "image_ids": ["img-zh1-a"],
        "tags": ["图书馆", "文化"],
    },
    {
        "id": "ar-1",
        "language": "ar",
        "headline": "افتتاح جسر جديد فوق النهر",
        "article": (
            "استيقظت المدينة على حدث كبير. "
            "تم افتتاح جسر جديد فوق النهر اليوم. "
            "عبرت السيارات الجسر منذ الصباح."
        ),
        "captions": ["الجسر الجديد عند الغروب"],
        "image_ids": ["img-ar1-a"],
        "tags": ["جسر", "مرور"],
    },
    {
        "id": "ru-1",
        "language": "ru",
        "headline": "Старый парк получил новую жизнь",
        "article": (
            "Жители района давно ждали перемен. "
            "Старый парк получил новую жизнь после ремонта. "
            "Рабочие высадили сотни деревьев. "
            "Дети уже играют на новых площадках."
        ),
        "captions": ["Новые аллеи парка"],
        "image_ids": ["img-ru1-a"],
        "tags": ["парк", "город", "деревья"],
    },
    {
        "id": "fr-1",
        "language": "fr",
        "headline": "Le marché couvert retrouve ses clients",
        "article": (
            "La halle était restée fermée tout l'hiver. "
            "Le marché couvert retrouve ses clients ce samedi. "
            "Les commerçants proposent des produits locaux."
        ),
        "captions": ["Étals colorés sous la halle"],
        "image_ids": ["img-fr1-a"],
        "tags": ["marché", "commerce"],
    },
]


def write_fixture_corpus():
    path = DATA / "fixture_corpus.jsonl"
    with open(path, "w", encoding="utf-8") as f:
        for record in FIXTURE_RECORDS:
            f.write(json.dumps(record, ensure_ascii=False) + "\n")
    print(f"wrote {path} ({len(FIXTURE_RECORDS)} records)")


# -- embedding table ----------------------------------------------------------

EMBED_DIM = 8


def _one_hot(i):
    vec = [0.0] * EMBED_DIM
    vec[i % EMBED_DIM] = 1.0
    return vec


def write_fixture_embeddings():
    """Vectors chosen so expected selections are known by construction.

    Sentence i of every record embeds as one-hot(i). Caption j embeds as
    one-hot(j + 1), so caption retrieval with k=1 must pick sentence j+1.
    Every image embeds as one-hot(0), so image retrieval with k=1 must pick
    sentence 0. Caption embeddings for record fr-1 are deliberately absent
    to exercise the lenient/strict missing-embedding paths.
    """
    path = DATA / "fixture_embeddings.jsonl"
    lines = [json.dumps({"dim": EMBED_DIM})]
    for record in FIXTURE_RECORDS:
        sentences = segment(record["article"], record["language"])
        assert len(sentences) <= EMBED_DIM, record["id"]
        for i in range(len(sentences)):
            lines.append(json.dumps(
                {"id": f"{record['id']}#s{i}", "vector": _one_hot(i)}
            ))
        if record["id"] != "fr-1":
            for j in range(len(record["captions"])):
                lines.append(json.dumps(
                    {"id": f"{record['id']}#c{j}", "vector": _one_hot(j + 1)}
                ))
        for image_id in record["image_ids"]:
            lines.append(json.dumps({"id": image_id, "vector": _one_hot(0)}))
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {path} ({len(lines) - 1} vectors)")


# -- wordpiece fixtures -------------------------------------------------------

_WORD_POOL = [
    "headline", "headlines", "unaffable", "tokenizer", "multilingual",
    "retrieval", "embedding", "generation", "newsroom", "economy",
    "economist", "banking", "선거", "뉴스", "समाचार", "अर्थव्यवस्था", "खबर",
    "新闻", "经济", "图书馆", "اقتصاد", "أخبار", "صحافة", "новости",
    "экономика", "газета", "noticias", "economía", "mercado", "journal",
    "marché", "xyzzy", "qwertyuiop", "können", "straße", "tükenmez",
]


def _build_vocab():
    vocab = ["[UNK]", "[CLS]", "[SEP]"]
    pieces = set()
    rng = random.Random(13)
    for word in _WORD_POOL:
        # Character inventory with continuation variants, with gaps so some
        # words fall back to [UNK].
        for ch in word:
            if rng.random() < 0.85:
                pieces.add(ch)
                pieces.add("##" + ch)
        # A few multi-character pieces to make greedy matching interesting.
        if len(word) >= 4:
            pieces.add(word[:3])
            pieces.add("##" + word[-3:])
        if rng.random() < 0.5:
            pieces.add(word)
    vocab.extend(sorted(pieces))
    return vocab


def write_wordpiece_fixtures():
    try:
        from tokenizers import Tokenizer
        from tokenizers.models import WordPiece
        from tokenizers.pre_tokenizers import WhitespaceSplit
    except ImportError:
        print("tokenizers not available; skipping wordpiece fixtures")
        return
    vocab = _build_vocab()
    vocab_path = DATA / "wordpiece_vocab.txt"
    vocab_path.write_text("\n".join(vocab) + "\n", encoding="utf-8")

    reference = Tokenizer(WordPiece(
        vocab={tok: i for i, tok in enumerate(vocab)},
        unk_token="[UNK]",
        max_input_chars_per_word=100,
    ))
    reference.pre_tokenizer = WhitespaceSplit()

    rng = random.Random(99)
    cases = []
    for _ in range(50):
        n_words = rng.randint(1, 8)
        words = []
        for _ in range(n_words):
            if rng.random() < 0.7:
                words.append(rng.choice(_WORD_POOL))
            else:
                words.append("".join(
                    rng.choice("abcdefghijklmnopqrstuvwxyz")
                    for _ in range(rng.randint(1, 10))
                ))
        text = " ".join(words)
        cases.append({"text": text, "tokens": reference.encode(text).tokens})
    (DATA / "wordpiece_cases.json").write_text(
        json.dumps(cases, ensure_ascii=False, indent=1) + "\n", encoding="utf-8"
    )
    print(f"wrote wordpiece vocab ({len(vocab)} pieces) and {len(cases)} cases")


# -- bleu fixtures ------------------------------------------------------------

def _load_reference_bleu():
    """Vendored BLEU scorer from the local example corpus, import-stubbed."""
    import importlib.util
    import types

    candidates = sorted((ROOT / "examples").glob("**/*sacrebleu*.py"))
    if not candidates:
        return None
    stub_names = [
        "nemo", "nemo.collections", "nemo.collections.nlp",
        "nemo.collections.nlp.data", "nemo.collections.nlp.data.tokenizers",
        "nemo.collections.nlp.data.tokenizers.fairseq_tokenizer",
    ]
    for name in stub_names:
        sys.modules.setdefault(name, types.ModuleType(name))
    sys.modules["nemo"].logging = types.SimpleNamespace(
        info=lambda *a, **k: None, warning=lambda *a, **k: None,
        error=lambda *a, **k: None,
    )
    sys.modules[stub_names[-1]].tokenize_en = lambda s: s.split()
    spec = importlib.util.spec_from_file_location("ref_bleu", candidates[0])
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    return module


def write_bleu_fixtures():
    ref = _load_reference_bleu()
    if ref is None:
        print("reference BLEU not available; skipping bleu fixtures")
        return
    rng = random.Random(4242)
    alphabet = [f"w{i}" for i in range(30)]
    cases = []
    for case_no in range(12):
        n_pairs = rng.randint(2, 6)
        hyps, refs = [], []
        for _ in range(n_pairs):
            ref_tokens = [rng.choice(alphabet) for _ in range(rng.randint(6, 18))]
            # Perturb a copy but keep a shared 4-gram so no precision is zero.
            hyp_tokens = list(ref_tokens)
            for _ in range(rng.randint(0, 4)):
                pos = rng.randrange(len(hyp_tokens))
                hyp_tokens[pos] = rng.choice(alphabet)
            keep = rng.randrange(max(1, len(ref_tokens) - 4))
            hyp_tokens[keep:keep + 4] = ref_tokens[keep:keep + 4]
            if rng.random() < 0.4:
                hyp_tokens = hyp_tokens[: rng.randint(5, len(hyp_tokens))]
            hyps.append(hyp_tokens)
            refs.append(ref_tokens)
        result = ref.corpus_bleu(
            [" ".join(h) for h in hyps],
            [[" ".join(r) for r in refs]],
            tokenize="none", smooth_method="none", force=True,
        )
        cases.append({
            "case": case_no,
            "hyps": hyps,
            "refs": refs,
            "bleu": result.score / 100.0,
        })
    (DATA / "bleu_cases.json").write_text(
        json.dumps(cases, indent=1) + "\n", encoding="utf-8"
    )
    print(f"wrote {len(cases)} bleu cases")


# -- porter vectors -----------------------------------------------------------

def write_porter_vectors():
    """Regenerate the English stemmer vectors from a reference Porter port
    found in the local example corpus. The 200-word list is fixed so
    regeneration is reproducible."""
    import importlib.util

    candidates = sorted((ROOT / "examples").glob("**/*gensim__porter.py"))
    if not candidates:
        print("reference Porter not available; keeping existing vectors")
        return
    spec = importlib.util.spec_from_file_location("ref_porter", candidates[0])
    module = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(module)
    stemmer = module.PorterStemmer()

    words = [
        'caresses', 'ponies', 'ties', 'caress', 'cats',
        'feed', 'agreed', 'plastered', 'bled', 'motoring',
        'sing', 'conflated', 'troubled', 'sized', 'hopping',
        'tanned', 'falling', 'hissing', 'fizzed', 'failing',
        'filing', 'happy', 'sky', 'relational', 'conditional',
        'rational', 'valenci', 'hesitanci', 'digitizer', 'conformabli',
        'radicalli', 'differentli', 'vileli', 'analogousli', 'vietnamization',
        'predication', 'operator', 'feudalism', 'decisiveness', 'hopefulness',
        'callousness', 'formaliti', 'sensitiviti', 'sensibiliti', 'triplicate',
        'formative', 'formalize', 'electriciti', 'electrical', 'hopeful',
        'goodness', 'revival', 'allowance', 'inference', 'airliner',
        'gyroscopic', 'adjustable', 'defensible', 'irritant', 'replacement',
        'adjustment', 'dependent', 'adoption', 'homologou', 'communism',
        'activate', 'angulariti', 'homologous', 'effective', 'bowdlerize',
        'probate', 'rate', 'cease', 'controll', 'roll',
        'archaeology', 'generalizations', 'oscillators', 'universities', 'utilities',
        'niche', 'depiction', 'under', 'represented', 'gemini',
        'distinctions', 'turkic', 'list', 'where', 'training',
        'whether', 'extractive', 'present', 'evaluating', 'sizes',
        'unveiled', 'overlooked', 'increasingly', 'macro', 'predetermined',
        'undefined', 'seperated', 'effort', 'geqslant', 'project',
        'throughout', 'historical', 'play', 'bibliography', 'understand',
        'zngr', 'documents', 'text', 'vocabulary', 'neural',
        'tokenizers', 'standards', 'contents', 'prefix', 'dynamic',
        'llms', 'auxiliary', 'your', 'inability', 'significantly',
        'main', 'necessary', 'compared', 'typically', 'variations',
        'configured', 'witten', 'highlighted', 'lagging', 'hline',
        'implies', 'distinguish', 'high', 'mathcal', 'lost',
        'group', 'refines', 'easily', 'limitations', 'encompassed',
        'divide', 'applications', 'vietnamese', 'employ', 'within',
        'advancements', 'explored', 'parameter', 'hand', 'zhang',
        'regular', 'tibetan', 'mapping', 'sentencepiece', 'clip',
        'however', 'second', 'encountered', 'ensuring', 'nayeem',
        'instruction', 'conciseness', 'diverges', 'integration', 'outcome',
        'russian', 'significant', 'consequently', 'extensive', 'known',
        'shortcite', 'ideal', 'hyperparameter', 'tokenizer', 'topics',
        'nearly', 'date', 'tasks', 'their', 'xmark',
        'computational', 'href', 'does', 'resizebox', 'tendency',
        'batch', 'cccccccccccccc', 'decoding', 'access', 'contrast',
        'metrics', 'ensure', 'includegraphics', 'encoding', 'brief',
    ]
    assert len(words) == 200
    path = DATA / "porter_vectors.txt"
    with open(path, "w", encoding="utf-8") as f:
        f.write("# English stemmer acceptance vectors: word<TAB>stem\n")
        f.write("# Generated from a reference Porter implementation (tartarus lineage).\n")
        for word in words:
            f.write(f"{word}\t{stemmer.stem(word)}\n")
    print(f"wrote {path} ({len(words)} vectors)")


FIXTURES = {
    "corpus": write_fixture_corpus,
    "embeddings": write_fixture_embeddings,
    "wordpiece": write_wordpiece_fixtures,
    "bleu": write_bleu_fixtures,
    "porter": write_porter_vectors,
}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--only", nargs="*", choices=sorted(FIXTURES))
    args = parser.parse_args()
    DATA.mkdir(parents=True, exist_ok=True)
    for name, fn in FIXTURES.items():
        if args.only and name not in args.only:
            continue
        fn()


if __name__ == "__main__":
    main()
