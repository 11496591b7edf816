import json
from pathlib import Path

import pytest

from headtags.corpus import load_corpus
from headtags.gen_metrics import SubwordVocab

DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


@pytest.fixture(scope="session")
def fixture_corpus_path() -> Path:
    return DATA / "fixture_corpus.jsonl"


@pytest.fixture(scope="session")
def fixture_corpus(fixture_corpus_path):
    return load_corpus(fixture_corpus_path)


@pytest.fixture(scope="session")
def fixture_embeddings_path() -> Path:
    return DATA / "fixture_embeddings.jsonl"


@pytest.fixture(scope="session")
def wordpiece_vocab() -> SubwordVocab:
    return SubwordVocab.load(DATA / "wordpiece_vocab.txt")


@pytest.fixture(scope="session")
def wordpiece_cases():
    return json.loads((DATA / "wordpiece_cases.json").read_text("utf-8"))


@pytest.fixture(scope="session")
def bleu_cases():
    return json.loads((DATA / "bleu_cases.json").read_text("utf-8"))


@pytest.fixture(scope="session")
def porter_vectors():
    vectors = []
    for line in (DATA / "porter_vectors.txt").read_text("utf-8").splitlines():
        if line.startswith("#") or not line.strip():
            continue
        word, stem = line.split("\t")
        vectors.append((word, stem))
    return vectors
