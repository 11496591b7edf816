#!/usr/bin/env python3
"""End-to-end pipeline demo on a synthetic multilingual corpus.

Builds a corpus and a matching precomputed embedding table, then drives the
CLI through ingest -> stats -> split -> retrieve -> prepare -> eval, using
the gold headlines/tags as mock model output so every metric is exercised.

Usage: python scripts/demo_pipeline.py [workdir]
"""

from __future__ import annotations

import json
import random
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "src"))

from headtags.instruction import parse_output  # noqa: E402
from headtags.segmenter import segment  # noqa: E402

LANGS = ["en", "es", "ru", "hi", "zh"]
WORDS = {
    "en": ["market", "council", "river", "festival", "report", "minister"],
    "es": ["mercado", "ciudad", "puente", "informe", "museo", "ministro"],
    "ru": ["рынок", "город", "мост", "отчет", "музей", "министр"],
    "hi": ["बाजार", "शहर", "पुल", "रिपोर्ट", "संग्रहालय", "मंत्री"],
    "zh": ["市场", "城市", "桥梁", "报告", "博物馆", "部长"],
}
STOPS = {"en": ".", "es": ".", "ru": ".", "hi": "।", "zh": "。"}


def build_corpus(path: Path, n_per_lang: int = 12, seed: int = 7) -> list[dict]:
    rng = random.Random(seed)
    records = []
    for lang in LANGS:
        vocab = WORDS[lang]
        stop = STOPS[lang]
        for i in range(n_per_lang):
            sentences = [
                " ".join(rng.choice(vocab) for _ in range(rng.randint(3, 7))) + stop
                for _ in range(rng.randint(3, 7))
            ]
            records.append({
                "id": f"{lang}-{i}",
                "language": lang,
                "headline": " ".join(rng.sample(vocab, 3)),
                "article": " ".join(sentences),
                "captions": [" ".join(rng.sample(vocab, 2))
                             for _ in range(rng.randint(1, 3))],
                "image_ids": [f"{lang}-{i}-img{j}"
                              for j in range(rng.randint(1, 2))],
                "tags": rng.sample(vocab, rng.randint(2, 4)),
            })
    with open(path, "w", encoding="utf-8") as f:
        for record in records:
            f.write(json.dumps(record, ensure_ascii=False) + "\n")
    return records


def build_embeddings(records: list[dict], path: Path, dim: int = 16) -> None:
    def vec_for(key: str) -> list[float]:
        rng = random.Random(key)
        return [round(rng.uniform(-1, 1), 6) for _ in range(dim)]

    with open(path, "w", encoding="utf-8") as f:
        f.write(json.dumps({"dim": dim}) + "\n")
        for record in records:
            spans = segment(record["article"], record["language"])
            for i in range(len(spans)):
                f.write(json.dumps(
                    {"id": f"{record['id']}#s{i}", "vector": vec_for(f"s/{record['id']}/{i}")}
                ) + "\n")
            for j in range(len(record["captions"])):
                f.write(json.dumps(
                    {"id": f"{record['id']}#c{j}", "vector": vec_for(f"c/{record['id']}/{j}")}
                ) + "\n")
            for image_id in record["image_ids"]:
                f.write(json.dumps(
                    {"id": image_id, "vector": vec_for(f"i/{image_id}")}
                ) + "\n")


def build_vocab(records: list[dict], path: Path) -> None:
    chars = set()
    for record in records:
        for field in (record["headline"], record["article"]):
            chars.update(field.replace(" ", ""))
    entries = ["[UNK]"] + sorted(chars) + ["##" + c for c in sorted(chars)]
    path.write_text("\n".join(entries) + "\n", encoding="utf-8")


def run(args: list[str]) -> str:
    cmd = [sys.executable, "-m", "headtags.cli", *map(str, args)]
    print(f"$ headtags {' '.join(map(str, args))}")
    proc = subprocess.run(cmd, capture_output=True, text=True, check=True,
                          cwd=ROOT, env={"PYTHONPATH": str(ROOT / "src"),
                                         "PATH": "/usr/bin:/bin:/usr/local/bin"})
    for line in proc.stdout.strip().splitlines():
        print(f"  {line}")
    return proc.stdout


def main():
    workdir = Path(sys.argv[1]) if len(sys.argv) > 1 else ROOT / "demo_out"
    workdir.mkdir(parents=True, exist_ok=True)
    corpus_path = workdir / "corpus.jsonl"
    records = build_corpus(corpus_path)
    build_embeddings(records, workdir / "embeddings.jsonl")
    build_vocab(records, workdir / "vocab.txt")
    print(f"synthetic corpus: {len(records)} records in {corpus_path}")

    run(["ingest", corpus_path, workdir / "canonical.jsonl"])
    run(["stats", workdir / "canonical.jsonl"])
    run(["split", workdir / "canonical.jsonl",
         "--out-train", workdir / "train.jsonl",
         "--out-val", workdir / "val.jsonl",
         "--out-test", workdir / "test.jsonl",
         "--ratios", "0.8,0.1,0.1", "--seed", 11])
    run(["retrieve", workdir / "canonical.jsonl", workdir / "selected.jsonl",
         "--modality", "caption", "--k", 3, "--mode", "retrieved+article",
         "--embeddings", workdir / "embeddings.jsonl",
         "--report-out", workdir / "retrieval_report.jsonl"])
    run(["prepare", workdir / "selected.jsonl", workdir / "instructions.jsonl",
         "--fraction", 0.7, "--seed", 11])

    # Mock a model that answers with the gold target, then evaluate it.
    instructions = [json.loads(line)
                    for line in (workdir / "instructions.jsonl").read_text().splitlines()]
    hyp_lines, ref_lines, pred_rows, gold_rows = [], [], [], []
    gold_by_id = {r["id"]: r for r in records}
    for row in instructions:
        headline, tags = parse_output(row["target"])
        hyp_lines.append(headline)
        ref_lines.append(gold_by_id[row["id"]]["headline"])
        pred_rows.append(tags)
        gold_rows.append(gold_by_id[row["id"]]["tags"])
    (workdir / "hyps.txt").write_text("\n".join(hyp_lines) + "\n", encoding="utf-8")
    (workdir / "refs.txt").write_text("\n".join(ref_lines) + "\n", encoding="utf-8")
    (workdir / "preds.jsonl").write_text(
        "\n".join(json.dumps(r, ensure_ascii=False) for r in pred_rows) + "\n",
        encoding="utf-8")
    (workdir / "golds.jsonl").write_text(
        "\n".join(json.dumps(r, ensure_ascii=False) for r in gold_rows) + "\n",
        encoding="utf-8")

    run(["eval-headline", "--hyps", workdir / "hyps.txt",
         "--refs", workdir / "refs.txt", "--vocab", workdir / "vocab.txt"])
    run(["eval-tags", "--preds", workdir / "preds.jsonl",
         "--golds", workdir / "golds.jsonl", "--language", "en"])
    print(f"\nall pipeline stages completed; outputs in {workdir}")


if __name__ == "__main__":
    main()
