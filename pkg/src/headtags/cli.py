"""Batch command line front end.

One binary, subcommand style. Stochastic commands take a mandatory --seed.
Option values resolve as flags > HEADTAGS_* environment variables > config
file supplied with --config. Output files are written atomically.
"""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

import click

from . import corpus as corpus_mod
from . import instruction as instruction_mod
from . import retrieval as retrieval_mod
from .errors import HeadtagsError, MissingEmbedding, ProviderError
from .gen_metrics import SubwordVocab, corpus_bleu, length_ratio, rouge_l, rouge_n, subword_tokenize
from .report import MetricReport
from .tag_metrics import f1_at_k, f1_at_m, f1_at_o


def _atomic_write(path: str | Path, lines) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or Path("."), prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            for line in lines:
                f.write(line + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit_report(report: MetricReport, json_out: str | None) -> None:
    click.echo(report.format_human())
    click.echo(report.to_json())
    if json_out:
        _atomic_write(json_out, [report.to_json()])


def _load_config(ctx, _param, value):
    if value:
        with open(value, encoding="utf-8") as f:
            ctx.default_map = json.load(f)
    return value


def _load_corpus_or_fail(path):
    try:
        return corpus_mod.load_corpus(path)
    except HeadtagsError as exc:
        raise click.ClickException(str(exc))


@click.group(context_settings={"auto_envvar_prefix": "HEADTAGS"})
@click.option("--config", type=click.Path(exists=True), callback=_load_config,
              expose_value=False, is_eager=True,
              help="JSON config file providing option defaults.")
def main():
    """Multilingual headline + tag toolkit."""


@main.command()
@click.argument("in_path", type=click.Path(exists=True))
@click.argument("out_path", type=click.Path())
def ingest(in_path, out_path):
    """Validate and canonicalize a corpus file; report rejected lines."""
    kept, rejects = [], []
    for line_no, item in corpus_mod.scan_corpus(in_path):
        if isinstance(item, Exception):
            rejects.append((line_no, str(item)))
        else:
            kept.append(item)
    _atomic_write(
        out_path,
        (json.dumps(r.to_json_obj(), ensure_ascii=False) for r in kept),
    )
    click.echo(f"kept {len(kept)} records, rejected {len(rejects)}")
    for line_no, reason in rejects:
        click.echo(f"  line {line_no}: {reason}")
    if not kept:
        click.echo("warning: no valid records found", err=True)


@main.command()
@click.argument("in_path", type=click.Path(exists=True))
@click.option("--vocab", "vocab_path", type=click.Path(exists=True), default=None,
              help="Subword vocabulary; adds average token counts.")
@click.option("--json-out", type=click.Path(), default=None)
def stats(in_path, vocab_path, json_out):
    """Corpus statistics per language plus an overall summary."""
    records = _load_corpus_or_fail(in_path)
    if not records:
        raise click.ClickException("corpus is empty")
    vocab = SubwordVocab.load(vocab_path) if vocab_path else None

    by_language: dict[str, list] = {}
    for record in records:
        by_language.setdefault(record.language, []).append(record)
    blocks = {
        lang: corpus_mod.compute_stats(group, vocab=vocab)
        for lang, group in sorted(by_language.items())
    }
    summary = corpus_mod.compute_stats(records, vocab=vocab)

    header = f"{'language':<10}{'samples':>8}{'words':>10}{'sents':>8}{'CR%':>8}{'tags':>7}{'present%':>10}"
    click.echo(header)
    for lang, block in blocks.items():
        click.echo(
            f"{lang:<10}{block.n_samples:>8}{block.avg_words:>10.1f}"
            f"{block.avg_sentences:>8.1f}{block.compression_ratio_pct:>8.2f}"
            f"{block.avg_tags:>7.2f}{block.present_tag_pct:>10.2f}"
        )
    click.echo(
        f"{'summary':<10}{summary.n_samples:>8}{summary.avg_words:>10.1f}"
        f"{summary.avg_sentences:>8.1f}{summary.compression_ratio_pct:>8.2f}"
        f"{summary.avg_tags:>7.2f}{summary.present_tag_pct:>10.2f}"
    )
    payload = {
        "summary": summary.to_json_obj(),
        "languages": {lang: block.to_json_obj() for lang, block in blocks.items()},
    }
    click.echo(json.dumps(payload, ensure_ascii=False))
    if json_out:
        _atomic_write(json_out, [json.dumps(payload, ensure_ascii=False)])


@main.command()
@click.argument("in_path", type=click.Path(exists=True))
@click.option("--out-train", type=click.Path(), required=True)
@click.option("--out-val", type=click.Path(), required=True)
@click.option("--out-test", type=click.Path(), required=True)
@click.option("--ratios", default="0.95,0.01,0.04", show_default=True)
@click.option("--seed", type=int, required=True)
def split(in_path, out_train, out_val, out_test, ratios, seed):
    """Deterministic per-language train/val/test split."""
    try:
        parts = tuple(float(x) for x in ratios.split(","))
    except ValueError:
        raise click.ClickException(f"bad --ratios value {ratios!r}")
    if len(parts) != 3:
        raise click.ClickException("--ratios needs three comma-separated numbers")
    records = _load_corpus_or_fail(in_path)
    train, val, test = corpus_mod.split_corpus(records, parts, seed)
    for subset, path in ((train, out_train), (val, out_val), (test, out_test)):
        _atomic_write(
            path, (json.dumps(r.to_json_obj(), ensure_ascii=False) for r in subset)
        )
    click.echo(f"split {len(records)} -> train {len(train)}, val {len(val)}, test {len(test)}")


@main.command()
@click.argument("in_path", type=click.Path(exists=True))
@click.argument("out_path", type=click.Path())
@click.option("--modality", type=click.Choice(["image", "caption"]), required=True)
@click.option("--k", type=int, required=True)
@click.option("--mode", "content_mode",
              type=click.Choice([m.value for m in retrieval_mod.ContentMode]),
              default=retrieval_mod.ContentMode.RETRIEVED_PLUS_ARTICLE.value,
              show_default=True)
@click.option("--embeddings", "embeddings_path", type=click.Path(exists=True),
              default=None, help="Precomputed embedding table.")
@click.option("--service-url", default=None, help="Embedding service base URL.")
@click.option("--images-dir", type=click.Path(), default=None,
              help="Directory with image files for the service client.")
@click.option("--strict-missing", is_flag=True,
              help="Abort on records with missing embeddings instead of skipping.")
@click.option("--report-out", type=click.Path(), default=None,
              help="Write per-record selection indices and scores.")
def retrieve(in_path, out_path, modality, k, content_mode, embeddings_path,
             service_url, images_dir, strict_missing, report_out):
    """Select salient sentences and write an instruction-ready corpus."""
    mode = retrieval_mod.ContentMode(content_mode)
    records = _load_corpus_or_fail(in_path)

    provider = None
    if mode is not retrieval_mod.ContentMode.ARTICLE_ONLY:
        if embeddings_path:
            provider = retrieval_mod.TableEmbeddingProvider(
                retrieval_mod.EmbeddingTable.load(embeddings_path)
            )
        elif service_url:
            provider = retrieval_mod.HttpEmbeddingProvider(
                service_url, images_dir=images_dir
            )
        else:
            raise click.ClickException(
                "retrieved modes need --embeddings or --service-url"
            )

    out_lines = []
    report_lines = []
    skipped = 0
    for record in records:
        selection = None
        sentences = None
        if provider is not None:
            try:
                if modality == "image":
                    selection, sentences = retrieval_mod.img_ret(record, k, provider)
                else:
                    selection, sentences = retrieval_mod.cap_ret(record, k, provider)
            except (MissingEmbedding, ProviderError, HeadtagsError) as exc:
                if strict_missing:
                    raise click.ClickException(f"record {record.id}: {exc}")
                skipped += 1
                click.echo(f"skipping record {record.id}: {exc}", err=True)
                continue
        content = retrieval_mod.build_selected_content(sentences, record, mode)
        obj = record.to_json_obj()
        obj["article"] = content
        out_lines.append(json.dumps(obj, ensure_ascii=False))
        if selection is not None:
            report_lines.append(json.dumps({
                "id": record.id,
                "indices": list(selection.indices),
                "scores": list(selection.scores),
                "k_requested": selection.k_requested,
                "k_effective": selection.k_effective,
            }, ensure_ascii=False))
    _atomic_write(out_path, out_lines)
    if report_out:
        _atomic_write(report_out, report_lines)
    click.echo(f"retrieved content for {len(out_lines)} records, skipped {skipped}")


@main.command()
@click.argument("in_path", type=click.Path(exists=True))
@click.argument("out_path", type=click.Path())
@click.option("--fraction", type=float, default=0.7, show_default=True,
              help="Share of records given controlled prefixes.")
@click.option("--seed", type=int, required=True)
def prepare(in_path, out_path, fraction, seed):
    """Build the instruction dataset under the controlled/unrestricted mixture."""
    records = _load_corpus_or_fail(in_path)
    modes = instruction_mod.mixture_assign(records, fraction, seed)
    lines = []
    for record, mode in zip(records, modes):
        example = instruction_mod.build_example(record, mode)
        lines.append(json.dumps(example.to_json_obj(), ensure_ascii=False))
    _atomic_write(out_path, lines)
    n_controlled = sum(1 for m in modes if m.kind == instruction_mod.CONTROLLED)
    click.echo(
        f"prepared {len(lines)} examples "
        f"({n_controlled} controlled, {len(lines) - n_controlled} unrestricted)"
    )


def _read_lines(path: str) -> list[str]:
    with open(path, encoding="utf-8") as f:
        return [line.rstrip("\n") for line in f]


@main.command(name="eval-headline")
@click.option("--hyps", "hyps_path", type=click.Path(exists=True), required=True)
@click.option("--refs", "refs_path", type=click.Path(exists=True), required=True)
@click.option("--vocab", "vocab_path", type=click.Path(exists=True), required=True)
@click.option("--json-out", type=click.Path(), default=None)
def eval_headline(hyps_path, refs_path, vocab_path, json_out):
    """Subword ROUGE-1/2/L F1, corpus BLEU, and mean length ratio."""
    hyps = _read_lines(hyps_path)
    refs = _read_lines(refs_path)
    if len(hyps) != len(refs) or not hyps:
        raise click.ClickException(
            f"need equally many hypotheses and references, got {len(hyps)} vs {len(refs)}"
        )
    vocab = SubwordVocab.load(vocab_path)
    hyp_tokens = [subword_tokenize(h, vocab) for h in hyps]
    ref_tokens = [subword_tokenize(r, vocab) for r in refs]

    n = len(hyps)
    report = MetricReport()
    try:
        report.set("rouge1_f1", sum(rouge_n(h, r, 1).f1 for h, r in zip(hyp_tokens, ref_tokens)) / n)
        report.set("rouge2_f1", sum(rouge_n(h, r, 2).f1 for h, r in zip(hyp_tokens, ref_tokens)) / n)
        report.set("rougeL_f1", sum(rouge_l(h, r).f1 for h, r in zip(hyp_tokens, ref_tokens)) / n)
        report.set("bleu", corpus_bleu(hyp_tokens, ref_tokens))
        report.set("length_ratio", sum(
            length_ratio(h, r) for h, r in zip(hyp_tokens, ref_tokens)
        ) / n)
    except HeadtagsError as exc:
        raise click.ClickException(str(exc))
    _emit_report(report, json_out)


@main.command(name="eval-tags")
@click.option("--preds", "preds_path", type=click.Path(exists=True), required=True)
@click.option("--golds", "golds_path", type=click.Path(exists=True), required=True)
@click.option("--language", required=True)
@click.option("--k", "k_values", type=int, multiple=True, default=(3, 5),
              show_default=True)
@click.option("--json-out", type=click.Path(), default=None)
def eval_tags(preds_path, golds_path, language, k_values, json_out):
    """Macro F1@K, F1@M, and F1@O over stem-normalized tag sets."""
    preds = [json.loads(line) for line in _read_lines(preds_path) if line.strip()]
    golds = [json.loads(line) for line in _read_lines(golds_path) if line.strip()]
    if len(preds) != len(golds) or not preds:
        raise click.ClickException(
            f"need equally many prediction and gold rows, got {len(preds)} vs {len(golds)}"
        )
    n = len(preds)
    report = MetricReport()
    for k in k_values:
        scores = [f1_at_k(p, g, k, language) for p, g in zip(preds, golds)]
        report.set(f"f1@{k}", sum(s.f1 for s in scores) / n)
    m_scores = [f1_at_m(p, g, language) for p, g in zip(preds, golds)]
    report.set("f1@m", sum(s.f1 for s in m_scores) / n)
    o_scores = [f1_at_o(p, g, language) for p, g in zip(preds, golds)]
    report.set("f1@o", sum(s.f1 for s in o_scores) / n)
    _emit_report(report, json_out)


if __name__ == "__main__":
    main()
