"""Command-line interface wiring the pipeline end to end.

Data flows UTF-8 text in, UTF-8 text/TSV/JSON out; figures go next to the
delimited reports when an output directory is given. `-` means stdin/stdout.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

import click

from . import corpus as corpus_mod
from . import ocr as ocr_mod
from .corpus import (
    build_lexicon,
    corpus_stats,
    prepare_parallel,
    read_corpus_tsv,
    split_corpus,
    write_corpus_files,
    write_corpus_tsv,
    Lexicon,
)
from .decoder import restore_unigram, restore_viterbi
from .graphemes import inventory_tsv, normalize, strip_diacritics, validate
from .metrics import EvalReport, bleu, error_analysis, perplexity, wer
from .ngram import NgramModel, train as train_model


def _read_lines(path: str) -> list[str]:
    if path == "-":
        data = sys.stdin.buffer.read()
    else:
        try:
            data = Path(path).read_bytes()
        except OSError as exc:
            raise click.ClickException(f"cannot read {path}: {exc}")
    try:
        text = normalize(data)
    except UnicodeDecodeError as exc:
        raise click.ClickException(f"{path}: invalid UTF-8 at byte offset {exc.start}")
    return text.splitlines()


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _load_corpus(paths: tuple[str, ...]) -> corpus_mod.ParallelCorpus:
    """Read prepared .tsv pair files or raw diacritized text, per extension."""
    pairs: corpus_mod.ParallelCorpus = []
    for path in paths:
        if path.endswith(".tsv"):
            pairs.extend(read_corpus_tsv(path))
        else:
            name = Path(path).name if path != "-" else "stdin"
            pairs.extend(prepare_parallel(_read_lines(path), source_id=name))
    if not pairs:
        raise click.ClickException("no input pairs found")
    return pairs


def _warn_violations(lines: list[str], label: str) -> None:
    bad = sum(1 for line in lines if validate(line))
    if bad:
        click.echo(
            f"warning: {bad} line(s) in {label} contain non-inventory clusters; "
            "consider running `yodi triage` first",
            err=True,
        )


@click.group()
@click.version_option(package_name="yodi")
def main() -> None:
    """Yorùbá diacritics toolkit: strip, prepare, restore, evaluate, serve."""


@main.command()
@click.argument("input", default="-")
@click.option("-o", "--out", default="-", help="Output file (default stdout).")
def strip(input: str, out: str) -> None:
    """Remove all diacritics, line by line."""
    lines = _read_lines(input)
    _write_text(out, "".join(strip_diacritics(line) + "\n" for line in lines))


@main.command()
@click.argument("inputs", nargs=-1, required=True)
@click.option("-o", "--out", required=True, help="Output prefix or .tsv path.")
@click.option("--format", "fmt", type=click.Choice(["tsv", "files"]), default="tsv")
def prepare(inputs: tuple[str, ...], out: str, fmt: str) -> None:
    """Build aligned source/target pairs from diacritized text."""
    pairs: corpus_mod.ParallelCorpus = []
    for path in inputs:
        lines = _read_lines(path)
        _warn_violations(lines, path)
        name = Path(path).name if path != "-" else "stdin"
        pairs.extend(prepare_parallel(lines, source_id=name))
    if fmt == "tsv":
        target = out if out.endswith(".tsv") else out + ".tsv"
        write_corpus_tsv(pairs, target)
        written = [target]
    else:
        written = [str(p) for p in write_corpus_files(pairs, out)]
    flagged = sum(1 for p in pairs if p.no_diacritics)
    click.echo(
        f"prepared {len(pairs)} pairs ({flagged} flagged no-diacritics) -> {', '.join(written)}",
        err=True,
    )


@main.command()
@click.argument("inputs", nargs=-1, required=True)
@click.option("-o", "--out", required=True, help="Lexicon TSV path.")
def lexicon(inputs: tuple[str, ...], out: str) -> None:
    """Build the undiacritized-form -> variants lexicon."""
    pairs = _load_corpus(inputs)
    try:
        lex = build_lexicon(pairs)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    lex.save(out)
    click.echo(f"{len(lex)} keys, {lex.total_tokens} tokens -> {out}", err=True)


def _report_out(
    out: str | None,
    name: str,
    payload: dict,
    tsv: str | None,
    figures,
    no_figures: bool,
) -> None:
    text = json.dumps(payload, ensure_ascii=False, indent=2) + "\n"
    if out is None:
        sys.stdout.write(text)
        return
    outdir = Path(out)
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / f"{name}.json").write_text(text, encoding="utf-8")
    if tsv is not None:
        (outdir / f"{name}.tsv").write_text(tsv, encoding="utf-8")
    if figures and not no_figures:
        from . import plots

        plots.save_figures(figures(), outdir)
    click.echo(f"report written to {outdir}/", err=True)


@main.command()
@click.argument("inputs", nargs=-1, required=True)
@click.option("--lexicon", "lexicon_path", default=None, help="Existing lexicon TSV (default: build from inputs).")
@click.option("-o", "--out", default=None, help="Report directory (default: JSON to stdout).")
@click.option("--no-figures", is_flag=True, default=False)
def ambiguity(inputs: tuple[str, ...], lexicon_path: str | None, out: str | None, no_figures: bool) -> None:
    """Report how many valid diacritic arrangements each word form has."""
    pairs = _load_corpus(inputs)
    lex = Lexicon.load(lexicon_path) if lexicon_path else build_lexicon(pairs)
    try:
        report = corpus_mod.ambiguity_report(lex, pairs)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    dist = sorted(report.variant_count_distribution.items())
    tsv = "variants\tkeys\n" + "".join(f"{k}\t{v}\n" for k, v in dist)

    def figures():
        from . import plots

        return {"ambiguity": plots.ambiguity_figure(report)}

    _report_out(out, "ambiguity", report.to_json(), tsv, figures, no_figures)


@main.command()
@click.argument("input", required=True)
@click.option("--ratios", default="0.8,0.1,0.1", show_default=True)
@click.option("--seed", default=0, show_default=True, type=int)
@click.option("-o", "--out", required=True, help="Output prefix for .train/.dev/.test TSVs.")
def split(input: str, ratios: str, seed: int, out: str) -> None:
    """Partition a prepared corpus by seeded hash of line origin."""
    try:
        parts = tuple(float(x) for x in ratios.split(","))
        if len(parts) != 3:
            raise ValueError
    except ValueError:
        raise click.ClickException(f"--ratios must be three comma-separated numbers, got {ratios!r}")
    pairs = _load_corpus((input,))
    try:
        train, dev, test = split_corpus(pairs, parts, seed)  # type: ignore[arg-type]
    except ValueError as exc:
        raise click.ClickException(str(exc))
    for name, part in (("train", train), ("dev", dev), ("test", test)):
        write_corpus_tsv(part, f"{out}.{name}.tsv")
    click.echo(
        f"split {len(pairs)} -> train {len(train)}, dev {len(dev)}, test {len(test)}",
        err=True,
    )


@main.command()
@click.argument("inputs", nargs=-1, required=True)
@click.option("-o", "--out", required=True, help="Model TSV path.")
@click.option("--alpha", default=0.4, show_default=True, type=float)
def train(inputs: tuple[str, ...], out: str, alpha: float) -> None:
    """Train the n-gram model on the diacritized side of a corpus."""
    pairs = _load_corpus(inputs)
    try:
        model = train_model((p.target for p in pairs), alpha=alpha)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    model.save(out)
    click.echo(
        f"trained on {model.sentence_count} sentences, vocab {model.vocab_size} -> {out}",
        err=True,
    )


@main.command()
@click.argument("input", default="-")
@click.option("--model", "model_path", required=True)
@click.option("--lexicon", "lexicon_path", required=True)
@click.option("--decoder", type=click.Choice(["viterbi", "unigram"]), default="viterbi", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
@click.option("-o", "--out", default="-", help="Output file (default stdout).")
def restore(input: str, model_path: str, lexicon_path: str, decoder: str, fmt: str, out: str) -> None:
    """Restore diacritics, one sentence per line."""
    model = NgramModel.load(model_path)
    lex = Lexicon.load(lexicon_path)
    lines = _read_lines(input)
    outputs: list[str] = []
    for line in lines:
        tokens = corpus_mod.tokenize(line)
        source = [strip_diacritics(tok) for tok in tokens]
        if decoder == "viterbi":
            restoration = restore_viterbi(model, lex, source)
        else:
            restoration = restore_unigram(lex, source)
        if fmt == "text":
            outputs.append(restoration.text)
        else:
            outputs.append(
                json.dumps(
                    {
                        "source": " ".join(source),
                        "restored": restoration.text,
                        "logprob": restoration.logprob,
                        "tokens": [
                            {
                                "source": pos.source,
                                "best": pos.chosen,
                                "alternatives": [
                                    {"form": f, "score": s} for f, s in pos.alternatives
                                ],
                            }
                            for pos in restoration.positions
                        ],
                    },
                    ensure_ascii=False,
                )
            )
    _write_text(out, "".join(line + "\n" for line in outputs))


@main.command()
@click.option("--source", "source_path", required=True)
@click.option("--reference", "reference_path", required=True)
@click.option("--hypothesis", "hypothesis_path", required=True)
@click.option("--model", "model_path", default=None, help="Score hypothesis perplexity under this model.")
@click.option("--format", "fmt", type=click.Choice(["table", "json"]), default="table", show_default=True)
@click.option("-o", "--out", default=None, help="Report directory (default: stdout).")
@click.option("--no-figures", is_flag=True, default=False)
def evaluate(
    source_path: str,
    reference_path: str,
    hypothesis_path: str,
    model_path: str | None,
    fmt: str,
    out: str | None,
    no_figures: bool,
) -> None:
    """Score a hypothesis corpus: BLEU, WER, perplexity, error analysis."""
    sources = [line.split() for line in _read_lines(source_path)]
    references = [line.split() for line in _read_lines(reference_path)]
    hypotheses = [line.split() for line in _read_lines(hypothesis_path)]
    try:
        bleu_score = bleu(references, hypotheses)
        wer_score = wer(references, hypotheses)
        analysis = error_analysis(sources, references, hypotheses)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    ppl = None
    if model_path is not None:
        model = NgramModel.load(model_path)
        total_lp = sum(model.sequence_logprob(h) for h in hypotheses)
        events = sum(len(h) + 1 for h in hypotheses)
        ppl = perplexity(total_lp, events)
    report = EvalReport(bleu_score, wer_score, ppl, analysis)

    if out is None:
        sys.stdout.write(
            json.dumps(report.to_json(), ensure_ascii=False, indent=2) + "\n"
            if fmt == "json"
            else report.to_table()
        )
        return

    def figures():
        from . import plots

        return {"evaluation": plots.eval_figure(report)}

    _report_out(out, "evaluation", report.to_json(), report.to_tsv(), figures, no_figures)
    (Path(out) / "evaluation.txt").write_text(report.to_table(), encoding="utf-8")


@main.command(name="ocr-map")
@click.argument("input", default="-")
@click.option("--table", "table_path", default=None, help="Rule table TSV (default built-in).")
@click.option("-o", "--out", default="-", help="Mapped text output.")
@click.option("--log", "log_path", default=None, help="JSONL log of substitutions/flags.")
def ocr_map(input: str, table_path: str | None, out: str, log_path: str | None) -> None:
    """Rewrite foreign OCR characters onto the Yorùbá inventory."""
    table = ocr_mod.CharMapTable.load(table_path) if table_path else ocr_mod.CharMapTable.default()
    mapped_lines: list[str] = []
    log_records: list[str] = []
    for lineno, line in enumerate(_read_lines(input), start=1):
        mapped, events = ocr_mod.map_superset(table, line)
        mapped_lines.append(mapped)
        for event in events:
            log_records.append(
                json.dumps(
                    {
                        "line": lineno,
                        "position": event.position,
                        "original": event.original,
                        "replacement": event.replacement,
                        "flagged": event.flagged,
                    },
                    ensure_ascii=False,
                )
            )
    _write_text(out, "".join(line + "\n" for line in mapped_lines))
    if log_path:
        Path(log_path).write_text("".join(r + "\n" for r in log_records), encoding="utf-8")
    click.echo(f"{len(log_records)} substitutions/flags", err=True)


@main.command()
@click.argument("input", required=True)
@click.option("--lexicon", "lexicon_path", required=True)
@click.option("--table", "table_path", default=None)
@click.option("--threshold", default=0.9, show_default=True, type=float)
@click.option("--queue", "queue_path", required=True, help="Review queue JSONL (appended).")
@click.option("--accepted", "accepted_path", required=True, help="Accepted lines output.")
@click.option("--doc-id", default=None, help="Document id recorded in the queue (default: input name).")
def triage(
    input: str,
    lexicon_path: str,
    table_path: str | None,
    threshold: float,
    queue_path: str,
    accepted_path: str,
    doc_id: str | None,
) -> None:
    """Route OCR lines to the corpus or to the human review queue."""
    lex = Lexicon.load(lexicon_path)
    table = ocr_mod.CharMapTable.load(table_path) if table_path else ocr_mod.CharMapTable.default()
    try:
        lines = _read_lines(input)
    except click.ClickException:
        raise
    except OSError as exc:
        raise click.ClickException(f"cannot read document {input}: {exc}")
    try:
        result = ocr_mod.triage(lines, lex, table, threshold, doc_id or Path(input).name)
    except ValueError as exc:
        raise click.ClickException(str(exc))
    _write_text(accepted_path, "".join(text + "\n" for _, text in result.accepted))
    ocr_mod.append_queue(result.review, queue_path)
    click.echo(
        f"accepted {len(result.accepted)} lines, queued {len(result.review)} for review",
        err=True,
    )


@main.command()
@click.argument("inputs", nargs=-1, required=True)
@click.option("-o", "--out", default=None, help="Report directory (default: JSON to stdout).")
@click.option("--no-figures", is_flag=True, default=False)
def stats(inputs: tuple[str, ...], out: str | None, no_figures: bool) -> None:
    """Per-source corpus statistics (lines, words, vocabulary sizes)."""
    pairs = _load_corpus(inputs)
    result = corpus_stats(pairs)
    rows = ["source\tlines\twords\tvocab_diacritized\tvocab_stripped"]
    for label in sorted(result.per_source):
        s = result.per_source[label]
        rows.append(f"{label}\t{s.lines}\t{s.words}\t{s.vocab_diacritized}\t{s.vocab_stripped}")
    s = result.total
    rows.append(f"TOTAL\t{s.lines}\t{s.words}\t{s.vocab_diacritized}\t{s.vocab_stripped}")

    def figures():
        from . import plots

        return {"stats": plots.stats_figure(result)}

    _report_out(out, "stats", result.to_json(), "\n".join(rows) + "\n", figures, no_figures)


@main.command()
@click.option("-o", "--out", default="-", help="Output file (default stdout).")
def inventory(out: str) -> None:
    """Emit the diacritic inventory as reference TSV."""
    _write_text(out, inventory_tsv())


@main.command(name="export-feedback")
@click.argument("feedback", required=True)
@click.option("-o", "--out", required=True, help="Output prefix or .tsv path.")
@click.option("--format", "fmt", type=click.Choice(["tsv", "files"]), default="tsv")
def export_feedback_cmd(feedback: str, out: str, fmt: str) -> None:
    """Convert stored corrections into parallel training pairs."""
    from .service import export_feedback

    pairs = export_feedback(feedback)
    if fmt == "tsv":
        target = out if out.endswith(".tsv") else out + ".tsv"
        write_corpus_tsv(pairs, target)
        written = [target]
    else:
        written = [str(p) for p in write_corpus_files(pairs, out)]
    click.echo(f"exported {len(pairs)} pairs -> {', '.join(written)}", err=True)


@main.command()
@click.option("--model", "model_path", required=True)
@click.option("--lexicon", "lexicon_path", required=True)
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8799, show_default=True, type=int)
@click.option("--feedback", "feedback_path", default="feedback.jsonl", show_default=True)
@click.option("--max-chars", default=10_000, show_default=True, type=int)
@click.option("--static-dir", default=None, help="Serve a UI bundle at /ui.")
def serve(
    model_path: str,
    lexicon_path: str,
    host: str,
    port: int,
    feedback_path: str,
    max_chars: int,
    static_dir: str | None,
) -> None:
    """Run the restoration + feedback HTTP service."""
    import uvicorn

    from .service import create_app

    model = NgramModel.load(model_path)
    lex = Lexicon.load(lexicon_path)
    app = create_app(model, lex, feedback_path=feedback_path, max_chars=max_chars, static_dir=static_dir)
    uvicorn.run(app, host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
