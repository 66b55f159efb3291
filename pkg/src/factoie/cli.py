"""Command-line entry points: score, expand, prune, lint, tag, serve.

Every subcommand is a thin shell over the library; output is
byte-deterministic given identical inputs and flags. Exit codes: 0 success,
1 runtime/environment failure, 2 input error.
"""

from __future__ import annotations

import argparse
import json
import os
import socket
import sys
from pathlib import Path

from . import io_formats, scoring, shorthand, tagger
from .errors import FactoieError
from .model import GoldBenchmark, NormalizationConfig
from .shorthand import ExpansionLimits


def _add_shared_flags(parser: argparse.ArgumentParser):
    parser.add_argument(
        "--case-sensitive",
        action="store_true",
        help="compare triples without case folding",
    )
    parser.add_argument(
        "--strip-terminal-punct",
        action="store_true",
        help="drop a final punctuation token from slots before comparison",
    )
    parser.add_argument(
        "--max-variants",
        type=int,
        metavar="N",
        default=None,
        help="cap expansion variants per triple and per synset",
    )
    parser.add_argument(
        "--unknown-sentences",
        choices=("strict", "fp"),
        default="strict",
        help="extraction for a sentence missing from the gold: error out or count as FP",
    )


def _normalization(args) -> NormalizationConfig:
    return NormalizationConfig(
        case_fold=not args.case_sensitive,
        strip_terminal_punct=args.strip_terminal_punct,
    )


def _limits(args) -> ExpansionLimits:
    if args.max_variants is None:
        return shorthand.DEFAULT_LIMITS
    return ExpansionLimits(
        max_variants_per_triple=args.max_variants,
        max_variants_per_synset=args.max_variants,
    )


def _tagger_config(args) -> tagger.TaggerConfig:
    path = getattr(args, "tagger_config", None) or os.environ.get("TAGGER_CONFIG")
    if path:
        return tagger.load_tagger_config(path)
    return tagger.TaggerConfig()


def _load_gold(args) -> GoldBenchmark:
    """Read gold either as annotation-state JSON or as shorthand TSV."""
    gold_path = Path(args.gold)
    data = gold_path.read_bytes()
    if gold_path.suffix == ".json":
        return io_formats.load_state(data).to_benchmark()
    if not args.sentences:
        raise FactoieError(
            f"gold TSV {gold_path} needs --sentences to resolve sentence ids"
        )
    pairs = io_formats.load_sentences(Path(args.sentences).read_bytes())
    cfg = _tagger_config(args)
    sentences = [tagger.tag(text, sid, cfg) for sid, text in pairs]
    return io_formats.import_gold_tsv(data, sentences)


def _score_line(precision: float, recall: float, f1: float) -> str:
    return f"P {precision:.2f} R {recall:.2f} F1 {f1:.2f}"


def cmd_score(args) -> int:
    cfg = _normalization(args)
    lim = _limits(args)
    extractions = io_formats.load_system_extractions(Path(args.system).read_bytes())
    if args.mode == "fact":
        benchmark = _load_gold(args)
        report = scoring.score_fact_based(
            extractions, benchmark, cfg, lim, unknown_sentences=args.unknown_sentences
        )
        print(_score_line(report.precision, report.recall, report.f1))
        if args.report:
            payload = {
                "mode": "fact",
                "tp": report.tp,
                "fp": report.fp,
                "fn": report.fn,
                "precision": report.precision,
                "recall": report.recall,
                "f1": report.f1,
                "per_sentence": {
                    sid: list(counts) for sid, counts in report.per_sentence.items()
                },
                "matched": [list(entry) for entry in report.matched],
            }
            _write_report(args.report, payload)
        return 0

    if args.gold_extractions:
        gold_rows = io_formats.load_system_extractions(Path(args.gold).read_bytes())
        gold_triples: dict = {}
        for row in gold_rows:
            gold_triples.setdefault(row.sentence_id, []).append(row.to_concrete())
    else:
        gold_triples = scoring.benchmark_gold_triples(_load_gold(args), cfg, lim)
    summary = scoring.score_token_overlap(extractions, gold_triples, cfg)
    print(_score_line(summary.precision, summary.recall, summary.f1))
    if args.report:
        payload = {
            "mode": "token-overlap",
            "precision": summary.precision,
            "recall": summary.recall,
            "f1": summary.f1,
            "assigned": [
                [sid, ei, gi, pair.precision, pair.recall]
                for sid, ei, gi, pair in summary.assigned
            ],
        }
        _write_report(args.report, payload)
    return 0


def _write_report(path: str, payload: dict):
    Path(path).write_bytes(
        (json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=2) + "\n").encode()
    )


def cmd_expand(args) -> int:
    cfg = _normalization(args)
    lim = _limits(args)
    benchmark = _load_gold(args)
    synset_count = 0
    variant_count = 0
    for sentence in benchmark.sentences:
        for synset in benchmark.synsets_for(sentence.id):
            expanded = shorthand.expand_synset(synset, sentence, cfg, lim)
            ordered = sorted(expanded, key=lambda t: t.slots())
            synset_count += 1
            variant_count += len(ordered)
            if args.counts_only:
                print(f"{sentence.id}\t{synset.id}\t{len(ordered)}")
            else:
                for triple in ordered:
                    print(
                        "\t".join(
                            (
                                sentence.id,
                                synset.id,
                                " ".join(triple.subject),
                                " ".join(triple.predicate),
                                " ".join(triple.object),
                            )
                        )
                    )
    print(f"{synset_count} synsets, {variant_count} variants", file=sys.stderr)
    return 0


def cmd_prune(args) -> int:
    cfg = _normalization(args)
    lim = _limits(args)
    benchmark = _load_gold(args)
    extractions = io_formats.load_system_extractions(Path(args.system).read_bytes())
    kept = scoring.prune_ne_centric(
        extractions, benchmark, cfg, lim, containment_targets=args.containment_targets
    )
    sys.stdout.write(io_formats.dump_system_extractions(kept).decode("utf-8"))
    print(f"kept {len(kept)} of {len(extractions)} extractions", file=sys.stderr)
    return 0


def cmd_lint(args) -> int:
    cfg = _normalization(args)
    lim = _limits(args) if args.max_variants is not None else None
    benchmark = _load_gold(args)
    for d in scoring.lint_gold(benchmark, cfg, lim):
        print(f"{d.severity}\t{d.sentence_id}\t{d.synset_id}\t{d.code}\t{d.message}")
    return 0


def cmd_tag(args) -> int:
    cfg = _tagger_config(args)
    pairs = io_formats.load_sentences(Path(args.sentences).read_bytes())
    tagged = [tagger.tag(text, sid, cfg) for sid, text in pairs]
    print(
        json.dumps(
            [io_formats.sentence_to_json(s) for s in tagged],
            ensure_ascii=False,
            sort_keys=True,
            indent=2,
        )
    )
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    bind = args.bind or os.environ.get("BIND_ADDR", "127.0.0.1:8080")
    host, _, port_text = bind.rpartition(":")
    if not host or not port_text.isdigit():
        raise FactoieError(f"--bind must look like host:port, not {bind!r}")
    port = int(port_text)
    data_dir = Path(args.data_dir or os.environ.get("DATA_DIR", "factoie-data"))

    probe = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
    try:
        probe.setsockopt(socket.SOL_SOCKET, socket.SO_REUSEADDR, 1)
        probe.bind((host, port))
    except OSError as exc:
        print(f"error: cannot bind {bind}: {exc}", file=sys.stderr)
        return 1
    finally:
        probe.close()

    app = create_app(
        data_dir,
        tagger_config=_tagger_config(args),
        static_dir=args.static_dir,
    )
    uvicorn.run(app, host=host, port=port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="factoie",
        description="Build and score complete fact-synset benchmarks for "
        "open information extraction.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def gold_arguments(p: argparse.ArgumentParser):
        p.add_argument("gold", help="gold file: annotation-state .json or shorthand TSV")
        p.add_argument(
            "--sentences", help="sentence file (required with TSV gold)", default=None
        )
        p.add_argument(
            "--tagger-config", default=None, help="tagger config JSON (for TSV gold)"
        )
        _add_shared_flags(p)

    p_score = sub.add_parser("score", help="score system extractions against gold")
    gold_arguments(p_score)
    p_score.add_argument("system", help="system extraction TSV")
    p_score.add_argument(
        "--mode", choices=("fact", "token-overlap"), default="fact"
    )
    p_score.add_argument(
        "--gold-extractions",
        action="store_true",
        help="treat the gold file as a plain extraction TSV (token-overlap only)",
    )
    p_score.add_argument("--report", default=None, help="write a JSON report here")
    p_score.set_defaults(func=cmd_score)

    p_expand = sub.add_parser("expand", help="list every acceptable gold realization")
    gold_arguments(p_expand)
    p_expand.add_argument("--counts-only", action="store_true")
    p_expand.set_defaults(func=cmd_expand)

    p_prune = sub.add_parser(
        "prune", help="keep extractions whose arguments appear in the gold"
    )
    gold_arguments(p_prune)
    p_prune.add_argument("system", help="system extraction TSV")
    p_prune.add_argument(
        "--containment-targets",
        choices=("gold-arguments", "ner-spans"),
        default="gold-arguments",
        help="what the subject and object must contain to be kept",
    )
    p_prune.set_defaults(func=cmd_prune)

    p_lint = sub.add_parser("lint", help="check gold against annotation guidelines")
    gold_arguments(p_lint)
    p_lint.set_defaults(func=cmd_lint)

    p_tag = sub.add_parser("tag", help="tokenize and label a sentence file")
    p_tag.add_argument("sentences")
    p_tag.add_argument("--tagger-config", default=None)
    p_tag.set_defaults(func=cmd_tag)

    p_serve = sub.add_parser("serve", help="run the local annotation service")
    p_serve.add_argument("--data-dir", default=None, help="session directory (env DATA_DIR)")
    p_serve.add_argument(
        "--bind", default=None, help="host:port to listen on (env BIND_ADDR)"
    )
    p_serve.add_argument("--tagger-config", default=None)
    p_serve.add_argument(
        "--static-dir", default=None, help="frontend assets to serve at /"
    )
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "gold_extractions", False) and args.mode != "token-overlap":
        parser.error("--gold-extractions only applies to --mode token-overlap")
    try:
        return args.func(args)
    except FactoieError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
