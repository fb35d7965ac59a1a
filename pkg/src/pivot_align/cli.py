"""Command-line interface.

Commands: ``stats``, ``translate``, ``match``, ``compose``, ``eval``,
``serve``.  Exit codes: 0 success, 1 usage error, 2 data error (bad
files, failed stages).
"""

import argparse
import sys
from pathlib import Path
from typing import Optional

from .alignment import (
    Cardinality,
    compose_alignments,
    parse_alignment_file,
    serialize_alignment_tsv,
)
from .config import (
    PipelineConfig,
    add_glossary,
    load_config,
    parse_glossary_flag,
    with_match_options,
)
from .errors import PivotAlignError
from .evaluation import evaluate
from .lexicon import translate_ontology
from .model import compute_metrics
from .pipeline import load_bundle, pivot_match
from .turtle import parse_turtle_file, serialize_turtle


class _UsageError(Exception):
    def __init__(self, parser: argparse.ArgumentParser, message: str) -> None:
        super().__init__(message)
        self.parser = parser


class _Parser(argparse.ArgumentParser):
    """Argument parser that reports usage problems instead of exiting."""

    def error(self, message: str) -> "None":
        raise _UsageError(self, message)


def _add_config_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", metavar="PATH", help="pipeline config file")


def _add_match_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--glossary",
        metavar="LANG=PATH",
        action="append",
        default=[],
        help="glossary file; repeatable (bare src_tgt.tsv paths also work)",
    )
    parser.add_argument("--threshold", type=float, metavar="F", help="extraction threshold")
    parser.add_argument(
        "--cardinality",
        choices=[c.value for c in Cardinality],
        help="extraction cardinality",
    )
    parser.add_argument(
        "--no-crosstype",
        action="store_true",
        help="disable class/individual cross-type matching",
    )


def build_parser() -> _Parser:
    parser = _Parser(prog="pivot-align", description=__doc__)
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    stats = commands.add_parser("stats", help="print ontology metrics")
    stats.add_argument("ontology", nargs="+", metavar="ONTOLOGY")

    translate = commands.add_parser("translate", help="add pivot-language labels")
    translate.add_argument("ontology", metavar="ONTOLOGY")
    _add_config_flag(translate)
    translate.add_argument(
        "--glossary", metavar="LANG=PATH", action="append", default=[]
    )
    translate.add_argument("--out", metavar="PATH", help="output file (default: stdout)")

    match = commands.add_parser("match", help="match two ontologies")
    match.add_argument("ontology1", metavar="ONTOLOGY1")
    match.add_argument("ontology2", metavar="ONTOLOGY2")
    _add_config_flag(match)
    _add_match_flags(match)
    match.add_argument(
        "--input-alignment", metavar="PATH", help="alignment to pin into the result"
    )
    match.add_argument("--out", metavar="PATH", help="output file (default: stdout)")

    compose = commands.add_parser(
        "compose", help="compose two alignments through their shared second ontology"
    )
    compose.add_argument("alignment13", metavar="ALIGNMENT13")
    compose.add_argument("alignment23", metavar="ALIGNMENT23")
    compose.add_argument("--out", metavar="PATH", help="output file (default: stdout)")

    evaluate_cmd = commands.add_parser("eval", help="score an alignment against a reference")
    evaluate_cmd.add_argument("alignment", metavar="ALIGNMENT")
    evaluate_cmd.add_argument("reference", metavar="REFERENCE")

    serve = commands.add_parser("serve", help="run the HTTP matching service")
    _add_config_flag(serve)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)

    return parser


def _load_pipeline_config(args) -> PipelineConfig:
    cfg = load_config(args.config) if getattr(args, "config", None) else PipelineConfig()
    for flag in getattr(args, "glossary", []):
        lang, path = parse_glossary_flag(flag)
        cfg = add_glossary(cfg, lang, path)
    cardinality = None
    if getattr(args, "cardinality", None):
        cardinality = Cardinality(args.cardinality)
    cfg = with_match_options(
        cfg,
        threshold=getattr(args, "threshold", None),
        cardinality=cardinality,
        cross_type_enabled=False if getattr(args, "no_crosstype", False) else None,
    )
    return cfg


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _warn_all(warnings) -> None:
    for warning in warnings:
        print(f"warning: {warning}", file=sys.stderr)


def cmd_stats(args) -> int:
    blocks = []
    for path in args.ontology:
        ontology = parse_turtle_file(path)
        _warn_all(ontology.warnings)
        metrics = compute_metrics(ontology)
        lines = [f"{name}\t{value}" for name, value in metrics.as_dict().items()]
        if len(args.ontology) > 1:
            lines.insert(0, f"file\t{path}")
        blocks.append("\n".join(lines))
    sys.stdout.write("\n\n".join(blocks) + "\n")
    return 0


def cmd_translate(args) -> int:
    cfg = _load_pipeline_config(args)
    bundle = load_bundle(cfg)
    ontology = parse_turtle_file(args.ontology)
    _warn_all(ontology.warnings)
    translated, outcomes = translate_ontology(ontology, bundle)
    counts: "dict[str, int]" = {}
    for outcome in outcomes.values():
        counts[outcome.status.value] = counts.get(outcome.status.value, 0) + 1
    _emit(serialize_turtle(translated), args.out)
    summary = ", ".join(f"{name}: {count}" for name, count in sorted(counts.items()))
    print(f"translated {len(outcomes)} entities ({summary})", file=sys.stderr)
    return 0


def cmd_match(args) -> int:
    cfg = _load_pipeline_config(args)
    bundle = load_bundle(cfg)
    onto1 = parse_turtle_file(args.ontology1)
    onto2 = parse_turtle_file(args.ontology2)
    _warn_all(onto1.warnings)
    _warn_all(onto2.warnings)
    input_alignment = (
        parse_alignment_file(args.input_alignment) if args.input_alignment else None
    )
    alignment, report = pivot_match(onto1, onto2, bundle, cfg, input_alignment)
    out = args.out or (str(cfg.output_alignment) if cfg.output_alignment else None)
    _emit(serialize_alignment_tsv(alignment), out)
    print(
        f"{report.correspondence_count} correspondences "
        f"(threshold {cfg.match.threshold})",
        file=sys.stderr,
    )
    return 0


def cmd_compose(args) -> int:
    a13 = parse_alignment_file(args.alignment13)
    a23 = parse_alignment_file(args.alignment23)
    composed = compose_alignments(a13, a23)
    _emit(serialize_alignment_tsv(composed), args.out)
    print(f"{len(composed)} composed correspondences", file=sys.stderr)
    return 0


def cmd_eval(args) -> int:
    result = parse_alignment_file(args.alignment)
    reference = parse_alignment_file(args.reference)
    report = evaluate(result, reference)
    sys.stdout.write(report.to_text())
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    cfg = load_config(args.config) if args.config else PipelineConfig()
    uvicorn.run(create_app(cfg), host=args.host, port=args.port, log_level="warning")
    return 0


_HANDLERS = {
    "stats": cmd_stats,
    "translate": cmd_translate,
    "match": cmd_match,
    "compose": cmd_compose,
    "eval": cmd_eval,
    "serve": cmd_serve,
}


def main(argv: "Optional[list[str]]" = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc.parser.format_usage(), end="", file=sys.stderr)
        print(f"{exc.parser.prog}: error: {exc}", file=sys.stderr)
        return 1
    try:
        return _HANDLERS[args.command](args)
    except PivotAlignError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
