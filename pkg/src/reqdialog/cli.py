"""Command line entry point.

Exit codes are a stable contract: 0 on success (and when both hypothesis
checks pass), 1 when a hypothesis check fails, 2 on usage, configuration or
I/O errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import experiment
from .experiment import ConfigError
from .nlp import TaggedStreamError, build_noun_set, read_noun_set, write_noun_set
from .protocol import KnowledgeBase

EXIT_OK = 0
EXIT_HYPOTHESIS_FAILED = 1
EXIT_ERROR = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="reqdialog",
        description="Noun extraction, cooperation-factor experiments and the interactive session service.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_extract = sub.add_parser("extract", help="extract a lemmatized noun set from text files")
    p_extract.add_argument("--in", dest="inputs", nargs="+", required=True, metavar="FILE")
    p_extract.add_argument("--out", dest="output", required=True, metavar="FILE")
    p_extract.add_argument("--pretagged", action="store_true", help="inputs are tagged token streams")
    p_extract.add_argument("--owner", default="agent", help="agent id stored in the noun set")

    p_run = sub.add_parser("run", help="run the cooperation-factor sweep and hypothesis checks")
    p_run.add_argument("--config", required=True, metavar="FILE")
    p_run.add_argument("--grid", nargs="+", type=float, default=None, help="override the factor grid")
    p_run.add_argument("--seeds", type=int, default=None, help="override: use seeds 0..N-1")
    p_run.add_argument("--out-dir", default="report", metavar="DIR")
    p_run.add_argument("--slack", type=float, default=experiment.DEFAULT_SLACK,
                       help="tolerated drop between adjacent grid means")

    p_report = sub.add_parser("report", help="re-emit result files from a saved report.json")
    p_report.add_argument("--in", dest="input", required=True, metavar="FILE")
    p_report.add_argument("--out-dir", default="report", metavar="DIR")

    p_serve = sub.add_parser("serve", help="serve the interactive session API")
    p_serve.add_argument("--bind", default="127.0.0.1:8000", metavar="HOST:PORT")
    p_serve.add_argument("--kb", nargs="+", required=True, metavar="FILE",
                         help="engineer sources: text files, tagged streams or a noun-set JSON")
    p_serve.add_argument("--pretagged", action="store_true", help="kb text files are tagged streams")
    p_serve.add_argument("--threshold", type=float, default=0.8, help="reaction similarity threshold")
    p_serve.add_argument("--ui", default=None, metavar="DIR", help="static assets to serve at /")
    p_serve.add_argument("--log", default=None, metavar="FILE",
                         help="append-only event log; replayed on startup if present")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    handler = {
        "extract": cmd_extract,
        "run": cmd_run,
        "report": cmd_report,
        "serve": cmd_serve,
    }[args.command]
    return handler(args)


def cmd_extract(args: argparse.Namespace) -> int:
    try:
        documents = [Path(p).read_text("utf-8") for p in args.inputs]
        nouns = build_noun_set(args.owner, documents, pretagged=args.pretagged)
    except (OSError, TaggedStreamError, ValueError) as exc:
        print(f"extract: {exc}", file=sys.stderr)
        return EXIT_ERROR
    try:
        write_noun_set(nouns, args.output)
    except OSError as exc:
        print(f"extract: cannot write {args.output}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    print(f"{len(nouns.lemmas)} lemmas -> {args.output}")
    return EXIT_OK


def cmd_run(args: argparse.Namespace) -> int:
    try:
        config = experiment.load_config(args.config)
        if args.grid is not None or args.seeds is not None:
            overrides = config.to_json_dict()
            if args.grid is not None:
                overrides["factor_grid"] = args.grid
            if args.seeds is not None:
                overrides["seeds"] = args.seeds
            config = experiment.config_from_dict(overrides)
        report = experiment.run_experiment(config)
    except (ConfigError, OSError, TaggedStreamError) as exc:
        print(f"run: {exc}", file=sys.stderr)
        return EXIT_ERROR
    try:
        written = experiment.emit_report(report, args.out_dir)
    except OSError as exc:
        print(f"run: cannot write report: {exc}", file=sys.stderr)
        return EXIT_ERROR
    for path in written:
        print(f"wrote {path}")

    verdicts = {}
    if len(report.aggregates) >= 2:
        verdicts["similarity rises with cooperation"] = experiment.check_hypothesis_1(report, args.slack).to_json_dict()
    else:
        print("trend check skipped: fewer than two grid points")
    verdicts["interaction never reduces similarity"] = experiment.check_hypothesis_2(report).to_json_dict()

    all_passed = True
    for name, verdict in verdicts.items():
        status = "PASS" if verdict["pass"] else "FAIL"
        detail = {k: v for k, v in verdict.items() if k not in ("pass", "counterexamples") and v is not None}
        print(f"{status}  {name}  {detail}")
        all_passed = all_passed and verdict["pass"]
    return EXIT_OK if all_passed else EXIT_HYPOTHESIS_FAILED


def cmd_report(args: argparse.Namespace) -> int:
    try:
        report = experiment.load_report(args.input)
        written = experiment.emit_report(report, args.out_dir)
    except (OSError, KeyError, json.JSONDecodeError) as exc:
        print(f"report: {exc}", file=sys.stderr)
        return EXIT_ERROR
    for path in written:
        print(f"wrote {path}")
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    from .service import SessionService, serve_forever  # deferred: keeps batch commands import-light

    try:
        host, _, port_text = args.bind.rpartition(":")
        port = int(port_text)
        if not host:
            raise ValueError("missing host")
    except ValueError as exc:
        print(f"serve: invalid --bind {args.bind!r}: {exc}", file=sys.stderr)
        return EXIT_ERROR

    try:
        kb = _load_knowledge_base(args.kb, pretagged=args.pretagged)
    except (OSError, TaggedStreamError, ValueError) as exc:
        print(f"serve: cannot load knowledge base: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.ui is not None and not Path(args.ui).is_dir():
        print(f"serve: --ui {args.ui} is not a directory", file=sys.stderr)
        return EXIT_ERROR

    service = SessionService({"default": kb}, threshold=args.threshold, log_path=args.log)
    try:
        serve_forever(service, host, port, ui_dir=args.ui)
    except OSError as exc:
        print(f"serve: cannot bind {host}:{port}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_OK


def _load_knowledge_base(paths: list[str], *, pretagged: bool) -> KnowledgeBase:
    json_paths = [p for p in paths if p.endswith(".json")]
    if json_paths:
        if len(paths) > 1:
            raise ValueError("a noun-set JSON must be the only --kb argument")
        return KnowledgeBase.from_noun_set(read_noun_set(json_paths[0]))
    documents = [Path(p).read_text("utf-8") for p in paths]
    nouns = build_noun_set("engineer", documents, pretagged=pretagged)
    if not nouns.lemmas:
        raise ValueError("no nouns found in the knowledge-base sources")
    return KnowledgeBase.from_noun_set(nouns)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
