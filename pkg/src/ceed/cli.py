"""Command line interface.

Subcommands: build-lexicon compiles a titles/anchors pair into the binary
lexicon artifact; detect, cross, topics, and full run the pipeline through
the named stage and write reports.  Exit codes: 0 success, 2 configuration
problems, 3 empty corpus, 4 no bursty segments, 5 no events after
filtering.  Set CEED_LOG to a level name (DEBUG, INFO, ...) for diagnostics
on stderr.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path

from .burst import NoBurstActivityError
from .ingest import EmptyWindowError, RecordError, parse_timestamp
from .lexicon import DEFAULT_MAX_LEN, LexiconError, build_lexicon
from .pipeline import (
    ConfigError,
    NoEventsError,
    PipelineConfig,
    emit_reports,
    run_pipeline,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_EMPTY_CORPUS = 3
EXIT_NO_BURSTS = 4
EXIT_NO_EVENTS = 5


def _add_pipeline_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--input", required=True, type=Path, help="tweet JSONL file")
    parser.add_argument("--lexicon", required=True, type=Path, help="compiled lexicon")
    parser.add_argument("--out", required=True, type=Path, help="report directory")
    parser.add_argument(
        "--window-start", required=True, help="window start, ISO-8601 timestamp"
    )
    parser.add_argument(
        "--window-end", required=True, help="window end, ISO-8601 timestamp (exclusive)"
    )
    parser.add_argument("--subwindows", type=int, default=10)
    parser.add_argument("--hashtag-weight", type=int, default=3)
    parser.add_argument("--knn", type=int, default=4)
    parser.add_argument("--tau", type=float, default=4.0)
    parser.add_argument("--event-subwindows", type=int, default=10)
    parser.add_argument("--workers", type=int, default=1)
    parser.add_argument(
        "--dump-bursty", action="store_true", help="also write bursty_segments.tsv"
    )
    parser.add_argument(
        "--cross-threshold",
        type=float,
        default=None,
        help="flag cross-event pairs at or above this relation score",
    )
    parser.add_argument(
        "--stopwords", type=Path, default=None, help="stopword file, one word per line"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ceed", description="Detect events in a microblog stream."
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    lex = subparsers.add_parser(
        "build-lexicon", help="compile titles and anchor statistics into an artifact"
    )
    lex.add_argument("--titles", required=True, type=Path)
    lex.add_argument("--anchors", required=True, type=Path)
    lex.add_argument("--out", required=True, type=Path)
    lex.add_argument("--max-len", type=int, default=DEFAULT_MAX_LEN)
    lex.set_defaults(handler=_run_build_lexicon)

    for name, summary in (
        ("detect", "detect and filter events"),
        ("cross", "detect events and relate event pairs"),
        ("topics", "detect events and build topic timelines"),
        ("full", "run every stage"),
    ):
        sub = subparsers.add_parser(name, help=summary)
        _add_pipeline_arguments(sub)
        sub.set_defaults(handler=_run_pipeline_command, stage=name)
    return parser


def _run_build_lexicon(args: argparse.Namespace) -> int:
    try:
        lexicon = build_lexicon(args.titles, args.anchors, args.out, max_len=args.max_len)
    except (OSError, LexiconError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    print(
        f"wrote {args.out}: {len(lexicon.titles)} titles, "
        f"{len(lexicon.anchors)} anchor entries"
    )
    return EXIT_OK


def _parse_when(label: str, text: str):
    try:
        return parse_timestamp(text)
    except RecordError as exc:
        raise ConfigError(f"bad {label}: {exc}") from exc


def _run_pipeline_command(args: argparse.Namespace) -> int:
    config = PipelineConfig(
        input_path=args.input,
        lexicon_path=args.lexicon,
        out_dir=args.out,
        window_start=_parse_when("--window-start", args.window_start),
        window_end=_parse_when("--window-end", args.window_end),
        subwindows=args.subwindows,
        hashtag_weight=args.hashtag_weight,
        knn=args.knn,
        tau=args.tau,
        event_subwindows=args.event_subwindows,
        workers=args.workers,
        dump_bursty=args.dump_bursty,
        cross_threshold=args.cross_threshold,
        stopwords_path=args.stopwords,
    )
    bundle = run_pipeline(config, stage=args.stage)
    written = emit_reports(bundle)
    print(
        f"{args.stage}: {bundle.counts['filtered_events']} events from "
        f"{bundle.counts['kept']} tweets; wrote {len(written)} reports to {args.out}"
    )
    return EXIT_OK


def _configure_logging() -> None:
    level_name = os.environ.get("CEED_LOG", "").strip().upper()
    if not level_name:
        return
    level = getattr(logging, level_name, None)
    if not isinstance(level, int):
        print(f"warning: unknown CEED_LOG level {level_name!r}", file=sys.stderr)
        return
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )


def main(argv: list[str] | None = None) -> int:
    _configure_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except EmptyWindowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EMPTY_CORPUS
    except NoBurstActivityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_BURSTS
    except NoEventsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_EVENTS


if __name__ == "__main__":
    sys.exit(main())
