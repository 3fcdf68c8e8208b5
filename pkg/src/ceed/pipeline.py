"""End-to-end pipeline runner and report emission.

run_pipeline executes ingest through the requested stage and returns an
in-memory bundle; emit_reports serializes the bundle into the output
directory.  Report files are written atomically (temp file then rename) and
any partially written set is removed if a later write fails.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
import time
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path
from typing import Iterable

from .burst import BurstScore, extract_bursty
from .crossevent import CrossEventMatrix, cross_matrix
from .events import (
    EventCluster,
    SimilarityModel,
    build_events,
    filter_events,
)
from .ingest import BuildCounts, WindowConfig, build_corpus, load_records
from .lexicon import LexiconError, load_lexicon
from .segment import build_index, default_stopwords, load_stopwords
from .topics import TopicTimeline, evolve

logger = logging.getLogger(__name__)

STAGES = ("detect", "cross", "topics", "full")


class ConfigError(RuntimeError):
    """Unusable configuration: bad paths, bad window, bad parameters."""


class NoEventsError(RuntimeError):
    """Candidate clusters existed but none survived the filter."""


@dataclass(frozen=True)
class PipelineConfig:
    input_path: Path
    lexicon_path: Path
    out_dir: Path
    window_start: datetime
    window_end: datetime
    subwindows: int = 10
    hashtag_weight: int = 3
    knn: int = 4
    tau: float = 4.0
    event_subwindows: int = 10
    workers: int = 1
    dump_bursty: bool = False
    cross_threshold: float | None = None
    stopwords_path: Path | None = None

    def echo(self, stage: str) -> dict:
        return {
            "stage": stage,
            "input": str(self.input_path),
            "lexicon": str(self.lexicon_path),
            "out": str(self.out_dir),
            "window_start": self.window_start.isoformat(),
            "window_end": self.window_end.isoformat(),
            "subwindows": self.subwindows,
            "hashtag_weight": self.hashtag_weight,
            "knn": self.knn,
            "tau": self.tau,
            "event_subwindows": self.event_subwindows,
            "workers": self.workers,
            "dump_bursty": self.dump_bursty,
            "cross_threshold": self.cross_threshold,
            "stopwords": None if self.stopwords_path is None else str(self.stopwords_path),
        }


@dataclass
class ReportBundle:
    stage: str
    config: PipelineConfig
    counts: dict[str, int]
    bursty: list[BurstScore]
    events: list[EventCluster]
    cross: CrossEventMatrix | None = None
    timelines: list[TopicTimeline] | None = None
    timings: dict[str, float] = field(default_factory=dict)


def _validate(config: PipelineConfig, stage: str) -> None:
    if stage not in STAGES:
        raise ConfigError(f"unknown stage {stage!r}; expected one of {STAGES}")
    if config.knn < 1:
        raise ConfigError("knn must be at least 1")
    if config.tau <= 0:
        raise ConfigError("tau must be positive")
    if config.workers < 1:
        raise ConfigError("workers must be at least 1")
    if config.subwindows < 1 or config.event_subwindows < 1:
        raise ConfigError("subwindow counts must be at least 1")
    if config.hashtag_weight < 1:
        raise ConfigError("hashtag weight must be at least 1")
    if config.window_end <= config.window_start:
        raise ConfigError("window end must fall after window start")


def run_pipeline(config: PipelineConfig, stage: str = "full") -> ReportBundle:
    _validate(config, stage)
    timings: dict[str, float] = {}

    started = time.perf_counter()
    try:
        lexicon = load_lexicon(config.lexicon_path)
    except (OSError, LexiconError) as exc:
        raise ConfigError(f"cannot load lexicon: {exc}") from exc
    try:
        if config.stopwords_path is None:
            stopwords = default_stopwords()
        else:
            stopwords = load_stopwords(config.stopwords_path)
    except OSError as exc:
        raise ConfigError(f"cannot load stopwords: {exc}") from exc
    try:
        records, parsed, skipped = load_records(config.input_path)
    except OSError as exc:
        raise ConfigError(f"cannot read input: {exc}") from exc
    timings["load"] = time.perf_counter() - started

    started = time.perf_counter()
    window = WindowConfig(
        start=config.window_start,
        end=config.window_end,
        subwindows=config.subwindows,
        hashtag_weight=config.hashtag_weight,
    )
    corpus, build_counts = build_corpus(records, window)
    timings["corpus"] = time.perf_counter() - started

    started = time.perf_counter()
    index = build_index(corpus, lexicon, stopwords=stopwords)
    timings["segment"] = time.perf_counter() - started

    started = time.perf_counter()
    bursty = extract_bursty(index)
    timings["burst"] = time.perf_counter() - started

    started = time.perf_counter()
    model = SimilarityModel(index)
    candidates = build_events(
        index, bursty, lexicon, k=config.knn, model=model, workers=config.workers
    )
    events = filter_events(candidates, config.tau)
    if not events:
        raise NoEventsError("no candidate event survived the eventworthiness filter")
    timings["events"] = time.perf_counter() - started

    clustered = sum(len(event.segments) for event in candidates)
    counts = {
        "parsed": parsed,
        "skipped": skipped,
        "kept": build_counts.kept,
        "retweet_folded": build_counts.retweet_folded,
        "out_of_window": build_counts.out_of_window,
        "segments_indexed": len(index.stats),
        "bursty_segments": len(bursty),
        "clustered_segments": clustered,
        "discarded_segments": len(bursty) - clustered,
        "candidate_events": len(candidates),
        "filtered_events": len(events),
    }
    reconciled = (
        build_counts.kept
        + build_counts.retweet_folded
        + build_counts.out_of_window
        + skipped
    )
    if parsed != reconciled:
        raise RuntimeError(
            f"count reconciliation failed: parsed {parsed} != accounted {reconciled}"
        )

    bundle = ReportBundle(
        stage=stage,
        config=config,
        counts=counts,
        bursty=bursty,
        events=events,
        timings=timings,
    )

    if stage in ("cross", "full"):
        started = time.perf_counter()
        bundle.cross = cross_matrix(events, index, model.dfs)
        timings["cross"] = time.perf_counter() - started
    if stage in ("topics", "full"):
        started = time.perf_counter()
        bundle.timelines = [
            evolve(event, index, model, k=config.knn, subwindows=config.event_subwindows)
            for event in events
        ]
        timings["topics"] = time.perf_counter() - started
    return bundle


def _round6(value: float) -> float:
    return round(float(value), 6)


def _fmt6(value: float) -> str:
    return f"{float(value):.6f}"


def _events_payload(bundle: ReportBundle) -> str:
    events = [
        {
            "id": event.id,
            "label": event.label,
            "eventworthiness": _round6(event.eventworthiness),
            "tweet_count": len(event.tweet_ids),
            "segments": list(event.segments),
            "tweet_ids": list(event.tweet_ids),
        }
        for event in bundle.events
    ]
    return json.dumps({"count": len(events), "events": events}, indent=2) + "\n"


def _bursty_payload(bundle: ReportBundle) -> str:
    rows = ["segment\tsubwindow\tprobability\tweight"]
    for score in bundle.bursty:
        rows.append(
            "\t".join(
                (
                    score.segment,
                    str(score.bursty_subwindow),
                    _fmt6(score.probability),
                    _fmt6(score.weight),
                )
            )
        )
    return "\n".join(rows) + "\n"


def _cross_matrix_payload(cross: CrossEventMatrix) -> str:
    header = "event," + ",".join(cross.event_ids)
    rows = [header]
    for i, event_id in enumerate(cross.event_ids):
        cells = ",".join(_fmt6(cross.alpha[i, j]) for j in range(len(cross.event_ids)))
        rows.append(f"{event_id},{cells}")
    return "\n".join(rows) + "\n"


def _cross_pairs_payload(cross: CrossEventMatrix, threshold: float | None) -> str:
    pairs = []
    for i, event_a in enumerate(cross.event_ids):
        for j in range(i + 1, len(cross.event_ids)):
            entry = {
                "event_a": event_a,
                "event_b": cross.event_ids[j],
                "alpha": _round6(cross.alpha[i, j]),
            }
            if threshold is not None:
                entry["is_cross"] = bool(cross.alpha[i, j] >= threshold)
            pairs.append(entry)
    return json.dumps({"pairs": pairs}, indent=2) + "\n"


def _cross_heatmap_payload(cross: CrossEventMatrix) -> str:
    rows = ["row,col,value"]
    for i, event_a in enumerate(cross.event_ids):
        for j, event_b in enumerate(cross.event_ids):
            rows.append(f"{event_a},{event_b},{_fmt6(cross.alpha[i, j])}")
    return "\n".join(rows) + "\n"


def _topics_payload(bundle: ReportBundle) -> str:
    events = []
    for timeline in bundle.timelines or []:
        events.append(
            {
                "id": timeline.event_id,
                "subwindows": timeline.subwindows,
                "topics": [
                    {
                        "topic": topic.topic_id,
                        "segments": list(topic.segments),
                        "popularity": [_round6(v) for v in topic.popularity],
                    }
                    for topic in timeline.topics
                ],
            }
        )
    return json.dumps({"events": events}, indent=2) + "\n"


def _topics_long_payload(bundle: ReportBundle) -> str:
    rows = ["event,topic,subwindow,popularity"]
    for timeline in bundle.timelines or []:
        for topic in timeline.topics:
            for m, value in enumerate(topic.popularity):
                rows.append(f"{timeline.event_id},{topic.topic_id},{m},{_fmt6(value)}")
    return "\n".join(rows) + "\n"


def _manifest_payload(bundle: ReportBundle, report_names: list[str]) -> str:
    manifest = {
        "config": bundle.config.echo(bundle.stage),
        "counts": bundle.counts,
        "reports": report_names,
        "timings_s": {name: _round6(value) for name, value in bundle.timings.items()},
    }
    return json.dumps(manifest, indent=2) + "\n"


def _write_atomic(out_dir: Path, name: str, text: str) -> Path:
    target = out_dir / name
    descriptor, tmp_name = tempfile.mkstemp(dir=out_dir, prefix=f".{name}.")
    try:
        with os.fdopen(descriptor, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp_name, target)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise
    return target


def emit_reports(
    bundle: ReportBundle,
    out_dir: Path | None = None,
    formats: Iterable[str] | None = None,
) -> list[Path]:
    """Write the bundle's report files; returns the written paths.

    ``formats`` selects report families from {"events", "bursty", "cross",
    "topics", "manifest"}; None writes everything the bundle carries.  The
    manifest goes last so that a manifest on disk implies a complete report
    set.  On failure every file written by this call is removed.
    """
    out_dir = Path(out_dir) if out_dir is not None else bundle.config.out_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    if formats is None:
        wanted = {"events", "bursty", "cross", "topics", "manifest"}
    else:
        wanted = set(formats)
        unknown = wanted - {"events", "bursty", "cross", "topics", "manifest"}
        if unknown:
            raise ValueError(f"unknown report formats: {sorted(unknown)}")

    payloads: list[tuple[str, str]] = []
    if "events" in wanted:
        payloads.append(("events.json", _events_payload(bundle)))
    if "bursty" in wanted and bundle.config.dump_bursty:
        payloads.append(("bursty_segments.tsv", _bursty_payload(bundle)))
    if "cross" in wanted and bundle.cross is not None:
        payloads.append(("cross_matrix.csv", _cross_matrix_payload(bundle.cross)))
        payloads.append(
            (
                "cross_pairs.json",
                _cross_pairs_payload(bundle.cross, bundle.config.cross_threshold),
            )
        )
        payloads.append(("cross_heatmap.csv", _cross_heatmap_payload(bundle.cross)))
    if "topics" in wanted and bundle.timelines is not None:
        payloads.append(("topics.json", _topics_payload(bundle)))
        payloads.append(("topics_long.csv", _topics_long_payload(bundle)))
    names = [name for name, _ in payloads]
    if "manifest" in wanted:
        names = names + ["manifest.json"]
        payloads.append(("manifest.json", _manifest_payload(bundle, names)))

    written: list[Path] = []
    try:
        for name, text in payloads:
            written.append(_write_atomic(out_dir, name, text))
    except BaseException:
        for path in written:
            try:
                path.unlink()
            except OSError:
                pass
        raise
    logger.info("wrote %d report files to %s", len(written), out_dir)
    return written
