"""Orchestration: validation, counts, stage gating, report emission."""

import dataclasses
import json
from datetime import timedelta
from pathlib import Path

import pytest

from ceed.burst import NoBurstActivityError
from ceed.events import EventCluster
from ceed.ingest import EmptyWindowError
from ceed.lexicon import build_lexicon
from ceed.pipeline import (
    ConfigError,
    NoEventsError,
    PipelineConfig,
    ReportBundle,
    _fmt6,
    _round6,
    _write_atomic,
    emit_reports,
    run_pipeline,
)
from util import DAY0, at_day, eventful_rows, record, write_jsonl


@pytest.fixture(scope="module")
def empty_lexicon_path(tmp_path_factory) -> Path:
    base = tmp_path_factory.mktemp("lex")
    titles = base / "titles.txt"
    anchors = base / "anchors.tsv"
    titles.write_text("", encoding="utf-8")
    anchors.write_text("", encoding="utf-8")
    out = base / "empty.lex"
    build_lexicon(titles, anchors, out)
    return out


def make_config(tmp_path: Path, lexicon: Path, input_path: Path, **overrides):
    kwargs = dict(
        input_path=input_path,
        lexicon_path=lexicon,
        out_dir=tmp_path / "out",
        window_start=DAY0,
        window_end=DAY0 + timedelta(days=10),
    )
    kwargs.update(overrides)
    return PipelineConfig(**kwargs)


@pytest.fixture()
def eventful_config(tmp_path, empty_lexicon_path):
    input_path = write_jsonl(tmp_path / "tweets.jsonl", eventful_rows())
    return make_config(tmp_path, empty_lexicon_path, input_path)


class TestValidation:
    @pytest.mark.parametrize(
        "overrides",
        [
            {"knn": 0},
            {"tau": 0.0},
            {"tau": -1.5},
            {"workers": 0},
            {"subwindows": 0},
            {"event_subwindows": 0},
            {"hashtag_weight": 0},
            {"window_end": DAY0},
            {"window_end": DAY0 - timedelta(days=1)},
        ],
    )
    def test_bad_parameters(self, tmp_path, empty_lexicon_path, overrides):
        config = make_config(
            tmp_path, empty_lexicon_path, tmp_path / "absent.jsonl", **overrides
        )
        with pytest.raises(ConfigError):
            run_pipeline(config)

    def test_bad_stage_name(self, eventful_config):
        with pytest.raises(ConfigError, match="unknown stage"):
            run_pipeline(eventful_config, stage="everything")

    def test_missing_lexicon(self, tmp_path, eventful_config):
        config = make_config(
            tmp_path, tmp_path / "absent.lex", eventful_config.input_path
        )
        with pytest.raises(ConfigError, match="lexicon"):
            run_pipeline(config)

    def test_corrupt_lexicon(self, tmp_path, eventful_config):
        bad = tmp_path / "bad.lex"
        bad.write_bytes(b"not a lexicon at all")
        config = make_config(tmp_path, bad, eventful_config.input_path)
        with pytest.raises(ConfigError, match="lexicon"):
            run_pipeline(config)

    def test_missing_input(self, tmp_path, empty_lexicon_path):
        config = make_config(
            tmp_path, empty_lexicon_path, tmp_path / "absent.jsonl"
        )
        with pytest.raises(ConfigError, match="input"):
            run_pipeline(config)

    def test_missing_stopwords(self, tmp_path, eventful_config):
        config = make_config(
            tmp_path,
            eventful_config.lexicon_path,
            eventful_config.input_path,
            stopwords_path=tmp_path / "absent.txt",
        )
        with pytest.raises(ConfigError, match="stopwords"):
            run_pipeline(config)


class TestErrors:
    def test_empty_window(self, tmp_path, empty_lexicon_path):
        rows = [record("late words", created_at=at_day(20))]
        config = make_config(
            tmp_path,
            empty_lexicon_path,
            write_jsonl(tmp_path / "late.jsonl", rows),
        )
        with pytest.raises(EmptyWindowError):
            run_pipeline(config)

    def test_single_tweet_never_bursts(self, tmp_path, empty_lexicon_path):
        rows = [record("lone tweet", created_at=at_day(1))]
        config = make_config(
            tmp_path,
            empty_lexicon_path,
            write_jsonl(tmp_path / "one.jsonl", rows),
        )
        with pytest.raises(NoBurstActivityError):
            run_pipeline(config)

    def test_isolated_bursts_leave_no_events(self, tmp_path, empty_lexicon_path):
        rows = [
            record("aa", created_at=at_day(1)),
            record("bb", created_at=at_day(4)),
            record("cc", created_at=at_day(7)),
        ]
        config = make_config(
            tmp_path,
            empty_lexicon_path,
            write_jsonl(tmp_path / "iso.jsonl", rows),
        )
        with pytest.raises(NoEventsError):
            run_pipeline(config)


class TestCountsAndStages:
    def test_counts_reconcile_with_dirty_input(self, tmp_path, empty_lexicon_path):
        rows = eventful_rows()
        rows.append(record("offwindow words", created_at=at_day(12)))
        duplicate = dict(rows[0])
        extra = ["{broken json", json.dumps(duplicate), ""]
        config = make_config(
            tmp_path,
            empty_lexicon_path,
            write_jsonl(tmp_path / "dirty.jsonl", rows, extra),
        )
        bundle = run_pipeline(config, stage="detect")
        counts = bundle.counts
        assert counts["parsed"] == len(rows) + 2  # blank line never counts
        assert counts["skipped"] == 2
        assert counts["kept"] == len(rows) - 1
        assert counts["out_of_window"] == 1
        assert counts["retweet_folded"] == 0
        assert counts["parsed"] == (
            counts["kept"]
            + counts["retweet_folded"]
            + counts["out_of_window"]
            + counts["skipped"]
        )
        assert counts["filtered_events"] >= 1
        assert counts["candidate_events"] >= counts["filtered_events"]
        assert counts["bursty_segments"] == (
            counts["clustered_segments"] + counts["discarded_segments"]
        )

    def test_stage_gating(self, eventful_config):
        detect = run_pipeline(eventful_config, stage="detect")
        assert detect.cross is None and detect.timelines is None
        assert set(detect.timings) == {
            "load", "corpus", "segment", "burst", "events",
        }

        cross = run_pipeline(eventful_config, stage="cross")
        assert cross.cross is not None and cross.timelines is None
        assert "cross" in cross.timings and "topics" not in cross.timings

        topics = run_pipeline(eventful_config, stage="topics")
        assert topics.cross is None and topics.timelines is not None
        assert "topics" in topics.timings and "cross" not in topics.timings

        full = run_pipeline(eventful_config, stage="full")
        assert full.cross is not None and full.timelines is not None
        assert full.stage == "full"

    def test_detected_event_content(self, eventful_config):
        bundle = run_pipeline(eventful_config, stage="full")
        assert len(bundle.events) == 1
        event = bundle.events[0]
        assert set(event.segments) == {"storm", "surge", "ctx"}
        assert len(event.tweet_ids) == 6
        assert bundle.cross.alpha.shape == (1, 1)
        assert bundle.cross.alpha[0, 0] == 1.0
        assert len(bundle.timelines) == 1

    def test_custom_stopwords_change_indexing(self, tmp_path, empty_lexicon_path):
        rows = eventful_rows()
        rows.append(record("the cleanup", created_at=at_day(2)))
        rows.append(record("the recovery", created_at=at_day(6)))
        input_path = write_jsonl(tmp_path / "stop.jsonl", rows)
        keep_all = tmp_path / "none.txt"
        keep_all.write_text("", encoding="utf-8")

        with_default = run_pipeline(
            make_config(tmp_path, empty_lexicon_path, input_path), "detect"
        )
        with_custom = run_pipeline(
            make_config(
                tmp_path,
                empty_lexicon_path,
                input_path,
                stopwords_path=keep_all,
            ),
            "detect",
        )
        assert (
            with_custom.counts["segments_indexed"]
            == with_default.counts["segments_indexed"] + 1
        )

    def test_config_echo_round_trips(self, eventful_config):
        echo = eventful_config.echo("full")
        assert echo["stage"] == "full"
        assert echo["input"] == str(eventful_config.input_path)
        assert echo["tau"] == 4.0
        assert echo["stopwords"] is None


class TestReports:
    def test_full_stage_writes_everything(self, eventful_config):
        bundle = run_pipeline(eventful_config, stage="full")
        written = emit_reports(bundle)
        names = [path.name for path in written]
        assert names == [
            "events.json",
            "cross_matrix.csv",
            "cross_pairs.json",
            "cross_heatmap.csv",
            "topics.json",
            "topics_long.csv",
            "manifest.json",
        ]
        assert all(path.exists() for path in written)

        manifest = json.loads(written[-1].read_text(encoding="utf-8"))
        assert manifest["reports"] == names
        assert manifest["counts"] == bundle.counts
        assert manifest["config"]["stage"] == "full"
        assert set(manifest["timings_s"]) == set(bundle.timings)

    def test_detect_stage_writes_events_and_manifest_only(self, eventful_config):
        bundle = run_pipeline(eventful_config, stage="detect")
        names = [path.name for path in emit_reports(bundle)]
        assert names == ["events.json", "manifest.json"]

    def test_bursty_dump_is_opt_in(self, tmp_path, eventful_config):
        bundle = run_pipeline(eventful_config, stage="detect")
        assert "bursty_segments.tsv" not in {
            p.name for p in emit_reports(bundle, tmp_path / "without")
        }

        config = dataclasses.replace(eventful_config, dump_bursty=True)
        bundle = run_pipeline(config, stage="detect")
        paths = emit_reports(bundle, tmp_path / "with")
        names = [p.name for p in paths]
        assert names == ["events.json", "bursty_segments.tsv", "manifest.json"]
        body = paths[1].read_text(encoding="utf-8").splitlines()
        assert body[0] == "segment\tsubwindow\tprobability\tweight"
        first = body[1].split("\t")
        assert len(first) == 4
        int(first[1])
        assert first[2].count(".") == 1 and len(first[2].split(".")[1]) == 6

    def test_format_selector(self, tmp_path, eventful_config):
        bundle = run_pipeline(eventful_config, stage="full")
        only_events = emit_reports(bundle, tmp_path / "sel", formats=["events"])
        assert [p.name for p in only_events] == ["events.json"]

        only_manifest = emit_reports(
            bundle, tmp_path / "sel2", formats=["manifest"]
        )
        manifest = json.loads(only_manifest[0].read_text(encoding="utf-8"))
        assert manifest["reports"] == ["manifest.json"]

    def test_unknown_format_rejected(self, eventful_config):
        bundle = run_pipeline(eventful_config, stage="detect")
        with pytest.raises(ValueError, match="unknown report formats"):
            emit_reports(bundle, formats=["events", "pdf"])

    def test_cross_threshold_marks_pairs(self, tmp_path, empty_lexicon_path, eventful_config):
        rows = eventful_rows()
        for i in range(6):
            rows.append(
                record(
                    "quake jolt felt",
                    created_at=at_day(7.05 + i * 0.07),
                    retweet_count=1,
                )
            )
        config = make_config(
            tmp_path,
            empty_lexicon_path,
            write_jsonl(tmp_path / "two.jsonl", rows),
            cross_threshold=0.5,
        )
        bundle = run_pipeline(config, stage="cross")
        assert len(bundle.events) == 2
        paths = emit_reports(bundle, tmp_path / "out")
        pairs = json.loads(
            (tmp_path / "out" / "cross_pairs.json").read_text(encoding="utf-8")
        )["pairs"]
        assert len(pairs) == 1
        assert set(pairs[0]) == {"event_a", "event_b", "alpha", "is_cross"}
        assert pairs[0]["is_cross"] is False

    def test_failure_removes_written_files(self, tmp_path, eventful_config, monkeypatch):
        bundle = run_pipeline(eventful_config, stage="full")
        out = tmp_path / "partial"
        calls = []
        real = _write_atomic

        def flaky(out_dir, name, text):
            calls.append(name)
            if len(calls) == 3:
                raise OSError("disk full")
            return real(out_dir, name, text)

        monkeypatch.setattr("ceed.pipeline._write_atomic", flaky)
        with pytest.raises(OSError):
            emit_reports(bundle, out)
        assert list(out.iterdir()) == []

    def test_write_atomic_cleans_temp_on_failure(self, tmp_path, monkeypatch):
        target = tmp_path / "atomic"
        target.mkdir()

        def refuse(src, dst):
            raise OSError("no rename")

        monkeypatch.setattr("ceed.pipeline.os.replace", refuse)
        with pytest.raises(OSError):
            _write_atomic(target, "file.json", "{}\n")
        assert list(target.iterdir()) == []


class TestNumberFormatting:
    def test_round6_and_fmt6(self):
        assert _round6(1.7614331627247717) == 1.761433
        assert _fmt6(1.7614331627247717) == "1.761433"
        assert _fmt6(0.5) == "0.500000"

    def test_events_json_rounds_eventworthiness(self, tmp_path, eventful_config):
        bundle = run_pipeline(eventful_config, stage="detect")
        bundle.events = [
            EventCluster(
                id="E1",
                label="storm",
                segments=("storm",),
                pair_sims=(),
                tweet_ids=("t1",),
                eventworthiness=1.7614331627247717,
            )
        ]
        emit_reports(bundle, tmp_path / "fmt", formats=["events"])
        payload = json.loads(
            (tmp_path / "fmt" / "events.json").read_text(encoding="utf-8")
        )
        assert payload["events"][0]["eventworthiness"] == 1.761433
