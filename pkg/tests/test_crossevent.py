"""Representative extraction and cross-event correlation."""

import json
import math

import numpy as np
import pytest

import reference
from ceed.burst import extract_bursty
from ceed.crossevent import (
    cross_factor,
    cross_matrix,
    event_document,
    representative_segments,
    time_similarity_events,
    time_similarity_segments,
)
from ceed.events import DocumentFrequencies, build_events, filter_events
from ceed.segment import build_index, default_stopwords
from ceed.synth import lexicon_from_rows, random_corpus
from util import at_day, corpus_of, lexicon_of, pseudo_event, record, window

TANH1 = math.tanh(1.0)


def _indexed(rows, titles=(), subwindows=10):
    corpus, _ = corpus_of(rows, window(subwindows=subwindows))
    return corpus, build_index(corpus, lexicon_of(titles), stopwords=frozenset())


def _full_chain(seed):
    lines, titles, anchor_rows, info = random_corpus(seed=seed)
    lexicon = lexicon_from_rows(titles, anchor_rows)
    corpus, _ = corpus_of(
        [json.loads(line) for line in lines],
        window(subwindows=info["subwindows"]),
    )
    stop = default_stopwords()
    index = build_index(corpus, lexicon, stopwords=stop)
    tables = reference.build_tables(corpus, lexicon.titles, stop, lexicon.max_len)
    return corpus, index, lexicon, tables


class TestRepresentativeSegments:
    def test_single_segment_event(self):
        _, index = _indexed([record("alpha beta", created_at=at_day(1))])
        event = pseudo_event(index, ["alpha"])
        assert representative_segments(event, index) == ["alpha"]

    def test_top_sqrt_by_frequency(self):
        rows = []
        for rank, name in enumerate(
            ["huge", "big", "mid", "low", "rare", "tiny", "once", "dim", "end"]
        ):
            for i in range(9 - rank):
                rows.append(record(f"{name} filler{rank}x{i}", created_at=at_day(1 + rank * 0.01)))
        _, index = _indexed(rows)
        names = ["huge", "big", "mid", "low", "rare", "tiny", "once", "dim", "end"]
        event = pseudo_event(index, sorted(names))
        reps = representative_segments(event, index)
        assert reps == ["huge", "big", "mid"]  # ceil(sqrt(9)) = 3

    def test_frequency_tie_breaks_by_text(self):
        rows = [
            record("zeta word", created_at=at_day(1)),
            record("alpha word", created_at=at_day(1.1)),
        ]
        _, index = _indexed(rows)
        event = pseudo_event(index, ["zeta", "alpha"])
        reps = representative_segments(event, index)
        assert reps == ["alpha", "zeta"]


class TestTimeSimilarity:
    def test_concentrated_same_subwindow(self):
        _, index = _indexed(
            [
                record("aa one", created_at=at_day(3.2)),
                record("bb two", created_at=at_day(3.4)),
            ]
        )
        assert time_similarity_segments("aa", "bb", index) == pytest.approx(
            1.0, abs=1e-12
        )

    def test_disjoint_zero(self):
        _, index = _indexed(
            [
                record("aa one", created_at=at_day(1)),
                record("bb two", created_at=at_day(8)),
            ]
        )
        assert time_similarity_segments("aa", "bb", index) == 0.0

    def test_uniform_profiles(self):
        rows = []
        for day in range(10):
            rows.append(record("aa ctx", created_at=at_day(day + 0.3)))
            rows.append(record("bb ctx", created_at=at_day(day + 0.6)))
        _, index = _indexed(rows)
        assert time_similarity_segments("aa", "bb", index) == pytest.approx(
            0.1, abs=1e-12
        )

    def test_event_level_single_pair(self):
        _, index = _indexed(
            [
                record("aa one", created_at=at_day(2.2)),
                record("bb two", created_at=at_day(2.4)),
                record("bb far", created_at=at_day(7.5)),
            ]
        )
        t_segments = time_similarity_segments("aa", "bb", index)
        event_a = pseudo_event(index, ["aa"], "EA")
        event_b = pseudo_event(index, ["bb"], "EB")
        assert time_similarity_events(event_a, event_b, index) == pytest.approx(
            t_segments, abs=1e-12
        )

    def test_event_level_double_sum(self):
        _, index, _, tables = _full_chain(41)
        labels = sorted(tables["f_window"], key=lambda s: -tables["f_window"][s])
        group_a, group_b = labels[:3], labels[3:6]
        event_a = pseudo_event(index, group_a, "EA")
        event_b = pseudo_event(index, group_b, "EB")
        value = time_similarity_events(event_a, event_b, index)

        reps_a = reference.representatives(
            tables, tuple(group_a), event_a.tweet_ids
        )
        reps_b = reference.representatives(
            tables, tuple(group_b), event_b.tweet_ids
        )
        total = 0.0
        for seg_a in reps_a:
            for seg_b in reps_b:
                total += time_similarity_segments(seg_a, seg_b, index)
        assert value == pytest.approx(
            total / (len(reps_a) * len(reps_b)), abs=1e-12
        )


class TestCrossFactor:
    def test_self_pair_is_exactly_one(self):
        _, index = _indexed([record("aa bb", created_at=at_day(1))])
        event = pseudo_event(index, ["aa"])
        dfs = DocumentFrequencies.from_index(index)
        assert cross_factor(event, event, index, dfs) == 1.0

    def test_disjoint_pair_is_exactly_zero(self):
        _, index = _indexed(
            [
                record("aa one", created_at=at_day(1)),
                record("bb two", created_at=at_day(8)),
            ]
        )
        dfs = DocumentFrequencies.from_index(index)
        event_a = pseudo_event(index, ["aa"], "EA")
        event_b = pseudo_event(index, ["bb"], "EB")
        assert cross_factor(event_a, event_b, index, dfs) == 0.0

    def test_event_document_keeps_duplicates(self):
        _, index = _indexed([record("aa aa bb", created_at=at_day(1))])
        event = pseudo_event(index, ["aa"])
        doc = event_document(event, index)
        assert doc["aa"] == 2
        assert doc["bb"] == 1

    def test_random_events_match_brute_force(self):
        import random

        rng = random.Random(23)
        _, index, _, tables = _full_chain(23)
        df, doc_count = reference.document_universe(tables)
        dfs = DocumentFrequencies.from_index(index)
        labels = sorted(tables["f_window"])
        for _ in range(10):
            group_a = tuple(sorted(rng.sample(labels, rng.randint(2, 5))))
            group_b = tuple(sorted(rng.sample(labels, rng.randint(2, 5))))
            event_a = pseudo_event(index, group_a, "EA")
            event_b = pseudo_event(index, group_b, "EB")
            value = cross_factor(event_a, event_b, index, dfs)
            expected = reference.cross_alpha(
                tables,
                df,
                doc_count,
                {"members": group_a, "tweet_ids": event_a.tweet_ids},
                {"members": group_b, "tweet_ids": event_b.tweet_ids},
            )
            assert value == pytest.approx(expected, abs=1e-12)
            assert 0.0 <= value <= TANH1 + 1e-12


class TestCrossMatrix:
    def _events(self, seed=35):
        corpus, index, lexicon, _ = _full_chain(seed)
        bursty = extract_bursty(index)
        events = filter_events(build_events(index, bursty, lexicon, k=4), 4.0)
        return index, events

    def test_single_event_unit_matrix(self):
        _, index = _indexed([record("aa bb", created_at=at_day(1))])
        dfs = DocumentFrequencies.from_index(index)
        event = pseudo_event(index, ["aa"], "E1")
        result = cross_matrix([event], index, dfs)
        assert result.event_ids == ("E1",)
        assert result.alpha.shape == (1, 1)
        assert result.alpha[0, 0] == 1.0

    def test_symmetric_unit_diagonal_bounded(self):
        index, events = self._events()
        if len(events) < 2:
            pytest.skip("need two events from this corpus")
        dfs = DocumentFrequencies.from_index(index)
        result = cross_matrix(events, index, dfs)
        alpha = result.alpha
        assert np.array_equal(alpha, alpha.T)
        assert all(alpha[i, i] == 1.0 for i in range(len(events)))
        off = alpha[~np.eye(len(events), dtype=bool)]
        assert float(off.max(initial=0.0)) <= TANH1 + 1e-12
        assert float(off.min(initial=1.0)) >= 0.0

    def test_event_order_permutes_consistently(self):
        index, events = self._events()
        if len(events) < 2:
            pytest.skip("need two events from this corpus")
        dfs = DocumentFrequencies.from_index(index)
        forward = cross_matrix(events, index, dfs)
        backward = cross_matrix(list(reversed(events)), index, dfs)
        assert forward.alpha[0, 1] == pytest.approx(
            backward.alpha[-1, -2], abs=1e-12
        )
