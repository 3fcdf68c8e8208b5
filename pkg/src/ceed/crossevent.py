"""Cross-event correlation from temporal overlap and shared context."""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .events import DocumentFrequencies, EventCluster, subwindow_weight, tfidf_cosine
from .segment import SegmentIndex

logger = logging.getLogger(__name__)


def _ceil_sqrt(n: int) -> int:
    root = math.isqrt(n)
    return root if root * root == n else root + 1


def representative_segments(event: EventCluster, index: SegmentIndex) -> list[str]:
    """Top ceil(sqrt(N)) event segments by occurrence frequency.

    Every member tweet of an event segment belongs to the event, so the
    event-relative occurrence ranking is the window frequency ranking.
    Ties break by segment text ascending.
    """
    ranked = sorted(
        event.segments, key=lambda s: (-index.stats[s].f_window, s)
    )
    return ranked[: _ceil_sqrt(len(event.segments))]


def time_similarity_segments(
    segment_a: str, segment_b: str, index: SegmentIndex
) -> float:
    """Overlap of two segments' subwindow frequency profiles."""
    stats_a = index.stats[segment_a]
    stats_b = index.stats[segment_b]
    return sum(
        subwindow_weight(stats_a, m) * subwindow_weight(stats_b, m)
        for m in range(index.subwindows)
    )


def time_similarity_events(
    event_a: EventCluster,
    event_b: EventCluster,
    index: SegmentIndex,
    reps_a: Sequence[str] | None = None,
    reps_b: Sequence[str] | None = None,
) -> float:
    """Mean pairwise profile overlap between two events' representatives."""
    if reps_a is None:
        reps_a = representative_segments(event_a, index)
    if reps_b is None:
        reps_b = representative_segments(event_b, index)
    total = 0.0
    for seg_a in reps_a:
        for seg_b in reps_b:
            total += time_similarity_segments(seg_a, seg_b, index)
    return total / (len(reps_a) * len(reps_b))


def event_document(event: EventCluster, index: SegmentIndex) -> Counter:
    """Concatenated segment-token text of every event tweet, duplicates kept."""
    doc: Counter = Counter()
    for tweet_id in event.tweet_ids:
        doc.update(index.tweet_doc(tweet_id))
    return doc


def cross_factor(
    event_a: EventCluster,
    event_b: EventCluster,
    index: SegmentIndex,
    dfs: DocumentFrequencies,
) -> float:
    """Correlation score in [0, tanh(1)] for distinct events, 1.0 for self."""
    if event_a.id == event_b.id:
        return 1.0
    t = time_similarity_events(event_a, event_b, index)
    context = tfidf_cosine(
        event_document(event_a, index), event_document(event_b, index), dfs
    )
    return math.tanh(t * context)


@dataclass(frozen=True, eq=False)
class CrossEventMatrix:
    event_ids: tuple[str, ...]
    alpha: np.ndarray


def cross_matrix(
    events: Sequence[EventCluster],
    index: SegmentIndex,
    dfs: DocumentFrequencies,
) -> CrossEventMatrix:
    """Symmetric cross-correlation matrix with a hard-coded unit diagonal.

    Each unordered pair is computed once; off-diagonal entries stay within
    [0, tanh(1)].
    """
    ids = tuple(event.id for event in events)
    n = len(events)
    reps = [representative_segments(event, index) for event in events]
    docs = [event_document(event, index) for event in events]
    alpha = np.ones((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            t = time_similarity_events(
                events[i], events[j], index, reps[i], reps[j]
            )
            context = tfidf_cosine(docs[i], docs[j], dfs)
            value = math.tanh(t * context)
            alpha[i, j] = value
            alpha[j, i] = value
    return CrossEventMatrix(ids, alpha)
