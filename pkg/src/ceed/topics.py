"""Topic clustering and popularity timelines inside one event."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from .events import EventCluster, SimilarityModel, jarvis_patrick
from .segment import SegmentIndex, occurrence_weights

logger = logging.getLogger(__name__)

DEFAULT_EVENT_SUBWINDOWS = 10


def _ceil_sqrt(n: int) -> int:
    root = math.isqrt(n)
    return root if root * root == n else root + 1


@dataclass(frozen=True)
class TopicCluster:
    topic_id: int
    segments: tuple[str, ...]
    popularity: tuple[float, ...]


@dataclass(frozen=True)
class TopicTimeline:
    event_id: str
    subwindows: int
    topics: tuple[TopicCluster, ...]


def filter_topic_segments(event: EventCluster, index: SegmentIndex) -> list[str]:
    """Candidate topic segments: drop ubiquitous ones, rank, truncate.

    Segments present in more than half of the event's tweets are discarded
    as background.  The remainder is sorted by occurrence frequency
    descending (ties by text) and cut to ceil(sqrt(n)) of its own length.
    """
    tweet_total = len(event.tweet_ids)
    kept = [
        segment
        for segment in event.segments
        if 2 * index.stats[segment].tweet_count <= tweet_total
    ]
    kept.sort(key=lambda s: (-index.stats[s].f_window, s))
    return kept[: _ceil_sqrt(len(kept))]


def cluster_topics(
    candidates: list[str], model: SimilarityModel, k: int = 4
) -> list[tuple[str, ...]]:
    """Group candidate segments into topics with the same clustering used
    for events; singletons vanish."""
    if len(candidates) < 2:
        return []
    matrix = model.matrix(tuple(sorted(candidates)))
    clusters, _ = jarvis_patrick(matrix, k)
    return [graph.members for graph in clusters]


def evolve(
    event: EventCluster,
    index: SegmentIndex,
    model: SimilarityModel,
    k: int = 4,
    subwindows: int = DEFAULT_EVENT_SUBWINDOWS,
) -> TopicTimeline:
    """Topic popularity over the event's own lifetime.

    The event span from first to last tweet splits into equal subwindows
    with the last boundary inclusive.  A topic's popularity in a subwindow
    is the weighted occurrence share of its segments against occurrences of
    every event segment there; an empty subwindow contributes zero.  Topics
    order by total popularity descending.
    """
    if subwindows < 1:
        raise ValueError("subwindow count must be at least 1")

    tweets_by_id = index.tweets_by_id
    times = [tweets_by_id[tweet_id].created_at for tweet_id in event.tweet_ids]
    first = min(times)
    span = int((max(times) - first).total_seconds())

    def local_subwindow(when) -> int:
        if span == 0:
            return 0
        delta = int((when - first).total_seconds())
        return min(subwindows - 1, delta * subwindows // span)

    event_segments = set(event.segments)
    weight = index.hashtag_weight
    totals = [0] * subwindows
    occurrence: dict[str, list[int]] = {
        segment: [0] * subwindows for segment in event.segments
    }
    for tweet_id in event.tweet_ids:
        m = local_subwindow(tweets_by_id[tweet_id].created_at)
        for text, w in occurrence_weights(
            index.tweet_segments[tweet_id], weight
        ).items():
            if text in event_segments:
                totals[m] += w
                occurrence[text][m] += w

    candidates = filter_topic_segments(event, index)
    groups = cluster_topics(candidates, model, k)
    if not groups:
        logger.info("event %s yields no topic clusters", event.id)

    drafts = []
    for members in groups:
        popularity = tuple(
            (
                sum(occurrence[segment][m] for segment in members) / totals[m]
                if totals[m]
                else 0.0
            )
            for m in range(subwindows)
        )
        drafts.append((members, popularity))
    drafts.sort(key=lambda draft: (-sum(draft[1]), draft[0][0]))

    topics = tuple(
        TopicCluster(topic_id=i, segments=members, popularity=popularity)
        for i, (members, popularity) in enumerate(drafts)
    )
    return TopicTimeline(event_id=event.id, subwindows=subwindows, topics=topics)
