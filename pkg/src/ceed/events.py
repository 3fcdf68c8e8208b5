"""Segment similarity, shared-neighbor clustering, and event scoring."""

from __future__ import annotations

import logging
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .burst import BurstScore
from .lexicon import TitlesLexicon
from .segment import SegmentIndex, SegmentStats

logger = logging.getLogger(__name__)

Vector = tuple[dict, float]
Profile = tuple[tuple[float, ...], list]


def subwindow_weight(stats: SegmentStats, subwindow: int) -> float:
    """Fraction of the segment's window frequency that falls in one subwindow."""
    return stats.f_sub[subwindow] / stats.f_window


class DocumentFrequencies:
    """Frozen document-frequency universe for TF-IDF scoring.

    One document per (segment, subwindow) pair with any member tweet: the
    concatenated segment-token text of those tweets.  The universe is built
    once per window and never changes afterwards, so IDF values stay stable
    across every similarity query in the run.
    """

    def __init__(self, df: Mapping[str, int], doc_count: int):
        self.df = dict(df)
        self.doc_count = doc_count

    @classmethod
    def from_index(cls, index: SegmentIndex) -> "DocumentFrequencies":
        term_sets: dict[str, frozenset[str]] = {}
        for tweet_id in index.tweet_segments:
            term_sets[tweet_id] = frozenset(index.tweet_doc(tweet_id))
        df: Counter[str] = Counter()
        doc_count = 0
        for stats in index.stats.values():
            for ids in stats.tweet_ids:
                if not ids:
                    continue
                doc_count += 1
                terms: set[str] = set()
                for tweet_id in ids:
                    terms |= term_sets[tweet_id]
                for term in terms:
                    df[term] += 1
        return cls(df, doc_count)

    def idf(self, term: str) -> float:
        return math.log(1.0 + self.doc_count / (1.0 + self.df.get(term, 0)))

    def vectorize(self, doc: Mapping[str, int]) -> Vector:
        weights = {term: count * self.idf(term) for term, count in doc.items()}
        norm = math.sqrt(sum(value * value for value in weights.values()))
        return weights, norm


def _cosine(vec_a: Vector, vec_b: Vector) -> float:
    weights_a, norm_a = vec_a
    weights_b, norm_b = vec_b
    if norm_a == 0.0 or norm_b == 0.0:
        return 0.0
    if len(weights_b) < len(weights_a):
        weights_a, weights_b = weights_b, weights_a
    dot = 0.0
    for term, value in weights_a.items():
        other = weights_b.get(term)
        if other is not None:
            dot += value * other
    if dot == 0.0:
        return 0.0
    # the float dot product can overshoot the exact Cauchy-Schwarz bound
    return min(1.0, dot / (norm_a * norm_b))


def tfidf_cosine(
    doc_a: Mapping[str, int], doc_b: Mapping[str, int], dfs: DocumentFrequencies
) -> float:
    """Cosine similarity of two raw-count documents under the frozen IDF."""
    if not doc_a or not doc_b:
        return 0.0
    return _cosine(dfs.vectorize(doc_a), dfs.vectorize(doc_b))


def _pair_similarity(profile_a: Profile, profile_b: Profile) -> float:
    weights_a, vectors_a = profile_a
    weights_b, vectors_b = profile_b
    total = 0.0
    for m in range(len(weights_a)):
        share_a = weights_a[m]
        share_b = weights_b[m]
        if share_a == 0.0 or share_b == 0.0:
            continue
        total += share_a * share_b * _cosine(vectors_a[m], vectors_b[m])
    # frequency shares sum to one per profile, so the exact value is <= 1
    return min(1.0, total)


_WORKER_PROFILES: list[Profile] | None = None


def _init_pair_worker(profiles: list[Profile]) -> None:
    global _WORKER_PROFILES
    _WORKER_PROFILES = profiles


def _pair_chunk(chunk: list[tuple[int, int]]) -> list[tuple[int, int, float]]:
    profiles = _WORKER_PROFILES
    assert profiles is not None
    return [(i, j, _pair_similarity(profiles[i], profiles[j])) for i, j in chunk]


@dataclass(frozen=True, eq=False)
class SimilarityMatrix:
    labels: tuple[str, ...]
    values: np.ndarray

    def value(self, label_a: str, label_b: str) -> float:
        positions = self._positions()
        return float(self.values[positions[label_a], positions[label_b]])

    def _positions(self) -> dict[str, int]:
        cached = getattr(self, "_pos", None)
        if cached is None:
            cached = {label: i for i, label in enumerate(self.labels)}
            object.__setattr__(self, "_pos", cached)
        return cached


class SimilarityModel:
    """Pairwise segment similarity over one indexed window.

    The score for two segments sums, over subwindows, the product of their
    frequency shares with the TF-IDF cosine of their per-subwindow context
    documents.  Documents and the IDF universe come from the index and are
    cached, so repeated queries are cheap.
    """

    def __init__(self, index: SegmentIndex, dfs: DocumentFrequencies | None = None):
        self.index = index
        self.dfs = dfs if dfs is not None else DocumentFrequencies.from_index(index)
        self._profiles: dict[str, Profile] = {}
        self._tweet_counters: dict[str, Counter] = {}

    def _tweet_counter(self, tweet_id: str) -> Counter:
        cached = self._tweet_counters.get(tweet_id)
        if cached is None:
            cached = Counter(self.index.tweet_doc(tweet_id))
            self._tweet_counters[tweet_id] = cached
        return cached

    def document(self, segment: str, subwindow: int) -> Counter:
        """Concatenated segment-token text of the member tweets in a subwindow."""
        doc: Counter = Counter()
        for tweet_id in self.index.stats[segment].tweet_ids[subwindow]:
            doc.update(self._tweet_counter(tweet_id))
        return doc

    def _profile(self, segment: str) -> Profile:
        cached = self._profiles.get(segment)
        if cached is not None:
            return cached
        stats = self.index.stats[segment]
        weights = tuple(
            subwindow_weight(stats, m) for m in range(self.index.subwindows)
        )
        vectors = [
            self.dfs.vectorize(self.document(segment, m)) if weights[m] > 0.0 else None
            for m in range(self.index.subwindows)
        ]
        profile = (weights, vectors)
        self._profiles[segment] = profile
        return profile

    def segment_similarity(self, segment_a: str, segment_b: str) -> float:
        return _pair_similarity(self._profile(segment_a), self._profile(segment_b))

    def matrix(self, labels: Iterable[str], workers: int = 1) -> SimilarityMatrix:
        """Symmetric similarity matrix over the given segment labels.

        The result is identical for any worker count: every entry is an
        independent pair computation and assembly is keyed by index.
        """
        labels = tuple(labels)
        profiles = [self._profile(label) for label in labels]
        n = len(labels)
        pairs = [(i, j) for i in range(n) for j in range(i, n)]
        if workers > 1 and len(pairs) > 1:
            chunk_count = min(len(pairs), workers * 4)
            chunks = [pairs[i::chunk_count] for i in range(chunk_count)]
            results: list[tuple[int, int, float]] = []
            with ProcessPoolExecutor(
                max_workers=workers,
                initializer=_init_pair_worker,
                initargs=(profiles,),
            ) as pool:
                for part in pool.map(_pair_chunk, chunks):
                    results.extend(part)
        else:
            results = [
                (i, j, _pair_similarity(profiles[i], profiles[j])) for i, j in pairs
            ]
        values = np.zeros((n, n))
        for i, j, value in results:
            values[i, j] = value
            values[j, i] = value
        return SimilarityMatrix(labels, values)


@dataclass(frozen=True)
class ClusterGraph:
    members: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]


def jarvis_patrick(
    matrix: SimilarityMatrix, k: int
) -> tuple[list[ClusterGraph], list[str]]:
    """Mutual k-nearest-neighbor clustering over a similarity matrix.

    Each node's neighbor list holds its k most similar distinct nodes with
    positive similarity, ties broken by label ascending.  An edge requires
    membership in both lists; connected components of size >= 2 survive and
    everything else lands in the discarded list.
    """
    if k < 1:
        raise ValueError("neighbor count must be at least 1")
    labels = matrix.labels
    values = matrix.values
    n = len(labels)

    neighbor_sets: dict[str, set[str]] = {}
    for i, label in enumerate(labels):
        candidates = [
            (-float(values[i, j]), labels[j])
            for j in range(n)
            if j != i and values[i, j] > 0.0
        ]
        candidates.sort()
        neighbor_sets[label] = {other for _, other in candidates[:k]}

    edges: list[tuple[str, str]] = []
    for i in range(n):
        for j in range(i + 1, n):
            a, b = labels[i], labels[j]
            if b in neighbor_sets[a] and a in neighbor_sets[b]:
                edges.append((a, b) if a <= b else (b, a))

    parent = {label: label for label in labels}

    def find(node: str) -> str:
        while parent[node] != node:
            parent[node] = parent[parent[node]]
            node = parent[node]
        return node

    for a, b in edges:
        root_a, root_b = find(a), find(b)
        if root_a != root_b:
            parent[root_b] = root_a

    groups: dict[str, list[str]] = {}
    for label in labels:
        groups.setdefault(find(label), []).append(label)

    clusters: list[ClusterGraph] = []
    discarded: list[str] = []
    for members in groups.values():
        if len(members) < 2:
            discarded.extend(members)
            continue
        member_set = set(members)
        cluster_edges = sorted(
            edge for edge in edges if edge[0] in member_set and edge[1] in member_set
        )
        clusters.append(ClusterGraph(tuple(sorted(members)), tuple(cluster_edges)))
    clusters.sort(key=lambda graph: graph.members[0])
    return clusters, sorted(discarded)


def newsworthiness(segment: str, lexicon: TitlesLexicon) -> float:
    """Prior importance of a segment from anchor-probability statistics.

    Single words score exp(q).  Multiword segments score exp(q*) - 1 where
    q* is the best anchor probability over every contiguous sub-phrase,
    the segment itself included.
    """
    words = segment.split()
    if len(words) == 1:
        return math.exp(lexicon.anchor_prob(segment))
    best = 0.0
    for start in range(len(words)):
        for stop in range(start + 1, len(words) + 1):
            q = lexicon.anchor_prob(" ".join(words[start:stop]))
            if q > best:
                best = q
    return math.exp(best) - 1.0


def eventworthiness(
    segment_scores: Sequence[float], edge_sims: Sequence[float]
) -> float:
    """Mean segment importance scaled by retained-edge cohesion.

    Both averages use the segment count, so sparse clusters score lower
    even when their surviving edges are strong.
    """
    n = len(segment_scores)
    if n < 2:
        raise ValueError("a cluster needs at least two segments")
    return (sum(segment_scores) / n) * (sum(edge_sims) / n)


@dataclass(frozen=True)
class EventCluster:
    id: str
    label: str
    segments: tuple[str, ...]
    pair_sims: tuple[float, ...]
    tweet_ids: tuple[str, ...]
    eventworthiness: float


def build_events(
    index: SegmentIndex,
    bursty: Sequence[BurstScore],
    lexicon: TitlesLexicon,
    k: int = 4,
    model: SimilarityModel | None = None,
    workers: int = 1,
) -> list[EventCluster]:
    """Cluster bursty segments into candidate events, scored and ordered.

    Events come back sorted by eventworthiness descending (ties by label
    ascending) with ids E1, E2, ...; the event label is its highest-weight
    bursty segment.
    """
    weight_of = {score.segment: score.weight for score in bursty}
    labels = tuple(sorted(weight_of))
    if model is None:
        model = SimilarityModel(index)
    matrix = model.matrix(labels, workers=workers)
    clusters, discarded = jarvis_patrick(matrix, k)
    if discarded:
        logger.debug("discarded %d unclustered segments", len(discarded))

    drafts = []
    for graph in clusters:
        scores = [newsworthiness(member, lexicon) for member in graph.members]
        sims = tuple(matrix.value(a, b) for a, b in graph.edges)
        mu = eventworthiness(scores, sims)
        tweet_ids = sorted(
            {
                tweet_id
                for member in graph.members
                for ids in index.stats[member].tweet_ids
                for tweet_id in ids
            }
        )
        label = min(graph.members, key=lambda s: (-weight_of[s], s))
        drafts.append((mu, label, graph, sims, tweet_ids))

    drafts.sort(key=lambda draft: (-draft[0], draft[1]))
    return [
        EventCluster(
            id=f"E{position}",
            label=label,
            segments=graph.members,
            pair_sims=sims,
            tweet_ids=tuple(tweet_ids),
            eventworthiness=mu,
        )
        for position, (mu, label, graph, sims, tweet_ids) in enumerate(drafts, start=1)
    ]


def filter_events(events: Sequence[EventCluster], tau: float) -> list[EventCluster]:
    """Keep events within a factor tau of the best eventworthiness.

    Zero-scoring events always drop.  A larger tau keeps a superset.
    """
    if tau <= 0:
        raise ValueError("tau must be positive")
    if not events:
        return []
    mu_max = max(event.eventworthiness for event in events)
    return [
        event
        for event in events
        if event.eventworthiness > 0.0
        and mu_max / event.eventworthiness <= tau
    ]
