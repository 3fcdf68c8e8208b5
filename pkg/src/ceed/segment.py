"""Dictionary-driven tweet segmentation and the per-window segment index."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterable, Mapping, Sequence

from .ingest import Corpus, Token, Tweet
from .lexicon import TitlesLexicon

logger = logging.getLogger(__name__)


@lru_cache(maxsize=1)
def default_stopwords() -> frozenset[str]:
    text = resources.files("ceed").joinpath("data/stopwords.txt").read_text("utf-8")
    return frozenset(word for word in text.split() if word)


def load_stopwords(path) -> frozenset[str]:
    with open(path, "r", encoding="utf-8") as handle:
        return frozenset(word.strip().lower() for word in handle if word.strip())


@dataclass(frozen=True)
class Segment:
    text: str
    hashtag_origin: bool = False


@dataclass
class SegmentStats:
    """Window-level aggregates for one segment text."""

    segment: str
    f_window: int
    f_sub: list[int]
    tweet_ids: list[list[str]]
    users: set[str]
    rc_sum: int
    fc_sum: int

    @property
    def tweet_count(self) -> int:
        return sum(len(ids) for ids in self.tweet_ids)


@dataclass
class SegmentIndex:
    """Segment statistics for one corpus window.

    ``weighted_total``/``weighted_subwindow_totals`` count each tweet with the
    hashtag weight when it carries any hashtag-origin token; they are the trial
    totals that keep a segment's observation probability at or below one even
    under hashtag boosting.
    """

    stats: dict[str, SegmentStats]
    corpus: Corpus
    tweet_segments: dict[str, tuple[Segment, ...]]
    weighted_total: int
    weighted_subwindow_totals: tuple[int, ...]

    @property
    def subwindows(self) -> int:
        return self.corpus.config.subwindows

    @property
    def hashtag_weight(self) -> int:
        return self.corpus.config.hashtag_weight

    @property
    def tweets_by_id(self) -> dict[str, Tweet]:
        cached = getattr(self, "_tweets_by_id", None)
        if cached is None:
            cached = {tweet.id: tweet for tweet in self.corpus.tweets}
            self._tweets_by_id = cached
        return cached

    def tweet_doc(self, tweet_id: str) -> list[str]:
        """Segment-token text of one tweet, duplicates retained."""
        return [
            token
            for seg in self.tweet_segments[tweet_id]
            for token in seg.text.split()
        ]


def segment_tweet(
    tokens: Sequence[Token],
    lexicon: TitlesLexicon,
    max_len: int | None = None,
    stopwords: frozenset[str] = frozenset(),
) -> list[Segment]:
    """Greedy leftmost-longest segmentation of one token sequence.

    At each position the longest lexicon phrase wins, capped at ``max_len``
    tokens; unmatched tokens fall back to unigram segments.  No match may
    cross a stop token, and segments consisting only of stop tokens are
    dropped, so non-stop tokens are covered exactly once.
    """
    limit = max_len if max_len is not None else lexicon.max_len
    texts = [token.text for token in tokens]
    flags = [token.from_hashtag for token in tokens]
    segments: list[Segment] = []
    i = 0
    n = len(texts)
    while i < n:
        if texts[i] in stopwords:
            i += 1
            continue
        length = 1
        for candidate in range(min(limit, n - i), 1, -1):
            span = texts[i : i + candidate]
            if any(word in stopwords for word in span):
                continue
            if lexicon.lookup(" ".join(span)):
                length = candidate
                break
        segments.append(
            Segment(" ".join(texts[i : i + length]), any(flags[i : i + length]))
        )
        i += length
    return segments


def occurrence_weights(
    segments: Iterable[Segment], hashtag_weight: int
) -> dict[str, int]:
    """Per-tweet counting weights: each distinct segment text counts once,
    at the hashtag weight when any of its occurrences is hashtag-origin."""
    weights: dict[str, int] = {}
    for seg in segments:
        weight = hashtag_weight if seg.hashtag_origin else 1
        prev = weights.get(seg.text)
        if prev is None or weight > prev:
            weights[seg.text] = weight
    return weights


def build_index(
    corpus: Corpus,
    lexicon: TitlesLexicon,
    stopwords: frozenset[str] | None = None,
) -> SegmentIndex:
    """Segment every tweet and accumulate window statistics.

    Frequencies carry the hashtag weight from the corpus configuration;
    user sets, retweet sums, and follower sums accumulate once per member
    tweet regardless of that weight.
    """
    if stopwords is None:
        stopwords = default_stopwords()
    config = corpus.config
    weight = config.hashtag_weight
    subwindows = config.subwindows

    stats: dict[str, SegmentStats] = {}
    tweet_segments: dict[str, tuple[Segment, ...]] = {}
    weighted_subwindow_totals = [0] * subwindows

    for tweet in corpus.tweets:
        segments = segment_tweet(tweet.tokens, lexicon, stopwords=stopwords)
        tweet_segments[tweet.id] = tuple(segments)
        tweet_weight = weight if any(t.from_hashtag for t in tweet.tokens) else 1
        weighted_subwindow_totals[tweet.subwindow_index] += tweet_weight
        for text, w in occurrence_weights(segments, weight).items():
            entry = stats.get(text)
            if entry is None:
                entry = SegmentStats(
                    segment=text,
                    f_window=0,
                    f_sub=[0] * subwindows,
                    tweet_ids=[[] for _ in range(subwindows)],
                    users=set(),
                    rc_sum=0,
                    fc_sum=0,
                )
                stats[text] = entry
            entry.f_window += w
            entry.f_sub[tweet.subwindow_index] += w
            entry.tweet_ids[tweet.subwindow_index].append(tweet.id)
            entry.users |= tweet.users
            entry.rc_sum += tweet.retweet_count

    followers = corpus.user_followers
    for entry in stats.values():
        entry.fc_sum = sum(followers.get(user, 0) for user in entry.users)

    return SegmentIndex(
        stats=stats,
        corpus=corpus,
        tweet_segments=tweet_segments,
        weighted_total=sum(weighted_subwindow_totals),
        weighted_subwindow_totals=tuple(weighted_subwindow_totals),
    )
