"""Bursty-segment detection over subwindow frequencies."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from .segment import SegmentIndex, SegmentStats

logger = logging.getLogger(__name__)


class NoBurstActivityError(RuntimeError):
    """The window contains no segment that exceeds its expected frequency."""


@dataclass(frozen=True)
class BurstScore:
    segment: str
    bursty_subwindow: int
    probability: float
    weight: float


def window_probability(index: SegmentIndex, stats: SegmentStats) -> float:
    """Chance that one weighted tweet trial contains the segment."""
    return stats.f_window / index.weighted_total


def expected_and_sigma(
    index: SegmentIndex, stats: SegmentStats, subwindow: int
) -> tuple[float, float]:
    """Expected frequency and standard deviation for one subwindow.

    Both use the weighted trial totals, so the underlying success
    probability stays within [0, 1].  Raises ValueError for an empty
    subwindow, which callers skip.
    """
    trials = index.weighted_subwindow_totals[subwindow]
    if trials == 0:
        raise ValueError(f"subwindow {subwindow} holds no tweets")
    p = window_probability(index, stats)
    expected = trials * p
    return expected, math.sqrt(trials * p * (1.0 - p))


def burst_probability(frequency: float, expected: float, sigma: float) -> float:
    """Logistic burst score: 0.5 exactly at one sigma above expectation."""
    if sigma <= 0.0:
        raise ValueError("sigma must be positive")
    x = 10.0 * (frequency - (expected + sigma)) / sigma
    if x >= 0.0:
        return 1.0 / (1.0 + math.exp(-x))
    grown = math.exp(x)
    return grown / (1.0 + grown)


def segment_weight(probability: float, users: int, retweets: int, followers: int) -> float:
    """Burst probability scaled by smoothed audience factors.

    Every factor uses log1p so zero counts zero out the weight instead of
    producing a math domain error.
    """
    return (
        probability
        * math.log1p(users)
        * math.log1p(retweets)
        * math.log1p(math.log1p(followers))
    )


def _ceil_sqrt(n: int) -> int:
    root = math.isqrt(n)
    return root if root * root == n else root + 1


def extract_bursty(index: SegmentIndex) -> list[BurstScore]:
    """Score and rank bursty segments, keeping the top ceil(sqrt(N_t)).

    A segment is bursty when some subwindow frequency strictly exceeds its
    expectation; its burst probability is the maximum over those subwindows
    and ties pick the earliest one.  Segments observed in every weighted
    trial are saturated and never bursty.  Ranking is by weight descending,
    ties by segment text ascending.  Raises NoBurstActivityError when the
    window has no bursty segment at all.
    """
    scores: list[BurstScore] = []
    for text in sorted(index.stats):
        stats = index.stats[text]
        if window_probability(index, stats) >= 1.0:
            continue
        best: tuple[float, int] | None = None
        for m in range(index.subwindows):
            if index.weighted_subwindow_totals[m] == 0 or stats.f_sub[m] == 0:
                continue
            expected, sigma = expected_and_sigma(index, stats, m)
            if stats.f_sub[m] > expected:
                prob = burst_probability(stats.f_sub[m], expected, sigma)
                if best is None or prob > best[0]:
                    best = (prob, m)
        if best is None:
            continue
        probability, subwindow = best
        weight = segment_weight(
            probability, len(stats.users), stats.rc_sum, stats.fc_sum
        )
        scores.append(BurstScore(text, subwindow, probability, weight))

    if not scores:
        raise NoBurstActivityError("no burst activity in window")

    scores.sort(key=lambda score: (-score.weight, score.segment))
    return scores[: _ceil_sqrt(index.corpus.total)]
