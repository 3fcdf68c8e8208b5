"""Small builders shared by the test modules."""

from __future__ import annotations

import json
from datetime import datetime, timedelta, timezone

from ceed.events import EventCluster
from ceed.ingest import WindowConfig, build_corpus, parse_tweet
from ceed.lexicon import TitlesLexicon

DAY0 = datetime(2025, 3, 1, tzinfo=timezone.utc)


def window(days: int = 10, subwindows: int = 10, hashtag_weight: int = 3) -> WindowConfig:
    return WindowConfig(
        start=DAY0,
        end=DAY0 + timedelta(days=days),
        subwindows=subwindows,
        hashtag_weight=hashtag_weight,
    )


def at_day(day: float) -> str:
    return (DAY0 + timedelta(seconds=int(day * 86400))).strftime(
        "%Y-%m-%dT%H:%M:%SZ"
    )


_SERIAL = [0]


def record(text: str, **overrides) -> dict:
    """One JSONL tweet record with serial defaults; override any field."""
    _SERIAL[0] += 1
    payload = {
        "id": f"m{_SERIAL[0]:05d}",
        "text": text,
        "user_id": f"user{_SERIAL[0]:05d}",
        "followers_count": 50,
        "retweet_count": 0,
        "created_at": at_day(0.5),
        "is_retweet": False,
    }
    payload.update(overrides)
    return payload


def corpus_of(records: list[dict], config: WindowConfig | None = None):
    """Parse record dicts and build a corpus; returns (corpus, counts)."""
    parsed = [parse_tweet(json.dumps(item)) for item in records]
    return build_corpus(parsed, config if config is not None else window())


def eventful_rows() -> list[dict]:
    """One three-segment burst over background chatter; yields one event.

    Background tweets carry a single unique token each so they can never
    pair up, and burst tweets carry retweets so their weight is nonzero.
    """
    rows = []
    for i in range(24):
        rows.append(record(f"b{i:02d}x", created_at=at_day(0.1 + i * 0.4)))
    for i in range(6):
        rows.append(
            record(
                "storm surge ctx",
                created_at=at_day(5.05 + i * 0.07),
                retweet_count=2,
            )
        )
    return rows


def write_jsonl(path, rows, extra_lines=()):
    lines = [json.dumps(r) for r in rows] + list(extra_lines)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path


def pseudo_event(index, segments, event_id="EX", mu=1.0) -> EventCluster:
    """EventCluster over arbitrary indexed segments for direct unit checks."""
    ids = sorted(
        {
            tweet_id
            for text in segments
            for bucket in index.stats[text].tweet_ids
            for tweet_id in bucket
        }
    )
    return EventCluster(
        id=event_id,
        label=segments[0],
        segments=tuple(segments),
        pair_sims=(),
        tweet_ids=tuple(ids),
        eventworthiness=mu,
    )


def lexicon_of(
    titles=(), anchors: dict[str, float] | None = None, max_len: int = 5
) -> TitlesLexicon:
    return TitlesLexicon(
        titles=frozenset(titles),
        anchors=dict(anchors or {}),
        max_len=max_len,
    )
