"""Tweet record parsing, text normalization, and corpus assembly."""

from __future__ import annotations

import json
import logging
import re
from dataclasses import dataclass
from datetime import datetime, timezone
from typing import Iterable, Mapping, NamedTuple, Sequence

logger = logging.getLogger(__name__)


class RecordError(ValueError):
    """A malformed input record; callers skip the line and count it."""


class EmptyWindowError(RuntimeError):
    """No tweets survive ingestion for the configured time window."""


class Token(NamedTuple):
    text: str
    from_hashtag: bool = False


@dataclass(frozen=True)
class RawTweetRecord:
    id: str
    text: str
    user_id: str
    user_name: str | None
    followers_count: int
    retweet_count: int
    created_at: datetime
    is_retweet: bool
    retweet_of: str | None


@dataclass(frozen=True)
class WindowConfig:
    """Half-open observation window [start, end) cut into equal subwindows."""

    start: datetime
    end: datetime
    subwindows: int = 10
    hashtag_weight: int = 3

    def __post_init__(self) -> None:
        object.__setattr__(self, "start", _as_utc(self.start))
        object.__setattr__(self, "end", _as_utc(self.end))
        if self.end <= self.start:
            raise ValueError("window end must be after window start")
        if self.subwindows < 1:
            raise ValueError("subwindow count must be at least 1")
        if self.hashtag_weight < 1:
            raise ValueError("hashtag weight must be at least 1")

    @property
    def span_seconds(self) -> int:
        return int((self.end - self.start).total_seconds())

    def subwindow_of(self, when: datetime) -> int:
        """Index of the subwindow containing ``when``; caller guarantees membership."""
        delta = int((_as_utc(when) - self.start).total_seconds())
        return min(self.subwindows - 1, delta * self.subwindows // self.span_seconds)


@dataclass(frozen=True)
class Tweet:
    id: str
    tokens: tuple[Token, ...]
    user_id: str
    retweet_count: int
    created_at: datetime
    subwindow_index: int
    # author plus everyone whose retweet was folded into this tweet
    users: frozenset[str]


@dataclass(frozen=True)
class Corpus:
    tweets: tuple[Tweet, ...]
    config: WindowConfig
    subwindow_counts: tuple[int, ...]
    user_followers: Mapping[str, int]

    @property
    def total(self) -> int:
        return len(self.tweets)


class BuildCounts(NamedTuple):
    kept: int
    retweet_folded: int
    out_of_window: int


def _as_utc(when: datetime) -> datetime:
    if when.tzinfo is None:
        return when.replace(tzinfo=timezone.utc)
    return when.astimezone(timezone.utc)


def parse_timestamp(value: str) -> datetime:
    """Parse an ISO-8601 timestamp; naive values are taken as UTC."""
    if not isinstance(value, str):
        raise RecordError(f"timestamp must be a string, got {type(value).__name__}")
    text = value.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    try:
        parsed = datetime.fromisoformat(text)
    except ValueError as exc:
        raise RecordError(f"unparsable timestamp {value!r}") from exc
    return _as_utc(parsed)


def _require_str(payload: Mapping, key: str) -> str:
    value = payload.get(key)
    if not isinstance(value, str) or not value:
        raise RecordError(f"field {key!r} must be a non-empty string")
    return value

def _text_field(payload: Mapping) -> str:
    value = payload.get("text", "")
    if not isinstance(value, str):
        raise RecordError("field 'text' must be a string")
    return value

def _optional_str(payload: Mapping, key: str) -> str | None:
    value = payload.get(key)
    if value is None:
        return None
    if not isinstance(value, str):
        raise RecordError(f"field {key!r} must be a string when present")
    return value

def _count(payload: Mapping, key: str) -> int:
    value = payload.get(key, 0)
    if isinstance(value, bool) or not isinstance(value, int) or value < 0:
        raise RecordError(f"field {key!r} must be a non-negative integer")
    return value


def parse_tweet(line: str) -> RawTweetRecord:
    """Parse one JSON record line into a RawTweetRecord.

    Raises RecordError on malformed input; the caller decides whether to
    abort or to skip the line with a diagnostic.
    """
    try:
        payload = json.loads(line)
    except json.JSONDecodeError as exc:
        raise RecordError(f"invalid JSON: {exc}") from exc
    if not isinstance(payload, dict):
        raise RecordError("record must be a JSON object")
    is_retweet = payload.get("is_retweet", False)
    if not isinstance(is_retweet, bool):
        raise RecordError("field 'is_retweet' must be a boolean")
    return RawTweetRecord(
        id=_require_str(payload, "id"),
        text=_text_field(payload),
        user_id=_require_str(payload, "user_id"),
        user_name=_optional_str(payload, "user_name"),
        followers_count=_count(payload, "followers_count"),
        retweet_count=_count(payload, "retweet_count"),
        created_at=parse_timestamp(payload.get("created_at", "")),
        is_retweet=is_retweet,
        retweet_of=_optional_str(payload, "retweet_of"),
    )


def load_records(path) -> tuple[list[RawTweetRecord], int, int]:
    """Read newline-delimited records from ``path``.

    Returns (records, parsed_line_count, skipped_line_count). Malformed or
    duplicate-id lines are skipped with a diagnostic, never fatal.
    """
    records: list[RawTweetRecord] = []
    seen: set[str] = set()
    parsed = 0
    skipped = 0
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            parsed += 1
            try:
                record = parse_tweet(line)
            except RecordError as exc:
                skipped += 1
                logger.warning("skipping line %d: %s", lineno, exc)
                continue
            if record.id in seen:
                skipped += 1
                logger.warning("skipping line %d: duplicate id %r", lineno, record.id)
                continue
            seen.add(record.id)
            records.append(record)
    return records, parsed, skipped


_URL_RE = re.compile(r"(?:https?://|www\.)\S+", re.IGNORECASE)
_NON_ASCII_RE = re.compile(r"[^\x00-\x7f]")
_TOKEN_RE = re.compile(r"@(\w+)|#(\w+)|([A-Za-z0-9']+)")
# camel-case pieces: an uppercase run followed by Upper+lower splits before
# the last uppercase letter, so "USAToday" -> USA / Today
_CAMEL_RE = re.compile(r"[A-Z]+(?=[A-Z][a-z])|[A-Z]?[a-z]+|[A-Z]+|[0-9]+")


def split_hashtag(body: str) -> list[str]:
    """Split a hashtag body on case and digit boundaries, lowercased."""
    return [piece.lower() for piece in _CAMEL_RE.findall(body)]


def _plain_tokens(text: str) -> list[str]:
    """Lowercase ASCII word tokens with no mention or hashtag handling."""
    cleaned = _NON_ASCII_RE.sub(" ", _URL_RE.sub(" ", text))
    out = []
    for match in _TOKEN_RE.finditer(cleaned):
        word = match.group(3)
        if word is None:
            continue
        word = word.replace("'", "").lower()
        if word:
            out.append(word)
    return out


def normalize_text(raw: str, mentions: Mapping[str, str] | None = None) -> list[Token]:
    """Turn raw tweet text into ordered lowercase ASCII tokens.

    URLs and non-ASCII characters are removed.  ``@handle`` is replaced by the
    matching display name from ``mentions`` (keys lowercased) or dropped when
    unknown.  Hashtags are split on case/digit boundaries and their pieces
    flagged as hashtag-origin.  Stop tokens are ordinary tokens here; the
    segmenter decides what to do with them.
    """
    cleaned = _NON_ASCII_RE.sub(" ", _URL_RE.sub(" ", raw))
    out: list[Token] = []
    for match in _TOKEN_RE.finditer(cleaned):
        handle, tag, word = match.groups()
        if handle is not None:
            name = mentions.get(handle.lower()) if mentions else None
            if name:
                out.extend(Token(piece) for piece in _plain_tokens(name))
        elif tag is not None:
            out.extend(Token(piece, from_hashtag=True) for piece in split_hashtag(tag))
        else:
            word = word.replace("'", "").lower()
            if word:
                out.append(Token(word))
    return out


def build_corpus(
    records: Iterable[RawTweetRecord], config: WindowConfig
) -> tuple[Corpus, BuildCounts]:
    """Assemble the analysis corpus for one observation window.

    Retweet records are never kept as tweets: each one adds to the original's
    aggregated retweet count and contributing-user set when the original is
    kept.  Non-retweets outside [start, end) are dropped.  Raises
    EmptyWindowError when nothing survives.
    """
    records = list(records)

    display_names: dict[str, str] = {}
    followers: dict[str, int] = {}
    for record in records:
        if record.user_name and record.user_id.lower() not in display_names:
            display_names[record.user_id.lower()] = record.user_name
        prev = followers.get(record.user_id)
        # max over observations: stable under record reordering
        if prev is None or record.followers_count > prev:
            followers[record.user_id] = record.followers_count

    kept_records: list[RawTweetRecord] = []
    extra_retweets: dict[str, int] = {}
    extra_users: dict[str, set[str]] = {}
    folded = 0
    out_of_window = 0
    for record in records:
        if record.is_retweet:
            folded += 1
            if record.retweet_of:
                extra_retweets[record.retweet_of] = extra_retweets.get(record.retweet_of, 0) + 1
                extra_users.setdefault(record.retweet_of, set()).add(record.user_id)
        elif config.start <= record.created_at < config.end:
            kept_records.append(record)
        else:
            out_of_window += 1

    if not kept_records:
        raise EmptyWindowError("empty window: no tweets inside the configured interval")

    tweets: list[Tweet] = []
    subwindow_counts = [0] * config.subwindows
    for record in kept_records:
        index = config.subwindow_of(record.created_at)
        subwindow_counts[index] += 1
        tweets.append(
            Tweet(
                id=record.id,
                tokens=tuple(normalize_text(record.text, display_names)),
                user_id=record.user_id,
                retweet_count=record.retweet_count + extra_retweets.get(record.id, 0),
                created_at=record.created_at,
                subwindow_index=index,
                users=frozenset({record.user_id} | extra_users.get(record.id, set())),
            )
        )

    corpus = Corpus(
        tweets=tuple(tweets),
        config=config,
        subwindow_counts=tuple(subwindow_counts),
        user_followers=followers,
    )
    return corpus, BuildCounts(len(tweets), folded, out_of_window)
