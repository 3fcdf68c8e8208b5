"""Phrase lexicon built from page titles and anchor-text statistics.

The on-disk artifact is a small container: an 8-byte magic string, one
version byte, then zlib-compressed UTF-8 JSON holding the maximum phrase
length, the sorted title list, and the anchor-probability table.
"""

from __future__ import annotations

import json
import logging
import zlib
from dataclasses import dataclass, field
from typing import Mapping

from .ingest import _plain_tokens

logger = logging.getLogger(__name__)

MAGIC = b"CEEDLEX\x00"
VERSION = 1

DEFAULT_MAX_LEN = 5


class LexiconError(RuntimeError):
    """Unreadable, corrupt, or incompatible lexicon artifact."""


def normalize_phrase(text: str) -> str:
    """Canonical lexicon key: lowercase word tokens joined by single spaces."""
    return " ".join(_plain_tokens(text))


@dataclass(frozen=True)
class TitlesLexicon:
    """Query-only phrase dictionary; lookups never mutate state."""

    titles: frozenset[str]
    anchors: Mapping[str, float] = field(default_factory=dict)
    max_len: int = DEFAULT_MAX_LEN

    def lookup(self, phrase: str) -> bool:
        """True when the normalized phrase is a known title of <= max_len tokens."""
        if phrase.count(" ") >= self.max_len:
            return False
        return phrase in self.titles

    def anchor_prob(self, phrase: str) -> float:
        """Prior probability that the phrase appears as link anchor text."""
        return self.anchors.get(phrase, 0.0)


def build_lexicon(titles_file, anchors_file, out_path, max_len: int = DEFAULT_MAX_LEN) -> TitlesLexicon:
    """Compile title and anchor files into a persisted lexicon artifact.

    ``titles_file`` holds one title per line.  ``anchors_file`` holds
    tab-separated ``phrase<TAB>link_count<TAB>occurrence_count`` rows; the
    anchor probability is link_count / occurrence_count clamped to [0, 1].
    Rows with zero occurrence count are skipped with a diagnostic.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")

    titles: set[str] = set()
    with open(titles_file, "r", encoding="utf-8") as handle:
        for line in handle:
            phrase = normalize_phrase(line)
            if phrase and phrase.count(" ") < max_len:
                titles.add(phrase)

    anchors: dict[str, float] = {}
    with open(anchors_file, "r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            parts = line.rstrip("\n").split("\t")
            if len(parts) != 3:
                logger.warning("anchors line %d: expected 3 tab-separated fields", lineno)
                continue
            try:
                links = int(parts[1])
                occurrences = int(parts[2])
            except ValueError:
                logger.warning("anchors line %d: counts must be integers", lineno)
                continue
            if occurrences == 0:
                logger.warning("anchors line %d: zero occurrence count, skipped", lineno)
                continue
            phrase = normalize_phrase(parts[0])
            if not phrase or phrase.count(" ") >= max_len:
                continue
            anchors[phrase] = min(1.0, max(0.0, links / occurrences))

    lexicon = TitlesLexicon(titles=frozenset(titles), anchors=anchors, max_len=max_len)
    save_lexicon(lexicon, out_path)
    return lexicon


def save_lexicon(lexicon: TitlesLexicon, path) -> None:
    payload = {
        "max_len": lexicon.max_len,
        "titles": sorted(lexicon.titles),
        "anchors": {key: lexicon.anchors[key] for key in sorted(lexicon.anchors)},
    }
    blob = zlib.compress(json.dumps(payload, sort_keys=True).encode("utf-8"))
    with open(path, "wb") as handle:
        handle.write(MAGIC)
        handle.write(bytes([VERSION]))
        handle.write(blob)


def load_lexicon(path) -> TitlesLexicon:
    """Load a persisted lexicon; raises LexiconError on any mismatch."""
    try:
        with open(path, "rb") as handle:
            raw = handle.read()
    except OSError as exc:
        raise LexiconError(f"cannot read lexicon {path}: {exc}") from exc
    if len(raw) < len(MAGIC) + 1 or not raw.startswith(MAGIC):
        raise LexiconError(f"{path} is not a lexicon artifact (bad magic header)")
    version = raw[len(MAGIC)]
    if version != VERSION:
        raise LexiconError(f"unsupported lexicon version {version}, expected {VERSION}")
    try:
        payload = json.loads(zlib.decompress(raw[len(MAGIC) + 1 :]).decode("utf-8"))
    except (zlib.error, ValueError, UnicodeDecodeError) as exc:
        raise LexiconError(f"corrupt lexicon payload in {path}: {exc}") from exc
    return TitlesLexicon(
        titles=frozenset(payload["titles"]),
        anchors=dict(payload["anchors"]),
        max_len=int(payload["max_len"]),
    )
