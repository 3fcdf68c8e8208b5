"""Cluster bursty segments into events and keep the newsworthy ones.

Two bursty segments attract each other when they appear in the same
tweets during the same subwindows.  Shared-neighbor clustering over that
similarity leaves connected components; each component is scored and the
low scorers are dropped.
"""

import tempfile
from datetime import datetime, timezone
from pathlib import Path

from ceed import (
    WindowConfig,
    build_corpus,
    build_events,
    build_index,
    build_lexicon,
    default_stopwords,
    extract_bursty,
    filter_events,
    load_records,
)

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "data"

records, _, _ = load_records(DATA / "tweets_200.jsonl")
config = WindowConfig(
    start=datetime(2025, 3, 1, tzinfo=timezone.utc),
    end=datetime(2025, 3, 11, tzinfo=timezone.utc),
)
corpus, _ = build_corpus(records, config)
with tempfile.TemporaryDirectory() as scratch:
    lexicon = build_lexicon(
        DATA / "titles.txt", DATA / "anchors.tsv", Path(scratch) / "demo.lex"
    )
index = build_index(corpus, lexicon, stopwords=default_stopwords())
bursty = extract_bursty(index)

candidates = build_events(index, bursty, lexicon, k=4)
print(f"{len(candidates)} candidate events from {len(bursty)} bursty segments")
for event in candidates:
    print(
        f"  {event.id}  score={event.eventworthiness:.4f}  "
        f"tweets={len(event.tweet_ids)}  segments={', '.join(event.segments)}"
    )

kept = filter_events(candidates, tau=4.0)
print(
    f"\nkept {len(kept)} events within a factor 4 of the best score"
    f" (dropped {len(candidates) - len(kept)})"
)
for event in kept:
    print(f"  {event.id}  labelled {event.label!r}")
