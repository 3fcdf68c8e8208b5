"""Build a phrase lexicon and segment tweets against it.

Segmentation is greedy leftmost-longest: at every position the longest
known phrase wins, everything else falls back to single words, and stop
words are invisible to both sides.
"""

import tempfile
from datetime import datetime, timezone
from pathlib import Path

from ceed import (
    WindowConfig,
    build_corpus,
    build_index,
    build_lexicon,
    default_stopwords,
    load_records,
    normalize_text,
    segment_tweet,
)

ROOT = Path(__file__).resolve().parents[1]
DATA = ROOT / "data"

with tempfile.TemporaryDirectory() as scratch:
    lexicon = build_lexicon(
        DATA / "titles.txt", DATA / "anchors.tsv", Path(scratch) / "demo.lex"
    )
print(
    f"lexicon: {len(lexicon.titles)} phrases, {len(lexicon.anchors)} anchor"
    f" probabilities, phrases up to {lexicon.max_len} tokens"
)

stopwords = default_stopwords()
for raw in (
    "River levee failed overnight #FloodWatch",
    "Polling stations report record turnout in the city",
):
    tokens = normalize_text(raw)
    segments = segment_tweet(tokens, lexicon, stopwords=stopwords)
    print(f"\n{raw!r}")
    print("  ->", " | ".join(seg.text for seg in segments))

# index the whole fixture window to see corpus-level segment statistics
records, _, _ = load_records(DATA / "tweets_200.jsonl")
config = WindowConfig(
    start=datetime(2025, 3, 1, tzinfo=timezone.utc),
    end=datetime(2025, 3, 11, tzinfo=timezone.utc),
)
corpus, _ = build_corpus(records, config)
index = build_index(corpus, lexicon, stopwords=stopwords)

print(f"\nindexed {len(index.stats)} distinct segments across {corpus.total} tweets")
top = sorted(index.stats.values(), key=lambda s: (-s.f_window, s.segment))[:8]
print("most frequent segments (hashtag occurrences count extra):")
for stats in top:
    print(
        f"  {stats.segment:<22} f={stats.f_window:<4} "
        f"tweets={stats.tweet_count:<4} users={len(stats.users)}"
    )
