"""Score segments for bursts of attention inside the window.

A segment is bursty when some subwindow holds clearly more occurrences
than a binomial spread of its window total would predict.  The burst
probability saturates through a sigmoid, and the ranking weight folds in
how many users the segment reached.
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
    extract_bursty,
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
print(
    f"{len(bursty)} bursty segments kept out of {len(index.stats)} indexed"
    " (ranking truncates at the square root of the corpus size)"
)
print(f"\n{'segment':<22} {'sub':>3} {'probability':>12} {'weight':>10}")
for score in bursty[:12]:
    print(
        f"{score.segment:<22} {score.bursty_subwindow:>3} "
        f"{score.probability:>12.6f} {score.weight:>10.3f}"
    )

# the same segment's occurrence profile, to see the spike the score found
lead = index.stats[bursty[0].segment]
print(f"\nper-subwindow occurrences of {lead.segment!r}:")
print(" ", lead.f_sub)
