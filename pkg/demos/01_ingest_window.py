"""Walk one observation window from raw JSON lines to an analysis corpus.

The fixture file holds 200 synthetic tweets spread over ten days of March
2025.  It deliberately includes retweet records and a couple of tweets
outside the window, so the build counts show every disposal path.
"""

from datetime import datetime, timezone
from pathlib import Path

from ceed import WindowConfig, build_corpus, load_records

ROOT = Path(__file__).resolve().parents[1]

records, parsed, skipped = load_records(ROOT / "data" / "tweets_200.jsonl")
print(f"parsed {parsed} lines ({skipped} malformed skipped)")

config = WindowConfig(
    start=datetime(2025, 3, 1, tzinfo=timezone.utc),
    end=datetime(2025, 3, 11, tzinfo=timezone.utc),
    subwindows=10,
)
corpus, counts = build_corpus(records, config)
print(
    f"kept {counts.kept} tweets, folded {counts.retweet_folded} retweets "
    f"into originals, dropped {counts.out_of_window} outside the window"
)

print("\ntweets per subwindow (one day each here):")
for m, n in enumerate(corpus.subwindow_counts):
    print(f"  {m:>2}  {'#' * n} {n}")

tweet = corpus.tweets[0]
print(f"\nfirst kept tweet {tweet.id} (subwindow {tweet.subwindow_index}):")
print("  tokens:", " ".join(token.text for token in tweet.tokens))
print(f"  contributing users: {len(tweet.users)}, retweets: {tweet.retweet_count}")
