"""Relate detected events to each other across the window.

The synthetic planted corpus stages three stories: a flood, a relief
drive reacting to it with overlapping vocabulary and timing, and an
unrelated polling story later in the window.  The cross matrix should
tie flood and relief together and leave the polls alone.
"""

from datetime import datetime, timezone

from ceed import (
    DocumentFrequencies,
    WindowConfig,
    build_corpus,
    build_events,
    build_index,
    cross_matrix,
    default_stopwords,
    extract_bursty,
    filter_events,
    parse_tweet,
)
from ceed.synth import lexicon_from_rows, planted_corpus

lines, titles, anchor_rows, info = planted_corpus()
lexicon = lexicon_from_rows(titles, anchor_rows)
records = [parse_tweet(line) for line in lines]
config = WindowConfig(
    start=datetime(2025, 3, 1, tzinfo=timezone.utc),
    end=datetime(2025, 3, 11, tzinfo=timezone.utc),
)
corpus, _ = build_corpus(records, config)
index = build_index(corpus, lexicon, stopwords=default_stopwords())

events = filter_events(build_events(index, extract_bursty(index), lexicon), tau=4.0)
print(f"{len(events)} events detected in {corpus.total} tweets:")
for event in events:
    print(f"  {event.id}  {event.label:<18} segments={', '.join(event.segments)}")

relations = cross_matrix(events, index, DocumentFrequencies.from_index(index))
print("\ncross-correlation matrix (diagonal pinned at 1):")
header = "      " + "".join(f"{event_id:>8}" for event_id in relations.event_ids)
print(header)
for i, event_id in enumerate(relations.event_ids):
    row = "".join(f"{relations.alpha[i, j]:>8.4f}" for j in range(len(events)))
    print(f"{event_id:>6}{row}")

def planted_story(event) -> str:
    overlaps = {
        name: len(set(event.segments) & set(data["phrases"]))
        for name, data in info["events"].items()
    }
    return max(overlaps, key=lambda name: overlaps[name])


pairs = [
    (relations.alpha[i, j], i, j)
    for i in range(len(events))
    for j in range(i + 1, len(events))
]
value, i, j = max(pairs)
print(
    f"\nstrongest link: {events[i].id} ({planted_story(events[i])}) <-> "
    f"{events[j].id} ({planted_story(events[j])}) at {value:.4f}"
)
