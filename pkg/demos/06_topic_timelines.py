"""Track how the conversation inside one event shifts over its lifetime.

The planted flood story starts with warning vocabulary and hands over to
damage vocabulary halfway through.  Slicing the event's own time span
into local subwindows and clustering its non-ubiquitous segments makes
that handoff visible as crossing popularity curves.
"""

from datetime import datetime, timezone

from ceed import (
    SimilarityModel,
    WindowConfig,
    build_corpus,
    build_events,
    build_index,
    default_stopwords,
    evolve,
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
model = SimilarityModel(index)

events = filter_events(
    build_events(index, extract_bursty(index), lexicon, model=model), tau=4.0
)
flood_words = set(info["events"]["flood"]["phrases"])
event = max(events, key=lambda e: len(set(e.segments) & flood_words))
print(f"following event {event.id} ({event.label!r}), {len(event.tweet_ids)} tweets")

timeline = evolve(event, index, model, subwindows=10)
print(f"{len(timeline.topics)} topics over {timeline.subwindows} local subwindows\n")
for topic in timeline.topics:
    print(f"topic {topic.topic_id}: {', '.join(topic.segments)}")
    curve = " ".join(f"{value:.2f}" for value in topic.popularity)
    bars = "".join("#" if value >= 0.25 else "." for value in topic.popularity)
    print(f"  share  {curve}")
    print(f"  trend  {bars}\n")

print("early vocabulary planted by the generator:", ", ".join(sorted(info["events"]["flood"]["early_topic"])))
print("late vocabulary planted by the generator: ", ", ".join(sorted(info["events"]["flood"]["late_topic"])))
