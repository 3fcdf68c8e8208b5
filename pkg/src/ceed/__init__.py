"""Event detection for microblog streams.

Pipeline stages: ingest a tweet window, segment tweets against a titles
lexicon, score bursty segments, cluster them into events, filter events by
eventworthiness, relate event pairs, and track topic evolution inside each
event.
"""

from .burst import BurstScore, NoBurstActivityError, extract_bursty
from .crossevent import CrossEventMatrix, cross_matrix
from .events import (
    ClusterGraph,
    DocumentFrequencies,
    EventCluster,
    SimilarityMatrix,
    SimilarityModel,
    build_events,
    eventworthiness,
    filter_events,
    jarvis_patrick,
    newsworthiness,
)
from .ingest import (
    Corpus,
    EmptyWindowError,
    RawTweetRecord,
    RecordError,
    Tweet,
    WindowConfig,
    build_corpus,
    load_records,
    normalize_text,
    parse_tweet,
)
from .lexicon import (
    LexiconError,
    TitlesLexicon,
    build_lexicon,
    load_lexicon,
    save_lexicon,
)
from .pipeline import (
    ConfigError,
    NoEventsError,
    PipelineConfig,
    ReportBundle,
    emit_reports,
    run_pipeline,
)
from .segment import (
    Segment,
    SegmentIndex,
    SegmentStats,
    build_index,
    default_stopwords,
    load_stopwords,
    segment_tweet,
)
from .topics import TopicCluster, TopicTimeline, evolve

__version__ = "0.1.0"

__all__ = [
    "BurstScore",
    "ClusterGraph",
    "ConfigError",
    "Corpus",
    "CrossEventMatrix",
    "DocumentFrequencies",
    "EmptyWindowError",
    "EventCluster",
    "LexiconError",
    "NoBurstActivityError",
    "NoEventsError",
    "PipelineConfig",
    "RawTweetRecord",
    "RecordError",
    "ReportBundle",
    "Segment",
    "SegmentIndex",
    "SegmentStats",
    "SimilarityMatrix",
    "SimilarityModel",
    "TitlesLexicon",
    "TopicCluster",
    "TopicTimeline",
    "Tweet",
    "WindowConfig",
    "build_corpus",
    "build_events",
    "build_index",
    "build_lexicon",
    "cross_matrix",
    "default_stopwords",
    "emit_reports",
    "eventworthiness",
    "evolve",
    "extract_bursty",
    "filter_events",
    "jarvis_patrick",
    "load_lexicon",
    "load_records",
    "load_stopwords",
    "newsworthiness",
    "normalize_text",
    "parse_tweet",
    "run_pipeline",
    "save_lexicon",
    "segment_tweet",
    "__version__",
]
