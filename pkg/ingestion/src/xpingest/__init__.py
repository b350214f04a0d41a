"""CSV news corpora to XP conceptual-graph databases."""

from .lexicon import load_lexicon, parse_lexicon, select_sentiment_verbs, starter_lexicon
from .models import ArticleRecord, TaggedToken, TopologyConfig
from .pipeline import EmptyCorpusError, MissingColumnError, ingest, read_articles
from .tagging import LookupTagger, Tagger, TaggerUnavailable, spacy_tagger, tag_article
from .topology import Graph, build_conceptual_graph, build_graph_from_tokens, select_tokens

__all__ = [
    "ArticleRecord",
    "EmptyCorpusError",
    "Graph",
    "LookupTagger",
    "MissingColumnError",
    "TaggedToken",
    "Tagger",
    "TaggerUnavailable",
    "TopologyConfig",
    "build_conceptual_graph",
    "build_graph_from_tokens",
    "ingest",
    "load_lexicon",
    "parse_lexicon",
    "read_articles",
    "select_sentiment_verbs",
    "select_tokens",
    "spacy_tagger",
    "starter_lexicon",
    "tag_article",
]
