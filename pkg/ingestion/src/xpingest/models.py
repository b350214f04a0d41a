"""Domain records for the article-to-graph pipeline."""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

POS_TAGS = ("VERB", "NOUN", "OTHER")
ENTITY_TAGS = ("PERSON", "ORGANIZATION", "LOCATION", "NONE")
SENTIMENTS = ("POSITIVE", "NEGATIVE", "NEUTRAL")


@dataclass(frozen=True)
class ArticleRecord:
    """One news article; ``source_label`` is ground-truth passthrough only."""

    id: str
    title: str
    body: str
    source_label: str | None = None

    def __post_init__(self) -> None:
        if not self.body.strip():
            raise ValueError(f"article {self.id!r}: body is empty after whitespace normalization")
        if self.source_label is not None and self.source_label not in ("real", "fake"):
            raise ValueError(f"article {self.id!r}: source_label must be 'real' or 'fake'")

    @property
    def text(self) -> str:
        """Title and body together; both contribute tokens."""
        return f"{self.title} {self.body}".strip()


@dataclass(frozen=True)
class TaggedToken:
    text: str
    pos: str = "OTHER"
    entity: str = "NONE"
    sentiment: str = "NEUTRAL"

    def __post_init__(self) -> None:
        if self.pos not in POS_TAGS:
            raise ValueError(f"unknown pos tag {self.pos!r}")
        if self.entity not in ENTITY_TAGS:
            raise ValueError(f"unknown entity tag {self.entity!r}")
        if self.sentiment not in SENTIMENTS:
            raise ValueError(f"unknown sentiment {self.sentiment!r}")


@dataclass(frozen=True)
class TopologyConfig:
    """Knobs for graph construction.

    ``lowercase_labels`` lowercases tokens selected by part of speech;
    named-entity tokens always keep their surface form (person and place
    names stay capitalized the way the article wrote them).
    """

    max_tokens_per_category: int = 3
    lowercase_labels: bool = True
    sentiment_lexicon_path: str | Path | None = None

    def __post_init__(self) -> None:
        if self.max_tokens_per_category < 1:
            raise ValueError("max_tokens_per_category must be >= 1")
