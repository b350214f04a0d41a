"""CSV corpus -> XP graph database.

One XP example per article, numbered contiguously in input order; articles
whose text selects no tokens at all (or with an empty body) are skipped
with a log line rather than emitted as empty graphs.
"""
from __future__ import annotations

import csv
import logging
from pathlib import Path

from .lexicon import load_lexicon, starter_lexicon
from .models import ArticleRecord, TopologyConfig
from .tagging import Tagger, tag_article
from .topology import build_conceptual_graph, graph_to_xp_lines

log = logging.getLogger("xpingest")

REQUIRED_COLUMNS = ("id", "title", "body")


class MissingColumnError(ValueError):
    pass


class EmptyCorpusError(ValueError):
    pass


def read_articles(csv_path: str | Path) -> list[ArticleRecord]:
    """Read the corpus, skipping articles with blank bodies (logged)."""
    with open(csv_path, newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames or []
        missing = [column for column in REQUIRED_COLUMNS if column not in header]
        if missing:
            raise MissingColumnError(f"{csv_path}: missing required column(s): {', '.join(missing)}")
        rows = list(reader)
    if not rows:
        raise EmptyCorpusError(f"{csv_path}: no article rows")

    articles = []
    for row in rows:
        if not (row["body"] or "").strip():
            log.info("skipping article %r: empty body", row["id"])
            continue
        articles.append(
            ArticleRecord(
                id=row["id"],
                title=row["title"] or "",
                body=row["body"],
                source_label=(row.get("label") or None),
            )
        )
    return articles


def ingest(
    csv_path: str | Path,
    config: TopologyConfig | None = None,
    *,
    tagger: Tagger,
) -> str:
    """Convert a corpus into XP text, one example per usable article."""
    config = config or TopologyConfig()
    if config.sentiment_lexicon_path is not None:
        lexicon = load_lexicon(config.sentiment_lexicon_path)
    else:
        lexicon = starter_lexicon()

    lines: list[str] = []
    example_index = 0
    for article in read_articles(csv_path):
        tokens = tag_article(article.text, tagger)
        graph = build_conceptual_graph(article, tokens, config, lexicon)
        if graph.is_empty:
            log.info("skipping article %r: no recognized entities, verbs, or nouns", article.id)
            continue
        example_index += 1
        lines.extend(graph_to_xp_lines(example_index, graph))

    if not lines:
        return ""
    return "\n".join(lines) + "\n"


def write_database(text: str, out_path: str | Path) -> None:
    Path(out_path).write_text(text, encoding="utf-8")
