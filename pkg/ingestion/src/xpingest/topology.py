"""Building the fixed article topology from tagged tokens.

Every article graph has the same shape: a News root, an in-line hub, one
category vertex per populated category, and the selected tokens as leaves,
all edges labeled "has".  Categories with no tokens are omitted entirely.
Vertex ids go spine first, then category vertices in fixed order, then
leaves grouped per category in first-occurrence order, which matches the
id layout of the canonical sample instance.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .lexicon import select_sentiment_verbs
from .models import TaggedToken, TopologyConfig

CATEGORY_ORDER = ("Person", "Organization", "Location", "Verb", "Noun")

_ENTITY_CATEGORY = {"PERSON": "Person", "ORGANIZATION": "Organization", "LOCATION": "Location"}


@dataclass(frozen=True)
class Graph:
    """A built conceptual graph, ready to serialize as one XP example."""

    vertices: tuple[tuple[int, str], ...]  # (id, label)
    edges: tuple[tuple[int, int, str], ...]  # (src, dst, label)

    @property
    def is_empty(self) -> bool:
        return not self.vertices


def _leaf_label(token: TaggedToken, config: TopologyConfig) -> str:
    if token.entity != "NONE":
        return token.text  # named entities keep their surface form
    return token.text.lower() if config.lowercase_labels else token.text


def select_tokens(
    tokens: Sequence[TaggedToken],
    config: TopologyConfig,
    lexicon: Mapping[str, str],
) -> dict[str, list[str]]:
    """Pick the leaf labels per category.

    Entity tags take precedence over part of speech; verbs must carry
    lexicon sentiment; remaining nouns land under Noun.  Each category
    keeps at most ``max_tokens_per_category`` distinct labels, highest
    occurrence count first with ties broken by first appearance, and the
    survivors stay in first-appearance order.
    """
    sentiment_verbs = {t.text for t in select_sentiment_verbs(tokens, lexicon)}

    # label -> [category, count, first position]
    stats: dict[tuple[str, str], list] = {}
    for position, token in enumerate(tokens):
        if token.entity in _ENTITY_CATEGORY:
            category = _ENTITY_CATEGORY[token.entity]
        elif token.pos == "VERB":
            if token.text not in sentiment_verbs:
                continue
            category = "Verb"
        elif token.pos == "NOUN":
            category = "Noun"
        else:
            continue
        label = _leaf_label(token, config)
        entry = stats.setdefault((category, label), [category, 0, position])
        entry[1] += 1

    selected: dict[str, list[str]] = {}
    for category in CATEGORY_ORDER:
        entries = [
            (label, count, first)
            for (cat, label), (_, count, first) in stats.items()
            if cat == category
        ]
        entries.sort(key=lambda e: (-e[1], e[2]))
        kept = entries[: config.max_tokens_per_category]
        kept.sort(key=lambda e: e[2])
        if kept:
            selected[category] = [label for label, _, _ in kept]
    return selected


def build_graph_from_tokens(tokens_by_category: Mapping[str, Sequence[str]]) -> Graph:
    vertices: list[tuple[int, str]] = []
    edges: list[tuple[int, int, str]] = []
    populated = [c for c in CATEGORY_ORDER if tokens_by_category.get(c)]
    if not populated:
        return Graph((), ())

    vertices.append((1, "News"))
    vertices.append((2, "in-line"))
    edges.append((1, 2, "has"))

    category_id: dict[str, int] = {}
    next_id = 3
    for category in populated:
        category_id[category] = next_id
        vertices.append((next_id, category))
        edges.append((2, next_id, "has"))
        next_id += 1

    for category in populated:
        for label in tokens_by_category[category]:
            vertices.append((next_id, label))
            edges.append((category_id[category], next_id, "has"))
            next_id += 1

    return Graph(tuple(vertices), tuple(edges))


def build_conceptual_graph(
    article,
    tagged_tokens: Sequence[TaggedToken],
    config: TopologyConfig,
    lexicon: Mapping[str, str],
) -> Graph:
    """The article's conceptual graph; empty when nothing was selected."""
    return build_graph_from_tokens(select_tokens(tagged_tokens, config, lexicon))


def graph_to_xp_lines(example_index: int, graph: Graph) -> Iterable[str]:
    yield f"XP # {example_index}"
    for vid, label in graph.vertices:
        yield f'v {vid} "{label}"'
    for src, dst, label in graph.edges:
        yield f'e {src} {dst} "{label}"'
