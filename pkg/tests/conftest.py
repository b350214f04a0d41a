from __future__ import annotations

import pytest

from gbad.graphs import Graph, GraphDatabase, graph_from_lists
from gbad.synthetic import build_article_graph

# The canonical one-article example block: a News root, an in-line hub, five
# categories, and six token leaves (two under Noun).
TABLE1_TEXT = """XP # 1
v 1 "News"
v 2 "in-line"
v 3 "Person"
v 4 "Organization"
v 5 "Location"
v 6 "Verb"
v 7 "Noun"
v 8 "Andres"
v 9 "congress"
v 10 "Mexico"
v 11 "infected"
v 12 "corona"
v 13 "president"
e 1 2 "has"
e 2 3 "has"
e 2 4 "has"
e 2 5 "has"
e 2 6 "has"
e 2 7 "has"
e 3 8 "has"
e 4 9 "has"
e 5 10 "has"
e 6 11 "has"
e 7 12 "has"
e 7 13 "has"
"""

TABLE1_VERTEX_LABELS = (
    "News", "in-line", "Person", "Organization", "Location", "Verb", "Noun",
    "Andres", "congress", "Mexico", "infected", "corona", "president",
)

TABLE1_EDGES = (
    (1, 2), (2, 3), (2, 4), (2, 5), (2, 6), (2, 7),
    (3, 8), (4, 9), (5, 10), (6, 11), (7, 12), (7, 13),
)


@pytest.fixture
def table1_text() -> str:
    return TABLE1_TEXT


def triangle(example_index: int) -> Graph:
    return graph_from_lists(
        example_index,
        [(1, "A"), (2, "B"), (3, "C")],
        [(1, 2, "x"), (2, 3, "y"), (3, 1, "z")],
    )


def triangle_db(n: int = 3) -> GraphDatabase:
    return GraphDatabase(tuple(triangle(i) for i in range(1, n + 1)))


def copies_of(tokens: dict, n: int) -> list[Graph]:
    return [build_article_graph(i, tokens) for i in range(1, n + 1)]


def vaccine_corpus() -> GraphDatabase:
    """30 articles agreeing the vaccine was rejected, one claiming approval."""
    normative = {"Organization": ("fda",), "Verb": ("rejected",), "Noun": ("vaccine",)}
    deviant = {"Organization": ("fda",), "Verb": ("approved",), "Noun": ("vaccine",)}
    examples = copies_of(normative, 30) + [build_article_graph(31, deviant)]
    return GraphDatabase(tuple(examples))


def president_corpus() -> GraphDatabase:
    """30 articles reporting the president infected, one adding a negation vertex."""
    from gbad.graphs import Edge, Vertex

    tokens = {"Person": ("andres",), "Verb": ("infected",), "Noun": ("president", "corona")}
    examples = copies_of(tokens, 30)
    g = build_article_graph(31, tokens)
    # attach "not" to the Verb category vertex (id 4: after Person at 3)
    negated = Graph(
        example_index=31,
        vertices=g.vertices + (Vertex(g.vertex_count + 1, "not"),),
        edges=g.edges + (Edge(4, g.vertex_count + 1, "has"),),
    )
    return GraphDatabase(tuple(examples + [negated]))


def lawmakers_corpus() -> GraphDatabase:
    """30 articles where lawmakers criticized the vaccine maker, one crediting the government."""
    normative = {"Person": ("lawmakers",), "Organization": ("sinovac",), "Verb": ("criticized",)}
    deviant = {"Person": ("government",), "Organization": ("sinovac",), "Verb": ("criticized",)}
    examples = copies_of(normative, 30) + [build_article_graph(31, deviant)]
    return GraphDatabase(tuple(examples))
