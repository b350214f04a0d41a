"""Walkthrough: the three detectors, each on the anomaly kind it owns.

Thirty articles agree on a structure; one deviates. MDL catches the
relabeled verb, P catches the inserted negation, MPS catches the deleted
branch.
"""
from gbad import detect_mdl, detect_mps, detect_p, emit_report
from gbad.discovery import DiscoveryParams
from gbad.graphs import Edge, Graph, GraphDatabase, Vertex
from gbad.synthetic import build_article_graph

NORMATIVE = {"Person": ("president",), "Verb": ("infected",), "Noun": ("corona",)}
params = DiscoveryParams(max_pattern_vertices=13)


def corpus(deviant: Graph) -> GraphDatabase:
    return GraphDatabase(tuple(
        [build_article_graph(i, NORMATIVE) for i in range(1, 31)] + [deviant]
    ))


# modification: the verb flips
modified = build_article_graph(
    31, {"Person": ("president",), "Verb": ("recovered",), "Noun": ("corona",)}
)
print("== MDL on a relabeled verb ==")
print(emit_report(detect_mdl(corpus(modified), params), "text"))

# insertion: a negation vertex hangs off the Verb category
base = build_article_graph(31, NORMATIVE)
negated = Graph(
    31,
    base.vertices + (Vertex(base.vertex_count + 1, "not"),),
    base.edges + (Edge(4, base.vertex_count + 1, "has"),),
)
print("== P on an inserted negation ==")
print(emit_report(detect_p(corpus(negated), params), "text"))

# deletion: the Noun branch vanishes (leaf and its edge)
base = build_article_graph(31, NORMATIVE)
keep = [v for v in base.vertices if v.label != "corona"]
renum = {v.id: i + 1 for i, v in enumerate(keep)}
pruned = Graph(
    31,
    tuple(Vertex(renum[v.id], v.label) for v in keep),
    tuple(Edge(renum[e.src], renum[e.dst], e.label)
          for e in base.edges if renum.get(e.src) and renum.get(e.dst)),
)
print("== MPS on a deleted branch ==")
print(emit_report(detect_mps(corpus(pruned), params), "text"))
