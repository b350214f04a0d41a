"""Walkthrough: substructure discovery and instance matching.

Builds a small database of repeated article graphs, lets the beam search
find the dominant structure, and shows inexact matching at work.
"""
from gbad import DiscoveryParams, discover, find_instances, transformation_cost
from gbad.graphs import GraphDatabase, graph_from_lists
from gbad.synthetic import build_article_graph

tokens = {"Person": ("andres",), "Verb": ("infected",), "Noun": ("corona",)}
examples = [build_article_graph(i, tokens) for i in range(1, 11)]
# one article swapped its verb
examples.append(
    build_article_graph(11, {"Person": ("andres",), "Verb": ("recovered",), "Noun": ("corona",)})
)
db = GraphDatabase(tuple(examples))

ranked = discover(db, DiscoveryParams(num_best=3))
for rank, sub in enumerate(ranked, start=1):
    print(f"rank {rank}: {sub.pattern.vertex_count}v/{sub.pattern.edge_count}e, "
          f"{len(sub.instances)} instances, {sub.score.total:.2f} bits")

best = ranked[0]
print("\nbest pattern labels:", [v.label for v in best.pattern.vertices])

exact = find_instances(db, best.pattern, max_cost=0)
close = find_instances(db, best.pattern, max_cost=2)
print(f"exact instances: {len(exact)}; within cost 2: {len(close)}")

deviant = next(i for i in close if i.cost > 0)
example = db.by_example_index[deviant.example_index]
print(f"example {deviant.example_index} deviates with cost "
      f"{transformation_cost(best.pattern, example, deviant.mapping)}")
