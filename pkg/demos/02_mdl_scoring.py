"""Walkthrough: description lengths and compression.

A pattern is judged by how small the database becomes once every one of
its instances collapses into a single placeholder vertex: the score is
DL(compressed database) + DL(pattern), in bits, and lower is better.
"""
from gbad import (
    GraphDatabase,
    compress,
    description_length,
    discover,
    find_instances,
    graph_from_lists,
    mdl_score,
    write_graph_file,
)
from gbad.discovery import Substructure
from gbad.mdl import mdl_score_from_counts

triangle = lambda i: graph_from_lists(
    i, [(1, "A"), (2, "B"), (3, "C")], [(1, 2, "x"), (2, 3, "y"), (3, 1, "z")]
)
db = GraphDatabase(tuple(triangle(i) for i in range(1, 4)))

print(f"database of 3 identical triangles: {description_length(db):.3f} bits")

pattern = triangle(1)
instances = tuple(find_instances(db, pattern, 0))
sub = Substructure(pattern, instances, mdl_score_from_counts(db, pattern, instances))
score = mdl_score(db, sub)
print(f"triangle pattern: DL(S) = {score.dl_s:.3f}, "
      f"DL(G|S) = {score.dl_g_given_s:.3f}, total = {score.total:.3f}")

print("\ncompressed database (one placeholder per instance):")
print(write_graph_file(compress(db, sub)))

best = discover(db)[0]
print(f"discovery agrees: best pattern has {best.pattern.vertex_count} vertices, "
      f"{best.pattern.edge_count} edges, total {best.score.total:.3f} bits")
