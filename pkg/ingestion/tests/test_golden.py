"""The golden test: a fixture CSV plus the lookup tagger reproduces the
canonical one-article XP block byte-identically, and everything emitted is
a valid, shallow, "has"-labeled tree by the graph library's own checks."""
from __future__ import annotations

from collections import deque

from conftest import TABLE1_TEXT
from gbad.graphs import parse_graph_file, validate_graph
from xpingest.pipeline import ingest


def test_reproduces_canonical_block(golden_csv, golden_tagger):
    assert ingest(golden_csv, tagger=golden_tagger) == TABLE1_TEXT


def test_emitted_graphs_validate(golden_csv, golden_tagger):
    db = parse_graph_file(ingest(golden_csv, tagger=golden_tagger))
    assert db.example_count == 1
    for g in db.examples:
        assert validate_graph(g) == []


def _depth_of_tree(g) -> int:
    children: dict[int, list[int]] = {v.id: [] for v in g.vertices}
    indegree = {v.id: 0 for v in g.vertices}
    for e in g.edges:
        children[e.src].append(e.dst)
        indegree[e.dst] += 1
    roots = [vid for vid, deg in indegree.items() if deg == 0]
    assert roots == [1], "tree must be rooted at the News vertex"
    assert all(deg <= 1 for deg in indegree.values()), "not a tree"
    depth = {1: 0}
    queue = deque([1])
    while queue:
        u = queue.popleft()
        for w in children[u]:
            depth[w] = depth[u] + 1
            queue.append(w)
    assert len(depth) == g.vertex_count, "tree must reach every vertex"
    return max(depth.values())


def test_topology_conformance(golden_csv, golden_tagger):
    db = parse_graph_file(ingest(golden_csv, tagger=golden_tagger))
    for g in db.examples:
        assert g.vertices[0].label == "News"
        assert all(e.label == "has" for e in g.edges)
        assert _depth_of_tree(g) <= 3


def test_determinism(golden_csv, golden_tagger):
    first = ingest(golden_csv, tagger=golden_tagger)
    second = ingest(golden_csv, tagger=golden_tagger)
    assert first == second
