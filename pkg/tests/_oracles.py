"""Independent brute-force references the unit tests check the library against.

Everything here favors obviousness over speed: exhaustive enumeration of
mappings and subgraphs, with costs recomputed from first principles rather
than through the library's search machinery.
"""
from __future__ import annotations

import itertools
from collections import Counter

from gbad.discovery import canonical_key, find_instances
from gbad.graphs import Graph, GraphDatabase, Vertex
from gbad.mdl import mdl_score


def brute_force_cost(pattern: Graph, example: Graph, mapping: dict[int, int]) -> int:
    """Unit-operation cost recomputed naively from the definition."""
    cost = 0
    plabel = {v.id: v.label for v in pattern.vertices}
    elabel = {v.id: v.label for v in example.vertices}

    for vid, lbl in plabel.items():
        if vid not in mapping:
            cost += 1  # missing vertex
        elif elabel[mapping[vid]] != lbl:
            cost += 1  # vertex relabel

    ppairs: dict[tuple[int, int], Counter] = {}
    for e in pattern.edges:
        ppairs.setdefault((e.src, e.dst), Counter())[e.label] += 1
    epairs: dict[tuple[int, int], Counter] = {}
    for e in example.edges:
        epairs.setdefault((e.src, e.dst), Counter())[e.label] += 1

    for (u, v), required in ppairs.items():
        if u not in mapping or v not in mapping:
            cost += sum(required.values())  # every edge at a missing endpoint is missing
            continue
        present = epairs.get((mapping[u], mapping[v]), Counter())
        overlap = sum((required & present).values())
        # unmatched pattern edges pair with unmatched example edges as
        # relabels; the remainder is missing (pattern side) or extra
        # (example side, on a pair the pattern constrains)
        cost += max(sum(required.values()), sum(present.values())) - overlap
    return cost


def brute_force_instances(
    db: GraphDatabase, pattern: Graph, max_cost: int
) -> list[tuple[int, dict[int, int], int]]:
    """Every embedding found by trying all injective partial assignments.

    Applies the same dedup-per-vertex-set and greedy disjoint selection
    rules as the contract states, producing (example_index, mapping, cost)
    triples in the library's output order.
    """
    pvids = [v.id for v in pattern.vertices]
    results: list[tuple[int, dict[int, int], int]] = []
    for g in db.examples:
        evids = [v.id for v in g.vertices]
        raw: dict[frozenset, tuple[int, tuple, dict]] = {}
        for assignment in itertools.product([None] + evids, repeat=len(pvids)):
            chosen = [a for a in assignment if a is not None]
            if not chosen or len(set(chosen)) != len(chosen):
                continue
            mapping = {p: a for p, a in zip(pvids, assignment) if a is not None}
            cost = brute_force_cost(pattern, g, mapping)
            if cost > max_cost:
                continue
            key = frozenset(chosen)
            entry = (cost, tuple(sorted(mapping.items())), mapping)
            if key not in raw or entry[:2] < raw[key][:2]:
                raw[key] = entry
        occupied: set[int] = set()
        for key in sorted(raw, key=lambda k: (raw[k][0], tuple(sorted(k)), raw[k][1])):
            cost, _, mapping = raw[key]
            if key & occupied:
                continue
            occupied |= key
            results.append((g.example_index, mapping, cost))
    return results


def _connected(vset: set[int], edges) -> bool:
    if not vset:
        return False
    nbrs = {v: set() for v in vset}
    for e in edges:
        nbrs[e.src].add(e.dst)
        nbrs[e.dst].add(e.src)
    start = next(iter(vset))
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for w in nbrs[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == vset


def enumerate_connected_patterns(db: GraphDatabase) -> list[Graph]:
    """All connected subgraphs occurring in the database, one per isomorphism class."""
    patterns: dict[tuple, Graph] = {}
    for g in db.examples:
        vids = [v.id for v in g.vertices]
        for r in range(1, len(vids) + 1):
            for vset in itertools.combinations(vids, r):
                vset_set = set(vset)
                internal = [
                    i
                    for i, e in enumerate(g.edges)
                    if e.src in vset_set and e.dst in vset_set
                ]
                for k in range(max(0, r - 1), len(internal) + 1):
                    for chosen in itertools.combinations(internal, k):
                        edges = [g.edges[i] for i in chosen]
                        if not _connected(vset_set, edges):
                            continue
                        renumber = {vid: i + 1 for i, vid in enumerate(vset)}
                        pattern = Graph(
                            example_index=1,
                            vertices=tuple(
                                Vertex(renumber[vid], g.label_of[vid]) for vid in vset
                            ),
                            edges=tuple(
                                type(e)(renumber[e.src], renumber[e.dst], e.label)
                                for e in edges
                            ),
                        )
                        patterns.setdefault(canonical_key(pattern), pattern)
    return list(patterns.values())


def best_score_by_enumeration(db: GraphDatabase) -> float:
    """Minimum MDL total over every connected pattern present in the database.

    Scoring goes through the literal compress-then-measure path, not the
    arithmetic shortcut the beam search uses, so search and scoring are
    checked along different routes.
    """
    best = None
    for pattern in enumerate_connected_patterns(db):
        instances = tuple(find_instances(db, pattern, 0))
        score = mdl_score(db, _SubLike(pattern, instances))
        if best is None or score.total < best:
            best = score.total
    assert best is not None
    return best


class _SubLike:
    def __init__(self, pattern: Graph, instances) -> None:
        self.pattern = pattern
        self.instances = instances
