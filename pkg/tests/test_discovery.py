from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _oracles import best_score_by_enumeration, brute_force_cost, brute_force_instances
from conftest import TABLE1_TEXT, triangle, triangle_db
from gbad.discovery import (
    DiscoveryParams,
    EmptyDatabaseError,
    canonical_key,
    deviation_ops,
    discover,
    extend,
    find_instances,
    transformation_cost,
)
from gbad.graphs import Edge, Graph, GraphDatabase, Vertex, graph_from_lists, parse_graph_file


def _edge_db(normal: int, relabeled: int = 0) -> GraphDatabase:
    """n copies of A->B("has") plus m copies of A->C("has"), one per example."""
    examples = []
    for i in range(1, normal + 1):
        examples.append(graph_from_lists(i, [(1, "A"), (2, "B")], [(1, 2, "has")]))
    for i in range(normal + 1, normal + relabeled + 1):
        examples.append(graph_from_lists(i, [(1, "A"), (2, "C")], [(1, 2, "has")]))
    return GraphDatabase(tuple(examples))


_AB_PATTERN = graph_from_lists(1, [(1, "A"), (2, "B")], [(1, 2, "has")])


class TestTransformationCost:
    def test_exact_embedding_is_zero(self):
        g = triangle(1)
        assert transformation_cost(triangle(1), g, {1: 1, 2: 2, 3: 3}) == 0

    def test_single_vertex_relabel(self):
        g = graph_from_lists(1, [(1, "A"), (2, "C")], [(1, 2, "has")])
        assert transformation_cost(_AB_PATTERN, g, {1: 1, 2: 2}) == 1
        ops = deviation_ops(_AB_PATTERN, g, {1: 1, 2: 2})
        assert [op.op for op in ops] == ["relabel_vertex"]
        assert ops[0].old_label == "B" and ops[0].new_label == "C"

    def test_missing_vertex_with_two_incident_edges(self):
        pattern = graph_from_lists(
            1, [(1, "A"), (2, "B"), (3, "C")], [(1, 2, "x"), (3, 2, "y")]
        )
        g = graph_from_lists(1, [(1, "A"), (2, "C")], [])
        # vertex 2 absent: 1 (vertex) + 2 (its incident pattern edges)
        assert transformation_cost(pattern, g, {1: 1, 3: 2}) == 3

    def test_edge_relabel_costs_one(self):
        g = graph_from_lists(1, [(1, "A"), (2, "B")], [(1, 2, "xx")])
        assert transformation_cost(_AB_PATTERN, g, {1: 1, 2: 2}) == 1

    def test_extra_edge_on_required_pair_costs_one(self):
        g = graph_from_lists(1, [(1, "A"), (2, "B")], [(1, 2, "has"), (1, 2, "also")])
        assert transformation_cost(_AB_PATTERN, g, {1: 1, 2: 2}) == 1

    def test_unconstrained_pairs_are_free_context(self):
        # example has a back edge the pattern says nothing about
        g = graph_from_lists(1, [(1, "A"), (2, "B")], [(1, 2, "has"), (2, 1, "back")])
        assert transformation_cost(_AB_PATTERN, g, {1: 1, 2: 2}) == 0

    def test_non_injective_mapping_rejected(self):
        g = triangle(1)
        with pytest.raises(ValueError):
            transformation_cost(_AB_PATTERN, g, {1: 1, 2: 1})

    @given(st.data())
    @settings(max_examples=100, deadline=None)
    def test_matches_brute_force_cost(self, data):
        labels = ("A", "B", "C")
        elabels = ("x", "y")
        rng = random.Random(data.draw(st.integers(0, 10_000)))
        pn = rng.randint(1, 4)
        pattern = _random_connected(rng, pn, labels, elabels, 1, allow_parallel=True)
        en = rng.randint(1, 5)
        example = _random_connected(rng, en, labels, elabels, 1, allow_parallel=True)
        ids = [v.id for v in example.vertices]
        rng.shuffle(ids)
        mapped = rng.randint(0, min(pn, en))
        mapping = {pv: ev for pv, ev in zip(range(1, mapped + 1), ids[:mapped])}
        assert transformation_cost(pattern, example, mapping) == brute_force_cost(
            pattern, example, mapping
        )


def _random_connected(rng, n, labels, elabels, example_index, allow_parallel=False):
    vertices = [Vertex(i, rng.choice(labels)) for i in range(1, n + 1)]
    edges = []
    pairs = set()
    for i in range(2, n + 1):  # random tree spine keeps it connected
        parent = rng.randint(1, i - 1)
        src, dst = (parent, i) if rng.random() < 0.5 else (i, parent)
        edges.append(Edge(src, dst, rng.choice(elabels)))
        pairs.add((src, dst))
    for _ in range(rng.randint(0, 2)):  # occasional extra edge
        a, b = rng.randint(1, n), rng.randint(1, n)
        if not allow_parallel and (a, b) in pairs:
            continue
        pairs.add((a, b))
        edges.append(Edge(a, b, rng.choice(elabels)))
    return Graph(example_index, tuple(vertices), tuple(edges))


def _random_db(seed: int, max_examples: int = 5, max_vertices: int = 8) -> GraphDatabase:
    """Small random database with some planted repetition."""
    rng = random.Random(seed)
    labels = tuple("ABCDE"[: rng.randint(2, 4)])
    elabels = tuple("xy"[: rng.randint(1, 2)])
    count = rng.randint(2, max_examples)
    motif = _random_connected(rng, rng.randint(2, 4), labels, elabels, 1)
    examples = []
    for i in range(1, count + 1):
        if rng.random() < 0.5:
            g = Graph(i, motif.vertices, motif.edges)  # repeat the motif
        else:
            g = _random_connected(rng, rng.randint(1, max_vertices), labels, elabels, i)
        examples.append(Graph(i, g.vertices, g.edges))
    return GraphDatabase(tuple(examples))


class TestFindInstances:
    def test_single_news_vertex_in_table1(self):
        db = parse_graph_file(TABLE1_TEXT)
        pattern = graph_from_lists(1, [(1, "News")])
        instances = find_instances(db, pattern, 0)
        assert len(instances) == 1
        assert instances[0].mapping == {1: 1}
        assert instances[0].cost == 0

    def test_identity_embedding_of_whole_example(self):
        db = parse_graph_file(TABLE1_TEXT)
        instances = find_instances(db, db.examples[0], 0)
        assert len(instances) == 1
        assert instances[0].cost == 0
        assert instances[0].mapping == {i: i for i in range(1, 14)}

    def test_ten_exact_plus_one_relabel(self):
        db = _edge_db(normal=10, relabeled=1)
        instances = find_instances(db, _AB_PATTERN, max_cost=1)
        assert len(instances) == 11
        costs = [i.cost for i in instances]
        assert costs.count(0) == 10 and costs.count(1) == 1
        deviant = next(i for i in instances if i.cost == 1)
        assert deviant.example_index == 11
        expected = brute_force_instances(db, _AB_PATTERN, 1)
        assert [(i.example_index, i.mapping, i.cost) for i in instances] == expected

    def test_max_cost_zero_excludes_deviants(self):
        db = _edge_db(normal=10, relabeled=1)
        assert len(find_instances(db, _AB_PATTERN, 0)) == 10

    def test_greedy_prefers_lower_cost_on_overlap(self):
        # A->B and A->C share the A vertex; only the exact match survives
        g = graph_from_lists(1, [(1, "A"), (2, "B"), (3, "C")], [(1, 2, "has"), (1, 3, "has")])
        db = GraphDatabase((g,))
        instances = find_instances(db, _AB_PATTERN, max_cost=1)
        assert len(instances) == 1
        assert instances[0].cost == 0
        assert instances[0].mapping == {1: 1, 2: 2}

    def test_missing_leaf_found_at_budget_two(self):
        pattern = graph_from_lists(
            1, [(1, "A"), (2, "B"), (3, "C")], [(1, 2, "x"), (1, 3, "y")]
        )
        g = graph_from_lists(1, [(1, "A"), (2, "B")], [(1, 2, "x")])
        db = GraphDatabase((g,))
        assert find_instances(db, pattern, 1) == []
        instances = find_instances(db, pattern, 2)
        assert len(instances) == 1
        assert instances[0].cost == 2
        assert instances[0].mapping == {1: 1, 2: 2}

    def test_instance_costs_agree_with_transformation_cost(self):
        db = _random_db(7)
        pattern = graph_from_lists(1, [(1, "A"), (2, "B")], [(1, 2, "x")])
        for inst in find_instances(db, pattern, 2):
            example = db.by_example_index[inst.example_index]
            assert transformation_cost(pattern, example, inst.mapping) == inst.cost

    @pytest.mark.parametrize("max_cost", [0, 1, 2])
    @pytest.mark.parametrize("seed", range(12))
    def test_matches_brute_force(self, seed, max_cost):
        rng = random.Random(seed * 977 + max_cost)
        labels, elabels = ("A", "B", "C"), ("x", "y")
        pattern = _random_connected(rng, rng.randint(1, 3), labels, elabels, 1, allow_parallel=True)
        db = GraphDatabase(
            tuple(
                _random_connected(rng, rng.randint(1, 5), labels, elabels, i, allow_parallel=True)
                for i in range(1, rng.randint(2, 4))
            )
        )
        got = [(i.example_index, i.mapping, i.cost) for i in find_instances(db, pattern, max_cost)]
        assert got == brute_force_instances(db, pattern, max_cost)


class TestExtend:
    def test_news_vertex_has_single_extension(self):
        db = parse_graph_file(TABLE1_TEXT)
        pattern = graph_from_lists(1, [(1, "News")])
        exts = extend(pattern, db)
        assert len(exts) == 1
        ext = exts[0]
        assert {v.label for v in ext.vertices} == {"News", "in-line"}
        assert len(ext.edges) == 1 and ext.edges[0].label == "has"

    def test_inline_vertex_has_six_extensions(self):
        db = parse_graph_file(TABLE1_TEXT)
        pattern = graph_from_lists(1, [(1, "in-line")])
        exts = extend(pattern, db)
        assert len(exts) == 6
        outgoing = {g.edges[0].dst for g in exts if g.edges[0].src == 1}
        new_labels = sorted(
            g.vertices[1].label for g in exts if g.edges[0].src == 1
        )
        assert new_labels == ["Location", "Noun", "Organization", "Person", "Verb"]
        incoming = [g for g in exts if g.edges[0].dst == 1]
        assert len(incoming) == 1
        assert incoming[0].vertices[1].label == "News"

    def test_fully_matched_example_has_no_extensions(self):
        db = parse_graph_file(TABLE1_TEXT)
        assert extend(db.examples[0], db) == []

    def test_isomorphic_extensions_are_merged(self):
        # two identical B-children: one extension, not two
        g = graph_from_lists(1, [(1, "A"), (2, "B"), (3, "B")], [(1, 2, "x"), (1, 3, "x")])
        db = GraphDatabase((g,))
        pattern = graph_from_lists(1, [(1, "A")])
        assert len(extend(pattern, db)) == 1

    def test_internal_edge_extension(self):
        db = GraphDatabase((triangle(1),))
        path = graph_from_lists(1, [(1, "A"), (2, "B"), (3, "C")], [(1, 2, "x"), (2, 3, "y")])
        exts = extend(path, db)
        assert len(exts) == 1
        assert exts[0].vertex_count == 3
        assert exts[0].edge_count == 3  # the closing edge, not a new vertex


class TestCanonicalKey:
    def test_permutation_invariance(self):
        g1 = graph_from_lists(1, [(1, "A"), (2, "B"), (3, "C")], [(1, 2, "x"), (2, 3, "y")])
        g2 = graph_from_lists(1, [(1, "C"), (2, "A"), (3, "B")], [(2, 3, "x"), (3, 1, "y")])
        assert canonical_key(g1) == canonical_key(g2)

    def test_labels_distinguish(self):
        g1 = graph_from_lists(1, [(1, "A"), (2, "B")], [(1, 2, "x")])
        g2 = graph_from_lists(1, [(1, "A"), (2, "B")], [(1, 2, "y")])
        g3 = graph_from_lists(1, [(1, "A"), (2, "B")], [(2, 1, "x")])
        assert canonical_key(g1) != canonical_key(g2)
        assert canonical_key(g1) != canonical_key(g3)

    @given(st.integers(0, 2_000))
    @settings(max_examples=80, deadline=None)
    def test_random_relabelings_agree(self, seed):
        rng = random.Random(seed)
        g = _random_connected(rng, rng.randint(1, 6), ("A", "B"), ("x", "y"), 1)
        perm = list(range(1, g.vertex_count + 1))
        rng.shuffle(perm)
        mapping = {old: new for old, new in zip(range(1, g.vertex_count + 1), perm)}
        shuffled = Graph(
            1,
            tuple(sorted((Vertex(mapping[v.id], v.label) for v in g.vertices), key=lambda v: v.id)),
            tuple(Edge(mapping[e.src], mapping[e.dst], e.label) for e in g.edges),
        )
        assert canonical_key(g) == canonical_key(shuffled)


class TestDiscover:
    def test_empty_database_raises(self):
        with pytest.raises(EmptyDatabaseError):
            discover(GraphDatabase(()))

    def test_single_vertex_database(self):
        db = GraphDatabase((graph_from_lists(1, [(1, "A")]),))
        best = discover(db)[0]
        assert best.pattern.vertex_count == 1
        assert best.pattern.vertices[0].label == "A"
        assert len(best.instances) == 1

    def test_three_triangles_find_the_triangle(self):
        db = triangle_db(3)
        best = discover(db)[0]
        assert best.pattern.vertex_count == 3
        assert best.pattern.edge_count == 3
        assert len(best.instances) == 3
        assert best.score.total == pytest.approx(best_score_by_enumeration(db), abs=0)

    def test_table1_copies_keep_the_spine(self):
        base = parse_graph_file(TABLE1_TEXT).examples[0]
        db = GraphDatabase(tuple(Graph(i, base.vertices, base.edges) for i in range(1, 51)))
        best = discover(db)[0]
        labels = {v.id: v.label for v in best.pattern.vertices}
        spine = [
            (labels[e.src], labels[e.dst])
            for e in best.pattern.edges
            if labels[e.src] == "News" and labels[e.dst] == "in-line"
        ]
        assert spine == [("News", "in-line")]
        assert len(best.instances) == 50
        assert best.pattern.vertex_count == 10  # default size cap

    def test_five_copy_reduction_matches_enumeration(self):
        base = parse_graph_file(TABLE1_TEXT).examples[0]
        db = GraphDatabase(tuple(Graph(i, base.vertices, base.edges) for i in range(1, 6)))
        params = DiscoveryParams(beam_width=8, max_pattern_vertices=13, num_best=1)
        best = discover(db, params)[0]
        assert best.score.total == best_score_by_enumeration(db)

    def test_ranked_ascending_and_num_best(self):
        db = triangle_db(3)
        ranked = discover(db, DiscoveryParams(num_best=3))
        assert len(ranked) == 3
        totals = [s.score.total for s in ranked]
        assert totals == sorted(totals)

    def test_determinism_across_reconstructed_inputs(self):
        db1 = _random_db(3)
        db2 = GraphDatabase(tuple(Graph(g.example_index, g.vertices, g.edges) for g in db1.examples))
        params = DiscoveryParams(beam_width=3, num_best=3)
        assert discover(db1, params) == discover(db2, params)

    @pytest.mark.parametrize("seed", range(8))
    def test_beam_width_monotonicity(self, seed):
        db = _random_db(seed)
        best_totals = []
        for width in (1, 2, 4, 8):
            params = DiscoveryParams(beam_width=width, max_pattern_vertices=6, num_best=1)
            best_totals.append(discover(db, params)[0].score.total)
        for narrow, wide in zip(best_totals, best_totals[1:]):
            assert wide <= narrow + 1e-12

    @pytest.mark.parametrize("seed", range(10))
    def test_matches_exhaustive_enumeration_on_small_random(self, seed):
        db = _random_db(seed, max_examples=4, max_vertices=6)
        params = DiscoveryParams(beam_width=16, max_pattern_vertices=6, num_best=1)
        best = discover(db, params)[0]
        assert best.score.total == best_score_by_enumeration(db)

    def test_hierarchical_iterations_append_results(self):
        db = triangle_db(3)
        ranked = discover(db, DiscoveryParams(num_best=1, iterations=2))
        assert len(ranked) >= 1
        first = ranked[0]
        assert first.pattern.edge_count == 3  # iteration 1's best is unchanged
