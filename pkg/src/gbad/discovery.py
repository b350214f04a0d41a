"""Substructure discovery: instance matching, pattern extension, beam search.

A pattern matches a region of an example graph through an injective vertex
mapping.  The quality of a candidate mapping is its transformation cost,
counting unit operations: relabel a vertex (+1), relabel an edge (+1), a
pattern edge absent from the example (+1), a surplus example edge on a
vertex pair the pattern constrains (+1), and an unmapped pattern vertex
(+1, plus +1 per pattern edge incident to it).  Example edges on pairs the
pattern says nothing about are free context; they feed extension analysis
instead of the cost.

Discovery runs a beam search over single-vertex seeds, growing patterns one
edge at a time through extensions realized by actual instances, scoring
each candidate by how well compressing its exact instances shrinks the
database (see mdl.mdl_score).
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .graphs import Edge, Graph, GraphDatabase, Label, Vertex
from .mdl import LabelUniverse, MdlScore, matched_edge_indices, mdl_score_from_counts

_EMPTY = Counter()


class EmptyDatabaseError(ValueError):
    """Discovery needs at least one example graph."""


@dataclass(frozen=True)
class DiscoveryParams:
    """Search knobs for substructure discovery."""

    beam_width: int = 4
    max_pattern_vertices: int = 10
    num_best: int = 3
    iterations: int = 1

    def __post_init__(self) -> None:
        for name in ("beam_width", "max_pattern_vertices", "num_best", "iterations"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")


@dataclass(frozen=True)
class Instance:
    """An embedding of a pattern into one example.

    ``vertex_map`` holds (pattern vertex id, example vertex id) pairs sorted
    by pattern id; vertices the embedding could not place are simply absent.
    ``cost`` is the transformation cost of the mapping (0 = exact).
    """

    example_index: int
    vertex_map: tuple[tuple[int, int], ...]
    cost: int

    @cached_property
    def mapping(self) -> dict[int, int]:
        return dict(self.vertex_map)

    @cached_property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(ev for _, ev in self.vertex_map)


@dataclass(frozen=True)
class Substructure:
    """A candidate pattern with its exact instances and MDL score."""

    pattern: Graph
    instances: tuple[Instance, ...]
    score: MdlScore


@dataclass(frozen=True)
class DeviationOp:
    """One unit transformation separating a candidate mapping from the pattern."""

    op: str  # relabel_vertex | relabel_edge | missing_edge | extra_edge | missing_vertex | insert_vertex | insert_edge
    element: str
    old_label: Label | None = None
    new_label: Label | None = None


def _is_connected(g: Graph) -> bool:
    if not g.vertices:
        return False
    nbrs: dict[int, set[int]] = {v.id: set() for v in g.vertices}
    for e in g.edges:
        if e.src in nbrs and e.dst in nbrs:
            nbrs[e.src].add(e.dst)
            nbrs[e.dst].add(e.src)
    seen = {g.vertices[0].id}
    queue = deque(seen)
    while queue:
        u = queue.popleft()
        for w in nbrs[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return len(seen) == len(g.vertices)


def _pattern_pairs(pattern: Graph) -> dict[tuple[int, int], Counter]:
    pairs: dict[tuple[int, int], Counter] = {}
    for e in pattern.edges:
        pairs.setdefault((e.src, e.dst), Counter())[e.label] += 1
    return pairs


def _pair_cost(required: Counter, req_total: int, present: Counter) -> int:
    """Unit cost between the label multisets of one ordered vertex pair."""
    if not req_total:
        return 0
    inter = sum(min(c, present.get(lbl, 0)) for lbl, c in required.items())
    return max(req_total, sum(present.values())) - inter


def deviation_ops(pattern: Graph, example: Graph, mapping: dict[int, int]) -> tuple[DeviationOp, ...]:
    """Unit operations separating ``mapping`` from an exact embedding.

    The mapping may cover only a subset of the pattern's vertices but must
    be injective.  Operations are reported in pattern coordinates in a
    deterministic order (vertices first, then ordered vertex pairs).
    """
    if len(set(mapping.values())) != len(mapping):
        raise ValueError("vertex mapping must be injective")
    for ev in mapping.values():
        if ev not in example.label_of:
            raise ValueError(f"mapped vertex {ev} does not exist in example {example.example_index}")

    ops: list[DeviationOp] = []
    for u in sorted(pattern.vertex_ids):
        if u not in mapping:
            ops.append(DeviationOp("missing_vertex", f"vertex {u}", old_label=pattern.label_of[u]))
        else:
            pl, el = pattern.label_of[u], example.label_of[mapping[u]]
            if pl != el:
                ops.append(DeviationOp("relabel_vertex", f"vertex {u}", old_label=pl, new_label=el))

    for (u, v), required in sorted(_pattern_pairs(pattern).items()):
        element = f"edge {u}->{v}"
        if u not in mapping or v not in mapping:
            for lbl in sorted(required.elements()):
                ops.append(DeviationOp("missing_edge", element, old_label=lbl))
            continue
        present = example.pair_labels.get((mapping[u], mapping[v]), _EMPTY)
        inter = required & present
        req_left = sorted((required - inter).elements())
        pres_left = sorted((present - inter).elements())
        for old, new in zip(req_left, pres_left):
            ops.append(DeviationOp("relabel_edge", element, old_label=old, new_label=new))
        for old in req_left[len(pres_left):]:
            ops.append(DeviationOp("missing_edge", element, old_label=old))
        for new in pres_left[len(req_left):]:
            ops.append(DeviationOp("extra_edge", element, new_label=new))

    return tuple(ops)


def transformation_cost(pattern: Graph, example: Graph, mapping: dict[int, int]) -> int:
    """Total unit cost of a candidate embedding (0 iff label- and edge-exact)."""
    return len(deviation_ops(pattern, example, mapping))


class _PatternMeta:
    """Search-order bookkeeping shared by every example scan for one pattern."""

    def __init__(self, pattern: Graph) -> None:
        if not pattern.vertices:
            raise ValueError("pattern must have at least one vertex")
        if not _is_connected(pattern):
            raise ValueError("pattern must be connected")
        self.pattern = pattern

        deg = pattern.degree
        nbrs: dict[int, set[int]] = {v.id: set() for v in pattern.vertices}
        for e in pattern.edges:
            if e.src != e.dst:
                nbrs[e.src].add(e.dst)
                nbrs[e.dst].add(e.src)

        root = min(pattern.vertex_ids, key=lambda v: (-deg[v], v))
        order = [root]
        placed = {root}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in sorted(nbrs[u]):
                if w not in placed:
                    placed.add(w)
                    order.append(w)
                    queue.append(w)
        self.order = order
        pos = {v: i for i, v in enumerate(order)}
        self.labels = [pattern.label_of[v] for v in order]

        n = len(order)
        loop_counts: list[dict[str, int]] = [dict() for _ in range(n)]
        # specs[i]: edges between order[i] and an earlier vertex, grouped per
        # earlier position j as (j, labels later->earlier, total, reverse, total)
        spec_map: list[dict[int, tuple[dict, dict]]] = [dict() for _ in range(n)]
        for (u, v), labels in _pattern_pairs(pattern).items():
            if u == v:
                for lbl, c in labels.items():
                    loop_counts[pos[u]][lbl] = loop_counts[pos[u]].get(lbl, 0) + c
                continue
            i, j = pos[u], pos[v]
            later, earlier = (i, j) if i > j else (j, i)
            out, inc = spec_map[later].setdefault(earlier, ({}, {}))
            target = out if pos[u] == later else inc
            for lbl, c in labels.items():
                target[lbl] = target.get(lbl, 0) + c

        self.self_loops: list[tuple[dict[str, int], int] | None] = []
        self.specs: list[tuple[tuple[int, dict, int, dict, int], ...]] = []
        self.missing_charge: list[int] = []
        for i in range(n):
            loops = loop_counts[i]
            self.self_loops.append((loops, sum(loops.values())) if loops else None)
            entries = []
            incident = sum(loops.values())
            for j in sorted(spec_map[i]):
                out, inc = spec_map[i][j]
                ot, it = sum(out.values()), sum(inc.values())
                entries.append((j, out, ot, inc, it))
                incident += ot + it
            self.specs.append(tuple(entries))
            self.missing_charge.append(1 + incident)


def _match_example(meta: _PatternMeta, g: Graph, max_cost: int) -> list[tuple[dict[int, int], int]]:
    """All candidate mappings with cost <= max_cost, deduplicated and made
    vertex-disjoint by the greedy lowest-cost-first, earliest-vertex rule."""
    n = len(meta.order)
    img: list[int | None] = [None] * n
    used: set[int] = set()
    raw: dict[frozenset[int], tuple[int, tuple[tuple[int, int], ...], dict[int, int]]] = {}
    order = meta.order
    labels = meta.labels
    specs = meta.specs
    self_loops = meta.self_loops
    missing_charge = meta.missing_charge
    pair_counts = g.pair_counts
    pair_totals = g.pair_totals
    label_of = g.label_of
    by_label = g.vertices_by_label
    adjacency = g.adjacency
    all_ids = g.all_vertex_ids

    def pair_cost(req: dict, req_total: int, pair: tuple[int, int]) -> int:
        if not req_total:
            return 0  # pairs the pattern does not constrain are free context
        present_total = pair_totals.get(pair)
        if present_total is None:
            return req_total
        present = pair_counts[pair]
        inter = 0
        for lbl, c in req.items():
            p = present.get(lbl, 0)
            inter += p if p < c else c
        top = req_total if req_total > present_total else present_total
        return top - inter

    def exact_candidates(i: int):
        """Candidates when no budget is left: label-equal, anchored on a mapped neighbor."""
        entries = specs[i]
        if not entries:
            return by_label.get(labels[i], ())
        for entry in entries:
            if img[entry[0]] is None:
                return ()  # an edge to a missing vertex always costs
        anchor = img[entries[0][0]]
        want = labels[i]
        return tuple(
            dict.fromkeys(
                other for _, other, _, _ in adjacency[anchor] if label_of[other] == want
            )
        )

    def candidate_pool(i: int, remaining: int):
        """A superset of the vertices whose delta can still fit the budget.

        Edges to already-missing vertices charge every candidate equally
        (``base``); a candidate adjacent to no mapped neighbor additionally
        pays every mapped pair in full (``floor``), plus one for a label
        mismatch.
        """
        entries = specs[i]
        if not entries:
            return all_ids
        base = 0
        mapped_total = 0
        for j, _, ot, _, it in entries:
            if img[j] is None:
                base += ot + it
            else:
                mapped_total += ot + it
        if base > remaining:
            return ()
        floor = base + mapped_total
        if floor < remaining:
            return all_ids
        neighbors = [
            other
            for j, *_ in entries
            if img[j] is not None
            for _, other, _, _ in adjacency[img[j]]
        ]
        if floor == remaining:  # non-adjacent candidates fit only with an exact label
            neighbors.extend(by_label.get(labels[i], ()))
        return tuple(dict.fromkeys(neighbors))

    def resolve(i: int, cost: int) -> None:
        if i == n:
            if used:
                mapping = {order[k]: img[k] for k in range(n) if img[k] is not None}
                key = frozenset(mapping.values())
                entry = (cost, tuple(sorted(mapping.items())), mapping)
                prev = raw.get(key)
                if prev is None or entry[:2] < prev[:2]:
                    raw[key] = entry
            return

        remaining = max_cost - cost
        candidates = exact_candidates(i) if remaining == 0 else candidate_pool(i, remaining)
        want = labels[i]
        entries = specs[i]
        loops = self_loops[i]
        for w in candidates:
            if w in used:
                continue
            delta = 0 if label_of[w] == want else 1
            if delta > remaining:
                continue
            if loops is not None:
                delta += pair_cost(loops[0], loops[1], (w, w))
                if delta > remaining:
                    continue
            ok = True
            for j, out, ot, inc, it in entries:
                other = img[j]
                if other is None:
                    delta += ot + it
                else:
                    delta += pair_cost(out, ot, (w, other)) + pair_cost(inc, it, (other, w))
                if delta > remaining:
                    ok = False
                    break
            if not ok:
                continue
            img[i] = w
            used.add(w)
            resolve(i + 1, cost + delta)
            used.discard(w)
            img[i] = None

        if missing_charge[i] <= remaining:
            img[i] = None
            resolve(i + 1, cost + missing_charge[i])

    resolve(0, 0)

    chosen: list[tuple[dict[int, int], int]] = []
    occupied: set[int] = set()
    for key in sorted(raw, key=lambda k: (raw[k][0], tuple(sorted(k)), raw[k][1])):
        cost, _, mapping = raw[key]
        if key & occupied:
            continue
        occupied |= key
        chosen.append((mapping, cost))
    return chosen


def find_instances(db: GraphDatabase, pattern: Graph, max_cost: int = 0) -> list[Instance]:
    """All maximal-quality embeddings of ``pattern`` with cost <= ``max_cost``.

    At most one instance is kept per distinct set of example vertices, and
    overlapping candidates within an example are resolved greedily, lowest
    cost first with ties broken toward the earliest vertex ids, so the
    returned instances are vertex-disjoint within each example.
    """
    if max_cost < 0:
        raise ValueError("max_cost must be >= 0")
    meta = _PatternMeta(pattern)
    out: list[Instance] = []
    for g in db.examples:
        for mapping, cost in _match_example(meta, g, max_cost):
            out.append(Instance(g.example_index, tuple(sorted(mapping.items())), cost))
    return out


# ---------------------------------------------------------------------------
# Canonical forms


def _serialize(g: Graph, position: dict[int, int]) -> tuple:
    labels = tuple(lbl for _, lbl in sorted((position[v.id], v.label) for v in g.vertices))
    edges = tuple(sorted((position[e.src], position[e.dst], e.label) for e in g.edges))
    return (labels, edges)


@lru_cache(maxsize=65536)
def canonical_key(g: Graph) -> tuple:
    """A pure, deterministic canonical form: isomorphic patterns share a key.

    Iterated neighborhood refinement plus individualization on the first
    ambiguous cell; exhaustive for the small patterns discovery produces
    (bounded backtracking keeps pathological symmetric inputs cheap at the
    price of possibly splitting their isomorphism class).
    """
    if not g.vertices:
        return ((), ())
    vids = [v.id for v in g.vertices]
    out_nbrs: dict[int, list[tuple[str, int]]] = {v: [] for v in vids}
    in_nbrs: dict[int, list[tuple[str, int]]] = {v: [] for v in vids}
    for e in g.edges:
        out_nbrs[e.src].append((e.label, e.dst))
        in_nbrs[e.dst].append((e.label, e.src))

    def refine(colors: dict[int, int]) -> dict[int, int]:
        while True:
            sig = {
                v: (
                    colors[v],
                    tuple(sorted((lbl, colors[w]) for lbl, w in out_nbrs[v])),
                    tuple(sorted((lbl, colors[w]) for lbl, w in in_nbrs[v])),
                )
                for v in vids
            }
            ranks = {s: r for r, s in enumerate(sorted(set(sig.values())))}
            new = {v: ranks[sig[v]] for v in vids}
            if new == colors:
                return colors
            colors = new

    initial = {s: r for r, s in enumerate(sorted({g.label_of[v] for v in vids}))}
    colors = refine({v: initial[g.label_of[v]] for v in vids})

    best: list[tuple | None] = [None]
    budget = [2000]

    def search(colors: dict[int, int]) -> None:
        if budget[0] <= 0:
            return
        cells: dict[int, list[int]] = {}
        for v in vids:
            cells.setdefault(colors[v], []).append(v)
        target = next((c for c in sorted(cells) if len(cells[c]) > 1), None)
        if target is None:
            budget[0] -= 1
            position = {v: colors[v] for v in vids}
            ser = _serialize(g, position)
            if best[0] is None or ser < best[0]:
                best[0] = ser
            return
        for v in sorted(cells[target]):
            branched = dict(colors)
            for w in vids:
                branched[w] = branched[w] * 2 + (0 if w == v else 1)
            branched = refine(branched)
            search(branched)

    search(colors)
    assert best[0] is not None
    return best[0]


# ---------------------------------------------------------------------------
# Extensions


@dataclass(frozen=True)
class _ExtensionInfo:
    graph: Graph
    ops: tuple[DeviationOp, ...]
    cost: int
    description: str


def _extension_deltas(
    pattern: Graph, db: GraphDatabase, instances: list[Instance] | tuple[Instance, ...]
) -> dict[tuple, list[int]]:
    """Raw one-edge growth opportunities seen at each instance.

    Keys are delta tuples in pattern coordinates; values list the indices of
    the instances realizing them.
    """
    deltas: dict[tuple, list[int]] = {}
    for idx, inst in enumerate(instances):
        g = db.by_example_index[inst.example_index]
        mapping = inst.mapping
        image = inst.vertex_set
        inverse = {ev: pv for pv, ev in mapping.items()}
        matched = matched_edge_indices(pattern, g, mapping)
        for i, e in enumerate(g.edges):
            if i in matched:
                continue
            src_in, dst_in = e.src in image, e.dst in image
            if src_in and dst_in:
                delta = ("edge", inverse[e.src], inverse[e.dst], e.label)
            elif src_in:
                delta = ("vertex", inverse[e.src], "out", e.label, g.label_of[e.dst])
            elif dst_in:
                delta = ("vertex", inverse[e.dst], "in", e.label, g.label_of[e.src])
            else:
                continue
            carriers = deltas.setdefault(delta, [])
            if not carriers or carriers[-1] != idx:
                carriers.append(idx)
    return deltas


def _apply_delta(pattern: Graph, delta: tuple) -> _ExtensionInfo:
    if delta[0] == "edge":
        _, u, v, lbl = delta
        graph = Graph(
            example_index=pattern.example_index,
            vertices=pattern.vertices,
            edges=pattern.edges + (Edge(u, v, lbl),),
        )
        ops = (DeviationOp("insert_edge", f"edge {u}->{v}", new_label=lbl),)
        return _ExtensionInfo(graph, ops, 1, f'edge {u}->{v} "{lbl}"')
    _, anchor, direction, elbl, vlbl = delta
    new_id = max(pattern.vertex_ids) + 1
    edge = Edge(anchor, new_id, elbl) if direction == "out" else Edge(new_id, anchor, elbl)
    graph = Graph(
        example_index=pattern.example_index,
        vertices=pattern.vertices + (Vertex(new_id, vlbl),),
        edges=pattern.edges + (edge,),
    )
    arrow = f"{anchor}->{new_id}" if direction == "out" else f"{new_id}->{anchor}"
    ops = (
        DeviationOp("insert_vertex", f"vertex {new_id}", new_label=vlbl),
        DeviationOp("insert_edge", f"edge {arrow}", new_label=elbl),
    )
    return _ExtensionInfo(graph, ops, 2, f'vertex "{vlbl}" via edge {arrow} "{elbl}"')


def _extensions(
    pattern: Graph, db: GraphDatabase, instances: list[Instance] | tuple[Instance, ...]
) -> list[tuple[_ExtensionInfo, list[int]]]:
    """Deduplicated extensions with the instance indices that carry each one."""
    merged: dict[tuple, tuple[_ExtensionInfo, list[int]]] = {}
    for delta, carriers in sorted(_extension_deltas(pattern, db, instances).items()):
        info = _apply_delta(pattern, delta)
        key = canonical_key(info.graph)
        if key in merged:
            existing = merged[key][1]
            merged[key] = (merged[key][0], sorted(set(existing) | set(carriers)))
        else:
            merged[key] = (info, list(carriers))
    return [merged[key] for key in sorted(merged)]


def extend(pattern: Graph, db: GraphDatabase) -> list[Graph]:
    """Every one-edge growth of ``pattern`` realized by an exact instance.

    The added edge may run between two existing pattern vertices or attach
    one new vertex; isomorphic duplicates are merged.  Patterns without
    exact instances yield no extensions.
    """
    instances = find_instances(db, pattern, 0)
    return [info.graph for info, _ in _extensions(pattern, db, instances)]


# ---------------------------------------------------------------------------
# Beam search


def _rank_key(sub: Substructure) -> tuple:
    return (
        sub.score.total,
        -len(sub.instances),
        sub.pattern.vertex_count,
        canonical_key(sub.pattern),
    )


def _discover_once(db: GraphDatabase, params: DiscoveryParams) -> list[Substructure]:
    universe = LabelUniverse.of_database(db)

    def score(pattern: Graph) -> Substructure:
        instances = tuple(find_instances(db, pattern, 0))
        return Substructure(pattern, instances, mdl_score_from_counts(db, pattern, instances, universe))

    seeds = [
        Graph(example_index=1, vertices=(Vertex(1, lbl),), edges=())
        for lbl in sorted(db.vertex_labels)
    ]
    if not seeds:
        return []

    best: dict[tuple, Substructure] = {}
    for seed in seeds:
        best[canonical_key(seed)] = score(seed)

    seen = set(best)
    beam = sorted(best.values(), key=_rank_key)[: params.beam_width]

    # The beam runs until no member extends (the size cap filters growth):
    # stopping at the first non-improving generation can miss optima whose
    # intermediate prefixes score worse than an earlier plateau.
    while True:
        candidates: dict[tuple, Graph] = {}
        for sub in beam:
            if not sub.instances:
                continue
            for info, _ in _extensions(sub.pattern, db, sub.instances):
                if info.graph.vertex_count > params.max_pattern_vertices:
                    continue
                key = canonical_key(info.graph)
                if key in seen or key in candidates:
                    continue
                candidates[key] = info.graph
        if not candidates:
            break

        generation = []
        for key in sorted(candidates):
            sub = score(candidates[key])
            seen.add(key)
            best[key] = sub
            generation.append(sub)

        beam = sorted(generation, key=_rank_key)[: params.beam_width]

    return sorted(best.values(), key=_rank_key)[: params.num_best]


def discover(db: GraphDatabase, params: DiscoveryParams | None = None) -> list[Substructure]:
    """Ranked list of the most compressing substructures in the database.

    Runs the beam search and returns up to ``num_best`` substructures in
    ascending score order (ties: more instances, then fewer vertices, then
    smallest canonical label sequence).  With ``iterations > 1`` the search
    re-runs on the database compressed by each round's best pattern, and
    later rounds' results are appended after the first round's ranking.
    """
    if params is None:
        params = DiscoveryParams()
    if db.example_count == 0:
        raise EmptyDatabaseError("cannot discover patterns in an empty database")

    from .mdl import compress  # local import keeps module load order simple

    results: list[Substructure] = []
    current = db
    for iteration in range(1, params.iterations + 1):
        ranked = _discover_once(current, params)
        results.extend(ranked)
        if iteration == params.iterations:
            break
        if not ranked or not ranked[0].instances:
            break
        current = compress(current, ranked[0], rank=iteration)
    return results
