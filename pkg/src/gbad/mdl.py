"""Description-length scoring and instance compression.

The description length of a graph (or database) is

    DL = lg(V + 1) + V * lg(Lv) + E * (2 * lg(V + 1) + lg(Le))

where V and E are total vertex/edge counts across the input, Lv and Le are
the numbers of distinct vertex/edge labels in the database under analysis,
and lg is log base 2 (lg 1 = 0, empty graph = 0 bits).  This is a simple
count-prefix + per-element encoding rather than an adjacency-matrix code;
it is auditable by hand and preserves the compression ranking that drives
pattern discovery.

Label universes (Lv, Le) are computed once over the whole database and held
fixed while comparing candidate compressions, so all scores share a common
footing; the fresh ``SUB_<k>`` placeholder label introduced by compression
is deliberately not counted.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Protocol, Sequence

from .graphs import Edge, Graph, GraphDatabase, Vertex

Bits = float


class OverlappingInstancesError(ValueError):
    """Two instances in one example share a vertex; compression needs disjoint instances."""


def placeholder_label(rank: int) -> str:
    """Reserved label substituted for each compressed instance."""
    return f"SUB_{rank}"


@dataclass(frozen=True)
class LabelUniverse:
    """Distinct vertex/edge label counts that fix the DL encoding alphabet."""

    vertex_labels: int
    edge_labels: int

    @classmethod
    def of_graph(cls, g: Graph) -> "LabelUniverse":
        return cls(
            vertex_labels=len({v.label for v in g.vertices}),
            edge_labels=len({e.label for e in g.edges}),
        )

    @classmethod
    def of_database(cls, db: GraphDatabase) -> "LabelUniverse":
        return cls(vertex_labels=len(db.vertex_labels), edge_labels=len(db.edge_labels))


@dataclass(frozen=True)
class MdlScore:
    """Score of a substructure: DL of the compressed database plus DL of the pattern."""

    dl_g_given_s: Bits
    dl_s: Bits
    total: Bits

    def __post_init__(self) -> None:
        for name in ("dl_g_given_s", "dl_s", "total"):
            value = getattr(self, name)
            if not (value >= 0.0 and math.isfinite(value)):
                raise ValueError(f"{name} must be finite and non-negative, got {value}")
        if self.total != self.dl_g_given_s + self.dl_s:
            raise ValueError("total must equal dl_g_given_s + dl_s exactly")

    @classmethod
    def of(cls, dl_g_given_s: Bits, dl_s: Bits) -> "MdlScore":
        return cls(dl_g_given_s=dl_g_given_s, dl_s=dl_s, total=dl_g_given_s + dl_s)


class SubstructureLike(Protocol):
    """Anything carrying a pattern graph and its instances (see discovery.Substructure)."""

    @property
    def pattern(self) -> Graph: ...

    @property
    def instances(self) -> Sequence["InstanceLike"]: ...


class InstanceLike(Protocol):
    @property
    def example_index(self) -> int: ...

    @property
    def mapping(self) -> Mapping[int, int]: ...


def _dl(v: int, e: int, universe: LabelUniverse) -> Bits:
    lg = math.log2
    bits = lg(v + 1)
    if v:
        bits += v * lg(universe.vertex_labels)
    if e:
        bits += e * (2 * lg(v + 1) + lg(universe.edge_labels))
    return bits


def description_length(g: Graph | GraphDatabase, universe: LabelUniverse | None = None) -> Bits:
    """Bits needed to encode a graph or a whole database.

    When ``universe`` is omitted the label alphabet is taken from the input
    itself; pass the analysis database's universe explicitly when comparing
    candidate compressions.
    """
    if isinstance(g, GraphDatabase):
        v, e = g.total_vertices, g.total_edges
        if universe is None:
            universe = LabelUniverse.of_database(g)
    else:
        v, e = g.vertex_count, g.edge_count
        if universe is None:
            universe = LabelUniverse.of_graph(g)
    return _dl(v, e, universe)


def matched_edge_indices(pattern: Graph, example: Graph, mapping: Mapping[int, int]) -> frozenset[int]:
    """Indices of the example edges that realize the pattern's edges under ``mapping``.

    For each ordered pattern pair the first matching example edges (in edge
    order) are taken, one per required label occurrence, so the result is
    deterministic even with parallel edges.
    """
    required: dict[tuple[int, int], Counter] = {}
    for e in pattern.edges:
        if e.src in mapping and e.dst in mapping:
            required.setdefault((mapping[e.src], mapping[e.dst]), Counter())[e.label] += 1

    matched: set[int] = set()
    if not required:
        return frozenset()
    for i, e in enumerate(example.edges):
        need = required.get((e.src, e.dst))
        if need and need[e.label] > 0:
            need[e.label] -= 1
            matched.add(i)
    return frozenset(matched)


def compress(db: GraphDatabase, sub: SubstructureLike, rank: int = 1) -> GraphDatabase:
    """Replace every instance of ``sub`` with a single placeholder vertex.

    Within each example the instance's matched edges are deleted and its
    vertices collapse into one fresh vertex labeled ``SUB_<rank>``; every
    other edge touching an instance vertex is re-attached to the placeholder
    (an unmatched edge between two instance vertices becomes a self-loop,
    one between two different instances becomes a placeholder-to-placeholder
    edge), preserving direction and label.  Vertex ids are renumbered to
    stay contiguous; untouched examples are passed through unchanged.
    """
    by_example: dict[int, list[InstanceLike]] = {}
    for inst in sub.instances:
        by_example.setdefault(inst.example_index, []).append(inst)

    label = placeholder_label(rank)
    new_examples: list[Graph] = []
    for g in db.examples:
        insts = by_example.get(g.example_index)
        if not insts:
            new_examples.append(g)
            continue

        member_of: dict[int, int] = {}
        for k, inst in enumerate(insts):
            for vid in inst.mapping.values():
                if vid in member_of:
                    raise OverlappingInstancesError(
                        f"example {g.example_index}: vertex {vid} belongs to two instances"
                    )
                member_of[vid] = k

        deleted: set[int] = set()
        for inst in insts:
            deleted |= matched_edge_indices(sub.pattern, g, inst.mapping)

        # Survivors keep their relative order; each placeholder sits at the
        # position of its instance's smallest original vertex id.
        order: list[tuple[int, int | None, str]] = []
        for v in sorted(g.vertices, key=lambda v: v.id):
            if v.id not in member_of:
                order.append((v.id, None, v.label))
        for k, inst in enumerate(insts):
            anchor = min(inst.mapping.values())
            order.append((anchor, k, label))
        order.sort(key=lambda t: t[0])

        new_id_of_vertex: dict[int, int] = {}
        new_id_of_instance: dict[int, int] = {}
        new_vertices: list[Vertex] = []
        for new_id, (anchor, inst_k, lbl) in enumerate(order, start=1):
            new_vertices.append(Vertex(new_id, lbl))
            if inst_k is None:
                new_id_of_vertex[anchor] = new_id
            else:
                new_id_of_instance[inst_k] = new_id
        for vid in member_of:
            new_id_of_vertex[vid] = new_id_of_instance[member_of[vid]]

        new_edges: list[Edge] = []
        for i, e in enumerate(g.edges):
            if i in deleted:
                continue
            new_edges.append(Edge(new_id_of_vertex[e.src], new_id_of_vertex[e.dst], e.label))

        new_examples.append(
            Graph(example_index=g.example_index, vertices=tuple(new_vertices), edges=tuple(new_edges))
        )

    return GraphDatabase(examples=tuple(new_examples))


def mdl_score(db: GraphDatabase, sub: SubstructureLike) -> MdlScore:
    """Total description length of the database compressed by ``sub`` plus the pattern itself.

    Lower is better: the substructure minimizing the total is the normative
    pattern.  Both terms use the uncompressed database's label universe.
    """
    universe = LabelUniverse.of_database(db)
    dl_s = description_length(sub.pattern, universe)
    dl_g = description_length(compress(db, sub), universe)
    return MdlScore.of(dl_g, dl_s)


def mdl_score_from_counts(
    db: GraphDatabase,
    pattern: Graph,
    instances: Sequence[InstanceLike],
    universe: LabelUniverse | None = None,
) -> MdlScore:
    """Arithmetic shortcut for exact instances, equal bit-for-bit to ``mdl_score``.

    Compressing k disjoint full embeddings of an n-vertex pattern removes
    k*(n-1) vertices and k*pattern-edge-count edges; nothing else changes
    the counts the DL formula reads.
    """
    if universe is None:
        universe = LabelUniverse.of_database(db)
    n = pattern.vertex_count
    v = db.total_vertices - len(instances) * (n - 1)
    e = db.total_edges - len(instances) * pattern.edge_count
    return MdlScore.of(_dl(v, e, universe), _dl(pattern.vertex_count, pattern.edge_count, universe))
