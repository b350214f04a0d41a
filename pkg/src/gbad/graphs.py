"""Labeled directed multigraphs and the XP graph-database text format.

An XP file is a sequence of examples.  Each example starts with a header
``XP # <n>`` and is followed by vertex and edge lines::

    XP # 1
    v 1 "News"
    v 2 "in-line"
    e 1 2 "has"

Fields are separated by one or more spaces, labels are double-quoted and
opaque (byte-exact comparison, spaces allowed inside).  Lines starting with
``%`` are comments; blank lines are ignored.  ``d`` is accepted as a synonym
for the directed edge line ``e``; undirected ``u`` lines are rejected because
nothing downstream defines undirected matching semantics.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

Label = str

# Placeholder labels of the form SUB_<k> are reserved for compression output
# and therefore rejected in input files.
RESERVED_LABEL_RE = re.compile(r"^SUB_\d+$")

_HEADER_RE = re.compile(r'^XP +# +(\d+)\s*$')
_VERTEX_RE = re.compile(r'^v +(\d+) +"(.*)"\s*$')
_EDGE_RE = re.compile(r'^([edu]) +(\d+) +(\d+) +"(.*)"\s*$')


class GraphFormatError(ValueError):
    """Parse error carrying the 1-based line number it was raised on."""

    def __init__(self, line_no: int, message: str) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no
        self.message = message


class MalformedLineError(GraphFormatError):
    pass


class DanglingEdgeError(GraphFormatError):
    pass


class DuplicateVertexIdError(GraphFormatError):
    pass


class DuplicateExampleIndexError(GraphFormatError):
    pass


class ReservedLabelError(GraphFormatError):
    pass


@dataclass(frozen=True)
class Vertex:
    id: int
    label: Label


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    label: Label


@dataclass(frozen=True)
class Graph:
    """One example graph: vertices, directed edges, and its XP number.

    Graphs are immutable after construction and safe to share across
    threads.  Parallel edges with identical (src, dst, label) are allowed
    and counted with multiplicity.
    """

    example_index: int
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def label_of(self) -> dict[int, Label]:
        return {v.id: v.label for v in self.vertices}

    @cached_property
    def vertex_ids(self) -> frozenset[int]:
        return frozenset(v.id for v in self.vertices)

    @cached_property
    def vertices_by_label(self) -> dict[Label, tuple[int, ...]]:
        by_label: dict[Label, list[int]] = {}
        for v in self.vertices:
            by_label.setdefault(v.label, []).append(v.id)
        return {lbl: tuple(ids) for lbl, ids in by_label.items()}

    @cached_property
    def adjacency(self) -> dict[int, tuple[tuple[int, int, Label, bool], ...]]:
        """id -> ((edge index, other endpoint, label, is_outgoing), ...)."""
        adj: dict[int, list[tuple[int, int, Label, bool]]] = {v.id: [] for v in self.vertices}
        for i, e in enumerate(self.edges):
            if e.src in adj:
                adj[e.src].append((i, e.dst, e.label, True))
            if e.dst in adj and e.dst != e.src:
                adj[e.dst].append((i, e.src, e.label, False))
        return {vid: tuple(entries) for vid, entries in adj.items()}

    @cached_property
    def pair_labels(self) -> dict[tuple[int, int], Counter]:
        """Multiset of edge labels per ordered (src, dst) pair."""
        pairs: dict[tuple[int, int], Counter] = {}
        for e in self.edges:
            pairs.setdefault((e.src, e.dst), Counter())[e.label] += 1
        return pairs

    @cached_property
    def pair_counts(self) -> dict[tuple[int, int], dict[Label, int]]:
        """Plain-dict view of pair_labels for hot matching loops."""
        return {pair: dict(counter) for pair, counter in self.pair_labels.items()}

    @cached_property
    def pair_totals(self) -> dict[tuple[int, int], int]:
        return {pair: sum(counter.values()) for pair, counter in self.pair_labels.items()}

    @cached_property
    def all_vertex_ids(self) -> tuple[int, ...]:
        return tuple(v.id for v in self.vertices)

    @cached_property
    def content_key(self) -> tuple:
        """Structure-only key: equal for examples that differ only in XP number."""
        return (self.vertices, self.edges)

    @cached_property
    def degree(self) -> dict[int, int]:
        deg = {v.id: 0 for v in self.vertices}
        for e in self.edges:
            if e.src in deg:
                deg[e.src] += 1
            if e.dst in deg:
                deg[e.dst] += 1
        return deg


@dataclass(frozen=True)
class GraphDatabase:
    """Ordered collection of example graphs parsed from one XP file."""

    examples: tuple[Graph, ...]

    @property
    def example_count(self) -> int:
        return len(self.examples)

    @cached_property
    def total_vertices(self) -> int:
        return sum(g.vertex_count for g in self.examples)

    @cached_property
    def total_edges(self) -> int:
        return sum(g.edge_count for g in self.examples)

    @cached_property
    def vertex_labels(self) -> frozenset[Label]:
        return frozenset(v.label for g in self.examples for v in g.vertices)

    @cached_property
    def edge_labels(self) -> frozenset[Label]:
        return frozenset(e.label for g in self.examples for e in g.edges)

    @cached_property
    def by_example_index(self) -> dict[int, Graph]:
        return {g.example_index: g for g in self.examples}


def parse_graph_file(text: str) -> GraphDatabase:
    """Parse XP text into a GraphDatabase.

    Vertex and edge lines attach to the most recent ``XP #`` header; their
    relative order within an example is free (an edge may reference a vertex
    declared later).  Vertices are stored sorted by id; edge order is
    preserved.  Every failure raises a GraphFormatError subclass positioned
    at the offending line.
    """
    examples: list[Graph] = []
    seen_indices: set[int] = set()

    cur_index: int | None = None
    cur_vertices: dict[int, Vertex] = {}
    cur_edges: list[Edge] = []
    cur_edge_lines: list[int] = []

    def close_example() -> None:
        if cur_index is None:
            return
        for edge, line_no in zip(cur_edges, cur_edge_lines):
            for endpoint in (edge.src, edge.dst):
                if endpoint not in cur_vertices:
                    raise DanglingEdgeError(
                        line_no,
                        f"edge {edge.src} {edge.dst} references vertex {endpoint} "
                        f"which has no v line in example {cur_index}",
                    )
        examples.append(
            Graph(
                example_index=cur_index,
                vertices=tuple(sorted(cur_vertices.values(), key=lambda v: v.id)),
                edges=tuple(cur_edges),
            )
        )

    # split on newlines only: splitlines() would also split on control
    # characters that are legal inside labels
    for line_no, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("%"):
            continue

        m = _HEADER_RE.match(line)
        if m:
            close_example()
            index = int(m.group(1))
            if index < 1:
                raise MalformedLineError(line_no, "example number must be >= 1")
            if index in seen_indices:
                raise DuplicateExampleIndexError(line_no, f"example number {index} already used")
            seen_indices.add(index)
            cur_index = index
            cur_vertices = {}
            cur_edges = []
            cur_edge_lines = []
            continue

        m = _VERTEX_RE.match(line)
        if m:
            if cur_index is None:
                raise MalformedLineError(line_no, "vertex line before any XP header")
            vid = int(m.group(1))
            label = m.group(2)
            if vid < 1:
                raise MalformedLineError(line_no, "vertex id must be >= 1")
            if not label:
                raise MalformedLineError(line_no, "vertex label must be non-empty")
            if RESERVED_LABEL_RE.match(label):
                raise ReservedLabelError(line_no, f'label "{label}" is reserved for compression')
            if vid in cur_vertices:
                raise DuplicateVertexIdError(line_no, f"vertex id {vid} already defined in example {cur_index}")
            cur_vertices[vid] = Vertex(vid, label)
            continue

        m = _EDGE_RE.match(line)
        if m:
            kind = m.group(1)
            if kind == "u":
                raise MalformedLineError(
                    line_no, 'undirected edges ("u") are not supported; use "e" or "d"'
                )
            if cur_index is None:
                raise MalformedLineError(line_no, "edge line before any XP header")
            src, dst = int(m.group(2)), int(m.group(3))
            label = m.group(4)
            if src < 1 or dst < 1:
                raise MalformedLineError(line_no, "edge endpoints must be >= 1")
            if not label:
                raise MalformedLineError(line_no, "edge label must be non-empty")
            if RESERVED_LABEL_RE.match(label):
                raise ReservedLabelError(line_no, f'label "{label}" is reserved for compression')
            cur_edges.append(Edge(src, dst, label))
            cur_edge_lines.append(line_no)
            continue

        raise MalformedLineError(line_no, f"unrecognized line: {line!r}")

    close_example()
    return GraphDatabase(examples=tuple(examples))


def write_graph_file(db: GraphDatabase) -> str:
    """Serialize a database back to XP text.

    Emits each example as its header, vertex lines in id order, then edge
    lines in original order.  ``parse_graph_file(write_graph_file(db))``
    reproduces ``db`` exactly for any database whose graphs keep vertices in
    id order (the form the parser itself produces).
    """
    lines: list[str] = []
    for g in db.examples:
        lines.append(f"XP # {g.example_index}")
        for v in sorted(g.vertices, key=lambda v: v.id):
            lines.append(f'v {v.id} "{v.label}"')
        for e in g.edges:
            lines.append(f'e {e.src} {e.dst} "{e.label}"')
    if not lines:
        return ""
    return "\n".join(lines) + "\n"


def validate_graph(g: Graph) -> list[str]:
    """Return a list of invariant violations, each naming the offending element.

    An empty list means the graph is valid: positive example number,
    unique contiguous vertex ids 1..V, non-empty labels, and every edge
    endpoint present.
    """
    violations: list[str] = []
    if g.example_index < 1:
        violations.append(f"example number {g.example_index} is not positive")

    seen: set[int] = set()
    for v in g.vertices:
        if v.id in seen:
            violations.append(f"duplicate vertex id {v.id}")
        seen.add(v.id)
        if v.id < 1:
            violations.append(f"vertex id {v.id} is not positive")
        if not v.label:
            violations.append(f"vertex {v.id} has an empty label")

    expected = set(range(1, len(g.vertices) + 1))
    if seen != expected:
        missing = sorted(expected - seen)
        extra = sorted(seen - expected)
        detail = []
        if missing:
            detail.append(f"missing {missing}")
        if extra:
            detail.append(f"unexpected {extra}")
        violations.append(f"vertex ids are not contiguous 1..{len(g.vertices)}: " + ", ".join(detail))

    for e in g.edges:
        for endpoint in (e.src, e.dst):
            if endpoint not in seen:
                violations.append(f'edge {e.src}->{e.dst} "{e.label}" has dangling endpoint {endpoint}')
        if not e.label:
            violations.append(f"edge {e.src}->{e.dst} has an empty label")

    return violations


def validate_database(db: GraphDatabase) -> list[str]:
    """Database-level validation: per-graph checks plus unique example numbers."""
    violations: list[str] = []
    seen: set[int] = set()
    for g in db.examples:
        for v in validate_graph(g):
            violations.append(f"example {g.example_index}: {v}")
        if g.example_index in seen:
            violations.append(f"duplicate example number {g.example_index}")
        seen.add(g.example_index)
    return violations


def graph_from_lists(
    example_index: int,
    vertices: Iterable[tuple[int, Label]],
    edges: Iterable[tuple[int, int, Label]] = (),
) -> Graph:
    """Convenience constructor from (id, label) and (src, dst, label) tuples."""
    return Graph(
        example_index=example_index,
        vertices=tuple(sorted((Vertex(i, l) for i, l in vertices), key=lambda v: v.id)),
        edges=tuple(Edge(s, d, l) for s, d, l in edges),
    )
