"""Synthetic article-graph databases with injected structural anomalies.

Every normative example is an identical copy of the fixed article topology:
a News root, an in-line hub, one category vertex per populated category
(Person, Organization, Location, Verb, Noun), and the selected tokens as
leaves; all edges are labeled "has".  One normative labeling is drawn per
run, so the database has a single dominant pattern, and each injected
anomaly perturbs one example by exactly one kind: relabel a leaf
(modification), attach one extra vertex (insertion), or drop one leaf with
its edge (deletion).
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Mapping, Sequence

from .graphs import Edge, Graph, GraphDatabase, Vertex

CATEGORY_ORDER = ("Person", "Organization", "Location", "Verb", "Noun")

DEFAULT_LABEL_POOLS: dict[str, tuple[str, ...]] = {
    "Person": ("Andres", "Boris", "Carmen", "Dmitri", "Elena"),
    "Organization": ("congress", "senate", "ministry", "council"),
    "Location": ("Mexico", "Brazil", "Norway", "Kenya"),
    "Verb": ("infected", "rejected", "approved", "criticized"),
    "Noun": ("corona", "vaccine", "president", "lockdown", "economy"),
}

DEFAULT_INSERTION_POOL = ("not", "allegedly", "reportedly", "disputed")

ANOMALY_KINDS = ("modification", "insertion", "deletion")


@dataclass(frozen=True)
class SyntheticSpec:
    """What to generate: size, label pools, and the anomaly mix."""

    num_instances: int
    anomalies: tuple[tuple[str, int], ...] = ()
    label_pools: Mapping[str, tuple[str, ...]] | None = None
    insertion_pool: tuple[str, ...] = DEFAULT_INSERTION_POOL

    def __post_init__(self) -> None:
        if self.num_instances < 1:
            raise ValueError("num_instances must be >= 1")
        total = 0
        for kind, count in self.anomalies:
            if kind not in ANOMALY_KINDS:
                raise ValueError(f"unknown anomaly kind {kind!r}; expected one of {ANOMALY_KINDS}")
            if count < 0:
                raise ValueError("anomaly count must be >= 0")
            total += count
        if total >= self.num_instances:
            raise ValueError("anomaly count must be smaller than num_instances")

    @property
    def anomaly_kinds(self) -> list[str]:
        kinds: list[str] = []
        for kind, count in self.anomalies:
            kinds.extend([kind] * count)
        return kinds


@dataclass(frozen=True)
class AnomalyRecord:
    """Ground truth for one injected anomaly."""

    example_index: int
    kind: str
    detail: str


def build_article_graph(example_index: int, tokens: Mapping[str, Sequence[str]]) -> Graph:
    """The fixed topology: News -> in-line -> categories -> token leaves.

    Categories without tokens are omitted together with their vertex.  Ids
    are assigned spine-first, then category vertices in fixed order, then
    leaves grouped per category in token order.
    """
    vertices = [Vertex(1, "News"), Vertex(2, "in-line")]
    edges = [Edge(1, 2, "has")]
    next_id = 3

    category_ids: dict[str, int] = {}
    for category in CATEGORY_ORDER:
        if tokens.get(category):
            category_ids[category] = next_id
            vertices.append(Vertex(next_id, category))
            edges.append(Edge(2, next_id, "has"))
            next_id += 1

    for category in CATEGORY_ORDER:
        for token in tokens.get(category, ()):  # leaves keep token order
            vertices.append(Vertex(next_id, token))
            edges.append(Edge(category_ids[category], next_id, "has"))
            next_id += 1

    return Graph(example_index=example_index, vertices=tuple(vertices), edges=tuple(edges))


def _leaf_positions(tokens: Mapping[str, Sequence[str]]) -> list[tuple[str, int]]:
    return [
        (category, slot)
        for category in CATEGORY_ORDER
        for slot in range(len(tokens.get(category, ())))
    ]


def _leaf_vertex_id(tokens: Mapping[str, Sequence[str]], category: str, slot: int) -> int:
    """Vertex id build_article_graph assigns to the slot-th token of a category."""
    present = [c for c in CATEGORY_ORDER if tokens.get(c)]
    vid = 2 + len(present)
    for c in CATEGORY_ORDER:
        if c == category:
            return vid + slot + 1
        vid += len(tokens.get(c, ()))
    raise KeyError(category)


def _delete_vertex(g: Graph, vid: int) -> Graph:
    """Remove one vertex and its incident edges, renumbering ids to stay contiguous."""
    remap: dict[int, int] = {}
    vertices = []
    for v in sorted(g.vertices, key=lambda v: v.id):
        if v.id == vid:
            continue
        remap[v.id] = len(vertices) + 1
        vertices.append(Vertex(len(vertices) + 1, v.label))
    edges = [
        Edge(remap[e.src], remap[e.dst], e.label)
        for e in g.edges
        if e.src != vid and e.dst != vid
    ]
    return Graph(example_index=g.example_index, vertices=tuple(vertices), edges=tuple(edges))


def generate_synthetic(
    spec: SyntheticSpec, seed: int
) -> tuple[GraphDatabase, tuple[AnomalyRecord, ...]]:
    """Deterministically generate a database plus its ground-truth manifest."""
    rng = random.Random(seed)
    pools = dict(DEFAULT_LABEL_POOLS)
    if spec.label_pools:
        pools.update({k: tuple(v) for k, v in spec.label_pools.items()})

    normative: dict[str, tuple[str, ...]] = {}
    for category in CATEGORY_ORDER:
        pool = pools[category]
        if category == "Noun":
            count = min(2, len(pool))
            normative[category] = tuple(rng.sample(pool, count))
        else:
            normative[category] = (rng.choice(pool),)

    kinds = spec.anomaly_kinds
    indices = sorted(rng.sample(range(1, spec.num_instances + 1), len(kinds))) if kinds else []
    kind_at = dict(zip(indices, kinds))

    examples: list[Graph] = []
    records: list[AnomalyRecord] = []
    for index in range(1, spec.num_instances + 1):
        kind = kind_at.get(index)
        if kind is None:
            examples.append(build_article_graph(index, normative))
            continue

        if kind == "modification":
            category, slot = rng.choice(_leaf_positions(normative))
            old = normative[category][slot]
            choices = [lbl for lbl in pools[category] if lbl != old] or [old + "-alt"]
            new = rng.choice(choices)
            tokens = dict(normative)
            leaves = list(tokens[category])
            leaves[slot] = new
            tokens[category] = tuple(leaves)
            examples.append(build_article_graph(index, tokens))
            records.append(
                AnomalyRecord(index, kind, f'relabel {category} leaf "{old}" -> "{new}"')
            )
        elif kind == "insertion":
            g = build_article_graph(index, normative)
            token = rng.choice(spec.insertion_pool)
            anchor = rng.randrange(1, g.vertex_count + 1)
            new_id = g.vertex_count + 1
            g = Graph(
                example_index=index,
                vertices=g.vertices + (Vertex(new_id, token),),
                edges=g.edges + (Edge(anchor, new_id, "has"),),
            )
            examples.append(g)
            records.append(
                AnomalyRecord(
                    index,
                    kind,
                    f'insert vertex "{token}" attached to vertex {anchor} '
                    f'"{g.label_of[anchor]}"',
                )
            )
        else:  # deletion
            g = build_article_graph(index, normative)
            category, slot = rng.choice(_leaf_positions(normative))
            label = normative[category][slot]
            examples.append(_delete_vertex(g, _leaf_vertex_id(normative, category, slot)))
            records.append(
                AnomalyRecord(index, kind, f'delete {category} leaf "{label}" and its edge')
            )

    return GraphDatabase(examples=tuple(examples)), tuple(records)


_MANIFEST_RE = re.compile(r"^example=(\d+) kind=(\w+) detail=(.*)$")


def format_manifest(records: Sequence[AnomalyRecord]) -> str:
    """One line per anomaly: ``example=<n> kind=<k> detail=<ops>``."""
    return "".join(f"example={r.example_index} kind={r.kind} detail={r.detail}\n" for r in records)


def parse_manifest(text: str) -> tuple[AnomalyRecord, ...]:
    records = []
    for line_no, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        m = _MANIFEST_RE.match(line)
        if not m:
            raise ValueError(f"manifest line {line_no}: unrecognized format: {line!r}")
        records.append(AnomalyRecord(int(m.group(1)), m.group(2), m.group(3)))
    return tuple(records)
