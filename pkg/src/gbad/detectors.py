"""The three structural anomaly detectors: MDL, P, and MPS.

All three first discover the normative pattern (the most compressing
substructure) and then flag instances that deviate from it:

* MDL looks for close variants whose deviation is purely relabeling —
  modifications.  Mixed-kind deviations are reported here too, flagged
  ``mixed``.
* P examines the extensions growing out of exact instances and flags the
  ones whose extended pattern occurs with the lowest probability —
  insertions.
* MPS looks for variants missing vertices or edges — deletions.

Scores are "lower = more anomalous": MDL and MPS use
``cost * frequency / total_instances``; P uses the extension probability
itself.  Deviations shared by more than ``report_threshold`` of the
instances are treated as legitimate variation and never reported.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .discovery import (
    DeviationOp,
    DiscoveryParams,
    Instance,
    Substructure,
    _extensions,
    canonical_key,
    deviation_ops,
    discover,
    find_instances,
)
from .graphs import Graph, GraphDatabase


class NoNormativePatternError(ValueError):
    """The best substructure has fewer than two exact instances; anomaly is meaningless without a norm."""


@dataclass(frozen=True)
class DetectorParams:
    max_anomalous_cost: int = 2
    report_threshold: float = 0.3
    top_k: int = 10

    def __post_init__(self) -> None:
        if self.max_anomalous_cost < 1:
            raise ValueError("max_anomalous_cost must be >= 1")
        if not (0.0 < self.report_threshold):
            raise ValueError("report_threshold must be positive")
        if self.top_k < 1:
            raise ValueError("top_k must be >= 1")


@dataclass(frozen=True)
class AnomalyReport:
    """A flagged instance: what deviates, how much, how rare."""

    algorithm: str  # MDL | P | MPS
    example_index: int
    deviation: tuple[DeviationOp, ...]
    cost: int
    frequency: int
    score: float
    kind: str  # modification | insertion | deletion | mixed
    pattern: Graph | None = field(default=None, compare=False, repr=False)
    example_graph: Graph | None = field(default=None, compare=False, repr=False)
    instance: Instance | None = field(default=None, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.cost < 1:
            raise ValueError("cost must be >= 1 (cost-0 instances are normative)")
        if self.frequency < 1:
            raise ValueError("frequency must be >= 1")
        if not (0.0 < self.score <= self.cost):
            raise ValueError(f"score must satisfy 0 < score <= cost, got {self.score}")


def score_anomaly(cost: int, frequency: int, total: int) -> float:
    """Anomaly score ``cost * frequency / total``: rare small deviations score lowest."""
    if cost < 1:
        raise ValueError("cost must be >= 1")
    if not (1 <= frequency <= total):
        raise ValueError("frequency must satisfy 1 <= frequency <= total")
    return cost * frequency / total


def deviation_kind(ops: tuple[DeviationOp, ...]) -> str:
    kinds = set()
    for op in ops:
        if op.op in ("relabel_vertex", "relabel_edge"):
            kinds.add("modification")
        elif op.op in ("missing_vertex", "missing_edge"):
            kinds.add("deletion")
        else:
            kinds.add("insertion")
    if len(kinds) == 1:
        return kinds.pop()
    return "mixed"


def _normative(db: GraphDatabase, disc: DiscoveryParams | None) -> Substructure:
    ranked = discover(db, disc)
    if not ranked or len(ranked[0].instances) < 2:
        raise NoNormativePatternError(
            "best substructure has fewer than 2 exact instances; no norm to deviate from"
        )
    return ranked[0]


def _rank(reports: list[AnomalyReport], top_k: int) -> list[AnomalyReport]:
    return sorted(reports, key=lambda r: (r.score, r.example_index))[:top_k]


def _detect_by_cost(
    db: GraphDatabase,
    disc: DiscoveryParams | None,
    det: DetectorParams,
    algorithm: str,
    wanted_kinds: frozenset[str],
) -> list[AnomalyReport]:
    best = _normative(db, disc)
    pattern = best.pattern
    instances = find_instances(db, pattern, det.max_anomalous_cost)
    total = len(instances)

    deviants: list[tuple[Instance, tuple[DeviationOp, ...], str]] = []
    signature_count: Counter = Counter()
    for inst in instances:
        if inst.cost == 0:
            continue
        example = db.by_example_index[inst.example_index]
        ops = deviation_ops(pattern, example, inst.mapping)
        signature_count[ops] += 1
        deviants.append((inst, ops, deviation_kind(ops)))

    reports = []
    for inst, ops, kind in deviants:
        if kind not in wanted_kinds:
            continue
        frequency = signature_count[ops]
        if frequency / total > det.report_threshold:
            continue
        reports.append(
            AnomalyReport(
                algorithm=algorithm,
                example_index=inst.example_index,
                deviation=ops,
                cost=inst.cost,
                frequency=frequency,
                score=score_anomaly(inst.cost, frequency, total),
                kind=kind,
                pattern=pattern,
                example_graph=db.by_example_index[inst.example_index],
                instance=inst,
            )
        )
    return _rank(reports, det.top_k)


def detect_mdl(
    db: GraphDatabase,
    disc: DiscoveryParams | None = None,
    det: DetectorParams | None = None,
) -> list[AnomalyReport]:
    """Flag instances that deviate from the norm by relabeling only (modifications).

    Deviations mixing operation kinds are also reported here, marked
    ``mixed``, since no single-kind detector owns them.
    """
    det = det or DetectorParams()
    return _detect_by_cost(db, disc, det, "MDL", frozenset({"modification", "mixed"}))


def detect_mps(
    db: GraphDatabase,
    disc: DiscoveryParams | None = None,
    det: DetectorParams | None = None,
) -> list[AnomalyReport]:
    """Flag instances missing vertices or edges relative to the norm (deletions)."""
    det = det or DetectorParams()
    return _detect_by_cost(db, disc, det, "MPS", frozenset({"deletion"}))


def detect_p(
    db: GraphDatabase,
    disc: DiscoveryParams | None = None,
    det: DetectorParams | None = None,
) -> list[AnomalyReport]:
    """Flag exact instances carrying improbable extensions (insertions).

    Every one-edge growth realized by the instances becomes an extended
    pattern whose occurrence probability is its support over the base's
    instance count.  Improbable extensions (at or below the report
    threshold) are flagged; probable ones are normal growth and get
    absorbed, so the analysis walks every normal-growth lineage of the
    normative substructure (a beam of them, one database scan per distinct
    extension) until nothing extends.  This is what makes the probabilistic
    detector the expensive one on large databases.
    """
    det = det or DetectorParams()
    width = (disc or DiscoveryParams()).beam_width
    best = _normative(db, disc)

    candidates: dict[tuple[int, str], tuple[float, "_ReportSeed", Instance, Graph]] = {}
    support_cache: dict[tuple, list[Instance]] = {}

    def supporting_instances(graph: Graph) -> list[Instance]:
        key = canonical_key(graph)
        found = support_cache.get(key)
        if found is None:
            found = support_cache[key] = find_instances(db, graph, 0)
        return found

    # Frontier of normal-growth lineages: an extension's probability depends
    # on which absorbed context it is measured against, so every
    # above-threshold growth path (up to the discovery beam width) is
    # examined rather than one greedy chain.
    frontier: list[tuple[Graph, list[Instance]]] = [(best.pattern, list(best.instances))]
    absorbed: set[tuple] = {canonical_key(best.pattern)}
    max_rounds = max(g.edge_count for g in db.examples) + 1

    for _ in range(max_rounds):
        growth: dict[tuple, tuple[float, int, str, Graph, list[Instance]]] = {}
        for base_pattern, base_instances in frontier:
            total = len(base_instances)
            if total < 2:
                continue
            for info, carriers in _extensions(base_pattern, db, base_instances):
                supporting = supporting_instances(info.graph)
                if not supporting:
                    # parallel-edge corner: the grown pattern over-constrains its pair
                    continue
                probability = len(supporting) / total
                # > 1 can happen in overlap-dense corners (greedy disjoint
                # counts are maximal, not maximum); more common than the
                # norm itself is definitionally not an anomaly
                if probability <= min(det.report_threshold, 1.0):
                    seed = _ReportSeed(
                        info.ops, info.cost, len(supporting), probability, info.description
                    )
                    for idx in carriers:
                        inst = base_instances[idx]
                        key = (inst.example_index, info.description)
                        prev = candidates.get(key)
                        if prev is None or probability < prev[0]:
                            candidates[key] = (probability, seed, inst, base_pattern)
                elif len(supporting) >= 2:
                    key = canonical_key(info.graph)
                    if key not in absorbed:
                        entry = (probability, len(supporting), info.description, info.graph, supporting)
                        prev = growth.get(key)
                        if prev is None or entry[:3] > prev[:3]:
                            growth[key] = entry
        if not growth:
            break
        ordered = sorted(growth.items(), key=lambda kv: (-kv[1][0], -kv[1][1], kv[1][2], kv[0]))
        frontier = []
        for key, (_, _, _, graph, supporting) in ordered[:width]:
            absorbed.add(key)
            frontier.append((graph, supporting))

    reports = []
    for (example_index, _), (probability, seed, inst, pattern) in sorted(candidates.items()):
        reports.append(
            AnomalyReport(
                algorithm="P",
                example_index=example_index,
                deviation=seed.ops,
                cost=seed.cost,
                frequency=seed.support,
                score=probability,
                kind="insertion",
                pattern=pattern,
                example_graph=db.by_example_index[example_index],
                instance=inst,
            )
        )
    return _rank(reports, det.top_k)


@dataclass(frozen=True)
class _ReportSeed:
    ops: tuple[DeviationOp, ...]
    cost: int
    support: int
    probability: float
    description: str


DETECTORS = {"mdl": detect_mdl, "p": detect_p, "mps": detect_mps}
