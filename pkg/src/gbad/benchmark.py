"""Wall-clock comparison of the three detectors on one database.

Timing wraps the detection call only; parsing is the caller's job, so the
numbers reflect algorithmic cost rather than I/O.
"""
from __future__ import annotations

import gc
import json
import time
from dataclasses import dataclass
from typing import Sequence

from .detectors import DETECTORS, DetectorParams
from .discovery import DiscoveryParams, canonical_key
from .graphs import Graph, GraphDatabase


@dataclass(frozen=True)
class BenchmarkRecord:
    algorithm: str
    instance_count: int
    wall_time: float

    def __post_init__(self) -> None:
        if self.wall_time < 0:
            raise ValueError("wall_time must be >= 0")


def _cold_copy(db: GraphDatabase) -> GraphDatabase:
    return GraphDatabase(tuple(Graph(g.example_index, g.vertices, g.edges) for g in db.examples))


def benchmark(
    db: GraphDatabase,
    algorithms: Sequence[str],
    disc: DiscoveryParams | None = None,
    det: DetectorParams | None = None,
    runs: int = 3,
) -> list[BenchmarkRecord]:
    """Run each named detector end to end and record its wall time.

    Every run starts cold (fresh graph objects, cleared canonical-form
    cache, collected garbage) so run order does not bias the comparison;
    the runs are interleaved across algorithms and each record reports the
    per-algorithm median, which keeps machine-load drift out of the
    numbers.
    """
    if runs < 1:
        raise ValueError("runs must be >= 1")
    times: dict[str, list[float]] = {name: [] for name in algorithms}
    for _ in range(runs):
        for name in algorithms:
            detector = DETECTORS[name.lower()]
            run_db = _cold_copy(db)
            canonical_key.cache_clear()
            gc.collect()
            start = time.perf_counter()
            detector(run_db, disc, det)
            times[name].append(time.perf_counter() - start)
    records = []
    for name in algorithms:
        ordered = sorted(times[name])
        records.append(
            BenchmarkRecord(
                algorithm=name.upper(),
                instance_count=db.example_count,
                wall_time=ordered[len(ordered) // 2],
            )
        )
    return records


def format_benchmark(records: Sequence[BenchmarkRecord], fmt: str = "text") -> str:
    if fmt == "json":
        payload = [
            {"algorithm": r.algorithm, "instances": r.instance_count, "wall_time_seconds": r.wall_time}
            for r in records
        ]
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "text":
        lines = [f"{'algorithm':<10} {'instances':>9}  {'wall_time_s':>12}"]
        for r in records:
            lines.append(f"{r.algorithm:<10} {r.instance_count:>9}  {r.wall_time:>12.3f}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}; expected text or json")
