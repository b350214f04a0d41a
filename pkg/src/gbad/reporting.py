"""Report rendering: ranked text tables, JSON, and DOT drawings.

The DOT output draws one digraph for the normative pattern and one per
flagged instance; every unit deviation marks exactly one element with the
attribute ``anomaly=true`` (missing elements are additionally dashed).
"""
from __future__ import annotations

import json
from typing import Sequence

from .detectors import AnomalyReport
from .discovery import DeviationOp, Substructure
from .graphs import Graph

FORMATS = ("text", "json", "dot")


def _op_to_dict(op: DeviationOp) -> dict:
    d: dict = {"op": op.op, "element": op.element}
    if op.old_label is not None:
        d["old_label"] = op.old_label
    if op.new_label is not None:
        d["new_label"] = op.new_label
    return d


def _op_from_dict(d: dict) -> DeviationOp:
    return DeviationOp(
        op=d["op"],
        element=d["element"],
        old_label=d.get("old_label"),
        new_label=d.get("new_label"),
    )


def report_to_dict(report: AnomalyReport) -> dict:
    return {
        "algorithm": report.algorithm,
        "example": report.example_index,
        "score": report.score,
        "cost": report.cost,
        "frequency": report.frequency,
        "kind": report.kind,
        "deviation": [_op_to_dict(op) for op in report.deviation],
    }


def parse_report_json(text: str) -> list[AnomalyReport]:
    """Inverse of ``emit_report(..., "json")`` up to the drawable context fields."""
    return [
        AnomalyReport(
            algorithm=d["algorithm"],
            example_index=d["example"],
            deviation=tuple(_op_from_dict(o) for o in d["deviation"]),
            cost=d["cost"],
            frequency=d["frequency"],
            score=d["score"],
            kind=d["kind"],
        )
        for d in json.loads(text)
    ]


def _describe_op(op: DeviationOp) -> str:
    kind = op.op.replace("_", " ")
    where = op.element.split(" ", 1)[-1]  # element repeats the kind's noun
    if op.op == "relabel_vertex" or op.op == "relabel_edge":
        return f'{kind} {where} "{op.old_label}" -> "{op.new_label}"'
    if op.old_label is not None:
        return f'{kind} {where} "{op.old_label}"'
    if op.new_label is not None:
        return f'{kind} {where} "{op.new_label}"'
    return f"{kind} {where}"


def _text_report(reports: Sequence[AnomalyReport]) -> str:
    if not reports:
        return "no anomalies found\n"
    lines = [f"{'rank':>4}  {'algo':<4} {'example':>7}  {'kind':<12} {'cost':>4} {'freq':>4}  {'score':>9}  deviation"]
    for rank, r in enumerate(reports, start=1):
        deviation = "; ".join(_describe_op(op) for op in r.deviation)
        lines.append(
            f"{rank:>4}  {r.algorithm:<4} {r.example_index:>7}  {r.kind:<12} "
            f"{r.cost:>4} {r.frequency:>4}  {r.score:>9.6f}  {deviation}"
        )
    return "\n".join(lines) + "\n"


def _quote(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _pattern_dot(pattern: Graph, name: str) -> list[str]:
    lines = [f"digraph {name} {{"]
    for v in pattern.vertices:
        lines.append(f"  v{v.id} [label={_quote(v.label)}];")
    for e in pattern.edges:
        lines.append(f"  v{e.src} -> v{e.dst} [label={_quote(e.label)}];")
    lines.append("}")
    return lines


def _instance_dot(report: AnomalyReport, name: str) -> list[str]:
    """Draw the flagged instance: the pattern as realized, one marked element per unit deviation."""
    pattern = report.pattern
    assert pattern is not None and report.instance is not None and report.example_graph is not None
    mapping = report.instance.mapping
    example = report.example_graph

    node_label: dict[int, str] = {}
    node_attrs: dict[int, list[str]] = {}
    for v in pattern.vertices:
        if v.id in mapping:
            node_label[v.id] = example.label_of[mapping[v.id]]
        else:
            node_label[v.id] = v.label
        node_attrs[v.id] = []

    edge_rows: list[dict] = []
    rows_by_pair: dict[tuple[int, int], list[dict]] = {}
    for e in pattern.edges:
        row = {"src": e.src, "dst": e.dst, "label": e.label, "attrs": []}
        edge_rows.append(row)
        rows_by_pair.setdefault((e.src, e.dst), []).append(row)

    extra_nodes: list[tuple[int, str, list[str]]] = []
    claimed: dict[tuple[int, int], int] = {}

    def claim_edge(element: str) -> dict:
        u, v = element.removeprefix("edge ").split("->")
        pair = (int(u), int(v))
        rows = rows_by_pair.get(pair, [])
        i = claimed.get(pair, 0)
        if i < len(rows):
            claimed[pair] = i + 1
            return rows[i]
        row = {"src": pair[0], "dst": pair[1], "label": "", "attrs": []}
        edge_rows.append(row)
        return row

    for op in report.deviation:
        if op.op == "relabel_vertex":
            vid = int(op.element.removeprefix("vertex "))
            node_attrs[vid].append("anomaly=true")
        elif op.op == "missing_vertex":
            vid = int(op.element.removeprefix("vertex "))
            node_attrs[vid] += ["anomaly=true", "style=dashed"]
        elif op.op == "insert_vertex":
            vid = int(op.element.removeprefix("vertex "))
            extra_nodes.append((vid, op.new_label or "", ["anomaly=true"]))
        elif op.op == "relabel_edge":
            row = claim_edge(op.element)
            row["label"] = op.new_label or ""
            row["attrs"].append("anomaly=true")
        elif op.op == "missing_edge":
            row = claim_edge(op.element)
            row["attrs"] += ["anomaly=true", "style=dashed"]
        else:  # extra_edge / insert_edge
            row = {"attrs": ["anomaly=true"], "label": op.new_label or ""}
            u, v = op.element.removeprefix("edge ").split("->")
            row["src"], row["dst"] = int(u), int(v)
            edge_rows.append(row)

    lines = [f"digraph {name} {{"]
    for vid in sorted(node_label):
        attrs = " ".join([f"label={_quote(node_label[vid])}"] + node_attrs[vid])
        lines.append(f"  v{vid} [{attrs}];")
    for vid, label, attrs in extra_nodes:
        joined = " ".join([f"label={_quote(label)}"] + attrs)
        lines.append(f"  v{vid} [{joined}];")
    for row in edge_rows:
        attrs = " ".join([f"label={_quote(row['label'])}"] + row["attrs"])
        lines.append(f"  v{row['src']} -> v{row['dst']} [{attrs}];")
    lines.append("}")
    return lines


def _dot_report(reports: Sequence[AnomalyReport]) -> str:
    lines: list[str] = []
    pattern = next((r.pattern for r in reports if r.pattern is not None), None)
    if pattern is not None:
        lines += _pattern_dot(pattern, "normative")
    for i, r in enumerate(reports, start=1):
        if r.pattern is None or r.instance is None or r.example_graph is None:
            continue
        lines += _instance_dot(r, f"anomaly_{r.algorithm.lower()}_{i}_example_{r.example_index}")
    return "\n".join(lines) + ("\n" if lines else "")


def emit_report(reports: Sequence[AnomalyReport], fmt: str = "text") -> str:
    """Render ranked reports as a text table, JSON array, or DOT drawings."""
    if fmt == "text":
        return _text_report(reports)
    if fmt == "json":
        return json.dumps([report_to_dict(r) for r in reports], indent=2) + "\n"
    if fmt == "dot":
        return _dot_report(reports)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def format_substructures(subs: Sequence[Substructure], fmt: str = "text") -> str:
    """Render discovery results: the ranked substructures with their scores."""
    if fmt == "text":
        if not subs:
            return "no substructures found\n"
        lines = []
        for rank, s in enumerate(subs, start=1):
            lines.append(
                f"# rank {rank}: {s.pattern.vertex_count} vertices, "
                f"{s.pattern.edge_count} edges, {len(s.instances)} instances, "
                f"score {s.score.total:.6f} bits "
                f"(compressed {s.score.dl_g_given_s:.6f} + pattern {s.score.dl_s:.6f})"
            )
            for v in s.pattern.vertices:
                lines.append(f'v {v.id} "{v.label}"')
            for e in s.pattern.edges:
                lines.append(f'e {e.src} {e.dst} "{e.label}"')
        return "\n".join(lines) + "\n"
    if fmt == "json":
        payload = [
            {
                "rank": rank,
                "vertices": [{"id": v.id, "label": v.label} for v in s.pattern.vertices],
                "edges": [{"src": e.src, "dst": e.dst, "label": e.label} for e in s.pattern.edges],
                "instance_count": len(s.instances),
                "instances": [
                    {"example": i.example_index, "map": list(i.vertex_map), "cost": i.cost}
                    for i in s.instances
                ],
                "score": {
                    "dl_g_given_s": s.score.dl_g_given_s,
                    "dl_s": s.score.dl_s,
                    "total": s.score.total,
                },
            }
            for rank, s in enumerate(subs, start=1)
        ]
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "dot":
        lines: list[str] = []
        for rank, s in enumerate(subs, start=1):
            lines += _pattern_dot(s.pattern, f"substructure_{rank}")
        return "\n".join(lines) + ("\n" if lines else "")
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
