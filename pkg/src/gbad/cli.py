"""Command-line front end.

Subcommands:

* ``discover`` — find the most compressing substructures in an XP file.
* ``detect``   — run one detector (or all three) and emit ranked reports.
* ``generate`` — write a synthetic database plus its ground-truth manifest.
* ``bench``    — time the three detectors on one database.

Exit codes: 0 success, 2 unreadable or malformed input, 3 no normative
pattern.  Errors go to stderr as ``file:line: message`` where a position is
known.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from .benchmark import benchmark, format_benchmark
from .detectors import DETECTORS, DetectorParams, NoNormativePatternError
from .discovery import DiscoveryParams, EmptyDatabaseError, discover
from .graphs import GraphDatabase, GraphFormatError, parse_graph_file, write_graph_file
from .reporting import emit_report, format_substructures
from .synthetic import SyntheticSpec, format_manifest, generate_synthetic

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NO_NORM = 3


@dataclass(frozen=True)
class RunConfig:
    """One resolved invocation: what to read, which algorithm, how to emit."""

    input_path: str | None
    algorithm: str
    output_format: str
    discovery: DiscoveryParams
    detector: DetectorParams
    seed: int = 0

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        return cls(
            input_path=getattr(args, "input", None),
            algorithm=getattr(args, "algorithm", "discover-only"),
            output_format=getattr(args, "format", "text"),
            discovery=DiscoveryParams(
                beam_width=args.beam_width,
                max_pattern_vertices=args.max_pattern_vertices,
                num_best=args.num_best,
                iterations=args.iterations,
            ),
            detector=DetectorParams(
                max_anomalous_cost=getattr(args, "max_cost", 2),
                report_threshold=getattr(args, "threshold", 0.3),
                top_k=getattr(args, "top_k", 10),
            ),
            seed=getattr(args, "seed", 0),
        )


def _add_discovery_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--beam-width", type=int, default=4, help="beam width (default 4)")
    p.add_argument(
        "--max-pattern-vertices", type=int, default=10, help="pattern size cap (default 10)"
    )
    p.add_argument("--num-best", type=int, default=3, help="substructures to keep (default 3)")
    p.add_argument("--iterations", type=int, default=1, help="hierarchical discovery rounds (default 1)")


def _add_detector_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-cost", type=int, default=2, help="max anomalous transformation cost (default 2)")
    p.add_argument(
        "--threshold",
        type=float,
        default=0.3,
        help="deviations above this share of instances are legitimate variation (default 0.3)",
    )
    p.add_argument("--top-k", type=int, default=10, help="reports to keep per detector (default 10)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gbad",
        description="Graph-based anomaly detection over XP graph databases.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_discover = sub.add_parser("discover", help="find the most compressing substructures")
    p_discover.add_argument("--input", required=True, help="XP graph database file")
    p_discover.add_argument("--format", choices=("text", "json", "dot"), default="text")
    p_discover.add_argument("--out", help="write output here instead of stdout")
    _add_discovery_flags(p_discover)

    p_detect = sub.add_parser("detect", help="run anomaly detection")
    p_detect.add_argument("--input", required=True, help="XP graph database file")
    p_detect.add_argument(
        "--algorithm", choices=("mdl", "p", "mps", "all"), default="all", help="detector to run"
    )
    p_detect.add_argument("--format", choices=("text", "json", "dot"), default="text")
    p_detect.add_argument("--out", help="write output here instead of stdout")
    _add_discovery_flags(p_detect)
    _add_detector_flags(p_detect)

    p_generate = sub.add_parser("generate", help="generate a synthetic database")
    p_generate.add_argument("--instances", type=int, required=True, help="number of examples")
    p_generate.add_argument(
        "--anomalies",
        default="",
        help="comma-separated kind:count pairs, e.g. modification:1,insertion:2",
    )
    p_generate.add_argument("--seed", type=int, default=0, help="RNG seed (default 0)")
    p_generate.add_argument("--out", help="write the XP database here instead of stdout")
    p_generate.add_argument(
        "--manifest",
        help="write the ground-truth manifest here (default <out>.manifest when --out is given)",
    )

    p_bench = sub.add_parser("bench", help="time the detectors on a database")
    p_bench.add_argument("--input", required=True, help="XP graph database file")
    p_bench.add_argument("--algorithms", default="mdl,p,mps", help="comma-separated detector names")
    p_bench.add_argument("--runs", type=int, default=3, help="interleaved runs per algorithm; the median is reported (default 3)")
    p_bench.add_argument("--format", choices=("text", "json"), default="text")
    p_bench.add_argument("--out", help="write output here instead of stdout")
    _add_discovery_flags(p_bench)
    _add_detector_flags(p_bench)

    return parser


def _load_database(path: str) -> GraphDatabase:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise _InputError(f"{path}: {exc.strerror or exc}") from exc
    try:
        return parse_graph_file(text)
    except GraphFormatError as exc:
        raise _InputError(f"{path}:{exc.line_no}: {exc.message}") from exc


class _InputError(Exception):
    pass


def _write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _parse_anomalies(raw: str) -> tuple[tuple[str, int], ...]:
    if not raw.strip():
        return ()
    pairs = []
    for chunk in raw.split(","):
        kind, _, count = chunk.strip().partition(":")
        try:
            pairs.append((kind, int(count) if count else 1))
        except ValueError as exc:
            raise _InputError(f"bad anomaly spec {chunk!r}; expected kind:count") from exc
    return tuple(pairs)


def _cmd_discover(args: argparse.Namespace) -> int:
    config = RunConfig.from_args(args)
    db = _load_database(config.input_path)
    subs = discover(db, config.discovery)
    _write_output(format_substructures(subs, config.output_format), args.out)
    return EXIT_OK


def _cmd_detect(args: argparse.Namespace) -> int:
    config = RunConfig.from_args(args)
    db = _load_database(config.input_path)
    names = ("mdl", "p", "mps") if config.algorithm == "all" else (config.algorithm,)
    reports = []
    for name in names:  # fixed output order: mdl, p, mps
        reports.extend(DETECTORS[name](db, config.discovery, config.detector))
    _write_output(emit_report(reports, config.output_format), args.out)
    return EXIT_OK


def _cmd_generate(args: argparse.Namespace) -> int:
    try:
        spec = SyntheticSpec(num_instances=args.instances, anomalies=_parse_anomalies(args.anomalies))
    except ValueError as exc:
        raise _InputError(str(exc)) from exc
    db, records = generate_synthetic(spec, args.seed)
    _write_output(write_graph_file(db), args.out)
    manifest_path = args.manifest
    if manifest_path is None and args.out is not None:
        manifest_path = args.out + ".manifest"
    if manifest_path is not None:
        Path(manifest_path).write_text(format_manifest(records), encoding="utf-8")
    return EXIT_OK


def _cmd_bench(args: argparse.Namespace) -> int:
    config = RunConfig.from_args(args)
    db = _load_database(config.input_path)
    algorithms = [name.strip() for name in args.algorithms.split(",") if name.strip()]
    for name in algorithms:
        if name.lower() not in DETECTORS:
            raise _InputError(f"unknown algorithm {name!r}; expected mdl, p, or mps")
    records = benchmark(db, algorithms, config.discovery, config.detector, runs=args.runs)
    _write_output(format_benchmark(records, config.output_format), args.out)
    return EXIT_OK


_COMMANDS = {
    "discover": _cmd_discover,
    "detect": _cmd_detect,
    "generate": _cmd_generate,
    "bench": _cmd_bench,
}


def run_cli(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (EmptyDatabaseError, ValueError) as exc:
        if isinstance(exc, NoNormativePatternError):
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_NO_NORM
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main(argv: list[str] | None = None) -> int:
    return run_cli(argv)


if __name__ == "__main__":
    sys.exit(main())
