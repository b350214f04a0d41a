"""Graph-based anomaly detection for labeled graph databases.

Discovers the normative (most compressing) substructure of a database via
the minimum description length principle, then flags instances that deviate
from it structurally: modifications, insertions, and deletions.
"""

from .benchmark import BenchmarkRecord, benchmark, format_benchmark
from .detectors import (
    DETECTORS,
    AnomalyReport,
    DetectorParams,
    NoNormativePatternError,
    detect_mdl,
    detect_mps,
    detect_p,
    deviation_kind,
    score_anomaly,
)
from .discovery import (
    DeviationOp,
    DiscoveryParams,
    EmptyDatabaseError,
    Instance,
    Substructure,
    canonical_key,
    deviation_ops,
    discover,
    extend,
    find_instances,
    transformation_cost,
)
from .graphs import (
    Edge,
    Graph,
    GraphDatabase,
    GraphFormatError,
    Label,
    Vertex,
    graph_from_lists,
    parse_graph_file,
    validate_database,
    validate_graph,
    write_graph_file,
)
from .mdl import (
    Bits,
    LabelUniverse,
    MdlScore,
    OverlappingInstancesError,
    compress,
    description_length,
    mdl_score,
    placeholder_label,
)
from .reporting import emit_report, format_substructures, parse_report_json
from .synthetic import (
    AnomalyRecord,
    SyntheticSpec,
    build_article_graph,
    format_manifest,
    generate_synthetic,
    parse_manifest,
)

__all__ = [
    "AnomalyRecord",
    "AnomalyReport",
    "BenchmarkRecord",
    "Bits",
    "DETECTORS",
    "DetectorParams",
    "DeviationOp",
    "DiscoveryParams",
    "Edge",
    "EmptyDatabaseError",
    "Graph",
    "GraphDatabase",
    "GraphFormatError",
    "Instance",
    "Label",
    "LabelUniverse",
    "MdlScore",
    "NoNormativePatternError",
    "OverlappingInstancesError",
    "Substructure",
    "SyntheticSpec",
    "Vertex",
    "benchmark",
    "build_article_graph",
    "canonical_key",
    "compress",
    "description_length",
    "detect_mdl",
    "detect_mps",
    "detect_p",
    "deviation_kind",
    "deviation_ops",
    "discover",
    "emit_report",
    "extend",
    "find_instances",
    "format_benchmark",
    "format_manifest",
    "format_substructures",
    "generate_synthetic",
    "graph_from_lists",
    "mdl_score",
    "parse_graph_file",
    "parse_manifest",
    "parse_report_json",
    "placeholder_label",
    "score_anomaly",
    "transformation_cost",
    "validate_database",
    "validate_graph",
    "write_graph_file",
]
