"""Graph analysis toolkit for EOSIO action-trace corpora.

Parses newline-delimited action traces, builds the four activity graphs
(account creation, account vote, money transfer, contract authorization),
computes the full graph-metric suite, and exports visualization-ready data.
"""

from .builders import BuildDiagnostics, build_acg, build_avg, build_cag, build_mtg
from .errors import (
    ClassifyError,
    EosGraphError,
    GraphBuildError,
    InsufficientPointsError,
    ParseError,
)
from .graph import (
    ActivityGraph,
    DegreeHistogram,
    UndirectedGraph,
    build_graph,
    degree_views,
    graph_from_bytes,
    graph_to_bytes,
    load_graph,
    save_graph,
)
from .ingest import (
    ACTIVITY_CODES,
    DEFAULT_SYSTEM_ACCOUNTS,
    ActionRecord,
    Activity,
    ActivityEvent,
    IngestStats,
    classify,
    ingest_corpus,
    load_system_accounts,
    parse_record,
    read_event_store,
    write_event_store,
)
from .metrics import (
    ComponentSummary,
    MetricsReport,
    PowerLawFit,
    assortativity,
    clustering_coefficient,
    fit_power_law,
    full_report,
    metrics_table,
    scc,
    wcc,
    wcc_diameters,
)
from .sampling import (
    ancestry_subgraph,
    export_degree_histograms,
    export_graph,
    import_csv_graph,
    sample_edges,
)
from .synth import (
    gen_auth_corpus,
    gen_creation_tree,
    gen_transfer_corpus,
    gen_vote_corpus,
    write_corpus,
    write_truth,
)

__version__ = "0.1.0"

__all__ = [
    "ACTIVITY_CODES",
    "ActionRecord",
    "Activity",
    "ActivityEvent",
    "ActivityGraph",
    "BuildDiagnostics",
    "ClassifyError",
    "ComponentSummary",
    "DEFAULT_SYSTEM_ACCOUNTS",
    "DegreeHistogram",
    "EosGraphError",
    "GraphBuildError",
    "IngestStats",
    "InsufficientPointsError",
    "MetricsReport",
    "ParseError",
    "PowerLawFit",
    "UndirectedGraph",
    "ancestry_subgraph",
    "assortativity",
    "build_acg",
    "build_avg",
    "build_cag",
    "build_graph",
    "build_mtg",
    "classify",
    "clustering_coefficient",
    "degree_views",
    "export_degree_histograms",
    "export_graph",
    "fit_power_law",
    "full_report",
    "gen_auth_corpus",
    "gen_creation_tree",
    "gen_transfer_corpus",
    "gen_vote_corpus",
    "graph_from_bytes",
    "graph_to_bytes",
    "import_csv_graph",
    "ingest_corpus",
    "load_graph",
    "load_system_accounts",
    "metrics_table",
    "parse_record",
    "read_event_store",
    "sample_edges",
    "save_graph",
    "scc",
    "wcc",
    "wcc_diameters",
    "write_corpus",
    "write_event_store",
    "write_truth",
]
