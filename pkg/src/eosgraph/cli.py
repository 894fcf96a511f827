"""Command-line pipeline: ingest -> build -> metrics -> sample -> export -> report.

Every command is deterministic for fixed inputs, flags and seeds; errors exit
nonzero with one machine-readable JSON object on stderr. Flag settings win
over the optional key=value config file, which wins over built-in defaults.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import builders, ingest, metrics, sampling
from .errors import EosGraphError
from .graph import load_graph, save_graph
from .ingest import ACTIVITY_CODES, Activity, IngestStats

STATS_FILENAME = "stats.json"


def _fail(code: str, detail: str) -> int:
    sys.stderr.write(json.dumps({"error": code, "detail": detail}) + "\n")
    return 1


def parse_config(path: str | Path) -> dict[str, str]:
    """Parse a key=value config file ('#' starts a comment)."""
    config: dict[str, str] = {}
    for line_no, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        if not sep:
            raise ValueError(f"config line {line_no} is not key=value: {raw!r}")
        config[key.strip()] = value.strip().strip("\"'")
    return config


def _load_config(args) -> dict[str, str]:
    if getattr(args, "config", None):
        return parse_config(args.config)
    return {}


def _system_accounts(args, config: dict[str, str]) -> frozenset[str]:
    if getattr(args, "system_accounts", None):
        return ingest.load_system_accounts(args.system_accounts)
    if "system_accounts_file" in config:
        return ingest.load_system_accounts(config["system_accounts_file"])
    if "system_accounts" in config:
        names = [n.strip() for n in config["system_accounts"].split(",") if n.strip()]
        return frozenset(ingest.validate_account(n) for n in names)
    return ingest.DEFAULT_SYSTEM_ACCOUNTS


def _spam_threshold(args, config: dict[str, str]) -> float:
    if getattr(args, "spam_threshold", None) is not None:
        return args.spam_threshold
    if "spam_threshold" in config:
        return float(config["spam_threshold"])
    return builders.DEFAULT_SPAM_THRESHOLD


def action_stats_table(stats: IngestStats) -> str:
    """Aligned per-activity action counts by kind, with proportions."""
    titles = {
        Activity.ACCOUNT_CREATION: "Account creation",
        Activity.ACCOUNT_VOTE: "Account vote",
        Activity.MONEY_TRANSFER: "Money transfer",
        Activity.CONTRACT_AUTHORIZATION: "Contract authorization",
    }
    header = ["Activity", "Calling action", "Inline action", "Deferred action"]
    rows = [header]
    for activity in Activity:
        counts = stats.actions[activity]
        total = sum(counts.values())
        cells = [titles[activity]]
        for kind in ingest.ACTION_KINDS:
            share = (counts[kind] / total * 100) if total else 0.0
            cells.append(f"{counts[kind]:,} ({share:.3f}%)")
        rows.append(cells)
    widths = [max(len(row[i]) for row in rows) for i in range(len(header))]
    lines = []
    for irow, row in enumerate(rows):
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
        if irow == 0:
            lines.append("  ".join("-" * widths[i] for i in range(len(header))))
    return "\n".join(lines) + "\n"


# --- commands -------------------------------------------------------------------

def cmd_ingest(args) -> int:
    config = _load_config(args)
    system_accounts = _system_accounts(args, config)
    events, stats = ingest.ingest_corpus(args.input, system_accounts)
    out = Path(args.out)
    ingest.write_event_store(events, out)
    stats_json = json.dumps(stats.to_json_dict(), indent=2)
    (out / STATS_FILENAME).write_text(stats_json + "\n", encoding="utf-8")
    print(stats_json)
    return 0


def cmd_build(args) -> int:
    config = _load_config(args)
    activity = ACTIVITY_CODES[args.activity]
    events = ingest.read_event_store(args.events, activity)
    if activity is Activity.CONTRACT_AUTHORIZATION:
        graph, diagnostics = builders.build_cag(events, _spam_threshold(args, config))
    else:
        graph, diagnostics = builders.BUILDERS[activity](events)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    save_graph(graph, out)
    diag_path = out.with_name(out.name + ".diagnostics.json")
    diag_path.write_text(diagnostics.to_json() + "\n", encoding="utf-8")
    print(
        json.dumps(
            {
                "activity": activity.value,
                "nodes": graph.node_count,
                "edges": graph.edge_count,
                "total_weight": graph.total_weight,
                "total_events": graph.total_events,
                "violations": len(diagnostics.violations),
            }
        )
    )
    return 0


def cmd_metrics(args) -> int:
    graph = load_graph(args.graph)
    report = metrics.full_report(graph, threads=args.threads)
    if args.format == "json":
        print(metrics.report_to_json(report))
    else:
        print(metrics.metrics_table([report]), end="")
    return 0


def cmd_sample(args) -> int:
    graph = load_graph(args.graph)
    if args.edges is not None:
        sampled = sampling.sample_edges(graph, args.edges, args.seed)
    else:
        sampled = sampling.ancestry_subgraph(graph, args.ancestry, args.seed)
    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    save_graph(sampled, out)
    print(json.dumps({"nodes": sampled.node_count, "edges": sampled.edge_count}))
    return 0


def cmd_export(args) -> int:
    graph = load_graph(args.graph)
    sampling.export_graph(graph, args.format, args.out)
    return 0


def cmd_report(args) -> int:
    config = _load_config(args)
    events_dir = Path(args.events)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    reports = []
    for code, activity in ACTIVITY_CODES.items():
        store = ingest.event_store_path(events_dir, activity)
        if not store.exists():
            continue
        events = ingest.read_event_store(events_dir, activity)
        if activity is Activity.CONTRACT_AUTHORIZATION:
            graph, diagnostics = builders.build_cag(events, _spam_threshold(args, config))
        else:
            graph, diagnostics = builders.BUILDERS[activity](events)
        report = metrics.full_report(graph, threads=args.threads)
        reports.append(report)
        (out / f"diagnostics_{code}.json").write_text(diagnostics.to_json() + "\n", encoding="utf-8")
        sampling.export_degree_histograms(graph, out / f"degrees_{code}")

    stats_path = events_dir / STATS_FILENAME
    stats_table = None
    if stats_path.exists():
        stats = IngestStats.from_json_dict(json.loads(stats_path.read_text(encoding="utf-8")))
        stats_table = action_stats_table(stats)
        (out / "action_stats.txt").write_text(stats_table, encoding="utf-8")
        (out / "action_stats.json").write_text(
            json.dumps(stats.to_json_dict(), indent=2) + "\n", encoding="utf-8"
        )
    else:
        # action counts (pre-fan-out) are only known to ingest; events alone
        # cannot reconstruct them for votes
        sys.stderr.write("note: no stats.json in event store; action table skipped\n")

    table = metrics.metrics_table(reports)
    (out / "metrics.txt").write_text(table, encoding="utf-8")
    (out / "metrics.json").write_text(
        json.dumps([r.to_json_dict() for r in reports], indent=2) + "\n", encoding="utf-8"
    )
    if stats_table:
        print(stats_table)
    print(table, end="")
    return 0


# --- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eosgraph",
        description="EOSIO activity-graph construction and metric analysis.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse a trace corpus into a per-activity event store")
    p.add_argument("--input", required=True, help="JSON-lines action trace file")
    p.add_argument("--system-accounts", help="override file, one account per line")
    p.add_argument("--config", help="key=value config file")
    p.add_argument("--out", required=True, help="event store directory")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("build", help="build one activity graph from an event store")
    p.add_argument("--events", required=True, help="event store directory")
    p.add_argument("--activity", required=True, choices=sorted(ACTIVITY_CODES))
    p.add_argument("--config", help="key=value config file")
    p.add_argument("--spam-threshold", type=float, help="CAG spam weight-share threshold")
    p.add_argument("--out", required=True, help="output graph file")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("metrics", help="compute the metric suite for a graph file")
    p.add_argument("--graph", required=True)
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--threads", type=int, help="worker cap (or EOSGRAPH_THREADS)")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("sample", help="sample edges or an ancestry subtree")
    p.add_argument("--graph", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--edges", type=int, help="edge sample size")
    group.add_argument("--ancestry", type=int, help="node sample size for root-path subtree")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="output graph file")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("export", help="export a graph for external renderers")
    p.add_argument("--graph", required=True)
    p.add_argument("--format", required=True, choices=sampling.EXPORT_FORMATS)
    p.add_argument("--out", required=True, help="output file (csv: output directory)")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("report", help="build all graphs and emit both summary tables")
    p.add_argument("--events", required=True, help="event store directory")
    p.add_argument("--config", help="key=value config file")
    p.add_argument("--spam-threshold", type=float)
    p.add_argument("--threads", type=int)
    p.add_argument("--out", required=True, help="report output directory")
    p.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except EosGraphError as exc:
        return _fail(exc.code, exc.message)
    except OSError as exc:
        return _fail("io-error", str(exc))
    except ValueError as exc:
        return _fail("invalid-input", str(exc))


if __name__ == "__main__":
    sys.exit(main())
