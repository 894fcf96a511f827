"""Visualization prep: edge sampling, ancestry subtrees, and file exports.

Everything here is read-only over immutable graphs and deterministic: fixed
seeds give identical samples, and exports produce identical bytes for
identical graphs. Money amounts are written as fixed-point decimal strings
with 4 digits so CSV round trips are exact.
"""

from __future__ import annotations

import csv
import random
from pathlib import Path

import numpy as np

from .errors import EosGraphError, GraphBuildError
from .graph import ActivityGraph, degree_views
from .ingest import UNITS_PER_EOS, Activity
from .metrics import _fit_or_none

EXPORT_FORMATS = ("dot", "graphml", "csv")


def format_weight(units: int, activity: Activity) -> str:
    """Edge weight as text: EOS amounts get 4 decimals, counts stay integers."""
    if activity is Activity.MONEY_TRANSFER:
        return f"{units // UNITS_PER_EOS}.{units % UNITS_PER_EOS:04d}"
    return str(units)


def parse_weight(text: str, activity: Activity) -> int:
    if activity is Activity.MONEY_TRANSFER:
        whole, _, frac = text.partition(".")
        if len(frac) != 4:
            raise ValueError(f"expected 4 fraction digits: {text!r}")
        return int(whole) * UNITS_PER_EOS + int(frac)
    return int(text)


def _subgraph_from_edge_indices(g: ActivityGraph, edge_indices: np.ndarray) -> ActivityGraph:
    aggregated = {}
    for i in edge_indices:
        i = int(i)
        key = (g.names[int(g.src[i])], g.names[int(g.dst[i])])
        aggregated[key] = (int(g.weight[i]), int(g.multiplicity[i]))
    return ActivityGraph.from_aggregated(g.activity, aggregated)


def sample_edges(g: ActivityGraph, n: int, seed: int) -> ActivityGraph:
    """Uniform sample of min(n, edge_count) edges without replacement.

    The result is a graph over the induced node set, keeping each sampled
    edge's weight and multiplicity.
    """
    if n < 0:
        raise ValueError("sample size must be >= 0")
    k = min(n, g.edge_count)
    rng = random.Random(seed)
    chosen = sorted(rng.sample(range(g.edge_count), k))
    return _subgraph_from_edge_indices(g, np.asarray(chosen, np.int64))


def _parent_array(g: ActivityGraph) -> tuple[np.ndarray, int]:
    """Parent pointers and the root id of a creation tree; validates tree shape."""
    n = g.node_count
    if g.edge_count != n - 1:
        raise GraphBuildError("not-a-tree", f"{g.edge_count} edges for {n} nodes")
    indeg = g.in_degrees()
    if (indeg > 1).any():
        raise GraphBuildError("not-a-tree", "a node has two parents")
    roots = np.flatnonzero(indeg == 0)
    if roots.shape[0] != 1:
        raise GraphBuildError("not-a-tree", f"{roots.shape[0]} roots")
    parent = np.full(n, -1, np.int64)
    parent[g.dst] = g.src
    root = int(roots[0])
    # every node must reach the root; walk parents, memoizing verified prefixes
    verified = np.zeros(n, bool)
    verified[root] = True
    trail = []
    for v in range(n):
        u = v
        while not verified[u]:
            trail.append(u)
            u = int(parent[u])
            if u < 0 or len(trail) > n:
                raise GraphBuildError("not-a-tree", "disconnected or cyclic creation graph")
        verified[np.asarray(trail, np.int64)] = True
        trail.clear()
    return parent, root


def ancestry_subgraph(g: ActivityGraph, n_nodes: int, seed: int) -> ActivityGraph:
    """Sample nodes uniformly and keep every edge on their paths to the root.

    The result is always a subtree containing the root (a single-node graph
    when nothing but the root survives the sample).
    """
    if n_nodes < 0:
        raise ValueError("node sample size must be >= 0")
    parent, root = _parent_array(g)
    n = g.node_count
    rng = random.Random(seed)
    sampled = rng.sample(range(n), min(n_nodes, n))
    keep = np.zeros(n, bool)
    keep[root] = True
    for v in sampled:
        u = v
        while not keep[u]:
            keep[u] = True
            u = int(parent[u])
    aggregated = {}
    edge_lookup = {(int(s), int(d)): i for i, (s, d) in enumerate(zip(g.src, g.dst))}
    for v in np.flatnonzero(keep):
        v = int(v)
        if v == root:
            continue
        p = int(parent[v])
        i = edge_lookup[(p, v)]
        aggregated[(g.names[p], g.names[v])] = (int(g.weight[i]), int(g.multiplicity[i]))
    if not aggregated:
        return ActivityGraph(
            g.activity,
            [g.names[root]],
            np.empty(0, np.int64),
            np.empty(0, np.int64),
            np.empty(0, np.int64),
            np.empty(0, np.int64),
        )
    return ActivityGraph.from_aggregated(g.activity, aggregated)


# --- exports -------------------------------------------------------------------

def _dot_text(g: ActivityGraph) -> str:
    lines = [f"digraph {g.activity.value} {{"]
    for name in g.names:
        lines.append(f'  "{name}";')
    for s, d, w, m in zip(g.src, g.dst, g.weight, g.multiplicity):
        weight = format_weight(int(w), g.activity)
        lines.append(
            f'  "{g.names[int(s)]}" -> "{g.names[int(d)]}" [weight="{weight}", events={int(m)}];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def _xml_escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _graphml_text(g: ActivityGraph) -> str:
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<graphml xmlns="http://graphml.graphdrawing.org/xmlns">',
        '  <key id="d0" for="node" attr.name="account" attr.type="string"/>',
        '  <key id="d1" for="edge" attr.name="weight" attr.type="string"/>',
        '  <key id="d2" for="edge" attr.name="events" attr.type="long"/>',
        f'  <graph id="{g.activity.value}" edgedefault="directed">',
    ]
    for i, name in enumerate(g.names):
        lines.append(f'    <node id="n{i}"><data key="d0">{_xml_escape(name)}</data></node>')
    for s, d, w, m in zip(g.src, g.dst, g.weight, g.multiplicity):
        weight = format_weight(int(w), g.activity)
        lines.append(
            f'    <edge source="n{int(s)}" target="n{int(d)}">'
            f'<data key="d1">{weight}</data><data key="d2">{int(m)}</data></edge>'
        )
    lines.extend(["  </graph>", "</graphml>"])
    return "\n".join(lines) + "\n"


def _write_csv_pair(g: ActivityGraph, directory: Path) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    with open(directory / "nodes.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["id", "account"])
        for i, name in enumerate(g.names):
            writer.writerow([i, name])
    with open(directory / "edges.csv", "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["src", "dst", "weight", "multiplicity"])
        for s, d, w, m in zip(g.src, g.dst, g.weight, g.multiplicity):
            writer.writerow([int(s), int(d), format_weight(int(w), g.activity), int(m)])


def export_graph(g: ActivityGraph, fmt: str, out: str | Path) -> None:
    """Write ``g`` as dot/graphml (single file) or csv (directory with two files)."""
    out = Path(out)
    if fmt == "dot":
        out.write_text(_dot_text(g), encoding="utf-8")
    elif fmt == "graphml":
        out.write_text(_graphml_text(g), encoding="utf-8")
    elif fmt == "csv":
        _write_csv_pair(g, out)
    else:
        raise EosGraphError("unsupported-format", f"unknown export format {fmt!r}")


def import_csv_graph(directory: str | Path, activity: Activity) -> ActivityGraph:
    """Rebuild a graph from a nodes.csv/edges.csv pair written by export_graph."""
    directory = Path(directory)
    names_by_id: dict[int, str] = {}
    with open(directory / "nodes.csv", "r", encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            names_by_id[int(row["id"])] = row["account"]
    names = [names_by_id[i] for i in range(len(names_by_id))]
    order = sorted(names)
    rank = {name: i for i, name in enumerate(order)}
    remap = {old_id: rank[name] for old_id, name in names_by_id.items()}
    src, dst, weight, mult = [], [], [], []
    with open(directory / "edges.csv", "r", encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            src.append(remap[int(row["src"])])
            dst.append(remap[int(row["dst"])])
            weight.append(parse_weight(row["weight"], activity))
            mult.append(int(row["multiplicity"]))
    return ActivityGraph.from_arrays(
        activity,
        order,
        np.asarray(src, np.int64),
        np.asarray(dst, np.int64),
        np.asarray(weight, np.int64),
        np.asarray(mult, np.int64),
    )


def export_degree_histograms(g: ActivityGraph, directory: str | Path) -> None:
    """Plot-ready CSVs: (degree, count, fitted_count) per distribution."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    total, inbound, outbound = degree_views(g)
    for name, hist in (("total", total), ("in", inbound), ("out", outbound)):
        fit = _fit_or_none(hist)
        with open(directory / f"degree_{name}.csv", "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["degree", "count", "fitted_count"])
            for degree in sorted(hist):
                fitted = ""
                if fit is not None and degree >= 1:
                    fitted = repr(fit.fitted_count(degree))
                writer.writerow([degree, hist[degree], fitted])
