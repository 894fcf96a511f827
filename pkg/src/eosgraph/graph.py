"""Weighted directed simple graphs aggregated from activity events.

Parallel events between the same ordered account pair collapse into a single
edge carrying (weight, multiplicity). Node ids are dense integers assigned by
lexicographic account-name rank at build time, so the same event multiset
always produces the same serialized graph regardless of stream order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import GraphBuildError
from .ingest import Activity, ActivityEvent

GRAPH_FORMAT = "eosgraph.graph"
GRAPH_VERSION = 1


@dataclass(frozen=True)
class UndirectedGraph:
    """Simple undirected projection: u-v iff u->v or v->u, self-loops dropped."""

    node_count: int
    indptr: np.ndarray  # CSR over both edge directions, neighbors sorted
    indices: np.ndarray
    pairs: np.ndarray  # (E, 2) unique undirected edges with u < v

    @property
    def edge_count(self) -> int:
        return int(self.pairs.shape[0])

    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)


class ActivityGraph:
    """Aggregated weighted digraph for one activity.

    Edge arrays are canonically sorted by (src, dst); all four arrays are
    int64 and immutable after construction.
    """

    def __init__(
        self,
        activity: Activity,
        names: Sequence[str],
        src: np.ndarray,
        dst: np.ndarray,
        weight: np.ndarray,
        multiplicity: np.ndarray,
    ):
        self.activity = activity
        self.names = tuple(names)
        self.src = src
        self.dst = dst
        self.weight = weight
        self.multiplicity = multiplicity
        self._index = {name: i for i, name in enumerate(self.names)}
        self._out_csr: tuple[np.ndarray, np.ndarray] | None = None
        self._undirected: UndirectedGraph | None = None
        for arr in (src, dst, weight, multiplicity):
            arr.setflags(write=False)

    # -- totals ---------------------------------------------------------
    @property
    def node_count(self) -> int:
        return len(self.names)

    @property
    def edge_count(self) -> int:
        return int(self.src.shape[0])

    @property
    def total_weight(self) -> int:
        return int(self.weight.sum()) if self.edge_count else 0

    @property
    def total_events(self) -> int:
        return int(self.multiplicity.sum()) if self.edge_count else 0

    def node_id(self, name: str) -> int:
        return self._index[name]

    def __eq__(self, other) -> bool:
        if not isinstance(other, ActivityGraph):
            return NotImplemented
        return (
            self.activity == other.activity
            and self.names == other.names
            and np.array_equal(self.src, other.src)
            and np.array_equal(self.dst, other.dst)
            and np.array_equal(self.weight, other.weight)
            and np.array_equal(self.multiplicity, other.multiplicity)
        )

    def __repr__(self) -> str:
        return (
            f"ActivityGraph({self.activity.value}, nodes={self.node_count}, "
            f"edges={self.edge_count}, events={self.total_events})"
        )

    # -- construction -----------------------------------------------------
    @classmethod
    def from_aggregated(
        cls, activity: Activity, aggregated: Mapping[tuple[str, str], tuple[int, int]]
    ) -> "ActivityGraph":
        """Build from {(source, target): (weight, multiplicity)}."""
        name_set: set[str] = set()
        for s, t in aggregated:
            name_set.add(s)
            name_set.add(t)
        names = sorted(name_set)
        index = {name: i for i, name in enumerate(names)}
        m = len(aggregated)
        src = np.empty(m, np.int64)
        dst = np.empty(m, np.int64)
        weight = np.empty(m, np.int64)
        mult = np.empty(m, np.int64)
        for i, ((s, t), (w, k)) in enumerate(aggregated.items()):
            src[i] = index[s]
            dst[i] = index[t]
            weight[i] = w
            mult[i] = k
        order = np.lexsort((dst, src))
        return cls(activity, names, src[order], dst[order], weight[order], mult[order])

    @classmethod
    def from_arrays(
        cls,
        activity: Activity,
        names: Sequence[str],
        src: np.ndarray,
        dst: np.ndarray,
        weight: np.ndarray,
        multiplicity: np.ndarray,
    ) -> "ActivityGraph":
        """Build from pre-aggregated edge arrays (node ids into ``names``)."""
        names = list(names)
        if sorted(names) != names or len(set(names)) != len(names):
            raise ValueError("names must be unique and sorted")
        src = np.asarray(src, np.int64)
        dst = np.asarray(dst, np.int64)
        weight = np.asarray(weight, np.int64)
        multiplicity = np.asarray(multiplicity, np.int64)
        keys = src * len(names) + dst
        if np.unique(keys).shape[0] != keys.shape[0]:
            raise ValueError("duplicate (src, dst) pairs; aggregate first")
        order = np.lexsort((dst, src))
        return cls(activity, names, src[order], dst[order], weight[order], multiplicity[order])

    # -- derived views ------------------------------------------------------
    def out_degrees(self) -> np.ndarray:
        return np.bincount(self.src, minlength=self.node_count).astype(np.int64)

    def in_degrees(self) -> np.ndarray:
        return np.bincount(self.dst, minlength=self.node_count).astype(np.int64)

    def out_csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Directed adjacency (indptr, indices); neighbors sorted per row."""
        if self._out_csr is None:
            indptr = np.zeros(self.node_count + 1, np.int64)
            np.add.at(indptr, self.src + 1, 1)
            np.cumsum(indptr, out=indptr)
            # edges already sorted by (src, dst) so dst is row-sorted
            self._out_csr = (indptr, self.dst.copy())
        return self._out_csr

    def undirected_projection(self) -> UndirectedGraph:
        """Simple undirected view hosting clustering/WCC/diameter metrics."""
        if self._undirected is None:
            n = self.node_count
            mask = self.src != self.dst
            lo = np.minimum(self.src[mask], self.dst[mask])
            hi = np.maximum(self.src[mask], self.dst[mask])
            if lo.shape[0]:
                enc = np.unique(lo * np.int64(n) + hi)
                lo, hi = enc // n, enc % n
            pairs = np.stack([lo, hi], axis=1) if lo.shape[0] else np.empty((0, 2), np.int64)
            ends = np.concatenate([lo, hi])
            other = np.concatenate([hi, lo])
            indptr = np.zeros(n + 1, np.int64)
            np.add.at(indptr, ends + 1, 1)
            np.cumsum(indptr, out=indptr)
            order = np.lexsort((other, ends))
            self._undirected = UndirectedGraph(n, indptr, other[order], pairs)
        return self._undirected


def build_graph(events: Iterable[ActivityEvent], activity: Activity) -> ActivityGraph:
    """Aggregate an event stream into its activity graph.

    Creation graphs additionally reject self-creations and any second
    creation of an existing target, which makes indegree <= 1 structural.
    """
    is_creation = activity is Activity.ACCOUNT_CREATION
    aggregated: dict[tuple[str, str], list[int]] = {}
    created: set[str] = set()
    for event in events:
        if event.activity is not activity:
            raise GraphBuildError(
                "mixed-activity-stream",
                f"expected {activity.value} events, got {event.activity.value}",
            )
        if is_creation:
            if event.source == event.target:
                raise GraphBuildError("self-creation", f"{event.target!r} created by itself")
            if event.target in created:
                raise GraphBuildError("duplicate-creation", f"{event.target!r} created twice")
            created.add(event.target)
        slot = aggregated.get((event.source, event.target))
        if slot is None:
            aggregated[(event.source, event.target)] = [event.weight, 1]
        else:
            slot[0] += event.weight
            slot[1] += 1
    return ActivityGraph.from_aggregated(
        activity, {k: (v[0], v[1]) for k, v in aggregated.items()}
    )


DegreeHistogram = dict[int, int]


def _histogram(values: np.ndarray) -> DegreeHistogram:
    uniq, counts = np.unique(values, return_counts=True)
    return {int(k): int(c) for k, c in zip(uniq, counts)}


def degree_views(g: ActivityGraph) -> tuple[DegreeHistogram, DegreeHistogram, DegreeHistogram]:
    """(total, in, out) degree histograms; degrees count aggregated edges.

    A self-loop contributes 1 to indegree, 1 to outdegree, 2 to total degree.
    """
    indeg = g.in_degrees()
    outdeg = g.out_degrees()
    return _histogram(indeg + outdeg), _histogram(indeg), _histogram(outdeg)


# --- serialization ----------------------------------------------------------

def graph_to_bytes(g: ActivityGraph) -> bytes:
    """Canonical JSON serialization; bit-exact round trip with graph_from_bytes."""
    doc = {
        "format": GRAPH_FORMAT,
        "version": GRAPH_VERSION,
        "activity": g.activity.value,
        "nodes": list(g.names),
        "edges": [
            [int(s), int(d), int(w), int(m)]
            for s, d, w, m in zip(g.src, g.dst, g.weight, g.multiplicity)
        ],
    }
    return json.dumps(doc, separators=(",", ":")).encode("utf-8")


def graph_from_bytes(data: bytes) -> ActivityGraph:
    doc = json.loads(data.decode("utf-8"))
    if doc.get("format") != GRAPH_FORMAT:
        raise ValueError(f"not a graph file (format={doc.get('format')!r})")
    if doc.get("version") != GRAPH_VERSION:
        raise ValueError(f"unsupported graph version {doc.get('version')!r}")
    activity = Activity(doc["activity"])
    names = doc["nodes"]
    edges = doc["edges"]
    m = len(edges)
    src = np.empty(m, np.int64)
    dst = np.empty(m, np.int64)
    weight = np.empty(m, np.int64)
    mult = np.empty(m, np.int64)
    for i, (s, d, w, k) in enumerate(edges):
        src[i], dst[i], weight[i], mult[i] = s, d, w, k
    return ActivityGraph.from_arrays(activity, names, src, dst, weight, mult)


def save_graph(g: ActivityGraph, path: str | Path) -> None:
    Path(path).write_bytes(graph_to_bytes(g))


def load_graph(path: str | Path) -> ActivityGraph:
    return graph_from_bytes(Path(path).read_bytes())
