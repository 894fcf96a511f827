"""Activity-specific graph construction with validation and diagnostics.

Each builder wraps build_graph with the structural rules of its activity and
emits BuildDiagnostics: rule violations (anomaly indicators), notable
accounts, and graph-level stats. Diagnostics are pure functions of the built
graph, so they can be recomputed from a serialized graph at any time.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from . import _kernels
from .errors import GraphBuildError
from .graph import ActivityGraph, build_graph
from .ingest import Activity, ActivityEvent
from .metrics import scc

DEFAULT_SPAM_THRESHOLD = 0.5
TOP_ACCOUNTS = 5


@dataclass(frozen=True)
class Violation:
    rule: str
    accounts: tuple[str, ...]
    count: int


@dataclass(frozen=True)
class Notable:
    account: str
    statistic: str
    value: float


@dataclass
class BuildDiagnostics:
    """Machine checks derived from one built graph."""

    activity: str
    violations: list[Violation] = field(default_factory=list)
    notable_accounts: list[Notable] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "activity": self.activity,
            "violations": [
                {"rule": v.rule, "accounts": list(v.accounts), "count": v.count}
                for v in self.violations
            ],
            "notable_accounts": [
                {"account": n.account, "statistic": n.statistic, "value": n.value}
                for n in self.notable_accounts
            ],
            "stats": self.stats,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


def _top_accounts(g: ActivityGraph, values: np.ndarray, statistic: str, k: int) -> list[Notable]:
    k = min(k, g.node_count)
    if k == 0:
        return []
    order = np.lexsort((np.arange(g.node_count), -values))[:k]
    return [Notable(g.names[int(i)], statistic, float(values[int(i)])) for i in order]


# --- account creation ---------------------------------------------------------

def build_acg(events: Iterable[ActivityEvent]) -> tuple[ActivityGraph, BuildDiagnostics]:
    """Build and validate the account creation graph (must be a single tree)."""
    g = build_graph(events, Activity.ACCOUNT_CREATION)
    diag = BuildDiagnostics(activity=Activity.ACCOUNT_CREATION.value)
    if g.node_count == 0:
        diag.stats.update({"root": None, "tree_height": 0})
        return g, diag

    indptr, indices = g.out_csr()
    labels, ncomp = _kernels.scc_labels(indptr, indices)
    if np.bincount(labels, minlength=ncomp).max() > 1:
        raise GraphBuildError("cycle-detected", "creation events form a cycle")
    roots = np.flatnonzero(g.in_degrees() == 0)
    if roots.shape[0] == 0:
        raise GraphBuildError("cycle-detected", "no root account (creation cycle)")
    if roots.shape[0] > 1:
        names = ", ".join(g.names[int(r)] for r in roots[:5])
        raise GraphBuildError("multiple-roots", f"{roots.shape[0]} creation roots: {names}")

    root = int(roots[0])
    depth = np.empty(g.node_count, np.int64)
    queue = np.empty(g.node_count, np.int64)
    reached = _kernels.tree_depths(indptr, indices, root, depth, queue)
    if reached != g.node_count:
        # single root + acyclic + indegree<=1 implies connectivity; kept as a guard
        raise GraphBuildError("cycle-detected", "creation graph is not connected")
    diag.stats.update({"root": g.names[root], "tree_height": int(depth.max())})
    diag.notable_accounts = _top_accounts(g, g.out_degrees(), "accounts_created", TOP_ACCOUNTS)
    return g, diag


# --- account vote ---------------------------------------------------------------

def build_avg(events: Iterable[ActivityEvent]) -> tuple[ActivityGraph, BuildDiagnostics]:
    """Build the account vote graph; flag self-votes and mutual-vote gangs."""
    g = build_graph(events, Activity.ACCOUNT_VOTE)
    diag = BuildDiagnostics(activity=Activity.ACCOUNT_VOTE.value)

    self_votes = np.flatnonzero(g.src == g.dst)
    for i in self_votes:
        diag.violations.append(
            Violation("self-vote", (g.names[int(g.src[i])],), int(g.multiplicity[i]))
        )

    # voting gangs: accounts that mutually vote manifest as SCCs of size >= 2
    gangs = [c for c in scc(g) if c.size >= 2]
    gang_names: list[list[str]] = []
    for comp in gangs:
        members = tuple(sorted(g.names[i] for i in comp.members))
        gang_names.append(list(members))
        diag.violations.append(Violation("voting-gang", members, comp.size))

    mutual_pairs = _mutual_pair_count(g)
    diag.stats.update(
        {
            "self_vote_edges": int(self_votes.shape[0]),
            "mutual_vote_pairs": mutual_pairs,
            "voting_gangs": gang_names,
            "largest_voting_gang": max((len(m) for m in gang_names), default=0),
        }
    )
    diag.notable_accounts = _top_accounts(
        g, np.bincount(g.dst, weights=g.weight, minlength=g.node_count), "votes_received", TOP_ACCOUNTS
    )
    return g, diag


def _mutual_pair_count(g: ActivityGraph) -> int:
    """Number of unordered pairs {u, v} with both u->v and v->u, u != v."""
    mask = g.src != g.dst
    fwd = set(map(tuple, np.stack([g.src[mask], g.dst[mask]], axis=1).tolist()))
    return sum(1 for (u, v) in fwd if u < v and (v, u) in fwd)


# --- money transfer ---------------------------------------------------------------

def build_mtg(events: Iterable[ActivityEvent]) -> tuple[ActivityGraph, BuildDiagnostics]:
    """Build the money transfer graph; surface hub candidates."""
    g = build_graph(events, Activity.MONEY_TRANSFER)
    diag = BuildDiagnostics(activity=Activity.MONEY_TRANSFER.value)
    weighted_degree = np.bincount(g.src, weights=g.weight, minlength=g.node_count) + np.bincount(
        g.dst, weights=g.weight, minlength=g.node_count
    )
    diag.notable_accounts = _top_accounts(g, weighted_degree, "weighted_degree", TOP_ACCOUNTS)
    diag.stats.update(
        {
            "total_transferred_units": g.total_weight,
            "events_per_edge": (g.total_events / g.edge_count) if g.edge_count else 0.0,
            "zero_weight_edges": int((g.weight == 0).sum()) if g.edge_count else 0,
        }
    )
    return g, diag


# --- contract authorization ---------------------------------------------------------

def _incident_weight(g: ActivityGraph) -> np.ndarray:
    """Per-account sum of weights of edges it touches (self-loops once)."""
    w = np.bincount(g.src, weights=g.weight, minlength=g.node_count) + np.bincount(
        g.dst, weights=g.weight, minlength=g.node_count
    )
    loops = g.src == g.dst
    if loops.any():
        w -= np.bincount(g.src[loops], weights=g.weight[loops], minlength=g.node_count)
    return w


def build_cag(
    events: Iterable[ActivityEvent], spam_threshold: float = DEFAULT_SPAM_THRESHOLD
) -> tuple[ActivityGraph, BuildDiagnostics]:
    """Build the contract authorization graph; flag weight-hogging accounts.

    Any account whose incident-edge weight share of the whole graph exceeds
    ``spam_threshold`` is reported, mirroring pressure-test spam contracts.
    """
    g = build_graph(events, Activity.CONTRACT_AUTHORIZATION)
    diag = BuildDiagnostics(activity=Activity.CONTRACT_AUTHORIZATION.value)
    total = g.total_weight
    incident = _incident_weight(g)
    shares = incident / total if total else incident.astype(np.float64)
    for i in np.flatnonzero(shares > spam_threshold):
        account = g.names[int(i)]
        diag.violations.append(Violation("spam-weight-share", (account,), int(incident[int(i)])))
        diag.notable_accounts.append(Notable(account, "weight_share", float(shares[int(i)])))
    loops = g.src == g.dst
    diag.stats.update(
        {
            "spam_threshold": spam_threshold,
            "self_authorization_edges": int(loops.sum()) if g.edge_count else 0,
            "self_authorization_events": int(g.multiplicity[loops].sum()) if g.edge_count else 0,
        }
    )
    diag.notable_accounts.extend(_top_accounts(g, incident, "incident_weight", TOP_ACCOUNTS))
    return g, diag


BUILDERS = {
    Activity.ACCOUNT_CREATION: build_acg,
    Activity.ACCOUNT_VOTE: build_avg,
    Activity.MONEY_TRANSFER: build_mtg,
    Activity.CONTRACT_AUTHORIZATION: build_cag,
}
