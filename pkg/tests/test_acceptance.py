"""Acceptance criteria, one test (or test pair) per criterion.

Each criterion prints a PASS/FAIL line (visible under ``pytest -s``) before
asserting, so a full run doubles as the acceptance report.

Criterion 3's preferential-attachment clause is expected to fail: a raw
log-log least-squares fit of a sampled 10k-node preferential-attachment
degree histogram cannot land within 0.3 of the process exponent 3 (the
measured fits sit near -2.0 and even the noise-free expected histogram fits
at -2.59). See the analysis in the project notes; the test states the
criterion faithfully and is kept red rather than loosened.
"""

import json
import random
import resource
import time

import numpy as np

import oracles
from conftest import graph_from_edges
from eosgraph import (
    Activity,
    ActivityGraph,
    assortativity,
    build_acg,
    build_avg,
    build_cag,
    build_mtg,
    clustering_coefficient,
    fit_power_law,
    full_report,
    gen_auth_corpus,
    gen_creation_tree,
    gen_transfer_corpus,
    gen_vote_corpus,
    graph_to_bytes,
    import_csv_graph,
    ingest_corpus,
    load_graph,
    scc,
    wcc,
    wcc_diameters,
    write_corpus,
)
from eosgraph.cli import main as cli_main


def announce(criterion: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"ACCEPTANCE {criterion}: {status}{suffix}")


# --- criterion 1: tree laws -----------------------------------------------------

def test_criterion_1_tree_laws(tmp_path):
    results = []
    runtime_100k = None
    for n in (10, 1_000, 100_000):
        t0 = time.perf_counter()
        records, _ = gen_creation_tree(n, "preferential", seed=n)
        trace = tmp_path / f"tree{n}.jsonl"
        write_corpus(records, trace)
        events, stats = ingest_corpus(trace)
        g, _ = build_acg(events)
        indeg = g.in_degrees()
        checks = {
            "edges": g.edge_count == n - 1,
            "one_root": int((indeg == 0).sum()) == 1,
            "clustering": clustering_coefficient(g) == 0.0,
            "largest_scc": max(c.size for c in scc(g)) == 1,
            "wcc_count": len(wcc(g)) == 1,
        }
        elapsed = time.perf_counter() - t0
        if n == 100_000:
            runtime_100k = elapsed
        results.append(all(checks.values()))
    ok = all(results) and runtime_100k < 10.0
    announce("1 tree laws", ok, f"100k runtime {runtime_100k:.2f}s")
    assert all(results)
    assert runtime_100k < 10.0


# --- criterion 2: oracle equivalence -----------------------------------------------

def test_criterion_2_oracle_equivalence():
    t0 = time.perf_counter()
    checked_assort = 0
    for seed in range(200):
        n, edges = oracles.random_digraph(seed, max_nodes=300)
        g = graph_from_edges(edges)
        assert g.node_count == n

        assert {frozenset(c.members) for c in scc(g)} == oracles.scc_partition(n, edges), seed
        assert {frozenset(c.members) for c in wcc(g)} == oracles.wcc_partition(n, edges), seed

        expected_diams = oracles.component_diameters(n, edges)
        _, _, per_wcc = wcc_diameters(g)
        assert {frozenset(c.members): c.diameter for c in per_wcc} == expected_diams, seed

        assert abs(clustering_coefficient(g) - oracles.average_local_clustering(n, edges)) <= 1e-9, seed

        expected_assort = oracles.degree_assortativity(n, edges)
        actual_assort = assortativity(g)
        if expected_assort is None:
            assert actual_assort is None, seed
        else:
            assert abs(actual_assort - expected_assort) <= 1e-9, seed
            checked_assort += 1
    elapsed = time.perf_counter() - t0
    ok = elapsed < 60.0 and checked_assort > 100
    announce("2 oracle equivalence", ok, f"200 graphs in {elapsed:.1f}s")
    assert elapsed < 60.0


# --- criterion 3: power-law fit recovery ---------------------------------------------

def test_criterion_3_exact_histograms():
    t0 = time.perf_counter()
    ok = True
    details = []
    for alpha in (-1.5, -2.0, -3.0):
        hist = {}
        for k in range(1, 60):
            count = round(1_000_000 * k**alpha)
            if count >= 1:
                hist[k] = count
        fit = fit_power_law(hist)
        details.append(f"alpha {alpha}: fitted {fit.alpha:.4f} r2 {fit.r_squared:.4f}")
        ok &= abs(fit.alpha - alpha) <= 0.05 and fit.r_squared >= 0.99
    elapsed = time.perf_counter() - t0
    ok &= elapsed < 10.0
    announce("3a exact-histogram fits", ok, "; ".join(details))
    assert ok


def test_criterion_3_preferential_attachment_recovery(tmp_path):
    # Known-red criterion: raw log-log OLS on a sampled 10k-node
    # preferential-attachment degree histogram lands near -2.0, never within
    # 0.3 of the process exponent 3 (the noise-free expected histogram already
    # fits at -2.59). Kept faithful to the stated tolerance instead of loosened.
    t0 = time.perf_counter()
    records, truth = gen_creation_tree(10_000, "preferential", seed=101)
    trace = tmp_path / "pa.jsonl"
    write_corpus(records, trace)
    events, _ = ingest_corpus(trace)
    g, _ = build_acg(events)
    from eosgraph import degree_views

    total_hist, _, _ = degree_views(g)
    fit = fit_power_law(total_hist)
    theoretical = -truth["theoretical_degree_exponent"]
    elapsed = time.perf_counter() - t0
    ok = abs(fit.alpha - theoretical) <= 0.3 and elapsed < 10.0
    announce(
        "3b preferential-attachment recovery",
        ok,
        f"fitted {fit.alpha:.3f} vs theoretical {theoretical} (r2 {fit.r_squared:.3f})",
    )
    assert abs(fit.alpha - theoretical) <= 0.3
    assert elapsed < 10.0


# --- criterion 4: planted-structure detection ----------------------------------------

def test_criterion_4_planted_structures(tmp_path):
    # 18-member mutual-vote gang
    records, truth = gen_vote_corpus(60, 12, gang_sizes=(18,), seed=77)
    trace = tmp_path / "votes.jsonl"
    write_corpus(records, trace)
    events, _ = ingest_corpus(trace)
    g_avg, diag_avg = build_avg(events)
    gang_ok = (
        max(c.size for c in scc(g_avg)) == 18
        and diag_avg.stats["voting_gangs"] == truth["gangs"]
    )

    # 95%-weight spam contract
    records, truth = gen_auth_corpus(30, 10, spam_share=0.95, seed=78)
    trace = tmp_path / "auth.jsonl"
    write_corpus(records, trace)
    events, _ = ingest_corpus(trace)
    _, diag_cag = build_cag(events)
    spam = [v for v in diag_cag.violations if v.rule == "spam-weight-share"]
    spam_ok = len(spam) == 1 and spam[0].accounts == (truth["spam_account"],)

    # 40-node transfer cycle
    records, truth = gen_transfer_corpus((30, 20), seed=79, sham_cycle=40)
    trace = tmp_path / "transfers.jsonl"
    write_corpus(records, trace)
    events, _ = ingest_corpus(trace)
    g_mtg, _ = build_mtg(events)
    largest = max(scc(g_mtg), key=lambda c: c.size)
    cycle_ok = largest.size >= 40 and {g_mtg.names[i] for i in largest.members} == set(
        truth["sham_cycle"]
    )

    ok = gang_ok and spam_ok and cycle_ok
    announce("4 planted structures", ok, f"gang={gang_ok} spam={spam_ok} cycle={cycle_ok}")
    assert gang_ok and spam_ok and cycle_ok


# --- criterion 5: accounting identities ------------------------------------------------

def test_criterion_5_accounting_identities(tmp_path):
    # mixed fixture: event counts flow through to graph totals
    records = []
    records += gen_creation_tree(200, "uniform", seed=5)[0]
    records += gen_vote_corpus(30, 8, gang_sizes=(4,), seed=6)[0]
    records += gen_transfer_corpus((20, 15), seed=7, sham_cycle=6)[0]
    records += gen_auth_corpus(25, 6, spam_share=0.6, self_auth=2, seed=8)[0]
    for i, record in enumerate(records):
        record["tx_id"] = format(i, "064x")
    trace = tmp_path / "mixed.jsonl"
    write_corpus(records, trace)
    events, stats = ingest_corpus(trace)
    by_activity = {
        Activity.ACCOUNT_CREATION: build_acg,
        Activity.ACCOUNT_VOTE: build_avg,
        Activity.MONEY_TRANSFER: build_mtg,
        Activity.CONTRACT_AUTHORIZATION: build_cag,
    }
    counts_ok = True
    for activity, builder in by_activity.items():
        subset = [e for e in events if e.activity is activity]
        g, _ = builder(subset)
        counts_ok &= g.total_events == stats.event_count(activity) == len(subset)

    # 1M transfers, exact fixed-point weight sum (streamed to keep memory flat)
    rng = random.Random(99)
    trace = tmp_path / "million.jsonl"
    expected_units = 0
    n_lines = 1_000_000
    accounts = [f"acct{oracles.fixed_name(i)[1:]}" for i in range(500)]
    with open(trace, "w", encoding="utf-8") as fh:
        for i in range(n_lines):
            units = rng.randrange(1, 10**9)
            expected_units += units
            src = accounts[rng.randrange(500)]
            dst = accounts[rng.randrange(500)]
            quantity = f"{units // 10000}.{units % 10000:04d} EOS"
            fh.write(
                json.dumps(
                    {
                        "block_num": i // 100,
                        "tx_id": format(i, "064x"),
                        "action_index": 0,
                        "kind": "calling",
                        "contract": "eosio.token",
                        "action_name": "transfer",
                        "authorizer": src,
                        "payload": {"from": src, "to": dst, "quantity": quantity},
                    },
                    separators=(",", ":"),
                )
            )
            fh.write("\n")
    events, stats = ingest_corpus(trace)
    g, _ = build_mtg(events)
    weight_ok = (
        g.total_weight == expected_units
        and g.total_events == n_lines
        and stats.event_count(Activity.MONEY_TRANSFER) == n_lines
    )
    ok = counts_ok and weight_ok
    announce("5 accounting identities", ok, f"1M-transfer sum exact={weight_ok}")
    assert counts_ok
    assert weight_ok


# --- criterion 6: determinism -------------------------------------------------------

def test_criterion_6_determinism(tmp_path, capsys):
    records = []
    records += gen_creation_tree(150, "preferential", seed=21)[0]
    records += gen_vote_corpus(25, 6, gang_sizes=(3,), seed=22)[0]
    records += gen_transfer_corpus((12, 9), seed=23, sham_cycle=5)[0]
    records += gen_auth_corpus(15, 5, spam_share=0.8, seed=24)[0]
    for i, record in enumerate(records):
        record["tx_id"] = format(i, "064x")
    trace = tmp_path / "trace.jsonl"
    write_corpus(records, trace)

    outputs = []
    for run_id in ("one", "two"):
        base = tmp_path / run_id
        store = base / "store"
        assert cli_main(["ingest", "--input", str(trace), "--out", str(store)]) == 0
        collected = {}
        for activity in Activity:
            collected[f"events_{activity.value}"] = (
                store / f"events_{activity.value}.jsonl"
            ).read_bytes()
        collected["stats"] = (store / "stats.json").read_bytes()
        for code in ("acg", "avg", "mtg", "cag"):
            gpath = base / f"{code}.json"
            assert cli_main(["build", "--events", str(store), "--activity", code, "--out", str(gpath)]) == 0
            collected[f"graph_{code}"] = gpath.read_bytes()
            collected[f"diag_{code}"] = (base / f"{code}.json.diagnostics.json").read_bytes()
            capsys.readouterr()
            assert cli_main(["metrics", "--graph", str(gpath), "--format", "json"]) == 0
            collected[f"metrics_json_{code}"] = capsys.readouterr().out
            assert cli_main(["metrics", "--graph", str(gpath), "--format", "table"]) == 0
            collected[f"metrics_table_{code}"] = capsys.readouterr().out
        mpath = base / "mtg.json"
        spath = base / "sample.json"
        assert cli_main(["sample", "--graph", str(mpath), "--edges", "15", "--seed", "9", "--out", str(spath)]) == 0
        collected["sample"] = spath.read_bytes()
        for fmt, name in (("dot", "g.dot"), ("graphml", "g.graphml")):
            assert cli_main(["export", "--graph", str(spath), "--format", fmt, "--out", str(base / name)]) == 0
            collected[f"export_{fmt}"] = (base / name).read_bytes()
        assert cli_main(["export", "--graph", str(spath), "--format", "csv", "--out", str(base / "csvdir")]) == 0
        collected["export_nodes"] = (base / "csvdir" / "nodes.csv").read_bytes()
        collected["export_edges"] = (base / "csvdir" / "edges.csv").read_bytes()
        report_dir = base / "report"
        assert cli_main(["report", "--events", str(store), "--out", str(report_dir)]) == 0
        for name in ("metrics.json", "metrics.txt", "action_stats.txt", "action_stats.json"):
            collected[f"report_{name}"] = (report_dir / name).read_bytes()
        outputs.append(collected)
    capsys.readouterr()  # swallow CLI stdout

    mismatched = [k for k in outputs[0] if outputs[0][k] != outputs[1][k]]

    # csv export/import round trip restores an identical graph
    g = load_graph(tmp_path / "one" / "sample.json")
    reimported = import_csv_graph(tmp_path / "one" / "csvdir", Activity.MONEY_TRANSFER)
    round_trip_ok = reimported == g and graph_to_bytes(reimported) == graph_to_bytes(g)

    ok = not mismatched and round_trip_ok
    announce("6 determinism", ok, f"{len(outputs[0])} artifacts compared")
    assert mismatched == []
    assert round_trip_ok


# --- criterion 7: performance contract -------------------------------------------------

def _synthetic_mtg_scale(n_nodes=205_000, n_edges=1_370_000, seed=12345) -> ActivityGraph:
    """Community-structured random digraph at money-transfer-graph scale."""
    rng = np.random.default_rng(seed)
    comm_count = 800
    comm = rng.integers(0, comm_count, n_nodes)
    order = np.argsort(comm, kind="stable")
    draw = int(n_edges * 1.6)
    # 75% intra-community edges, 25% global; a hub node per community
    intra = int(draw * 0.75)
    comm_sizes = np.bincount(comm, minlength=comm_count)
    comm_starts = np.zeros(comm_count + 1, np.int64)
    np.cumsum(comm_sizes, out=comm_starts[1:])
    pick_comm = rng.integers(0, comm_count, intra)
    lo = comm_starts[pick_comm]
    span = comm_sizes[pick_comm]
    src_i = order[lo + (rng.random(intra) * span).astype(np.int64)]
    hubs = order[comm_starts[:-1]]
    is_hub_edge = rng.random(intra) < 0.5
    dst_i = order[lo + (rng.random(intra) * span).astype(np.int64)]
    dst_i = np.where(is_hub_edge, hubs[pick_comm], dst_i)
    glob = draw - intra
    src_g = rng.integers(0, n_nodes, glob)
    dst_g = hubs[rng.integers(0, comm_count, glob)]
    src = np.concatenate([src_i, src_g])
    dst = np.concatenate([dst_i, dst_g])
    keep = src != dst
    src, dst = src[keep], dst[keep]
    enc = np.unique(src * np.int64(n_nodes) + dst)
    enc = enc[:n_edges]
    src, dst = enc // n_nodes, enc % n_nodes
    present = np.unique(np.concatenate([src, dst]))
    remap = np.zeros(n_nodes, np.int64)
    remap[present] = np.arange(present.shape[0])
    names = [oracles.fixed_name(int(i)) for i in range(present.shape[0])]
    weight = rng.integers(1, 10**7, src.shape[0])
    mult = rng.integers(1, 12, src.shape[0])
    return ActivityGraph.from_arrays(
        Activity.MONEY_TRANSFER, names, remap[src], remap[dst], weight, mult.astype(np.int64)
    )


def test_criterion_7_performance():
    g = _synthetic_mtg_scale()
    assert g.node_count > 195_000
    assert g.edge_count > 1_300_000

    t0 = time.perf_counter()
    sccs = scc(g)
    wccs = wcc(g)
    components_elapsed = time.perf_counter() - t0

    t0 = time.perf_counter()
    report = full_report(g)
    report_elapsed = time.perf_counter() - t0

    max_rss_gb = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss / (1024**2)
    ok = components_elapsed < 5.0 and report_elapsed < 300.0 and max_rss_gb < 4.0
    announce(
        "7 performance",
        ok,
        f"scc+wcc {components_elapsed:.2f}s, full report {report_elapsed:.1f}s, "
        f"peak rss {max_rss_gb:.2f} GiB, diameter {report.largest_wcc_diameter}",
    )
    assert report.node_count == g.node_count
    assert len(sccs) >= 1 and len(wccs) >= 1
    assert components_elapsed < 5.0
    assert report_elapsed < 300.0
    assert max_rss_gb < 4.0
