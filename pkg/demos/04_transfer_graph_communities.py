"""
Money transfer graph: communities, hubs, sham cycles, power laws
================================================================

Transfer activity aggregates into a weighted digraph where an edge carries
the total EOS moved between two accounts (exact 0.0001-EOS units, no float
drift) and how many transfers contributed. This script builds a
community-structured corpus with hub accounts and a planted 40-account
value loop, then reads the standard signals off the graph: the loop as the
largest SCC, hubs at the top of weighted degree, negative assortativity,
and the degree distributions with their log-log fits (hub spokes give the
total and outdegree views their long tails).
"""

import tempfile
from pathlib import Path

from eosgraph import (
    build_mtg,
    degree_views,
    fit_power_law,
    full_report,
    gen_transfer_corpus,
    ingest_corpus,
    metrics_table,
    write_corpus,
)

out = Path(tempfile.mkdtemp(prefix="eosgraph_demo_"))

records, truth = gen_transfer_corpus(
    community_sizes=(400, 250, 150, 80), seed=9,
    transfers_per_member=5, inter_community_edges=60, sham_cycle=40,
)
trace = out / "transfers.jsonl"
write_corpus(records, trace)
events, stats = ingest_corpus(trace)
graph, diagnostics = build_mtg(events)

print(f"{graph.node_count} accounts, {graph.edge_count} edges, "
      f"{graph.total_events} transfers")
print(f"exact total moved: {graph.total_weight} units "
      f"= {graph.total_weight / 10_000:.4f} EOS (matches generator: "
      f"{graph.total_weight == truth['total_units']})")
print(f"transfers per edge: {diagnostics.stats['events_per_edge']:.2f}")

print("\ntop accounts by weighted degree (hubs):")
for notable in diagnostics.notable_accounts[:4]:
    print(f"  {notable.account:<14} {int(notable.value):>14} units")

report = full_report(graph)
print(f"\nlargest SCC: {report.largest_scc} (planted value loop of "
      f"{len(truth['sham_cycle'])} accounts)")
print(metrics_table([report]))

total_hist, in_hist, out_hist = degree_views(graph)
for name, hist in (("degree", total_hist), ("indegree", in_hist), ("outdegree", out_hist)):
    h = {k: v for k, v in hist.items() if k >= 1}
    fit = fit_power_law(h)
    print(f"{name:<10} fit: alpha={fit.alpha:.3f} r2={fit.r_squared:.3f} "
          f"({fit.points_used} points)")

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    h = {k: v for k, v in total_hist.items() if k >= 1}
    fit = fit_power_law(h)
    ks = sorted(h)
    plt.figure(figsize=(6, 4))
    plt.loglog(ks, [h[k] for k in ks], "o", ms=4, label="degree counts")
    plt.loglog(ks, [fit.fitted_count(k) for k in ks], "--",
               label=f"fit, slope {fit.alpha:.2f}")
    plt.xlabel("degree")
    plt.ylabel("account count")
    plt.legend()
    plt.tight_layout()
    figure = out / "transfer_degree_distribution.png"
    plt.savefig(figure, dpi=150)
    print(f"\nwrote {figure}")
except ImportError:
    print("\nmatplotlib not installed; skipping the degree-distribution plot")
