"""
Ingesting an action-trace corpus
================================

Generates a small mixed corpus (all four activities), writes it as the
JSON-lines trace format, ingests it back, and prints the accounting that
ingestion produces: line disposition, per-activity action counts by kind,
and event counts (votes fan out to one event per producer).
"""

import tempfile
from pathlib import Path

from eosgraph import (
    Activity,
    gen_auth_corpus,
    gen_creation_tree,
    gen_transfer_corpus,
    gen_vote_corpus,
    ingest_corpus,
    write_corpus,
)
from eosgraph.cli import action_stats_table

out = Path(tempfile.mkdtemp(prefix="eosgraph_demo_"))

# one corpus with every activity; re-key so transaction ids stay unique
records = []
records += gen_creation_tree(120, "preferential", seed=1, inline_fraction=0.01)[0]
records += gen_vote_corpus(25, 8, gang_sizes=(3,), seed=2)[0]
records += gen_transfer_corpus((15, 10), seed=3, inline_fraction=0.47)[0]
records += gen_auth_corpus(20, 6, self_auth=2, seed=4, inline_fraction=0.01)[0]
for i, record in enumerate(records):
    record["tx_id"] = format(i, "064x")

trace = out / "trace.jsonl"
write_corpus(records, trace)
print(f"wrote {len(records)} action records to {trace}")

events, stats = ingest_corpus(trace)
print(f"\nrecords read: {stats.records_read}")
print(f"classified:   {stats.classified_records}")
print(f"unclassified: {stats.unclassified_records}")
print(f"skipped:      {stats.skipped or '{}'}")

print("\nAction statistics (records by kind):\n")
print(action_stats_table(stats))

print("Events per activity (vote fan-out makes these differ from actions):")
for activity in Activity:
    print(f"  {activity.value:<26} {stats.event_count(activity):>6}")
