"""Parsing and classification of EOSIO action-trace corpora.

The input format is newline-delimited JSON, one action record per line
(see docs/format.md). Records are validated, then classified into zero or
one of the four tracked activities: account creation, account vote, money
transfer, contract authorization. Classification never aborts a corpus:
bad lines are skipped and tallied.
"""

from __future__ import annotations

import enum
import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .errors import ClassifyError, ParseError

# EOSIO account names: 1-12 chars over a-z, 1-5 and '.', no trailing dot.
_ACCOUNT_RE = re.compile(r"[a-z1-5.]{1,12}")

ACTION_KINDS = ("calling", "inline", "deferred")

# Accounts whose contracts implement platform plumbing. Actions on these are
# never contract-authorization activity. Overridable per call / via config.
DEFAULT_SYSTEM_ACCOUNTS = frozenset(
    {
        "eosio",
        "eosio.token",
        "eosio.msig",
        "eosio.ram",
        "eosio.ramfee",
        "eosio.stake",
        "eosio.names",
        "eosio.saving",
        "eosio.bpay",
        "eosio.vpay",
    }
)

# One EOS is 10,000 weight units; amounts are kept in integer units so
# aggregated edge weights never accumulate float error.
UNITS_PER_EOS = 10_000

_QUANTITY_RE = re.compile(r"(\d+)(?:\.(\d+))?(?:\s+([A-Z]{1,7}))?")


class Activity(enum.Enum):
    """The four tracked user activities."""

    ACCOUNT_CREATION = "account_creation"
    ACCOUNT_VOTE = "account_vote"
    MONEY_TRANSFER = "money_transfer"
    CONTRACT_AUTHORIZATION = "contract_authorization"


ACTIVITY_CODES = {
    "acg": Activity.ACCOUNT_CREATION,
    "avg": Activity.ACCOUNT_VOTE,
    "mtg": Activity.MONEY_TRANSFER,
    "cag": Activity.CONTRACT_AUTHORIZATION,
}
CODE_BY_ACTIVITY = {v: k for k, v in ACTIVITY_CODES.items()}


def is_valid_account(name: str) -> bool:
    return (
        isinstance(name, str)
        and _ACCOUNT_RE.fullmatch(name) is not None
        and not name.endswith(".")
    )


def validate_account(name: str, line_no: int | None = None) -> str:
    if not is_valid_account(name):
        raise ParseError("invalid-account-name", f"not a valid account name: {name!r}", line_no)
    return name


@dataclass(frozen=True, slots=True)
class ActionRecord:
    """One extracted action, uniquely keyed by (block_num, tx_id, action_index)."""

    block_num: int
    tx_id: str
    action_index: int
    kind: str
    contract: str
    action_name: str
    authorizer: str
    payload: dict[str, str]

    @property
    def key(self) -> tuple[int, str, int]:
        return (self.block_num, self.tx_id, self.action_index)


@dataclass(frozen=True, slots=True)
class ActivityEvent:
    """One classified activity edge contribution.

    ``weight`` is 1 for count-weighted activities and the transferred amount
    in 0.0001-EOS units for money transfers.
    """

    activity: Activity
    source: str
    target: str
    weight: int
    kind: str


_REQUIRED_FIELDS = (
    "block_num",
    "tx_id",
    "action_index",
    "kind",
    "contract",
    "action_name",
    "authorizer",
    "payload",
)

_TX_ID_RE = re.compile(r"[0-9a-f]{64}")


def parse_record(line: str, line_no: int | None = None) -> ActionRecord:
    """Parse one JSON line into a validated ActionRecord.

    Raises ParseError with code ``malformed-json``, ``schema-violation`` or
    ``invalid-account-name``.
    """
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise ParseError("malformed-json", str(exc), line_no) from exc
    if not isinstance(obj, dict):
        raise ParseError("schema-violation", "line is not a JSON object", line_no)
    for name in _REQUIRED_FIELDS:
        if name not in obj:
            raise ParseError("schema-violation", f"missing field {name!r}", line_no)

    block_num = obj["block_num"]
    if not isinstance(block_num, int) or isinstance(block_num, bool) or block_num < 0:
        raise ParseError("schema-violation", "block_num must be a non-negative integer", line_no)
    tx_id = obj["tx_id"]
    if not isinstance(tx_id, str) or _TX_ID_RE.fullmatch(tx_id) is None:
        raise ParseError("schema-violation", "tx_id must be a 64-char lowercase hex string", line_no)
    action_index = obj["action_index"]
    if not isinstance(action_index, int) or isinstance(action_index, bool) or action_index < 0:
        raise ParseError("schema-violation", "action_index must be a non-negative integer", line_no)
    kind = obj["kind"]
    if kind not in ACTION_KINDS:
        raise ParseError("schema-violation", f"kind must be one of {ACTION_KINDS}, got {kind!r}", line_no)
    action_name = obj["action_name"]
    if not isinstance(action_name, str) or not action_name:
        raise ParseError("schema-violation", "action_name must be a non-empty string", line_no)
    payload = obj["payload"]
    if not isinstance(payload, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in payload.items()
    ):
        raise ParseError("schema-violation", "payload must be a string-to-string map", line_no)

    contract = validate_account(obj["contract"], line_no)
    authorizer = validate_account(obj["authorizer"], line_no)

    return ActionRecord(
        block_num=block_num,
        tx_id=tx_id,
        action_index=action_index,
        kind=kind,
        contract=contract,
        action_name=action_name,
        authorizer=authorizer,
        payload=payload,
    )


def parse_quantity(text: str) -> tuple[int, str | None]:
    """Parse an asset amount like ``"1.5000 EOS"`` into integer units.

    Returns (units, symbol). At most 4 fraction digits are accepted; fewer
    are zero-padded. Raises ClassifyError(``unparseable-quantity``) otherwise.
    """
    m = _QUANTITY_RE.fullmatch(text.strip())
    if m is None:
        raise ClassifyError("unparseable-quantity", f"bad amount: {text!r}")
    whole, frac, symbol = m.groups()
    if frac is not None and len(frac) > 4:
        raise ClassifyError("unparseable-quantity", f"more than 4 fraction digits: {text!r}")
    units = int(whole) * UNITS_PER_EOS + int((frac or "0").ljust(4, "0"))
    return units, symbol


def _payload_account(record: ActionRecord, key: str) -> str:
    try:
        value = record.payload[key]
    except KeyError:
        raise ClassifyError("missing-payload-field", f"{record.action_name} payload lacks {key!r}") from None
    if not is_valid_account(value):
        raise ClassifyError("missing-payload-field", f"payload field {key!r} holds invalid account {value!r}")
    return value


def classify(
    record: ActionRecord, system_accounts: frozenset[str] = DEFAULT_SYSTEM_ACCOUNTS
) -> list[ActivityEvent]:
    """Map one record to its activity events (empty list if untracked).

    A record matches at most one activity; ``voteproducer`` fans out to one
    event per voted producer. The action kind is carried through unchanged
    (deferred actions classify the same way as calling/inline ones).
    """
    if record.contract == "eosio" and record.action_name == "newaccount":
        creator = _payload_account(record, "creator")
        name = _payload_account(record, "name")
        return [ActivityEvent(Activity.ACCOUNT_CREATION, creator, name, 1, record.kind)]

    if record.contract == "eosio" and record.action_name == "voteproducer":
        voter = _payload_account(record, "voter")
        raw = record.payload.get("producers")
        if raw is None:
            raise ClassifyError("missing-payload-field", "voteproducer payload lacks 'producers'")
        events = []
        for producer in [p for p in raw.split(",") if p]:
            if not is_valid_account(producer):
                raise ClassifyError("missing-payload-field", f"invalid producer name {producer!r}")
            events.append(ActivityEvent(Activity.ACCOUNT_VOTE, voter, producer, 1, record.kind))
        return events

    if record.contract == "eosio.token" and record.action_name == "transfer":
        src = _payload_account(record, "from")
        dst = _payload_account(record, "to")
        quantity = record.payload.get("quantity")
        if quantity is None:
            raise ClassifyError("missing-payload-field", "transfer payload lacks 'quantity'")
        units, symbol = parse_quantity(quantity)
        if symbol is not None and symbol != "EOS":
            return []  # non-EOS tokens on eosio.token are out of scope
        return [ActivityEvent(Activity.MONEY_TRANSFER, src, dst, units, record.kind)]

    if record.contract not in system_accounts:
        # Permission delegation to a common user's contract; self-invocations
        # (authorizer == contract) are kept as self-loop events.
        return [
            ActivityEvent(Activity.CONTRACT_AUTHORIZATION, record.authorizer, record.contract, 1, record.kind)
        ]

    return []


def _zero_kind_counts() -> dict[str, int]:
    return {kind: 0 for kind in ACTION_KINDS}


@dataclass
class IngestStats:
    """Corpus accounting: line disposition plus per-activity tallies.

    ``actions`` counts classified records per activity and kind (the shape of
    an action-statistics table); ``events`` counts emitted activity events,
    which differs from ``actions`` only through vote fan-out.
    """

    records_read: int = 0
    classified_records: int = 0
    unclassified_records: int = 0
    skipped: dict[str, int] = field(default_factory=dict)
    actions: dict[Activity, dict[str, int]] = field(
        default_factory=lambda: {a: _zero_kind_counts() for a in Activity}
    )
    events: dict[Activity, dict[str, int]] = field(
        default_factory=lambda: {a: _zero_kind_counts() for a in Activity}
    )

    def event_count(self, activity: Activity) -> int:
        return sum(self.events[activity].values())

    def action_count(self, activity: Activity) -> int:
        return sum(self.actions[activity].values())

    def skip(self, reason: str) -> None:
        self.skipped[reason] = self.skipped.get(reason, 0) + 1

    def to_json_dict(self) -> dict:
        return {
            "records_read": self.records_read,
            "classified_records": self.classified_records,
            "unclassified_records": self.unclassified_records,
            "skipped": {k: self.skipped[k] for k in sorted(self.skipped)},
            "actions": {a.value: dict(self.actions[a]) for a in Activity},
            "events": {a.value: dict(self.events[a]) for a in Activity},
        }

    @classmethod
    def from_json_dict(cls, obj: dict) -> "IngestStats":
        stats = cls(
            records_read=obj["records_read"],
            classified_records=obj["classified_records"],
            unclassified_records=obj["unclassified_records"],
            skipped=dict(obj["skipped"]),
        )
        for activity in Activity:
            stats.actions[activity] = dict(obj["actions"][activity.value])
            stats.events[activity] = dict(obj["events"][activity.value])
        return stats


def ingest_corpus(
    path: str | Path,
    system_accounts: frozenset[str] = DEFAULT_SYSTEM_ACCOUNTS,
) -> tuple[list[ActivityEvent], IngestStats]:
    """Read a JSON-lines corpus into an event stream (file order) and stats.

    Per-line failures are skipped and tallied, never fatal. A repeated
    (block_num, tx_id, action_index) key keeps the first occurrence only.
    """
    stats = IngestStats()
    events: list[ActivityEvent] = []
    seen: set[tuple[int, str, int]] = set()
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            stats.records_read += 1
            try:
                record = parse_record(line, line_no)
            except ParseError as exc:
                stats.skip(exc.code)
                continue
            if record.key in seen:
                stats.skip("duplicate-record")
                continue
            seen.add(record.key)
            try:
                record_events = classify(record, system_accounts)
            except ClassifyError as exc:
                stats.skip(exc.code)
                continue
            if not record_events:
                stats.unclassified_records += 1
                continue
            stats.classified_records += 1
            activity = record_events[0].activity
            stats.actions[activity][record.kind] += 1
            for event in record_events:
                stats.events[activity][event.kind] += 1
            events.extend(record_events)
    return events, stats


def load_system_accounts(path: str | Path) -> frozenset[str]:
    """Read a system-account override file: one account per line, '#' comments."""
    accounts = set()
    with open(path, "r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            name = line.split("#", 1)[0].strip()
            if not name:
                continue
            accounts.add(validate_account(name, line_no))
    return frozenset(accounts)


# --- event store -----------------------------------------------------------
#
# Between ingestion and graph builds, events are persisted one JSON-lines
# file per activity so a large corpus never needs re-parsing per build.

def event_store_path(directory: str | Path, activity: Activity) -> Path:
    return Path(directory) / f"events_{activity.value}.jsonl"


def _event_line(event: ActivityEvent) -> str:
    return json.dumps(
        {"source": event.source, "target": event.target, "weight": event.weight, "kind": event.kind},
        separators=(",", ":"),
    )


def write_event_store(events: Iterable[ActivityEvent], directory: str | Path) -> dict[Activity, int]:
    """Write events to per-activity JSON-lines files; returns per-activity counts."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    handles = {}
    counts = {activity: 0 for activity in Activity}
    try:
        for event in events:
            fh = handles.get(event.activity)
            if fh is None:
                fh = open(event_store_path(directory, event.activity), "w", encoding="utf-8")
                handles[event.activity] = fh
            fh.write(_event_line(event))
            fh.write("\n")
            counts[event.activity] += 1
    finally:
        for fh in handles.values():
            fh.close()
    return counts


def read_event_store(directory: str | Path, activity: Activity) -> Iterator[ActivityEvent]:
    """Stream one activity's events back from a store directory."""
    path = event_store_path(directory, activity)
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            obj = json.loads(line)
            yield ActivityEvent(activity, obj["source"], obj["target"], obj["weight"], obj["kind"])
