"""Synthetic trace corpora with known ground truth.

Each generator returns (records, truth): records are action dicts in the
JSON-lines schema (ready for write_corpus / ingest), and truth is a sidecar
dict describing every planted structure so tests can verify the analytics
pipeline against an independent record of what was generated. All generators
are deterministic for a fixed seed.
"""

from __future__ import annotations

import hashlib
import json
import random
from pathlib import Path

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def account_name(i: int, prefix: str = "u") -> str:
    """Deterministic valid account name for index ``i`` (letters only)."""
    digits = []
    i = int(i)
    while True:
        digits.append(_LETTERS[i % 26])
        i //= 26
        if i == 0:
            break
    name = prefix + "".join(reversed(digits))
    if len(name) > 12:
        raise ValueError("index too large for a 12-char account name")
    return name


def _tx_id(seed: int, n: int) -> str:
    return hashlib.sha256(f"{seed}:{n}".encode()).hexdigest()


class _RecordFactory:
    """Assigns deterministic block numbers and transaction ids."""

    def __init__(self, seed: int, rng: random.Random, inline_fraction: float = 0.0,
                 actions_per_block: int = 50):
        self.seed = seed
        self.rng = rng
        self.inline_fraction = inline_fraction
        self.actions_per_block = actions_per_block
        self.counter = 0

    def _kind(self) -> str:
        if self.inline_fraction > 0 and self.rng.random() < self.inline_fraction:
            return "inline"
        return "calling"

    def make(self, contract: str, action_name: str, authorizer: str,
             payload: dict[str, str], kind: str | None = None) -> dict:
        record = {
            "block_num": self.counter // self.actions_per_block,
            "tx_id": _tx_id(self.seed, self.counter),
            "action_index": 0,
            "kind": kind or self._kind(),
            "contract": contract,
            "action_name": action_name,
            "authorizer": authorizer,
            "payload": payload,
        }
        self.counter += 1
        return record


def _newaccount(factory: _RecordFactory, creator: str, name: str) -> dict:
    return factory.make("eosio", "newaccount", creator, {"creator": creator, "name": name})


# --- account creation -----------------------------------------------------------

def gen_creation_tree(
    n: int,
    attachment: str = "uniform",
    seed: int = 0,
    inline_fraction: float = 0.0,
) -> tuple[list[dict], dict]:
    """Corpus of n-1 newaccount actions forming a tree rooted at ``eosio``.

    ``uniform`` picks each parent uniformly among existing accounts;
    ``preferential`` picks parents proportionally to their current tree
    degree, which reproduces a long-tail (power-law-shaped, exponent 3)
    degree distribution.
    """
    if n < 1:
        raise ValueError("need at least the root")
    if attachment not in ("uniform", "preferential"):
        raise ValueError(f"unknown attachment mode {attachment!r}")
    rng = random.Random(seed)
    factory = _RecordFactory(seed, rng, inline_fraction)
    names = ["eosio"] + [account_name(i) for i in range(n - 1)]
    records = []
    parents: dict[str, str] = {}
    endpoints = [0]  # node indices repeated once per incident edge, plus the root
    for i in range(1, n):
        if attachment == "uniform" or i == 1:
            p = rng.randrange(i)
        else:
            p = endpoints[rng.randrange(len(endpoints))]
        records.append(_newaccount(factory, names[p], names[i]))
        parents[names[i]] = names[p]
        endpoints.append(p)
        endpoints.append(i)
    truth = {
        "kind": "creation_tree",
        "n": n,
        "attachment": attachment,
        "seed": seed,
        "root": "eosio",
        "parents": parents,
        "theoretical_degree_exponent": 3.0 if attachment == "preferential" else None,
    }
    return records, truth


# --- account vote ------------------------------------------------------------------

def gen_vote_corpus(
    voters: int,
    producers: int,
    gang_sizes: tuple[int, ...] = (),
    seed: int = 0,
    actions_per_voter: int = 2,
    max_producers_per_action: int = 5,
    self_votes: int = 0,
    inline_fraction: float = 0.0,
) -> tuple[list[dict], dict]:
    """Random voter->producer votes plus planted all-pairs voting gangs.

    Background voters only vote producer accounts and producers never vote,
    so the only non-trivial strongly connected structures are the planted
    gangs (members vote every other member). Optional self-votes are planted
    on the first ``self_votes`` background voters.
    """
    rng = random.Random(seed)
    factory = _RecordFactory(seed, rng, inline_fraction)
    voter_names = [account_name(i, "v") for i in range(voters)]
    producer_names = [account_name(i, "p") for i in range(producers)]
    gangs = []
    next_index = 0
    for size in gang_sizes:
        gangs.append([account_name(next_index + j, "g") for j in range(size)])
        next_index += size
    records = []

    def vote(voter: str, targets: list[str]) -> None:
        records.append(
            factory.make(
                "eosio", "voteproducer", voter,
                {"voter": voter, "producers": ",".join(targets)},
            )
        )

    for i, voter in enumerate(voter_names):
        for _ in range(actions_per_voter):
            count = rng.randint(1, max(1, min(max_producers_per_action, producers)))
            targets = sorted(rng.sample(producer_names, count)) if producers else []
            if targets:
                vote(voter, targets)
        if i < self_votes:
            vote(voter, [voter])
    for gang in gangs:
        for member in gang:
            vote(member, [other for other in gang if other != member])

    truth = {
        "kind": "vote_corpus",
        "seed": seed,
        "voters": voter_names,
        "producers": producer_names,
        "gangs": [sorted(gang) for gang in gangs],
        "self_votes": voter_names[:self_votes],
    }
    return records, truth


# --- money transfer ----------------------------------------------------------------

def _quantity(units: int) -> str:
    return f"{units // 10000}.{units % 10000:04d} EOS"


def _transfer(factory: _RecordFactory, src: str, dst: str, units: int) -> dict:
    return factory.make(
        "eosio.token", "transfer", src,
        {"from": src, "to": dst, "quantity": _quantity(units)},
    )


def gen_transfer_corpus(
    community_sizes: tuple[int, ...],
    seed: int = 0,
    transfers_per_member: int = 3,
    hub_fraction_of_edges: float = 0.5,
    inter_community_edges: int = 0,
    sham_cycle: int = 0,
    max_units: int = 10_000_000,
    inline_fraction: float = 0.0,
) -> tuple[list[dict], dict]:
    """Community-structured transfers with hubs and an optional sham cycle.

    Each community is centered on a hub (its first account). Background
    transfers always flow from a lower account index to a higher one, so they
    can never close a directed cycle: the single planted cycle (if any) is
    exactly the largest strongly connected structure. With zero
    inter-community edges and no cycle, communities are the weak components.
    """
    rng = random.Random(seed)
    factory = _RecordFactory(seed, rng, inline_fraction)
    communities: list[list[str]] = []
    index = 0
    flat: list[str] = []
    for size in community_sizes:
        members = [account_name(index + j, "m") for j in range(size)]
        communities.append(members)
        flat.extend(members)
        index += size
    records = []
    total_units = 0
    n_events = 0

    def pay(src_i: int, dst_i: int, members: list[str]) -> None:
        nonlocal total_units, n_events
        units = rng.randint(1, max_units)
        records.append(_transfer(factory, members[src_i], members[dst_i], units))
        total_units += units
        n_events += 1

    for members in communities:
        size = len(members)
        if size < 2:
            continue
        for j in range(1, size):
            for _ in range(transfers_per_member):
                if rng.random() < hub_fraction_of_edges or j == 1:
                    pay(0, j, members)  # hub spoke
                else:
                    k = rng.randrange(1, j)
                    pay(k, j, members)  # index-increasing, stays acyclic
    for _ in range(inter_community_edges):
        a = rng.randrange(len(flat))
        b = rng.randrange(len(flat))
        if a == b:
            continue
        lo, hi = min(a, b), max(a, b)
        units = rng.randint(1, max_units)
        records.append(_transfer(factory, flat[lo], flat[hi], units))
        total_units += units
        n_events += 1

    cycle_names = [account_name(j, "c") for j in range(sham_cycle)]
    if cycle_names:
        if flat:  # attach the cycle to the first community's hub
            units = rng.randint(1, max_units)
            records.append(_transfer(factory, flat[0], cycle_names[0], units))
            total_units += units
            n_events += 1
        for j, name in enumerate(cycle_names):
            units = rng.randint(1, max_units)
            records.append(_transfer(factory, name, cycle_names[(j + 1) % len(cycle_names)], units))
            total_units += units
            n_events += 1

    truth = {
        "kind": "transfer_corpus",
        "seed": seed,
        "communities": communities,
        "hubs": [members[0] for members in communities if len(members) >= 2],
        "sham_cycle": cycle_names,
        "total_units": total_units,
        "n_events": n_events,
    }
    return records, truth


# --- contract authorization -----------------------------------------------------------

def gen_auth_corpus(
    users: int,
    contracts: int,
    spam_share: float | None = None,
    self_auth: int = 0,
    seed: int = 0,
    actions_per_user: int = 3,
    inline_fraction: float = 0.0,
) -> tuple[list[dict], dict]:
    """Authorization events, optionally dominated by one spam contract.

    With ``spam_share`` set, a dedicated contract receives enough extra
    authorizations to hold at least that share of the graph's total edge
    weight. ``self_auth`` accounts authorize only their own contract,
    creating isolated self-loop nodes (weak components of diameter 0).
    """
    rng = random.Random(seed)
    factory = _RecordFactory(seed, rng, inline_fraction)
    user_names = [account_name(i, "a") for i in range(users)]
    contract_names = [account_name(i, "k") for i in range(contracts)]
    records = []
    n_background = 0

    def authorize(user: str, contract: str) -> None:
        records.append(
            factory.make(contract, "execute", user, {"caller": user})
        )

    for user in user_names:
        for _ in range(actions_per_user):
            authorize(user, contract_names[rng.randrange(contracts)])
            n_background += 1

    self_auth_names = [account_name(i, "s") for i in range(self_auth)]
    for name in self_auth_names:
        authorize(name, name)
        n_background += 1

    spam_account = None
    n_spam = 0
    if spam_share is not None:
        if not 0 < spam_share < 1:
            raise ValueError("spam_share must be in (0, 1)")
        spam_account = "spamcontract"
        # spam / (spam + background) >= share
        n_spam = int(spam_share * n_background / (1 - spam_share)) + 1
        for i in range(n_spam):
            authorize(user_names[i % len(user_names)], spam_account)

    truth = {
        "kind": "auth_corpus",
        "seed": seed,
        "users": user_names,
        "contracts": contract_names,
        "self_authorizers": self_auth_names,
        "spam_account": spam_account,
        "spam_events": n_spam,
        "total_events": n_background + n_spam,
        "spam_share": (n_spam / (n_background + n_spam)) if n_spam else 0.0,
    }
    return records, truth


# --- persistence ---------------------------------------------------------------------

_RECORD_KEYS = (
    "block_num", "tx_id", "action_index", "kind",
    "contract", "action_name", "authorizer", "payload",
)


def write_corpus(records: list[dict], path: str | Path) -> None:
    """Write records as JSON lines with a fixed key order."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fh:
        for record in records:
            ordered = {key: record[key] for key in _RECORD_KEYS}
            fh.write(json.dumps(ordered, separators=(",", ":")))
            fh.write("\n")


def write_truth(truth: dict, path: str | Path) -> None:
    Path(path).write_text(json.dumps(truth, indent=2, sort_keys=True), encoding="utf-8")
