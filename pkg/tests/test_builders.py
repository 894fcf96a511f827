import random

import pytest

from eosgraph import (
    Activity,
    ActivityEvent,
    GraphBuildError,
    build_acg,
    build_avg,
    build_cag,
    build_mtg,
    full_report,
)


def creation(src, dst):
    return ActivityEvent(Activity.ACCOUNT_CREATION, src, dst, 1, "calling")


def vote(src, dst):
    return ActivityEvent(Activity.ACCOUNT_VOTE, src, dst, 1, "calling")


def transfer(src, dst, units):
    return ActivityEvent(Activity.MONEY_TRANSFER, src, dst, units, "calling")


def auth(src, dst):
    return ActivityEvent(Activity.CONTRACT_AUTHORIZATION, src, dst, 1, "calling")


class TestAcg:
    def test_small_tree_diagnostics(self):
        g, diag = build_acg([creation("eosio", "aaa"), creation("eosio", "bbb"), creation("aaa", "ccc")])
        assert diag.stats["root"] == "eosio"
        assert diag.stats["tree_height"] == 2
        assert diag.violations == []

    def test_two_parents_rejected(self):
        with pytest.raises(GraphBuildError) as err:
            build_acg([creation("eosio", "aaa"), creation("bbb", "aaa")])
        assert err.value.code == "duplicate-creation"

    def test_cycle_rejected(self):
        with pytest.raises(GraphBuildError) as err:
            build_acg([creation("aaa", "bbb"), creation("bbb", "ccc"), creation("ccc", "aaa")])
        assert err.value.code == "cycle-detected"

    def test_forest_rejected(self):
        with pytest.raises(GraphBuildError) as err:
            build_acg([creation("eosio", "aaa"), creation("zzz", "yyy")])
        assert err.value.code == "multiple-roots"

    def test_random_tree_edge_count(self):
        rng = random.Random(2)
        names = ["eosio"]
        events = []
        for i in range(9_999):
            child = f"u{i:d}".replace("6", "aa").replace("7", "bb").replace("8", "cc").replace("9", "dd").replace("0", "ee")
            parent = names[rng.randrange(len(names))]
            events.append(creation(parent, child))
            names.append(child)
        g, diag = build_acg(events)
        assert g.node_count == 10_000
        assert g.edge_count == g.node_count - 1
        assert diag.stats["root"] == "eosio"

    def test_top_creators_reported(self):
        events = [creation("eosio", f"kid{chr(97 + i)}") for i in range(6)]
        events.append(creation("kida", "gkid"))
        _, diag = build_acg(events)
        assert diag.notable_accounts[0].account == "eosio"
        assert diag.notable_accounts[0].value == 6


class TestAvg:
    def test_mutual_pair_flagged(self):
        _, diag = build_avg([vote("aaa", "bbb"), vote("bbb", "aaa")])
        gangs = [v for v in diag.violations if v.rule == "voting-gang"]
        assert len(gangs) == 1
        assert gangs[0].accounts == ("aaa", "bbb")
        assert diag.stats["mutual_vote_pairs"] == 1

    def test_planted_gang_reported_as_largest_scc(self):
        members = [f"gang{chr(97 + i)}" for i in range(5)]
        events = [vote(a, b) for a in members for b in members if a != b]
        events += [vote("loner", "prod"), vote("other", "prod")]
        g, diag = build_avg(events)
        assert diag.stats["largest_voting_gang"] == 5
        assert diag.stats["voting_gangs"] == [sorted(members)]
        assert full_report(g).largest_scc == 5

    def test_self_vote_recorded_edge_kept(self):
        g, diag = build_avg([vote("aaa", "aaa"), vote("aaa", "bbb")])
        rules = [v.rule for v in diag.violations]
        assert "self-vote" in rules
        assert g.edge_count == 2  # self-loop kept

    def test_clean_corpus_no_violations(self):
        _, diag = build_avg([vote("aaa", "prod"), vote("bbb", "prod")])
        assert diag.violations == []
        assert diag.stats["voting_gangs"] == []


class TestMtg:
    def test_weight_sum_exact(self):
        g, _ = build_mtg([transfer("aaa", "bbb", 10000), transfer("aaa", "bbb", 10000)])
        assert g.edge_count == 1
        assert g.total_weight == 20000

    def test_planted_hub_tops_weighted_degree(self):
        events = [transfer(f"src{chr(97 + i % 26)}{chr(97 + i // 26)}", "hub", 1000) for i in range(100)]
        events += [transfer("srcaa", "srcbb", 1)]
        _, diag = build_mtg(events)
        assert diag.notable_accounts[0].account == "hub"
        assert diag.notable_accounts[0].statistic == "weighted_degree"

    def test_events_per_edge_ratio(self):
        events = [transfer("aaa", "bbb", 1)] * 6 + [transfer("bbb", "ccc", 1)] * 6
        g, diag = build_mtg(events)
        assert diag.stats["events_per_edge"] == pytest.approx(g.total_events / g.edge_count)
        assert diag.stats["events_per_edge"] == pytest.approx(6.0)

    def test_zero_weight_edges_counted(self):
        _, diag = build_mtg([transfer("aaa", "bbb", 0), transfer("aaa", "ccc", 5)])
        assert diag.stats["zero_weight_edges"] == 1


class TestCag:
    def test_spam_account_flagged(self):
        events = [auth(f"u{chr(97 + i)}", "spamcontract") for i in range(5)] * 19
        events += [auth("ua", "normalapp"), auth("ub", "otherapp"), auth("uc", "thirdapp"),
                   auth("ud", "fourthapp"), auth("ue", "fifthapp")]
        g, diag = build_cag(events)
        spam = [v for v in diag.violations if v.rule == "spam-weight-share"]
        assert len(spam) == 1
        assert spam[0].accounts == ("spamcontract",)
        share = [n for n in diag.notable_accounts if n.statistic == "weight_share"][0]
        assert share.value == pytest.approx(95 / 100)

    def test_uniform_corpus_no_flags(self):
        events = [auth(f"u{chr(97 + i)}", f"k{chr(97 + j)}") for i in range(6) for j in range(6)]
        _, diag = build_cag(events)
        assert [v for v in diag.violations if v.rule == "spam-weight-share"] == []

    def test_self_authorization_kept_and_counted(self):
        g, diag = build_cag([auth("selfish", "selfish"), auth("ua", "app")])
        assert diag.stats["self_authorization_edges"] == 1
        assert diag.stats["self_authorization_events"] == 1
        assert g.edge_count == 2

    def test_threshold_configurable(self):
        events = [auth("ua", "bigapp")] * 6 + [auth("ub", "small"), auth("uc", "tiny"),
                  auth("ud", "minor"), auth("ue", "micro")]
        _, strict = build_cag(events, spam_threshold=0.5)
        _, lax = build_cag(events, spam_threshold=0.9)
        assert any(v.rule == "spam-weight-share" for v in strict.violations)
        assert not any(v.rule == "spam-weight-share" for v in lax.violations)


class TestDiagnosticsAreRecomputable:
    def test_totals_match_event_counts(self):
        events = [transfer("aaa", "bbb", 5), transfer("bbb", "ccc", 6), transfer("aaa", "bbb", 7)]
        g, _ = build_mtg(events)
        assert g.total_events == len(events)
        assert g.total_weight == sum(e.weight for e in events)

    def test_diagnostics_pure_function_of_graph(self):
        events = [vote("aaa", "bbb"), vote("bbb", "aaa"), vote("ccc", "prod")]
        _, diag1 = build_avg(events)
        _, diag2 = build_avg(list(reversed(events)))
        assert diag1.to_json_dict() == diag2.to_json_dict()

    def test_json_round_trip(self):
        import json

        _, diag = build_avg([vote("aaa", "aaa")])
        assert json.loads(diag.to_json()) == diag.to_json_dict()
