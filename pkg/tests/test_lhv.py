import random
from fractions import Fraction

import pytest

import inflated_graphs as ig
from inflated_graphs import lhv
from inflated_graphs.cli import load_fixture_set


def ghz_path3():
    g = ig.build_graph([(1, 2), (2, 3)])
    pairs = tuple(
        ig.MeasurementPair.make(
            dict(zip("123", letters)), frozenset("123"), name=f"M{i + 1}"
        )
        for i, letters in enumerate(["YXY", "YYZ", "ZYY", "ZXZ"])
    )
    return ig.MeasurementSet(graph=g, d=0, pairs=pairs)


def test_build_system_shape_ghz():
    sys = ig.build_system(ghz_path3())
    assert len(sys.rows) == 4
    # two letters occur per vertex at d=0 -> six variables
    assert sys.n_variables == 6
    assert sys.rhs == (1, 0, 0, 0)
    assert not ig.feasible(sys)


def test_build_system_single_pair():
    g = ig.build_graph([(1, 2)])
    s = ig.MeasurementSet(
        graph=g,
        d=0,
        pairs=(ig.MeasurementPair.make({"1": "X", "2": "Z"}, {"1", "2"}),),
    )
    sys = ig.build_system(s)
    assert len(sys.rows) == 1 and sys.n_variables == 2
    assert sys.rhs == (0,)
    assert ig.feasible(sys)


def test_build_system_rejects_undefined_sign():
    g = ig.build_graph([(1, 2), (2, 3)])
    s = ig.MeasurementSet(
        graph=g,
        d=0,
        pairs=(ig.MeasurementPair.make({"1": "Z", "2": "X", "3": "X"}, {"1", "2", "3"}),),
    )
    with pytest.raises(ValueError, match="stabilizer sign"):
        ig.build_system(s)


def test_empty_system_feasible():
    g = ig.build_graph([(1, 2)])
    s = ig.MeasurementSet(graph=g, d=0, pairs=())
    assert ig.feasible(ig.build_system(s))
    assert ig.min_violations(ig.build_system(s)) == 0


def test_min_violations_fixtures():
    assert ig.min_violations(ig.build_system(ghz_path3())) == 1
    assert ig.min_violations(ig.build_system(load_fixture_set("chain7"))) == 1
    assert ig.min_violations(ig.build_system(load_fixture_set("cycle5"))) == 1


def test_min_violations_agrees_with_brute_force():
    rng = random.Random(31)
    for _ in range(100):
        n_vars = rng.randrange(1, 10)
        n_rows = rng.randrange(1, 8)
        sys = lhv.StrategySystem(
            variables=tuple((f"v{j}", ("X",)) for j in range(n_vars)),
            rows=tuple(rng.randrange(1 << n_vars) for _ in range(n_rows)),
            rhs=tuple(rng.randrange(2) for _ in range(n_rows)),
        )
        direct = lhv.min_violations_brute_force(sys)
        assert ig.min_violations(sys) == direct
        assert ig.feasible(sys) == (direct == 0)


def test_min_violations_cap():
    def independent_system(k):
        return lhv.StrategySystem(
            variables=tuple((f"v{j}", ("X",)) for j in range(k)),
            rows=tuple(1 << j for j in range(k)),
            rhs=tuple(1 for _ in range(k)),
        )

    # 31 independent rows exceed the default cap of 30
    with pytest.raises(ValueError, match="too large"):
        ig.min_violations(independent_system(31), cap=30)
    # raising the cap unlocks the search (small instance for speed)
    small = independent_system(8)
    with pytest.raises(ValueError, match="too large"):
        ig.min_violations(small, cap=7)
    assert ig.min_violations(small, cap=8) == 0


def test_bell_reports():
    assert ig.bell_report(ghz_path3()).to_json() == {
        "qm": 4,
        "bound": 2,
        "min_violations": 1,
        "ratio": "2/1",
    }
    assert ig.bell_report(load_fixture_set("chain7")).to_json() == {
        "qm": 6,
        "bound": 4,
        "min_violations": 1,
        "ratio": "3/2",
    }
    rep = ig.bell_report(load_fixture_set("cycle5"), decoy_pairs=0)
    assert rep.qm_value == 16 and rep.classical_bound == 14
    assert rep.ratio == Fraction(8, 7)
    assert rep.to_json()["decoy_pairs"] == 0


def test_odd_violations_for_certified_sets():
    for name in ("table1_9cycle", "chain7", "cycle5", "ghz_path3"):
        s = load_fixture_set(name)
        assert ig.verify_paradox(s).overall
        assert ig.min_violations(ig.build_system(s)) % 2 == 1


# ---------------------------------------------------------------------------
# Explicit model with flip rules
# ---------------------------------------------------------------------------


def test_barrett_generator_prediction():
    g = ig.build_graph([(1, 2), (2, 3)])
    model = lhv.BarrettModel(graph=g)
    pair = ig.MeasurementPair.make({"1": "Z", "2": "X", "3": "Z"}, {"1", "2", "3"})
    assert lhv.barrett_expectation(model, pair) == 1


def test_barrett_triangle_flip():
    g = ig.build_graph([(1, 2), (1, 3), (2, 3)])
    rules = lhv.expand_rules(
        g, [lhv.FlipRule.make("1", {"1": "X", "2": "X", "3": "X"})]
    )
    model = lhv.BarrettModel(graph=g, flip_rules=rules)
    pair = ig.MeasurementPair.make({"1": "X", "2": "X", "3": "X"}, {"1", "2", "3"})
    assert lhv.barrett_expectation(model, pair) == -1  # matches quantum
    no_flip = lhv.BarrettModel(graph=g)
    assert lhv.barrett_expectation(no_flip, pair) == 1  # the model's only error


def test_barrett_non_stabilizer_is_zero():
    g = ig.build_graph([(1, 2), (2, 3)])
    model = lhv.BarrettModel(graph=g)
    pair = ig.MeasurementPair.make({"1": "Z", "2": "X", "3": "X"}, {"1", "2", "3"})
    assert lhv.barrett_expectation(model, pair) == 0


def test_barrett_analytic_matches_explicit_average():
    rng = random.Random(41)
    rules_by_graph = lhv.load_flip_rules()
    for gid in ("path3", "star4", "diamond4"):
        g = lhv.SMALL_GRAPHS[gid]
        model = lhv.BarrettModel(
            graph=g, flip_rules=tuple(rules_by_graph[gid])
        )
        for _ in range(40):
            letters = {
                v: rng.choice("IXYZ") for v in g.vertices
            }
            mask = frozenset(v for v in g.vertices if rng.random() < 0.6)
            pair = ig.MeasurementPair.make(letters, mask)
            assert lhv.barrett_expectation(
                model, pair
            ) == lhv.barrett_expectation_sampled(model, pair)


def test_flip_rule_neighborhood_validation():
    g = ig.build_graph([(1, 2), (2, 3)])
    with pytest.raises(ValueError, match="closed neighbourhood"):
        lhv.BarrettModel(
            graph=g,
            flip_rules=(lhv.FlipRule.make("1", {"1": "X", "3": "Z"}),),
        )


def test_verify_small_graphs_zero_mismatches():
    report = lhv.verify_small_graphs()
    assert report["ok"]
    for gid in lhv.SMALL_GRAPHS:
        assert report[gid]["mismatches"] == []
        n = report[gid]["vertices"]
        assert report[gid]["checked"] == (4**n) * (2**n)


def test_triangle_without_flips_fails_only_on_negative_pattern():
    g = lhv.SMALL_GRAPHS["triangle"]
    mismatches = lhv.check_model(lhv.BarrettModel(graph=g))
    assert len(mismatches) == 1
    assert mismatches[0]["letters"] == {"1": "X", "2": "X", "3": "X"}
    assert sorted(mismatches[0]["mask"]) == ["1", "2", "3"]


def test_search_flip_rules_rediscovers_valid_sets():
    for gid in ("path3", "triangle", "star4"):
        g = lhv.SMALL_GRAPHS[gid]
        rules = lhv.search_flip_rules(g)
        assert rules is not None
        assert lhv.check_model(lhv.BarrettModel(graph=g, flip_rules=tuple(rules))) == []


def test_automorphisms_counts():
    assert len(lhv.automorphisms(lhv.SMALL_GRAPHS["triangle"])) == 6
    assert len(lhv.automorphisms(lhv.SMALL_GRAPHS["path3"])) == 2
    assert len(lhv.automorphisms(lhv.SMALL_GRAPHS["k4"])) == 24
    assert len(lhv.automorphisms(lhv.SMALL_GRAPHS["star4"])) == 6


# ---------------------------------------------------------------------------
# Binary games
# ---------------------------------------------------------------------------


def test_binary_game_bound_distance_one():
    assert ig.binary_game_bound() == 2


def test_binary_game_bound_full_information():
    assert lhv.game_bound(lhv.chsh_game(3)) == 4


def test_standard_chsh_degenerate_instance():
    both = frozenset({"A", "B"})
    game = lhv.BinaryGame(
        vertices=("A", "B"),
        visible=(("A", (0,)), ("B", (1,))),
        settings=((0, 0), (1, 0), (0, 1), (1, 1)),
        terms=((1, 0, both), (1, 1, both), (1, 2, both), (-1, 3, both)),
    )
    assert lhv.game_bound(game) == 2
