import random

import pytest

from cjlab import cjmodel as CJ
from cjlab.choice import ChoiceFunction, check_property
from cjlab.prefstruct import PreconditionFailed
from cjlab.syntax import parse

from conftest import powerset, random_formula


@pytest.fixture(scope="module")
def witness_model():
    return CJ.build_example_1_1()


def test_build_counts(witness_model):
    m = witness_model
    assert len(m.worlds) == 4
    # supersets of a singleton in a 4-world space, by enumeration
    fam = m.ob[frozenset({"m1"})]
    oracle = {s for s in powerset(m.worlds) if "m1" in s}
    assert fam == oracle and len(fam) == 8


def test_frame_report(witness_model):
    rep = CJ.check_frame(witness_model)
    for cid in ("3-a", "4-a", "4-b", "5-a", "5-b", "5-c"):
        assert rep.conditions[cid].passed, cid
    c = rep.conditions["5-d"]
    assert not c.passed
    assert c.witness["X"] == frozenset({"m1"})
    assert c.witness["Y"] == frozenset({"m1"})
    assert c.witness["Z"] == frozenset({"m1", "m2"})   # the p-worlds


def test_empty_ob_vacuous_frame():
    worlds = ("a", "b")
    acc = {w: frozenset(worlds) for w in worlds}
    m = CJ.CJModel(worlds, ("p",), {"p": {"a"}}, acc, acc, {})
    rep = CJ.check_frame(m)
    for cid in ("5-a", "5-b", "5-c", "5-d"):
        assert rep.conditions[cid].passed


def test_ross_shape_5d_demand():
    # watering/posting: the 5-d completion of "water and post" demands
    # water-and-post-or-not-water, which the model does not grant
    worlds = ("w", "p", "l", "pl")
    val = {"water": {"p", "pl"}, "letter": {"l", "pl"}}
    acc = {w: frozenset(worlds) for w in worlds}
    x = frozenset({"p", "pl"})        # the watering worlds
    y = frozenset({"pl"})             # watering and posting
    fam = [a for a in powerset(worlds) if a & x == y]
    m = CJ.CJModel(worlds, ("water", "letter"), val, acc, acc, {x: fam})
    rep = CJ.check_frame(m)
    assert rep.conditions["5-b"].passed
    # the instance at Z = all worlds demands exactly {w, l, pl}
    z = frozenset(worlds)
    demanded = (z - x) | y
    assert demanded == frozenset({"w", "l", "pl"})
    assert demanded not in m.family_of(z)
    c = rep.conditions["5-d"]
    assert not c.passed
    assert c.witness["X"] == x and c.witness["Y"] == y
    assert c.witness["required"] == (c.witness["Z"] - x) | y


def test_truth_sets(witness_model):
    m = witness_model
    assert CJ.truth_set(m, parse("O(q / p & q)")) == frozenset(m.worlds)
    assert CJ.truth_set(m, parse("O(p / p)")) == frozenset()
    assert CJ.truth_set(m, parse("Oa(p)")) == frozenset()


def test_eval(witness_model):
    m = witness_model
    assert CJ.eval_world(m, "m1", parse("[a](p | ~p)")) is True
    assert CJ.eval_world(m, "m1", parse("[a] p")) is False
    assert CJ.eval_world(m, "m2", parse("p & ~q")) is True
    with pytest.raises(CJ.EvalError):
        CJ.eval_world(m, "zz", parse("p"))
    with pytest.raises(CJ.EvalError):
        CJ.eval_world(m, "m1", parse("[] p"))
    with pytest.raises(CJ.EvalError):
        CJ.eval_world(m, "m1", parse("[m] p"))
    with pytest.raises(CJ.EvalError):
        CJ.eval_world(m, "m1", parse("zeta"))


def test_axioms_pass(witness_model):
    rep = CJ.check_axioms(witness_model)
    assert rep.passed
    assert [r.axiom for r in rep.results] == [str(i) for i in range(1, 16)]


def test_force_5d_keeps_axioms_and_validates_opp():
    m = CJ.build_example_1_1(force_5d=True)
    assert CJ.check_axioms(m).passed
    assert CJ.truth_set(m, parse("O(p / p)")) == frozenset(m.worlds)


def test_axiom3_fails_when_av_exceeds_pv():
    worlds = ("a", "b")
    acc_av = {"a": {"b"}, "b": {"b"}}
    acc_pv = {"a": {"a"}, "b": {"b"}}
    m = CJ.CJModel(worlds, ("p",), {"p": {"a"}}, acc_av, acc_pv, {})
    # oracle: direct evaluation of the schema on the set {a}
    boxp_a = {w for w in worlds if acc_pv[w] <= {"a"}}
    boxa_a = {w for w in worlds if acc_av[w] <= {"a"}}
    assert boxp_a - boxa_a  # schema instance fails semantically
    rep = CJ.check_axioms(m)
    ax3 = [r for r in rep.results if r.axiom == "3"][0]
    assert not ax3.passed and ax3.witness


def test_ocond_world_independent():
    rng = random.Random(6)
    for _ in range(60):
        m = CJ.random_model(rng, 4)
        f = parse("O(p / q)")
        ts = CJ.truth_set(m, f)
        assert ts in (frozenset(), frozenset(m.worlds))


def test_boolean_clauses_random():
    rng = random.Random(8)
    for _ in range(40):
        m = CJ.random_model(rng, 4)
        f = random_formula(rng, 4, atoms=("p", "q"))
        g = random_formula(rng, 3, atoms=("p", "q"))
        try:
            tf = CJ.truth_set(m, f)
            tg = CJ.truth_set(m, g)
        except CJ.EvalError:
            continue   # generator may produce bimodal-only operators
        from cjlab.syntax import And, Not
        assert CJ.truth_set(m, Not(f)) == frozenset(m.worlds) - tf
        assert CJ.truth_set(m, And(f, g)) == tf & tg


def test_normalize_ob(witness_model):
    m = witness_model
    mn = CJ.normalize_ob(m)
    assert mn.ob[frozenset({"m1"})] == frozenset({frozenset({"m1"})})
    rng = random.Random(13)
    formulas = [parse(t) for t in
                ["O(q / p & q)", "O(p / p)", "Oa(p)", "Op(p | q)",
                 "[a] p -> p", "O(p | q / q)", "<inv> Oa(q)"]]
    checked = 0
    while checked < 40:
        rm = CJ.random_model(rng, 4)
        if not CJ.check_frame(rm).conditions["5-b"].passed:
            continue
        checked += 1
        rn = CJ.normalize_ob(rm)
        for f in formulas:
            assert CJ.truth_set(rm, f) == CJ.truth_set(rn, f)


def test_normalize_requires_5b():
    worlds = ("a", "b")
    acc = {w: frozenset(worlds) for w in worlds}
    # member {a} for context {b}: same trace as the absent empty set
    m = CJ.CJModel(worlds, ("p",), {"p": {"a"}}, acc, acc,
                   {frozenset({"b"}): [frozenset({"a"})]})
    assert not CJ.check_frame(m).conditions["5-b"].passed
    with pytest.raises(PreconditionFailed):
        CJ.normalize_ob(m)


def test_mu_from_ob(witness_model):
    mn = CJ.normalize_ob(witness_model)
    assert CJ.mu_from_ob(mn, {"m1"}) == frozenset({"m1"})
    assert CJ.mu_from_ob(mn, {"m3"}) is None
    assert CJ.mu_from_ob(mn, {"m1", "m3"}) is None
    worlds = ("a", "b")
    acc = {w: frozenset(worlds) for w in worlds}
    singleton = CJ.CJModel(worlds, ("p",), {"p": {"a"}}, acc, acc,
                           {frozenset(worlds): [frozenset(worlds)]})
    assert CJ.mu_from_ob(singleton, worlds) == frozenset(worlds)
    two = CJ.CJModel(worlds, ("p",), {"p": {"a"}}, acc, acc,
                     {frozenset(worlds): [frozenset({"a"}), frozenset({"b"})]})
    with pytest.raises(PreconditionFailed):
        CJ.mu_from_ob(two, worlds)


def test_mu_from_ob_intersection_family():
    worlds = ("a", "b", "c")
    acc = {w: frozenset(worlds) for w in worlds}
    x = frozenset(worlds)
    a, b = frozenset({"a", "b"}), frozenset({"b", "c"})
    m = CJ.CJModel(worlds, ("p",), {"p": {"a"}}, acc, acc, {x: [a, b, a & b]})
    assert CJ.mu_from_ob(m, x) == a & b == frozenset({"b"})


def test_ob_from_mu_round_trip_exhaustive_u2():
    # every partial least-member map over a 2-element universe
    universe = ("a", "b")
    acc = {w: frozenset(universe) for w in universe}
    contexts = [s for s in powerset(universe) if s]
    pools = [[None] + [frozenset(c) for c in powerset(x)] for x in contexts]
    import itertools
    for assign in itertools.product(*pools):
        mu_map = {x: mu for x, mu in zip(contexts, assign) if mu is not None}
        ob = CJ.ob_from_mu(universe, mu_map)
        m = CJ.CJModel(universe, ("p",), {"p": {"a"}}, acc, acc, ob)
        for x, mu in mu_map.items():
            assert CJ.mu_from_ob(m, x) == mu
        for x in contexts:
            if x not in mu_map:
                assert CJ.mu_from_ob(m, x) is None


def test_ob_from_mu_round_trip_random_u3():
    universe = ("a", "b", "c")
    acc = {w: frozenset(universe) for w in universe}
    contexts = [s for s in powerset(universe) if s]
    rng = random.Random(4)
    for _ in range(120):
        mu_map = {}
        for x in contexts:
            if rng.random() < 0.3:
                continue
            mu_map[x] = frozenset(w for w in x if rng.random() < 0.6)
        ob = CJ.ob_from_mu(universe, mu_map)
        m = CJ.CJModel(universe, ("p",), {"p": {"a"}}, acc, acc, ob)
        for x, mu in mu_map.items():
            assert CJ.mu_from_ob(m, x) == mu


def test_ob_from_mu_examples():
    ob = CJ.ob_from_mu(("a", "b"), {frozenset({"a", "b"}): frozenset({"a"})})
    assert ob[frozenset({"a", "b"})] == {frozenset({"a"}),
                                         frozenset({"a", "b"})}
    with pytest.raises(ValueError):
        CJ.ob_from_mu(("a", "b"), {frozenset({"a"}): frozenset({"b"})})
    # empty least member: the family contains the empty set, 5-a reports it
    ob = CJ.ob_from_mu(("a", "b"), {frozenset({"a"}): frozenset()})
    acc = {w: frozenset(("a", "b")) for w in ("a", "b")}
    m = CJ.CJModel(("a", "b"), ("p",), {"p": {"a"}}, acc, acc, ob)
    assert not CJ.check_frame(m).conditions["5-a"].passed


def test_ob_from_mu_satisfies_5bc():
    universe = ("a", "b", "c")
    acc = {w: frozenset(universe) for w in universe}
    mu_map = {frozenset({"a", "b"}): frozenset({"a"}),
              frozenset(universe): frozenset({"b"})}
    ob = CJ.ob_from_mu(universe, mu_map)
    m = CJ.CJModel(universe, ("p",), {"p": {"a"}}, acc, acc, ob)
    rep = CJ.check_frame(m)
    assert rep.conditions["5-a"].passed
    assert rep.conditions["5-b"].passed
    assert rep.conditions["5-c"].passed


def test_extracted_choice_function_properties():
    # least members of a frame-passing model satisfy sub, pr, empty
    rng = random.Random(3)
    seen = 0
    while seen < 40:
        m = CJ.random_model(rng, 4)
        if not CJ.check_frame(m).passed:
            continue
        seen += 1
        mn = CJ.normalize_ob(m)
        entries = {}
        for x in powerset(m.worlds):
            mu = CJ.mu_from_ob(mn, x)
            if mu is not None:
                entries[x] = mu
        if not entries:
            continue
        cf = ChoiceFunction(m.worlds, entries)
        for p in ("sub", "pr", "empty"):
            assert check_property(cf, p).passed, (p, m.to_dict())


def test_eq_on_contexts_supporting_obligations():
    # with the 5-d completion present, O(p/p) holds and the extracted
    # least members satisfy eq across the affected contexts
    m = CJ.build_example_1_1(force_5d=True)
    mn = CJ.normalize_ob(m)
    entries = {x: CJ.mu_from_ob(mn, x) for x in mn.ob}
    cf = ChoiceFunction(m.worlds, entries)
    assert check_property(cf, "eq").passed


def test_violation_check(witness_model):
    assert CJ.violation_check(witness_model, "m2", parse("p"),
                              parse("q")) is False
    # chain model where the obligation was postulated at a predecessor
    worlds = ("u", "v", "w")
    val = {"p": {"v", "w"}, "q": {"v"}}
    av = {"u": {"v", "w"}, "v": {"v"}, "w": {"w"}}
    pv = {w: frozenset(worlds) for w in worlds}
    ob = {frozenset({"v"}): [frozenset({"v"})],
          frozenset({"v", "w"}): [frozenset({"v"})]}
    m = CJ.CJModel(worlds, ("p", "q"), val, av, pv, ob)
    # oracle: O(q/p) holds (checked through the clause), u actually allows
    # p-and-q, w satisfies p without q and has the predecessor u
    assert CJ.truth_set(m, parse("O(q / p)")) == frozenset(worlds)
    assert CJ.eval_world(m, "u", parse("<a>(p & q)"))
    assert CJ.violation_check(m, "w", parse("p"), parse("q")) is True
    assert CJ.violation_check(m, "w", parse("p"), parse("q"),
                              strengthened=True) is True
    assert CJ.violation_check(m, "v", parse("p"), parse("q")) is False
    # a world without actual predecessors never registers a violation
    av2 = {"u": {"v"}, "v": {"v"}, "w": {"w"}}
    m2 = CJ.CJModel(worlds, ("p", "q"), val, av2, pv, ob)
    # w's only predecessor is itself; drop that too
    av3 = {"u": {"v"}, "v": {"v"}, "w": {"v"}}
    m3 = CJ.CJModel(worlds, ("p", "q"), val, av3, pv, ob)
    assert CJ.violation_check(m3, "w", parse("p"), parse("q")) is False


def test_axioms_sampled_beyond_six_worlds():
    # seven worlds: the schema letters range over a seeded pool
    rng = random.Random(1)
    worlds = tuple(f"w{i}" for i in range(7))
    rank = {w: rng.randrange(3) for w in worlds}
    acc = {w: frozenset(worlds) for w in worlds}
    ob = {}
    for x in [frozenset(worlds), frozenset(worlds[:4])]:
        best = min(rank[w] for w in x)
        mu = frozenset(w for w in x if rank[w] == best)
        ob[x] = frozenset(a for a in powerset(worlds) if mu <= (a & x))
    m = CJ.CJModel(worlds, ("p",), {"p": {"w0"}}, acc, acc, ob)
    rep = CJ.check_axioms(m, seed=3)
    assert rep.passed


def test_soundness_sample():
    rng = random.Random(100)
    checked = 0
    for _ in range(250):
        m = CJ.random_model(rng, 4)
        if CJ.check_frame(m).passed:
            checked += 1
            rep = CJ.check_axioms(m)
            assert rep.passed, (rep.failing(), m.to_dict())
    assert checked > 40


def test_json_round_trip(witness_model):
    m = witness_model
    back = CJ.CJModel.from_json(m.to_json())
    assert back == m
    with pytest.raises(ValueError):
        CJ.CJModel.from_dict({"worlds": ["a", "a"], "atoms": [],
                              "valuation": {}, "av": {"a": []},
                              "pv": {"a": []}})
    data = m.to_dict()
    data["av"]["m1"] = ["m1", "zz"]
    with pytest.raises(ValueError):
        CJ.CJModel.from_dict(data)
