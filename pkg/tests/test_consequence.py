import random

import pytest

from cjlab import consequence as Q
from cjlab.choice import ChoiceFunction, check_property
from cjlab.cjmodel import EvalError
from cjlab.syntax import parse

from conftest import all_choice_functions, min_choice_function


def total_cf(lang, f):
    return ChoiceFunction(lang.worlds,
                          {frozenset(lang.world_set(mask)):
                           frozenset(lang.world_set(f(mask)))
                           for mask in range(1 << lang.n_worlds)})


@pytest.fixture(scope="module")
def lang2():
    return Q.FiniteLanguage(("p", "q"))


def test_language_layout(lang2):
    assert lang2.worlds == ("00", "10", "01", "11")
    assert lang2.world_set(lang2.truth_mask(parse("p"))) == {"10", "11"}
    assert lang2.world_set(lang2.truth_mask(parse("p & ~q"))) == {"10"}


def test_char_formula_round_trip(lang2):
    for mask in range(1 << lang2.n_worlds):
        assert lang2.truth_mask(lang2.char_formula(mask)) == mask


def test_entails_identity(lang2):
    rel = Q.ConsequenceRelation(lang2, total_cf(lang2, lambda m: m))
    assert rel.entails([parse("p")], parse("p | q"))
    assert not rel.entails([parse("p")], parse("q"))
    assert rel.entails([parse("p"), parse("~p")], parse("q"))


def test_entails_ranked_prefers(lang2):
    rank = {"00": 0, "10": 0, "01": 1, "11": 1}
    cf = min_choice_function(lang2.worlds, rank)
    rel = Q.ConsequenceRelation(lang2, cf)
    assert rel.entails([parse("p")], parse("~q"))
    assert not rel.entails([parse("p")], parse("q"))


def test_entails_rejects_modal(lang2):
    rel = Q.ConsequenceRelation(lang2, total_cf(lang2, lambda m: m))
    with pytest.raises(EvalError):
        rel.entails([parse("[a] p")], parse("q"))
    with pytest.raises(EvalError):
        rel.entails([parse("p")], parse("O(p / q)"))


def test_relation_requires_total_domain(lang2):
    partial = ChoiceFunction(lang2.worlds,
                             {frozenset(): frozenset()})
    with pytest.raises(ValueError):
        Q.ConsequenceRelation(lang2, partial)
    wrong_universe = ChoiceFunction(("a", "b"), {frozenset(): frozenset()})
    with pytest.raises(ValueError):
        Q.ConsequenceRelation(lang2, wrong_universe)


def test_identity_passes_basic_rules(lang2):
    rel = Q.ConsequenceRelation(lang2, total_cf(lang2, lambda m: m))
    for rid in ("AND", "OR", "wOR", "disjOR", "LLE", "RW", "CCL", "SC",
                "REF", "CP", "PR", "CUT", "CM", "ResM", "CUM", "subsup"):
        assert Q.check_logical_rule(rel, rid).passed, rid


def test_ranked_passes_rational_rules(lang2):
    rank = {"00": 0, "10": 1, "01": 2, "11": 0}
    rel = Q.ConsequenceRelation(lang2, min_choice_function(lang2.worlds, rank))
    for rid in ("RatM", "RatMeq", "logeq2", "logpar", "logcup", "logcup2"):
        assert Q.check_logical_rule(rel, rid).passed, rid


def test_cm_violation_transported():
    lang = Q.FiniteLanguage(("p",))
    w0, w1 = 1, 2

    def broken(mask):
        if mask == 3:
            return w0
        if mask == w0:
            return w1
        return mask

    cf = total_cf(lang, broken)
    rel = Q.ConsequenceRelation(lang, cf)
    rep = Q.check_logical_rule(rel, "CM")
    assert not rep.passed
    assert rep.counterexample["T"] == frozenset({"0", "1"})
    assert rep.counterexample["T'"] == frozenset({"0"})
    assert not check_property(cf, "cm").passed


def test_lle_ccl_hold_for_every_function():
    lang = Q.FiniteLanguage(("p",))
    rng = random.Random(2)
    for _ in range(200):
        fv = [rng.randrange(4) for _ in range(4)]
        rel = Q.ConsequenceRelation(lang, total_cf(lang, lambda m: fv[m]))
        assert Q.check_logical_rule(rel, "LLE").passed
        assert Q.check_logical_rule(rel, "CCL").passed


def test_and_rw_hold_given_sub():
    lang = Q.FiniteLanguage(("p",))
    rng = random.Random(9)
    for _ in range(200):
        fv = [rng.randrange(4) & m for m in range(4)]   # forces sub
        rel = Q.ConsequenceRelation(lang, total_cf(lang, lambda m: fv[m]))
        assert Q.check_logical_rule(rel, "AND").passed
        assert Q.check_logical_rule(rel, "RW").passed


def test_rule_aliases():
    assert Q.normalize_rule_id("(RatM=)") == "RatMeq"
    assert Q.normalize_rule_id("Log∪'") == "logcup2"
    assert Q.normalize_rule_id("⊆⊇") == "subsup"
    with pytest.raises(ValueError):
        Q.normalize_rule_id("nope")


def test_correspondence_rows_cover_table():
    ids = {r.row for r in Q.CORRESPONDENCE_ROWS}
    assert {"1.1", "4.1", "4.2", "6.1", "6.2", "6.5", "13.1", "16.1",
            "17.2"} <= ids
    assert not set(Q.EXCLUDED_ROWS) & ids


def test_correspondence_exhaustive_one_atom():
    # SC <=> sub agreement (and every other row) on every function over
    # the one-atom language
    for cf in all_choice_functions(("x", "y")):
        dis = Q.correspondence_disagreements(cf)
        assert not dis, (cf, [d.to_dict() for d in dis])


def test_correspondence_sampled_two_atoms():
    lang = Q.FiniteLanguage(("p", "q"))
    rng = random.Random(77)
    for _ in range(25):
        fv = [rng.randrange(16) for _ in range(16)]
        cf = total_cf(lang, lambda m: fv[m])
        assert not Q.correspondence_disagreements(cf)


def test_correspondence_requires_power_of_two():
    cf = ChoiceFunction(("a", "b", "c"), {})
    with pytest.raises(ValueError):
        Q.correspondence_check(cf)


def test_zero_atom_language_edge():
    lang = Q.FiniteLanguage(())
    assert lang.n_worlds == 1
    cf = ChoiceFunction(lang.worlds, {frozenset(): frozenset(),
                                      frozenset(lang.worlds):
                                      frozenset(lang.worlds)})
    assert not Q.correspondence_disagreements(cf)
