from __future__ import annotations

import random

import pytest

import gen
from sctptp.checker import check_proof, find_congruence
from sctptp.egraph import explanation_size
from sctptp.elaborate import (
    FreshNames,
    InvalidInput,
    eliminate_level2,
    unfold_congruence,
    unfold_subst_multi,
)
from sctptp.logic import atom_args, sequent_sets_equal
from sctptp.rules import LEVEL2_NAMES
from sctptp.syntax import parse_derivation, parse_sequent


def explanation_edges(d):
    """Recursive explanation edges of every level 2 step: the elaboration budget."""
    total = 0
    for s in d.steps:
        if s.rule == "congruence":
            m = find_congruence(s.statement)
            if m.case == 3:
                total += explanation_size(m.egraph, m.source.lhs, m.source.rhs)
            else:
                for x, y in zip(atom_args(m.source), atom_args(m.target)):
                    total += explanation_size(m.egraph, x, y)
        elif s.rule in ("leftSubstMulti", "rightSubstMulti"):
            total += len(s.params[0].values)
    return total


def assert_conservative(d):
    result = eliminate_level2(d)
    out = result.derivation
    assert not any(s.rule in LEVEL2_NAMES for s in out.steps)
    assert check_proof(out, level_limit=1).valid
    assert sequent_sets_equal(out.final_step().statement, d.final_step().statement)
    added = len(out) - len(d) + len(result.step_map)
    assert added <= 4 * explanation_edges(d) + 1
    return result


def test_single_multi_becomes_single_subst():
    d = parse_derivation(
        "fof(ax, axiom, [a = b] --> [p(a)]).\n"
        "fof(s, plain, [a = b] --> [p(b)], inference(rightSubstMulti, "
        "[status(thm), [0], $fof(p(Z)), [Z]], [ax]))."
    )
    fragment = unfold_subst_multi(d, d["s"], FreshNames(["ax", "s"]))
    assert [s.rule for s in fragment] == ["rightSubst"]
    assert fragment[0].params[0].value == 0
    assert fragment[0].statement == d["s"].statement


def test_two_equalities_go_through_intermediate(fixture_text):
    d = parse_derivation(fixture_text("multi.s"))
    fragment = unfold_subst_multi(d, d["s1"], FreshNames(["ax", "s1"]))
    assert [s.rule for s in fragment] == ["rightSubst", "rightSubst"]
    assert fragment[0].statement == parse_sequent("[a = b, c = d] --> [p(b, c)]")
    assert_conservative(d)


def test_intermediate_already_in_context():
    d = parse_derivation(
        "fof(ax, axiom, [a = b, c = d] --> [p(a, c), p(b, c)]).\n"
        "fof(s, plain, [a = b, c = d] --> [p(b, d), p(b, c)], inference(rightSubstMulti, "
        "[status(thm), [0, 1], $fof(p(Z1, Z2)), [Z1, Z2]], [ax]))."
    )
    assert check_proof(d).valid
    assert_conservative(d)


def test_left_multi():
    d = parse_derivation(
        "fof(ax, axiom, [a = b, c = d, p(a, c)] --> []).\n"
        "fof(s, plain, [a = b, c = d, p(b, d)] --> [], inference(leftSubstMulti, "
        "[status(thm), [0, 1], $fof(p(Z1, Z2)), [Z1, Z2]], [ax]))."
    )
    assert check_proof(d).valid
    assert_conservative(d)


def test_case2_congruence(fixture_text):
    d = parse_derivation(fixture_text("congruence_case2.s"))
    result = assert_conservative(d)
    rules = [s.rule for s in result.derivation.steps]
    assert rules == ["leftHyp", "leftSubst", "leftSubst"]


def test_case3_congruence():
    d = parse_derivation("fof(s, plain, [a = b] --> [a = b], inference(congruence, [status(thm)], [])).")
    fragment = unfold_congruence(d["s"], FreshNames(["s"]))
    assert [s.rule for s in fragment] == ["rightRefl", "rightSubst"]
    assert_conservative(d)


@pytest.mark.parametrize(
    "text, rule",
    [
        ("[a = b, p(c)] --> [p(c)]", "hyp"),
        ("[a = b, p(c), ~p(c)] --> []", "leftHyp"),
        ("[a = b] --> [c = c]", "rightRefl"),
    ],
)
def test_identical_atoms_need_no_rewriting(text, rule):
    d = parse_derivation(f"fof(s, plain, {text}, inference(congruence, [status(thm)], [])).")
    fragment = unfold_congruence(d["s"], FreshNames(["s"]))
    assert [s.rule for s in fragment] == [rule]


def test_nested_congruence():
    d = parse_derivation(
        "fof(s, plain, [a = b, g(b, c) = d, p(g(a, c))] --> [p(d)], "
        "inference(congruence, [status(thm)], []))."
    )
    assert_conservative(d)


def test_mixed(fixture_text):
    d = parse_derivation(fixture_text("mixed.s"))
    result = assert_conservative(d)
    assert set(result.step_map) == {"s1", "s2"}
    assert result.derivation["s3"].premises == tuple(result.step_map[n][-1] for n in ("s1", "s2"))


def test_level1_unchanged(fixture_text):
    d = parse_derivation(fixture_text("instantiation.s"))
    result = eliminate_level2(d)
    assert result.derivation == d and result.step_map == {}


def test_idempotent(fixture_text):
    once = eliminate_level2(parse_derivation(fixture_text("mixed.s"))).derivation
    twice = eliminate_level2(once)
    assert twice.derivation == once and twice.step_map == {}


def test_invalid_input_rejected():
    d = parse_derivation("fof(s, plain, [a = b] --> [p(c)], inference(congruence, [status(thm)], [])).")
    with pytest.raises(InvalidInput):
        eliminate_level2(d)


def test_fresh_names_avoid_collisions():
    fresh = FreshNames(["s_e1"])
    assert fresh("s") == "s_e2"
    assert fresh("s") == "s_e3"


@pytest.mark.parametrize("seed", range(40))
def test_random_fixtures(seed):
    d, _ = gen.level2_fixture(random.Random(seed))
    assert check_proof(d).valid
    assert_conservative(d)
