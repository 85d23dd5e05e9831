from __future__ import annotations

import random

import pytest

import gen
from sctptp.logic import App, Eq, Not, Sequent, Var
from sctptp.syntax import (
    DanglingPremise,
    Derivation,
    DuplicateName,
    IntIndex,
    ParseError,
    ProofStep,
    TermParam,
    TPTPSyntaxError,
    parse_derivation,
    parse_formula,
    parse_sequent,
    print_derivation,
    resolve_rule_name,
)


def test_instantiation_structure(fixture_text):
    d = parse_derivation(fixture_text("instantiation.s"))
    assert len(d) == 6
    s2 = d["s2"]
    assert s2.inference.rule == "leftAll"
    assert s2.inference.params == (IntIndex(0), TermParam(Var("A")))
    assert s2.inference.premises == ("s1",)
    assert d.conjecture().name == "c"
    assert d.final_step().name == "s5"


def test_empty_sequent_is_grammatical():
    text = (
        "fof(a, axiom, [] --> [p]).\nfof(b, axiom, [p] --> []).\n"
        "fof(e, plain, [] --> [], inference(cut, [status(thm), 0], [a, b]))."
    )
    d = parse_derivation(text)
    assert d["e"].statement == Sequent((), ())


def test_missing_right_tuple():
    with pytest.raises(TPTPSyntaxError):
        parse_derivation("fof(x, plain, [p] --> ).")


def test_duplicate_name():
    with pytest.raises(DuplicateName):
        parse_derivation("fof(a, axiom, [] --> [p]).\nfof(a, axiom, [] --> [q]).")


def test_dangling_premise():
    with pytest.raises(DanglingPremise):
        parse_derivation("fof(s, plain, [] --> [p], inference(weakening, [status(thm)], [nope])).")


def test_errors_are_parse_errors():
    for text in ["fof(x, plain, [p] --> ).", "fof(x, bogusrole, [] --> [])."]:
        with pytest.raises(ParseError):
            parse_derivation(text)


def test_single_axiom_line():
    d = Derivation([ProofStep("a", "axiom", parse_sequent("[] --> [p]"))])
    assert print_derivation(d).strip() == "fof(a, axiom, [] --> [p])."


def test_arrow_variants():
    assert parse_sequent("[p] -> [q]") == parse_sequent("[p] --> [q]")


def test_disequality_desugars():
    assert parse_formula("a != b") == Not(Eq(App("a", ()), App("b", ())))


def test_variables_and_constants():
    f = parse_formula("p(X, a)")
    assert f.args == (Var("X"), App("a", ()))


@pytest.mark.parametrize(
    "token, expected",
    [("leftNotForall", "leftNotAll"), ("rightAnd", "rightAnd"), ("frobnicate", "frobnicate")],
)
def test_aliases(token, expected):
    assert resolve_rule_name(token) == expected


def test_alias_applied_when_parsing(fixture_text):
    d = parse_derivation(fixture_text("drinker.s"))
    assert d["f5"].inference.rule == "leftNotAll"


def test_letter_o_means_zero(fixture_text):
    d = parse_derivation(fixture_text("instantiation.s"))
    assert d["s1"].inference.params == (IntIndex(0), IntIndex(0))


@pytest.mark.parametrize(
    "name",
    ["instantiation.s", "drinker.s", "rightand.s", "rightex.s", "leftsubst.s", "multi.s", "mixed.s",
     "congruence_case2.s", "contrapositive.s"],
)
def test_fixture_roundtrip(fixture_text, name):
    d = parse_derivation(fixture_text(name))
    printed = print_derivation(d)
    again = parse_derivation(printed)
    assert again == d
    assert print_derivation(again) == printed


@pytest.mark.parametrize("seed", range(50))
def test_random_roundtrip(seed):
    d = gen.derivation(random.Random(seed), 6)
    printed = print_derivation(d)
    assert parse_derivation(printed) == d


def test_quoted_names_roundtrip():
    text = "fof('Step One', axiom, [] --> ['Odd Pred'('B', 'it\\'s')])."
    d = parse_derivation(text)
    assert parse_derivation(print_derivation(d)) == d
