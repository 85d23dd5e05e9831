from __future__ import annotations

import pytest

from rule_cases import CASES, run
from sctptp.checker import (
    StepError,
    check_congruence,
    check_proof,
    check_step,
    check_substitution,
)
from sctptp.logic import Var
from sctptp.syntax import (
    Derivation,
    InferenceRecord,
    IntIndex,
    ProofStep,
    TermParam,
    parse_derivation,
    parse_formula,
    parse_sequent,
)


def case_id(case):
    return f"{case[0]}-{'ok' if case[4] is None else case[4]}"


@pytest.mark.parametrize("case", CASES, ids=[case_id(c) for c in CASES])
def test_rule_table(case):
    assert run(case) == case[4]


def congruence_step(text):
    return ProofStep("s", "plain", parse_sequent(text), InferenceRecord("congruence", (), ()))


class TestCongruence:
    def test_case2_example(self):
        m = check_congruence(congruence_step("[a = b, b = c, P(f(a)), ~P(f(c))] --> []"))
        assert m.case == 2

    def test_symmetry_case3(self):
        m = check_congruence(congruence_step("[a = b] --> [b = a]"))
        assert m.case == 3

    def test_case1(self):
        m = check_congruence(congruence_step("[a = b, p(f(a))] --> [p(f(b))]"))
        assert m.case == 1

    def test_no_match(self):
        with pytest.raises(StepError) as e:
            check_congruence(congruence_step("[a = b] --> []"))
        assert e.value.code == "NoCongruentMatch"

    def test_unrelated_atoms(self):
        with pytest.raises(StepError):
            check_congruence(congruence_step("[a = b, p(a)] --> [p(c)]"))


class TestProofs:
    def test_instantiation(self, fixture_text):
        report = check_proof(parse_derivation(fixture_text("instantiation.s")))
        assert report.valid
        assert [r[0] for r in report.results] == ["s1", "s2", "s3", "s4", "s5"]

    def test_drinker(self, fixture_text):
        assert check_proof(parse_derivation(fixture_text("drinker.s"))).valid

    @pytest.mark.parametrize("name", ["rightand.s", "rightex.s", "leftsubst.s", "contrapositive.s"])
    def test_snippets(self, fixture_text, name):
        assert check_proof(parse_derivation(fixture_text(name))).valid

    def test_mutated_leftall_parameter(self, fixture_text):
        text = fixture_text("instantiation.s").replace("o, $fot(A)", "o, $fot(B)")
        report = check_proof(parse_derivation(text))
        assert not report.valid
        assert [(f.step, f.code) for f in report.failures] == [("s2", "ContextMismatch")]

    def test_level_limit(self, fixture_text):
        d = parse_derivation(fixture_text("congruence_case2.s"))
        assert check_proof(d, level_limit=2).valid
        report = check_proof(d, level_limit=1)
        assert [f.code for f in report.failures] == ["LevelNotAllowed"]

    def test_level2_steps_listed(self, fixture_text):
        report = check_proof(parse_derivation(fixture_text("mixed.s")))
        assert report.valid and report.level2_steps_used == ["s1", "s2"]

    def test_conjecture_mismatch(self, fixture_text):
        text = fixture_text("instantiation.s").replace("[P(A) & P(B)]).", "[P(B) & P(A)]).", 1)
        report = check_proof(parse_derivation(text))
        assert [f.code for f in report.failures] == ["ConjectureMismatch"]

    def test_conjecture_without_proof_warns(self):
        report = check_proof(parse_derivation("fof(c, conjecture, p)."))
        assert report.valid and report.warnings

    def test_forward_premise(self):
        d = parse_derivation(
            "fof(s, plain, [] --> [a], inference(rightWeaken, [status(thm), 0], [t])).\n"
            "fof(t, plain, [] --> [], inference(leftWeaken, [status(thm), 0], [s]))."
        )
        codes = [f.code for f in check_proof(d).failures]
        assert codes[0] == "ForwardPremise"

    def test_unknown_rule_and_missing_inference(self):
        d = parse_derivation(
            "fof(s, plain, [] --> [a], inference(frobnicate, [status(thm)], [])).\n"
            "fof(t, plain, [] --> [b])."
        )
        assert [f.code for f in check_proof(d).failures] == ["UnknownRule", "MissingInference"]

    def test_premise_count(self):
        d = parse_derivation(
            "fof(a, axiom, [] --> [a]).\n"
            "fof(s, plain, [a] --> [a], inference(hyp, [status(thm), 0, 0], [a]))."
        )
        assert [f.code for f in check_proof(d).failures] == ["PremiseCountMismatch"]

    def test_porcelain(self, fixture_text):
        out = check_proof(parse_derivation(fixture_text("rightand.s"))).porcelain()
        assert out.splitlines() == ["STEP s1 OK", "RESULT VALID"]


def test_duplicates_in_sequents_do_not_matter():
    d = parse_derivation(
        "fof(ax1, axiom, [] --> [a, a]).\nfof(ax2, axiom, [] --> [b]).\n"
        "fof(s1, plain, [] --> [a & b, a & b], inference(rightAnd, [status(thm), 1], [ax1, ax2]))."
    )
    check_step(d, d["s1"])


def test_rightex_snippet_step():
    d = parse_derivation(
        "fof(s1, axiom, [] --> [f(X) = f(X)]).\n"
        "fof(s2, plain, [] --> [?[Y]: (f(X) = Y)], inference(rightEx, [status(thm), 0, $fot(f(X))], [s1]))."
    )
    check_step(d, d["s2"])


def test_alpha_equivalent_premise_accepted():
    d = parse_derivation(
        "fof(a, axiom, [![Y]: p(Y)] --> []).\n"
        "fof(s, plain, [![X]: p(X), b] --> [], inference(leftWeaken, [status(thm), 1], [a]))."
    )
    check_step(d, d["s"])


class TestSubstitution:
    def test_reversed_equality(self):
        c = parse_sequent("[b = a] --> [p(b)]")
        p = parse_sequent("[b = a] --> [p(a)]")
        assert check_substitution(c, p, [0], parse_formula("p(Z)"), ["Z"], "right") == (True,)

    def test_multi(self, fixture_text):
        assert check_proof(parse_derivation(fixture_text("multi.s"))).valid

    def test_multi_wrong_target(self):
        d = parse_derivation(
            "fof(ax, axiom, [a = b, c = d] --> [p(a, c)]).\n"
            "fof(s, plain, [a = b, c = d] --> [p(b, c)], inference(rightSubstMulti, "
            "[status(thm), [0, 1], $fof(p(Z1, Z2)), [Z1, Z2]], [ax]))."
        )
        with pytest.raises(StepError):
            check_step(d, d["s"])

    def test_multi_index_variable_mismatch(self):
        d = parse_derivation(
            "fof(ax, axiom, [a = b, c = d] --> [p(a, c)]).\n"
            "fof(s, plain, [a = b, c = d] --> [p(b, d)], inference(rightSubstMulti, "
            "[status(thm), [0], $fof(p(Z1, Z2)), [Z1, Z2]], [ax]))."
        )
        with pytest.raises(StepError) as e:
            check_step(d, d["s"])
        assert e.value.code == "ParamShapeMismatch"


class TestNNF:
    def test_nnf_step(self):
        d = parse_derivation(
            "fof(a, axiom, [~a | ~b] --> []).\n"
            "fof(s, plain, [~(a & b)] --> [], inference(NNF, [status(thm)], [a]))."
        )
        check_step(d, d["s"])

    def test_nnf_step_rejects_non_equivalent(self):
        d = parse_derivation(
            "fof(a, axiom, [~a & ~b] --> []).\n"
            "fof(s, plain, [~(a & b)] --> [], inference(NNF, [status(thm)], [a]))."
        )
        with pytest.raises(StepError):
            check_step(d, d["s"])


def test_steps_built_in_code():
    prem = ProofStep("p", "axiom", parse_sequent("[] --> [p(Y)]"))
    step = ProofStep(
        "s", "plain", parse_sequent("[] --> [![X]: p(X)]"),
        InferenceRecord("rightAll", (IntIndex(0), TermParam(Var("Y"))), ("p",)),
    )
    check_step(Derivation([prem, step]), step)
