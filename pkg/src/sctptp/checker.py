"""Verification of SC-TPTP proof steps.

Every level-1 rule is checked with set equations between the conclusion and
the premises, all modulo alpha-equivalence.  For a rule whose principal
formula ``F`` sits on one side of the conclusion and which adds formulas
``N_k`` to the sides of premise ``k``, a side ``X`` must satisfy

* ``P_k[X] <= C[X] | N_k[X]``   (premises only use the conclusion context),
* ``N_k[X] <= P_k[X] | {F}``    (the announced formulas are really there),
* ``C[X]   <= U_k P_k[X] | {F}`` (nothing in the conclusion comes from nowhere).

For one-premise rules these three conditions are exactly
``P[X] | {F} == C[X] | N[X]``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Optional, Sequence

from .egraph import EGraph
from .logic import (
    And,
    Eq,
    Exists,
    Forall,
    Formula,
    FormulaSet,
    Iff,
    Imp,
    Not,
    Or,
    Pred,
    Sequent,
    atom_args,
    atom_head,
    sequent_free_vars,
    sequent_sets_equal,
    substitute,
    substitute_many,
    to_nnf,
)
from .rules import LEVEL2_NAMES, ShapeError, lookup, param_term, param_var, validate_param_shape
from .syntax import Derivation, ProofStep, format_formula, format_sequent


class StepError(Exception):
    """A proof step failed verification; ``code`` is machine readable."""

    def __init__(self, code: str, message: str):
        self.code = code
        self.message = message
        super().__init__(f"{code}: {message}")


@dataclass(frozen=True)
class Failure:
    step: str
    code: str
    message: str


@dataclass
class CheckReport:
    results: list = field(default_factory=list)  # (step name, Failure or None)
    failures: list = field(default_factory=list)
    level2_steps_used: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.failures

    @property
    def verdict(self) -> str:
        return "valid" if self.valid else "invalid"

    def add(self, name: str, failure: Optional[Failure]) -> None:
        self.results.append((name, failure))
        if failure is not None:
            self.failures.append(failure)

    def porcelain(self) -> str:
        lines = []
        for name, failure in self.results:
            lines.append(f"STEP {name} OK" if failure is None else f"STEP {name} FAIL {failure.code}")
        lines.append(f"RESULT {'VALID' if self.valid else 'INVALID'}")
        return "\n".join(lines) + "\n"

    def text(self) -> str:
        lines = []
        for name, failure in self.results:
            if failure is None:
                lines.append(f"STEP {name} OK")
            else:
                lines.append(f"STEP {name} FAIL {failure.code}: {failure.message}")
        for w in self.warnings:
            lines.append(f"warning: {w}")
        if self.level2_steps_used:
            lines.append("level 2 steps: " + ", ".join(self.level2_steps_used))
        lines.append(f"RESULT {'VALID' if self.valid else 'INVALID'}")
        return "\n".join(lines) + "\n"


# -- helpers -----------------------------------------------------------------


def _at(formulas: tuple, i: int, where: str) -> Formula:
    if not 0 <= i < len(formulas):
        raise StepError("BadIndex", f"no formula at index {i} on the {where} ({len(formulas)} there)")
    return formulas[i]


def _pattern(f: Formula, cls, what: str):
    if not isinstance(f, cls):
        raise StepError("PatternMismatch", f"expected {what}, found {format_formula(f)}")
    return f


def _negated(f: Formula, cls, what: str):
    if not (isinstance(f, Not) and isinstance(f.body, cls)):
        raise StepError("PatternMismatch", f"expected {what}, found {format_formula(f)}")
    return f.body


def _missing(sub: Sequence[Formula], sup: FormulaSet) -> Optional[Formula]:
    for f in sub:
        if f not in sup:
            return f
    return None


def _check_context(
    concl: Sequent,
    prems: Sequence[Sequent],
    news: Sequence[tuple],
    kept_left: tuple = (),
    kept_right: tuple = (),
) -> None:
    c_sides = (FormulaSet(concl.left), FormulaSet(concl.right))
    kept = (FormulaSet(kept_left), FormulaSet(kept_right))
    names = ("left", "right")
    union = [FormulaSet(), FormulaSet()]
    for k, (prem, new) in enumerate(zip(prems, news)):
        for x, (p_side, new_side) in enumerate(zip((prem.left, prem.right), new)):
            p_set = FormulaSet(p_side)
            union[x] = union[x] | p_set
            extra = _missing(p_side, c_sides[x].with_(*new_side))
            if extra is not None:
                raise StepError(
                    "ContextMismatch",
                    f"premise {k + 1} has {format_formula(extra)} on the {names[x]}, "
                    "which the conclusion does not account for",
                )
            absent = _missing(new_side, p_set | kept[x])
            if absent is not None:
                raise StepError(
                    "ContextMismatch",
                    f"premise {k + 1} lacks {format_formula(absent)} on the {names[x]}",
                )
    for x, side in enumerate((concl.left, concl.right)):
        extra = _missing(side, union[x] | kept[x])
        if extra is not None:
            raise StepError(
                "ContextMismatch",
                f"conclusion has {format_formula(extra)} on the {names[x]}, "
                "which no premise provides",
            )


def _eigen(concl: Sequent, var: str) -> None:
    if var in sequent_free_vars(concl):
        raise StepError(
            "EigenvariableCaptured", f"{var} is free in the conclusion {format_sequent(concl)}"
        )


# -- level 1 rules -----------------------------------------------------------
# each check receives (conclusion, premise sequents, parameters)


def _hyp(c, ps, params):
    a = _at(c.left, params[0].value, "left")
    b = _at(c.right, params[1].value, "right")
    if FormulaSet((a,)) != FormulaSet((b,)):
        raise StepError("PatternMismatch", f"{format_formula(a)} and {format_formula(b)} differ")


def _left_hyp(c, ps, params):
    a = _at(c.left, params[0].value, "left")
    n = _at(c.left, params[1].value, "left")
    if not (isinstance(n, Not) and FormulaSet((n.body,)) == FormulaSet((a,))):
        raise StepError(
            "PatternMismatch", f"{format_formula(n)} is not the negation of {format_formula(a)}"
        )


def _left_weaken(c, ps, params):
    a = _at(c.left, params[0].value, "left")
    _check_context(c, ps, [((), ())], kept_left=(a,))


def _right_weaken(c, ps, params):
    a = _at(c.right, params[0].value, "right")
    _check_context(c, ps, [((), ())], kept_right=(a,))


def _cut(c, ps, params):
    a = _at(ps[0].right, params[0].value, "right of the first premise")
    _check_context(c, ps, [((), (a,)), ((a,), ())])


def _left_unary(cls, what, make_news):
    def check(c, ps, params):
        f = _at(c.left, params[0].value, "left")
        _pattern(f, cls, what)
        _check_context(c, ps, make_news(f), kept_left=(f,))

    return check


def _right_unary(cls, what, make_news):
    def check(c, ps, params):
        f = _at(c.right, params[0].value, "right")
        _pattern(f, cls, what)
        _check_context(c, ps, make_news(f), kept_right=(f,))

    return check


def _left_not(cls, what, make_news):
    def check(c, ps, params):
        f = _at(c.left, params[0].value, "left")
        inner = _negated(f, cls, what)
        _check_context(c, ps, make_news(inner), kept_left=(f,))

    return check


def _left_ex(c, ps, params):
    f = _pattern(_at(c.left, params[0].value, "left"), Exists, "an existential")
    y = param_var(params[1])
    _eigen(c, y)
    _check_context(c, ps, [((substitute(f.body, f.var, _var(y)),), ())], kept_left=(f,))


def _left_all(c, ps, params):
    f = _pattern(_at(c.left, params[0].value, "left"), Forall, "a universal")
    t = param_term(params[1])
    _check_context(c, ps, [((substitute(f.body, f.var, t),), ())], kept_left=(f,))


def _right_ex(c, ps, params):
    f = _pattern(_at(c.right, params[0].value, "right"), Exists, "an existential")
    t = param_term(params[1])
    _check_context(c, ps, [((), (substitute(f.body, f.var, t),))], kept_right=(f,))


def _right_all(c, ps, params):
    f = _pattern(_at(c.right, params[0].value, "right"), Forall, "a universal")
    y = param_var(params[1])
    _eigen(c, y)
    _check_context(c, ps, [((), (substitute(f.body, f.var, _var(y)),))], kept_right=(f,))


def _left_not_ex(c, ps, params):
    f = _at(c.left, params[0].value, "left")
    inner = _negated(f, Exists, "a negated existential")
    t = param_term(params[1])
    _check_context(c, ps, [((Not(substitute(inner.body, inner.var, t)),), ())], kept_left=(f,))


def _left_not_all(c, ps, params):
    f = _at(c.left, params[0].value, "left")
    inner = _negated(f, Forall, "a negated universal")
    y = param_var(params[1])
    _eigen(c, y)
    _check_context(
        c, ps, [((Not(substitute(inner.body, inner.var, _var(y))),), ())], kept_left=(f,)
    )


def _right_refl(c, ps, params):
    f = _pattern(_at(c.right, params[0].value, "right"), Eq, "an equality")
    if f.lhs != f.rhs:
        raise StepError("PatternMismatch", f"{format_formula(f)} is not of the form t = t")


def _var(name):
    from .logic import Var

    return Var(name)


def check_substitution(
    c: Sequent, p: Sequent, indices: Sequence[int], template: Formula, variables: Sequence[str], side: str
) -> tuple:
    """Check a (multi-)substitution step; return the orientation used per equality.

    ``False`` means the equality ``t = u`` at that index was used as written
    (premise holds the template at ``t``), ``True`` that it was used reversed.
    """
    eqs = []
    for i in indices:
        e = _at(c.left, i, "left")
        if not isinstance(e, Eq):
            raise StepError("NotAnEquality", f"{format_formula(e)} at left index {i} is not an equality")
        eqs.append(e)
    if len(set(variables)) != len(variables):
        raise StepError("PatternMismatch", "substitution variables must be distinct")
    c_left, c_right = FormulaSet(c.left), FormulaSet(c.right)
    p_left, p_right = FormulaSet(p.left), FormulaSet(p.right)
    if side == "right":
        if p_left != c_left:
            raise StepError("ContextMismatch", "left sides of premise and conclusion differ")
        c_side, p_side, extra = c_right, p_right, ()
    else:
        if p_right != c_right:
            raise StepError("ContextMismatch", "right sides of premise and conclusion differ")
        c_side, p_side, extra = c_left, p_left, tuple(eqs)
    n = len(eqs)
    orientations = product((False, True), repeat=n) if n <= 12 else [(False,) * n, (True,) * n]
    for orient in orientations:
        ts = [e.rhs if o else e.lhs for e, o in zip(eqs, orient)]
        us = [e.lhs if o else e.rhs for e, o in zip(eqs, orient)]
        g_t = substitute_many(template, dict(zip(variables, ts)))
        g_u = substitute_many(template, dict(zip(variables, us)))
        if g_u in c_side and g_t in p_side and p_side.with_(g_u, *extra) == c_side.with_(g_t):
            return tuple(orient)
    raise StepError(
        "ContextMismatch",
        f"no orientation of the equalities rewrites the premise into the conclusion on the {side}",
    )


def _subst(side):
    def check(c, ps, params):
        check_substitution(c, ps[0], [params[0].value], params[1].formula, [param_var(params[2])], side)

    return check


def _subst_multi(side):
    def check(c, ps, params):
        check_substitution(c, ps[0], params[0].values, params[1].formula, params[2].names, side)

    return check


def _nnf(c, ps, params):
    p = ps[0]
    for x, (cs, pside) in enumerate(((c.left, p.left), (c.right, p.right))):
        if FormulaSet(map(to_nnf, cs)) != FormulaSet(map(to_nnf, pside)):
            side = ("left", "right")[x]
            raise StepError("ContextMismatch", f"{side} sides differ modulo negation normal form")


def _congruence(c, ps, params):
    find_congruence(c)


_CHECKS: dict = {
    "hyp": _hyp,
    "leftHyp": _left_hyp,
    "leftWeaken": _left_weaken,
    "rightWeaken": _right_weaken,
    "cut": _cut,
    "leftAnd": _left_unary(And, "a conjunction", lambda f: [((f.left, f.right), ())]),
    "leftOr": _left_unary(Or, "a disjunction", lambda f: [((f.left,), ()), ((f.right,), ())]),
    "leftImp1": _left_unary(Imp, "an implication", lambda f: [((), (f.left,)), ((f.right,), ())]),
    "leftImp2": _left_unary(
        Imp, "an implication", lambda f: [((Not(f.left),), ()), ((f.right,), ())]
    ),
    "leftIff": _left_unary(
        Iff,
        "an equivalence",
        lambda f: [((Imp(f.left, f.right), Imp(f.right, f.left)), ())],
    ),
    "leftNot": _left_unary(Not, "a negation", lambda f: [((), (f.body,))]),
    "leftEx": _left_ex,
    "leftAll": _left_all,
    "rightAnd": _right_unary(And, "a conjunction", lambda f: [((), (f.left,)), ((), (f.right,))]),
    "rightOr": _right_unary(Or, "a disjunction", lambda f: [((), (f.left, f.right))]),
    "rightImp": _right_unary(Imp, "an implication", lambda f: [((f.left,), (f.right,))]),
    "rightIff": _right_unary(
        Iff,
        "an equivalence",
        lambda f: [((), (Imp(f.left, f.right),)), ((), (Imp(f.right, f.left),))],
    ),
    "rightNot": _right_unary(Not, "a negation", lambda f: [((f.body,), ())]),
    "rightEx": _right_ex,
    "rightAll": _right_all,
    "leftNotAnd": _left_not(
        And, "a negated conjunction", lambda g: [((Not(g.left),), ()), ((Not(g.right),), ())]
    ),
    "leftNotOr": _left_not(Or, "a negated disjunction", lambda g: [((Not(g.left), Not(g.right)), ())]),
    "leftNotImp": _left_not(Imp, "a negated implication", lambda g: [((g.left, Not(g.right)), ())]),
    "leftNotIff": _left_not(
        Iff,
        "a negated equivalence",
        lambda g: [((Not(Imp(g.left, g.right)),), ()), ((Not(Imp(g.right, g.left)),), ())],
    ),
    "leftNotNot": _left_not(Not, "a double negation", lambda g: [((g.body,), ())]),
    "leftNotEx": _left_not_ex,
    "leftNotAll": _left_not_all,
    "rightRefl": _right_refl,
    "rightSubst": _subst("right"),
    "leftSubst": _subst("left"),
    "NNF": _nnf,
    "congruence": _congruence,
    "rightSubstMulti": _subst_multi("right"),
    "leftSubstMulti": _subst_multi("left"),
}


# -- congruence --------------------------------------------------------------


@dataclass
class CongruenceMatch:
    """Which closing configuration a congruence step uses.

    ``case`` 1: ``source`` on the left, ``target`` on the right.
    ``case`` 2: ``source`` on the left, ``Not(target)`` on the left.
    ``case`` 3: ``source`` is an equality on the right; ``target`` is None.
    """

    case: int
    source: Formula
    target: Optional[Formula]
    egraph: EGraph


def _top_atoms(formulas) -> list:
    out = []
    for f in formulas:
        g = f.body if isinstance(f, Not) else f
        if isinstance(g, (Pred, Eq)):
            out.append(g)
    return out


def congruence_egraph(seq: Sequent) -> EGraph:
    """E-graph over the atom arguments of ``seq``, closed under its left equalities."""
    eg = EGraph()
    for a in _top_atoms(seq.left + seq.right):
        for t in atom_args(a):
            eg.add_term(t)
    for f in seq.left:
        if isinstance(f, Eq):
            eg.assert_equal(f)
    return eg


def _args_congruent(eg: EGraph, a, b) -> bool:
    return atom_head(a) == atom_head(b) and all(
        eg.congruent(x, y) for x, y in zip(atom_args(a), atom_args(b))
    )


def find_congruence(seq: Sequent, eg: Optional[EGraph] = None) -> CongruenceMatch:
    """Find the first closing configuration of a congruence sequent.

    Raises ``StepError("NoCongruentMatch")`` when there is none.
    """
    eg = eg or congruence_egraph(seq)
    left_atoms = [f for f in seq.left if isinstance(f, (Pred, Eq))]
    right_atoms = [f for f in seq.right if isinstance(f, (Pred, Eq))]
    left_negs = [f.body for f in seq.left if isinstance(f, Not) and isinstance(f.body, (Pred, Eq))]
    # a closed right equality needs no left atom, so it is tried first
    for b in right_atoms:
        if isinstance(b, Eq) and eg.congruent(b.lhs, b.rhs):
            return CongruenceMatch(3, b, None, eg)
    for a in left_atoms:
        for b in right_atoms:
            if _args_congruent(eg, a, b):
                return CongruenceMatch(1, a, b, eg)
    for a in left_atoms:
        for b in left_negs:
            if _args_congruent(eg, a, b):
                return CongruenceMatch(2, a, b, eg)
    raise StepError("NoCongruentMatch", "no pair of atoms is closed by the left equalities")


def check_congruence(s: ProofStep, eg: Optional[EGraph] = None) -> CongruenceMatch:
    if s.premises or s.params:
        raise StepError("PremiseCountMismatch", "congruence takes no premises and no parameters")
    return find_congruence(s.statement, eg)


# -- steps and proofs --------------------------------------------------------


def premise_sequents(d: Derivation, s: ProofStep) -> list:
    out = []
    for name in s.premises:
        if name not in d:
            raise StepError("DanglingPremise", f"unknown premise {name}")
        out.append(d[name].statement)
    return out


def check_step(d: Derivation, s: ProofStep) -> None:
    """Verify one inference step; raise :class:`StepError` if it is wrong."""
    if s.inference is None:
        raise StepError("MissingInference", f"{s.role} step without an inference annotation")
    rule = lookup(s.rule)
    if rule is None:
        raise StepError("UnknownRule", f"unknown rule {s.rule}")
    try:
        validate_param_shape(rule, s.params, s.premises)
    except ShapeError as e:
        code = "PremiseCountMismatch" if e.code == "ArityMismatch" else e.code
        raise StepError(code, str(e)) from None
    prems = premise_sequents(d, s)
    _CHECKS[rule.name](s.statement, prems, s.params)


def check_proof(d: Derivation, level_limit: int = 2) -> CheckReport:
    """Check every derived step of ``d`` and the final step against the conjecture."""
    report = CheckReport()
    position = d.index
    for k, s in enumerate(d.steps):
        if s.role not in ("plain", "assumption"):
            continue
        failure = None
        try:
            rule = lookup(s.rule) if s.inference else None
            if rule is not None and rule.level > level_limit:
                raise StepError("LevelNotAllowed", f"{s.rule} is a level {rule.level} rule")
            for name in s.premises:
                if name in position and position[name] >= k:
                    raise StepError("ForwardPremise", f"premise {name} does not precede {s.name}")
                if name in position and d[name].role == "conjecture":
                    raise StepError("ConjecturePremise", f"conjecture {name} cited as a premise")
            check_step(d, s)
        except StepError as e:
            failure = Failure(s.name, e.code, e.message)
        if s.rule in LEVEL2_NAMES:
            report.level2_steps_used.append(s.name)
        report.add(s.name, failure)
    conj = d.conjecture()
    final = d.final_step()
    if conj is not None:
        if final is None:
            report.warnings.append(f"no derived step proves conjecture {conj.name}")
        elif not sequent_sets_equal(final.statement, conj.statement):
            report.add(
                conj.name,
                Failure(
                    conj.name,
                    "ConjectureMismatch",
                    f"final step {final.name} proves {format_sequent(final.statement)}",
                ),
            )
    return report
