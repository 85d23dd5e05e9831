"""Elimination of level 2 steps.

``congruence`` steps are rebuilt from e-graph explanations as a closing leaf
(``hyp``, ``leftHyp`` or ``rightRefl``) followed by one single-position
substitution per external equality edge.  ``left/rightSubstMulti`` steps are
split into one ``leftSubst``/``rightSubst`` per variable.  NNF steps are
checked elsewhere but left untouched here.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .checker import StepError, check_congruence, check_proof, check_substitution, premise_sequents
from .egraph import External
from .logic import (
    App,
    Eq,
    Formula,
    FormulaSet,
    Not,
    Sequent,
    Term,
    Var,
    all_vars,
    atom_args,
    fresh_name,
    nameless,
    rebuild_atom,
    substitute_many,
)
from .syntax import (
    Derivation,
    FormulaParam,
    InferenceRecord,
    IntIndex,
    ProofStep,
    TermParam,
)


class InvalidLevel2Step(ValueError):
    pass


class InvalidInput(ValueError):
    pass


class FreshNames:
    """Step names ``<base>_e<k>`` that avoid every name already taken."""

    def __init__(self, taken=()):
        self.taken = set(taken)
        self.counters: dict = {}

    def __call__(self, base: str) -> str:
        k = self.counters.get(base, 0)
        while True:
            k += 1
            name = f"{base}_e{k}"
            if name not in self.taken:
                self.counters[base] = k
                self.taken.add(name)
                return name


@dataclass
class ElaborationResult:
    derivation: Derivation
    step_map: dict = field(default_factory=dict)
    stats: dict = field(default_factory=dict)


def _index_of(formulas, f: Formula) -> int:
    key = nameless(f)
    for i, g in enumerate(formulas):
        if nameless(g) == key:
            return i
    raise AssertionError(f"formula missing from sequent side: {f}")


def _dedup(formulas) -> tuple:
    seen, out = set(), []
    for f in formulas:
        k = nameless(f)
        if k not in seen:
            seen.add(k)
            out.append(f)
    return tuple(out)


def _sequent_vars(seq: Sequent) -> set:
    out: set = set()
    for f in seq.left + seq.right:
        out |= all_vars(f)
    return out


def _step(name, role, statement, rule, params, premises) -> ProofStep:
    return ProofStep(name, role, statement, InferenceRecord(rule, tuple(params), tuple(premises)))


# -- multi-substitution ------------------------------------------------------


def unfold_subst_multi(d: Derivation, s: ProofStep, fresh: Callable[[str], str]) -> list:
    """Replace one SubstMulti step by a chain of single substitutions.

    The returned steps end with a step whose sequent is ``s``'s own; the
    first step cites ``s``'s premise.
    """
    side = "left" if s.rule == "leftSubstMulti" else "right"
    indices = list(s.params[0].values)
    template = s.params[1].formula
    variables = list(s.params[2].names)
    try:
        (prem,) = premise_sequents(d, s)
        orient = check_substitution(s.statement, prem, indices, template, variables, side)
    except (StepError, ValueError) as e:
        raise InvalidLevel2Step(f"{s.name}: {e}") from None
    concl = s.statement
    eqs = [concl.left[i] for i in indices]
    ts = [e.rhs if o else e.lhs for e, o in zip(eqs, orient)]
    us = [e.lhs if o else e.rhs for e, o in zip(eqs, orient)]
    n = len(eqs)
    states = [
        substitute_many(template, dict(zip(variables, us[:j] + ts[j:]))) for j in range(n + 1)
    ]
    avoid = _sequent_vars(concl) | _sequent_vars(prem) | all_vars(template) | set(variables)
    w = fresh_name("Z", avoid)
    p_side = prem.left if side == "left" else prem.right
    c_side = concl.left if side == "left" else concl.right
    c_set = FormulaSet(c_side)
    mid = _dedup(f for f in p_side if f in c_set)

    out = []
    previous = s.premises[0]
    for j in range(1, n + 1):
        if j == n:
            seq = concl
        elif side == "right":
            seq = Sequent(concl.left, mid + (states[j],))
        else:
            seq = Sequent(_dedup(mid + tuple(eqs[:j]) + (states[j],)), concl.right)
        mapping = dict(zip(variables, us[: j - 1] + [Var(w)] + ts[j:]))
        step_template = substitute_many(template, mapping)
        name = fresh(s.name)
        params = [IntIndex(_index_of(seq.left, eqs[j - 1])), FormulaParam(step_template), TermParam(Var(w))]
        rule = "leftSubst" if side == "left" else "rightSubst"
        out.append(_step(name, s.role, seq, rule, params, [previous]))
        previous = name
    return out


# -- congruence --------------------------------------------------------------


def _rewrite_plan(eg, x: Term, y: Term, ctx: Callable[[Term], Formula], plan: list) -> None:
    """Append (context, from, to, equality) moves that rewrite ``x`` into ``y``."""
    for edge in eg.explain(x, y):
        j = edge.justification
        if isinstance(j, External):
            plan.append((ctx, edge.lhs, edge.rhs, j.equation))
            continue
        left, right = edge.lhs.args, edge.rhs.args
        for i in range(len(left)):
            if left[i] == right[i]:
                continue

            def inner(z, i=i, ctx=ctx, sym=edge.lhs.symbol):
                return ctx(App(sym, right[:i] + (z,) + left[i + 1 :]))

            _rewrite_plan(eg, left[i], right[i], inner, plan)


def _atom_plan(eg, start, goal) -> list:
    src, dst = atom_args(start), atom_args(goal)
    plan: list = []
    for i in range(len(src)):
        if src[i] == dst[i]:
            continue

        def ctx(z, i=i):
            return rebuild_atom(start, dst[:i] + (z,) + src[i + 1 :])

        _rewrite_plan(eg, src[i], dst[i], ctx, plan)
    return plan


def unfold_congruence(s: ProofStep, fresh: Callable[[str], str]) -> list:
    """Level 1 steps concluding the sequent of congruence step ``s``."""
    try:
        match = check_congruence(s)
    except StepError as e:
        raise InvalidLevel2Step(f"{s.name}: {e}") from None
    seq = s.statement
    gamma, delta = seq.left, seq.right
    if match.case == 1:
        start, goal = match.source, match.target
    elif match.case == 2:
        start, goal = match.target, match.source
    else:
        b = match.source
        start, goal = Eq(b.lhs, b.lhs), b
    plan = _atom_plan(match.egraph, start, goal)
    w = fresh_name("Z", _sequent_vars(seq))

    def sequent_with(atom):
        if match.case == 2:
            return Sequent(gamma + (atom,), delta)
        return Sequent(gamma, delta + (atom,))

    leaf_seq = seq if not plan else sequent_with(start)
    if match.case == 1:
        leaf = ("hyp", [IntIndex(_index_of(gamma, start)), IntIndex(_index_of(leaf_seq.right, start))])
    elif match.case == 2:
        neg = Not(match.target)
        leaf = ("leftHyp", [IntIndex(_index_of(leaf_seq.left, start)), IntIndex(_index_of(leaf_seq.left, neg))])
    else:
        leaf = ("rightRefl", [IntIndex(_index_of(leaf_seq.right, start))])
    name = fresh(s.name)
    out = [_step(name, s.role, leaf_seq, leaf[0], leaf[1], [])]
    rule = "leftSubst" if match.case == 2 else "rightSubst"
    for k, (ctx, _, to, eq) in enumerate(plan):
        current = ctx(to)
        step_seq = seq if k == len(plan) - 1 else sequent_with(current)
        params = [IntIndex(_index_of(step_seq.left, eq)), FormulaParam(ctx(Var(w))), TermParam(Var(w))]
        nxt = fresh(s.name)
        out.append(_step(nxt, s.role, step_seq, rule, params, [name]))
        name = nxt
    return out


# -- whole derivations -------------------------------------------------------


def _rewire(s: ProofStep, renames: dict) -> ProofStep:
    if not s.inference or not any(p in renames for p in s.premises):
        return s
    prem = tuple(renames.get(p, p) for p in s.premises)
    inf = InferenceRecord(s.inference.rule, s.inference.params, prem, s.inference.status)
    return ProofStep(s.name, s.role, s.statement, inf, s.formula_statement, s.annotation)


def eliminate_level2(d: Derivation) -> ElaborationResult:
    """Replace congruence and SubstMulti steps by level 1 fragments."""
    report = check_proof(d, level_limit=2)
    if not report.valid:
        first = report.failures[0]
        raise InvalidInput(f"derivation does not check: {first.step} {first.code}: {first.message}")
    fresh = FreshNames(s.name for s in d.steps)
    steps: list = []
    renames: dict = {}
    step_map: dict = {}
    nnf = []
    for s in d.steps:
        s = _rewire(s, renames)
        if s.rule == "congruence":
            fragment = unfold_congruence(s, fresh)
        elif s.rule in ("leftSubstMulti", "rightSubstMulti"):
            fragment = unfold_subst_multi(Derivation(steps + [s]), s, fresh)
        else:
            if s.rule == "NNF":
                nnf.append(s.name)
            steps.append(s)
            continue
        step_map[s.name] = [t.name for t in fragment]
        renames[s.name] = fragment[-1].name
        steps.extend(fragment)
    out = Derivation(steps)
    stats = {"steps_before": len(d.steps), "steps_after": len(steps), "nnf_steps": nnf}
    return ElaborationResult(out, step_map, stats)
