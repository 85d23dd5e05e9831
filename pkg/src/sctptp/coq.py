"""Export of level 1 SC-TPTP proofs to Coq tactic scripts.

Proofs are replayed one-sided, tableaux style: a sequent ``G |- D`` is the
goal ``False`` under one hypothesis ``A`` per left formula and one
hypothesis ``~B`` per right formula.  Each rule then becomes a short tactic
group, usually the application of a lemma from the prelude followed by the
introduction of the premise's new hypotheses.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

from .checker import check_proof, check_substitution
from .logic import (
    And,
    App,
    Bot,
    Eq,
    Forall,
    Formula,
    Iff,
    Imp,
    Not,
    Or,
    Pred,
    Quantifier,
    Sequent,
    Term,
    Top,
    Var,
    collect_signature,
    nameless,
    sequent_free_vars,
    substitute,
    term_vars,
)
from .rules import LEVEL2_NAMES, param_term, param_var
from .syntax import Derivation, ProofStep, TermParam

UNIVERSE = "sctptp_U"


class UnsupportedStep(ValueError):
    pass


class CheckFailed(ValueError):
    pass


@dataclass(frozen=True)
class CoqLemma:
    name: Optional[str]  # None: handled with native tactics
    shape: str


def _left(name, shape):
    return CoqLemma(name, shape)


LEMMA_MAP = {
    "hyp": CoqLemma(None, "auto"),
    "leftHyp": CoqLemma(None, "auto"),
    "leftWeaken": CoqLemma(None, "idtac"),
    "rightWeaken": CoqLemma(None, "idtac"),
    "cut": CoqLemma("cut_", "(~P -> False) -> (P -> False) -> False"),
    "leftAnd": _left("leftAnd", "P /\\ Q -> (P -> Q -> False) -> False"),
    "leftOr": _left("leftOr", "P \\/ Q -> (P -> False) -> (Q -> False) -> False"),
    "leftImp1": _left("leftImply", "(P -> Q) -> (~P -> False) -> (Q -> False) -> False"),
    "leftImp2": _left("leftImply", "(P -> Q) -> (~P -> False) -> (Q -> False) -> False"),
    "leftIff": _left("leftIff", "(P <-> Q) -> ((P -> Q) -> (Q -> P) -> False) -> False"),
    "leftNot": _left("leftNot", "~P -> (~P -> False) -> False"),
    "leftEx": CoqLemma(None, "destruct"),
    "leftAll": CoqLemma(None, "pose proof"),
    "rightAnd": CoqLemma("rightAnd", "P -> Q -> P /\\ Q"),
    "rightOr": CoqLemma("rightOr", "~(~P /\\ ~Q) -> P \\/ Q"),
    "rightImp": CoqLemma(None, "intros"),
    "rightIff": CoqLemma("rightIff", "(P -> Q) -> (Q -> P) -> (P <-> Q)"),
    "rightNot": CoqLemma(None, "intros"),
    "rightEx": CoqLemma(None, "exists"),
    "rightAll": CoqLemma(None, "intros"),
    "leftNotAnd": _left("leftNotAnd", "~(P /\\ Q) -> (~P -> False) -> (~Q -> False) -> False"),
    "leftNotOr": _left("leftNotOr", "~(P \\/ Q) -> (~P -> ~Q -> False) -> False"),
    "leftNotImp": _left("leftNotImp", "~(P -> Q) -> (P -> ~Q -> False) -> False"),
    "leftNotIff": _left(
        "leftNotIff", "~(P <-> Q) -> (~(P -> Q) -> False) -> (~(Q -> P) -> False) -> False"
    ),
    "leftNotNot": _left("leftNotNot", "~~P -> (P -> False) -> False"),
    "leftNotEx": CoqLemma(None, "exists"),
    "leftNotAll": CoqLemma(None, "intros"),
    "rightRefl": CoqLemma(None, "reflexivity"),
    "rightSubst": CoqLemma(None, "eq_ind"),
    "leftSubst": CoqLemma(None, "eq_ind"),
}

# (name, statement after "forall P Q : Prop,") of the inversion lemmas; each
# also gets a wrapper taking the principal hypothesis first
_INVERSIONS = [
    ("leftAnd", ["P", "Q"], ["(P -> Q -> False)"], "(P /\\ Q)"),
    ("leftOr", ["P", "Q"], ["(P -> False)", "(Q -> False)"], "(P \\/ Q)"),
    ("leftIff", ["P", "Q"], ["((P -> Q) -> (Q -> P) -> False)"], "(P <-> Q)"),
    ("leftNot", ["P"], ["(~P -> False)"], "~P"),
    ("leftNotAnd", ["P", "Q"], ["(~P -> False)", "(~Q -> False)"], "~(P /\\ Q)"),
    ("leftNotOr", ["P", "Q"], ["(~P -> ~Q -> False)"], "~(P \\/ Q)"),
    ("leftNotImp", ["P", "Q"], ["(P -> ~Q -> False)"], "~(P -> Q)"),
    ("leftNotIff", ["P", "Q"], ["(~(P -> Q) -> False)", "(~(Q -> P) -> False)"], "~(P <-> Q)"),
    ("leftNotNot", ["P"], ["(P -> False)"], "~~P"),
]


def emit_prelude() -> str:
    """Coq source of the lemma library (``SCTPTP.v``)."""
    out = [
        "(* Lemmas used by SC-TPTP proof exports. *)",
        "Require Export Classical.",
        "",
        "Lemma rightAnd : forall P Q : Prop, (P) -> (Q) -> (P /\\ Q).",
        "Proof. intros P Q H. split. auto. auto. Qed.",
        "",
        "Lemma rightOr : forall P Q : Prop, ~(~P /\\ ~Q) -> (P \\/ Q).",
        "Proof. intros P Q H. apply NNPP. intro H1. apply H. split. auto. auto. Qed.",
        "",
        "Lemma rightIff : forall P Q : Prop, (P -> Q) -> (Q -> P) -> (P <-> Q).",
        "Proof. intros P Q H1 H2. split. auto. auto. Qed.",
        "",
        "Lemma leftImply_s : forall P Q : Prop,",
        "  (~P -> False) -> (Q -> False) -> ((P -> Q) -> False).",
        "Proof. tauto. Qed.",
        "",
        "Definition leftImply := fun P Q c hp hq => leftImply_s P Q hp hq c.",
        "",
        "Lemma cut_ : forall P : Prop, (~P -> False) -> (P -> False) -> False.",
        "Proof. tauto. Qed.",
    ]
    for name, props, premises, principal in _INVERSIONS:
        binders = " ".join(props)
        hs = " ".join(f"h{k + 1}" for k in range(len(premises)))
        out += [
            "",
            f"Lemma {name}_s : forall {binders} : Prop,",
            f"  {' -> '.join(premises)} -> ({principal} -> False).",
            "Proof. tauto. Qed.",
            "",
            f"Definition {name} := fun {binders} c {hs} => {name}_s {binders} {hs} c.",
        ]
    return "\n".join(out) + "\n"


# -- identifiers -------------------------------------------------------------

_RESERVED = frozenset(
    """as at cofix else end exists exists2 fix for forall fun if in let match mod
    return then using where with Prop Set Type SProp True False not and or iff eq
    ex all I Proof Qed Theorem Lemma Definition Parameter Axiom NNPP
    auto idtac intro intros apply exact""".split()
)


def coq_ident(name: str) -> str:
    ident = re.sub(r"[^A-Za-z0-9_']", "_", name.strip("'")) or "x"
    if ident[0].isdigit() or ident[0] == "'":
        ident = "n" + ident
    if ident in _RESERVED or ident.startswith(UNIVERSE) or ident == "sctptp_I":
        ident += "_"
    return ident


_PREFIX = {And: "/\\", Or: "\\/", Imp: "->", Iff: "<->"}


@dataclass
class CoqScript:
    name: str
    context: str
    statement: str
    header: list
    groups: list = field(default_factory=list)  # (step name, tactics)

    def body(self) -> str:
        lines = list(self.header)
        lines += [f"(* [{name}] *) {tactics}" for name, tactics in self.groups]
        return "\n".join(lines)

    def render(self) -> str:
        return (
            "Require Import SCTPTP.\n"
            + self.context
            + "\n"
            + f"Theorem {self.name}: {self.statement}.\n"
            + "Proof.\n"
            + self.body()
            + "\nQed.\n"
        )


def emit_context(d: Derivation, extra_vars=()) -> str:
    """Parameter declarations for the universe, every symbol and free variables."""
    steps = [s for s in d.steps if s.role != "conjecture"]
    formulas = [f for s in steps for f in s.statement.left + s.statement.right]
    terms = [param_term(s.params[1]) for s in steps if s.rule in _WITNESS_RULES and len(s.params) > 1]
    sig = collect_signature(formulas, terms)
    lines = [
        f"Parameter {UNIVERSE} : Set. (* universe *)",
        f"Parameter sctptp_I : {UNIVERSE}. (* an individual in the universe. *)",
    ]
    for sym, (kind, arity) in sig.items():
        target = "Prop" if kind == "pred" else UNIVERSE
        lines.append(f"Parameter {coq_ident(sym)} : {' -> '.join([UNIVERSE] * arity + [target])}.")
    for v in _context_vars(d) + [v for v in extra_vars if v not in _context_vars(d)]:
        lines.append(f"Parameter {coq_ident(v)} : {UNIVERSE}.")
    return "\n".join(lines) + "\n"


_EIGEN_RULES = {"rightAll", "leftEx", "leftNotAll"}
_WITNESS_RULES = {"leftAll", "rightEx", "leftNotEx"}


def _eigenvariables(d: Derivation) -> set:
    return {param_var(s.params[1]) for s in d.steps if s.rule in _EIGEN_RULES and len(s.params) > 1}


def _context_vars(d: Derivation) -> list:
    """Free variables not introduced by a quantifier rule, in order of appearance."""
    eigen = _eigenvariables(d)
    seen: list = []
    for s in d.steps:
        if s.role in ("conjecture", "axiom"):
            continue
        names = sorted(sequent_free_vars(s.statement))
        if s.rule in _WITNESS_RULES and len(s.params) > 1 and isinstance(s.params[1], TermParam):
            names += sorted(term_vars(s.params[1].term))
        for v in names:
            if v not in eigen and v not in seen:
                seen.append(v)
    return seen


# -- translation -------------------------------------------------------------


class _Exporter:
    def __init__(self, d: Derivation):
        self.d = d
        self.position = d.index
        sig = collect_signature(
            [f for s in d.steps for f in s.statement.left + s.statement.right]
        )
        self.symbols = {coq_ident(s) for s in sig}
        self.used = set(self.symbols) | {coq_ident(v) for v in _context_vars(d)}
        self.hyp_counter = 0
        self.escaping: list = []
        self.eigen = _eigenvariables(d)
        self.groups: list = []
        self.axioms: dict = {}

    # names
    def fresh_hyp(self) -> str:
        while True:
            name = f"H{self.hyp_counter}"
            self.hyp_counter += 1
            if name not in self.used:
                self.used.add(name)
                return name

    def fresh_ident(self, base: str) -> str:
        base = coq_ident(base)
        name, k = base, 0
        while name in self.used:
            k += 1
            name = f"{base}_{k}"
        self.used.add(name)
        return name

    # terms and formulas
    def term(self, t: Term, vmap: dict) -> str:
        if isinstance(t, Var):
            if t.name in vmap:
                return vmap[t.name]
            if t.name in self.eigen and t.name not in self.escaping:
                self.escaping.append(t.name)
            return coq_ident(t.name)
        head = coq_ident(t.symbol)
        return head + "".join(f"({self.term(a, vmap)})" for a in t.args)

    def formula(self, f: Formula, vmap: dict, operand: bool = False) -> str:
        if isinstance(f, Pred):
            return coq_ident(f.symbol) + "".join(f"({self.term(a, vmap)})" for a in f.args)
        if isinstance(f, Eq):
            return f"({self.term(f.lhs, vmap)} = {self.term(f.rhs, vmap)})"
        if isinstance(f, Top):
            return "True"
        if isinstance(f, Bot):
            return "False"
        if isinstance(f, Not):
            return f"~({self.formula(f.body, vmap)})"
        if isinstance(f, (And, Or, Imp, Iff)):
            op = _PREFIX[type(f)]
            return f"({self.formula(f.left, vmap, True)} {op} {self.formula(f.right, vmap, True)})"
        if isinstance(f, Quantifier):
            taken = self.symbols | {v for k, v in vmap.items() if k != f.var}
            name = coq_ident(f.var)
            k = 0
            while name in taken:
                k += 1
                name = f"{coq_ident(f.var)}_{k}"
            inner = dict(vmap)
            inner[f.var] = name
            q = "forall" if isinstance(f, Forall) else "exists"
            text = f"{q} ({name}: {UNIVERSE}), {self.formula(f.body, inner)}"
            return f"({text})" if operand else text
        raise TypeError(f"not a formula: {f!r}")

    # the proof tree
    def hyp(self, env: dict, side: str, f: Formula) -> str:
        return env[(side, nameless(f))]

    def run(self, name: str, env: dict, vmap: dict) -> None:
        s = self.d[name]
        if s.role == "axiom":
            self.groups.append((s.name, self.axiom_leaf(s, vmap)))
            return
        rule = s.rule
        if rule in LEVEL2_NAMES or rule not in LEMMA_MAP:
            raise UnsupportedStep(f"{s.name}: rule {rule} cannot be exported")
        handler = getattr(self, "rule_" + rule)
        tactics, branches = handler(s, env, vmap)
        self.groups.append((s.name, tactics))
        for prem, (new, new_vmap) in zip(s.premises, branches):
            child = dict(env)
            child.update(new)
            self.run(prem, child, new_vmap)

    def axiom_leaf(self, s: ProofStep, vmap: dict) -> str:
        name = self.axioms.get(s.name)
        if name is None:
            name = self.fresh_ident("ax_" + s.name)
            self.axioms[s.name] = name
        variables = sorted(sequent_free_vars(s.statement))
        args = "".join(f" {self.term(Var(v), vmap)}" for v in variables)
        h = self.fresh_hyp()
        return f"pose proof ({name}{args}) as {h}. tauto."

    def axiom_declarations(self) -> list:
        lines = []
        for step_name, name in self.axioms.items():
            s = self.d[step_name]
            variables = sorted(sequent_free_vars(s.statement))
            vmap = {v: coq_ident(v) for v in variables}
            stmt = self.sequent_statement(s.statement, vmap)
            if variables:
                binders = " ".join(f"({vmap[v]}: {UNIVERSE})" for v in variables)
                stmt = f"forall {binders}, {stmt}"
            lines.append(f"Axiom {name} : {stmt}.")
        return lines

    def sequent_statement(self, seq: Sequent, vmap: dict) -> str:
        parts = [self.formula(f, vmap, True) for f in seq.left]
        if not seq.right:
            goal = "False"
        elif len(seq.right) == 1:
            goal = self.formula(seq.right[0], vmap, True)
        else:
            goal = "(" + " \\/ ".join(self.formula(f, vmap, True) for f in seq.right) + ")"
        return " -> ".join(parts + [goal])

    # -- rule handlers: return (tactics, [(new hypotheses, vmap) per premise])

    def _premise(self, s, k=0) -> Sequent:
        return self.d[s.premises[k]].statement

    def rule_hyp(self, s, env, vmap):
        return "auto.", []

    rule_leftHyp = rule_hyp

    def rule_leftWeaken(self, s, env, vmap):
        return "idtac.", [({}, vmap)]

    rule_rightWeaken = rule_leftWeaken

    def rule_cut(self, s, env, vmap):
        a = self._premise(s).right[s.params[0].value]
        h = self.fresh_hyp()
        tactics = f"apply (cut_ {self.formula(a, vmap, True)}); intros {h}."
        return tactics, [({("right", nameless(a)): h}, vmap), ({("left", nameless(a)): h}, vmap)]

    def _left_lemma(self, s, env, vmap, news, principal=None):
        """Apply the wrapper lemma on the principal hypothesis.

        ``news`` lists, per premise, the (side, formula) pairs it introduces.
        """
        f = principal or s.statement.left[s.params[0].value]
        lemma = LEMMA_MAP[s.rule].name
        holes = "_ _" if lemma not in ("leftNot", "leftNotNot") else "_"
        h = self.hyp(env, "left", f)
        if len(news) == 2:
            k = self.fresh_hyp()
            branches = [({(side, nameless(g)): k}, vmap) for [(side, g)] in news]
            return f"apply ({lemma} {holes} {h}); intros {k}.", branches
        names = [self.fresh_hyp() for _ in news[0]]
        new = {(side, nameless(g)): n for (side, g), n in zip(news[0], names)}
        return f"apply ({lemma} {holes} {h}). intros {' '.join(names)}.", [(new, vmap)]

    def rule_leftAnd(self, s, env, vmap):
        f = s.statement.left[s.params[0].value]
        return self._left_lemma(s, env, vmap, [[("left", f.left), ("left", f.right)]])

    def rule_leftOr(self, s, env, vmap):
        f = s.statement.left[s.params[0].value]
        return self._left_lemma(s, env, vmap, [[("left", f.left)], [("left", f.right)]])

    def rule_leftImp1(self, s, env, vmap):
        f = s.statement.left[s.params[0].value]
        return self._left_lemma(s, env, vmap, [[("right", f.left)], [("left", f.right)]])

    def rule_leftImp2(self, s, env, vmap):
        f = s.statement.left[s.params[0].value]
        return self._left_lemma(s, env, vmap, [[("left", Not(f.left))], [("left", f.right)]])

    def rule_leftIff(self, s, env, vmap):
        f = s.statement.left[s.params[0].value]
        news = [[("left", Imp(f.left, f.right)), ("left", Imp(f.right, f.left))]]
        return self._left_lemma(s, env, vmap, news)

    def rule_leftNot(self, s, env, vmap):
        f = s.statement.left[s.params[0].value]
        return self._left_lemma(s, env, vmap, [[("right", f.body)]])

    def rule_leftNotAnd(self, s, env, vmap):
        g = s.statement.left[s.params[0].value].body
        return self._left_lemma(s, env, vmap, [[("left", Not(g.left))], [("left", Not(g.right))]])

    def rule_leftNotOr(self, s, env, vmap):
        g = s.statement.left[s.params[0].value].body
        return self._left_lemma(s, env, vmap, [[("left", Not(g.left)), ("left", Not(g.right))]])

    def rule_leftNotImp(self, s, env, vmap):
        g = s.statement.left[s.params[0].value].body
        return self._left_lemma(s, env, vmap, [[("left", g.left), ("left", Not(g.right))]])

    def rule_leftNotIff(self, s, env, vmap):
        g = s.statement.left[s.params[0].value].body
        news = [[("left", Not(Imp(g.left, g.right)))], [("left", Not(Imp(g.right, g.left)))]]
        return self._left_lemma(s, env, vmap, news)

    def rule_leftNotNot(self, s, env, vmap):
        g = s.statement.left[s.params[0].value].body
        return self._left_lemma(s, env, vmap, [[("left", g.body)]])

    def rule_leftEx(self, s, env, vmap):
        f = s.statement.left[s.params[0].value]
        y = param_var(s.params[1])
        y_coq = self.fresh_ident(f"{y}_{self.position[s.name]}")
        h = self.fresh_hyp()
        inner = dict(vmap)
        inner[y] = y_coq
        body = substitute(f.body, f.var, Var(y))
        tactics = f"destruct {self.hyp(env, 'left', f)} as [{y_coq} {h}]."
        return tactics, [({("left", nameless(body)): h}, inner)]

    def rule_leftAll(self, s, env, vmap):
        f = s.statement.left[s.params[0].value]
        t = param_term(s.params[1])
        h = self.fresh_hyp()
        body = substitute(f.body, f.var, t)
        tactics = f"pose proof ({self.hyp(env, 'left', f)} {self._arg(t, vmap)}) as {h}."
        return tactics, [({("left", nameless(body)): h}, vmap)]

    def _arg(self, t: Term, vmap: dict) -> str:
        text = self.term(t, vmap)
        return f"({text})" if isinstance(t, App) and t.args else text

    def _witness(self, h_neg: str, body: Formula, t: Term, vmap: dict):
        """Close ``~exists x, A`` style goals by providing the witness ``t``."""
        k = self.fresh_hyp()
        tactics = f"apply {h_neg}. exists {self._arg(t, vmap)}. apply NNPP. intros {k}."
        return tactics, k

    def _eigen_intro(self, s, h_neg: str, body_of, vmap: dict):
        y = param_var(s.params[1])
        y_coq = self.fresh_ident(f"{y}_{self.position[s.name]}")
        k = self.fresh_hyp()
        inner = dict(vmap)
        inner[y] = y_coq
        tactics = f"apply {h_neg}. intros {y_coq}. apply NNPP. intros {k}."
        return tactics, k, inner, y

    def rule_leftNotEx(self, s, env, vmap):
        f = s.statement.left[s.params[0].value]
        g = f.body
        t = param_term(s.params[1])
        tactics, k = self._witness(self.hyp(env, "left", f), g.body, t, vmap)
        return tactics, [({("left", nameless(Not(substitute(g.body, g.var, t)))): k}, vmap)]

    def rule_leftNotAll(self, s, env, vmap):
        f = s.statement.left[s.params[0].value]
        g = f.body
        tactics, k, inner, y = self._eigen_intro(s, self.hyp(env, "left", f), None, vmap)
        new = {("left", nameless(Not(substitute(g.body, g.var, Var(y))))): k}
        return tactics, [(new, inner)]

    def rule_rightEx(self, s, env, vmap):
        f = s.statement.right[s.params[0].value]
        t = param_term(s.params[1])
        tactics, k = self._witness(self.hyp(env, "right", f), f.body, t, vmap)
        return tactics, [({("right", nameless(substitute(f.body, f.var, t))): k}, vmap)]

    def rule_rightAll(self, s, env, vmap):
        f = s.statement.right[s.params[0].value]
        tactics, k, inner, y = self._eigen_intro(s, self.hyp(env, "right", f), None, vmap)
        return tactics, [({("right", nameless(substitute(f.body, f.var, Var(y)))): k}, inner)]

    def rule_rightAnd(self, s, env, vmap):
        f = s.statement.right[s.params[0].value]
        k = self.fresh_hyp()
        h = self.hyp(env, "right", f)
        tactics = f"apply {h}. apply rightAnd; apply NNPP; intros {k}."
        return tactics, [({("right", nameless(f.left)): k}, vmap), ({("right", nameless(f.right)): k}, vmap)]

    def rule_rightIff(self, s, env, vmap):
        f = s.statement.right[s.params[0].value]
        k = self.fresh_hyp()
        h = self.hyp(env, "right", f)
        tactics = f"apply {h}. apply rightIff; apply NNPP; intros {k}."
        return tactics, [
            ({("right", nameless(Imp(f.left, f.right))): k}, vmap),
            ({("right", nameless(Imp(f.right, f.left))): k}, vmap),
        ]

    def rule_rightOr(self, s, env, vmap):
        f = s.statement.right[s.params[0].value]
        a, b = self.fresh_hyp(), self.fresh_hyp()
        h = self.hyp(env, "right", f)
        tactics = f"apply {h}. apply rightOr. intros [{a} {b}]."
        return tactics, [({("right", nameless(f.left)): a, ("right", nameless(f.right)): b}, vmap)]

    def rule_rightImp(self, s, env, vmap):
        f = s.statement.right[s.params[0].value]
        a, b = self.fresh_hyp(), self.fresh_hyp()
        h = self.hyp(env, "right", f)
        tactics = f"apply {h}. intros {a}. apply NNPP. intros {b}."
        return tactics, [({("left", nameless(f.left)): a, ("right", nameless(f.right)): b}, vmap)]

    def rule_rightNot(self, s, env, vmap):
        f = s.statement.right[s.params[0].value]
        a = self.fresh_hyp()
        tactics = f"apply {self.hyp(env, 'right', f)}. intros {a}."
        return tactics, [({("left", nameless(f.body)): a}, vmap)]

    def rule_rightRefl(self, s, env, vmap):
        f = s.statement.right[s.params[0].value]
        return f"apply {self.hyp(env, 'right', f)}. reflexivity.", []

    def _subst(self, s, env, vmap, side):
        c, p = s.statement, self._premise(s)
        i, template, z = s.params[0].value, s.params[1].formula, param_var(s.params[2])
        (flip,) = check_substitution(c, p, [i], template, [z], side)
        eq = c.left[i]
        t, u = (eq.rhs, eq.lhs) if flip else (eq.lhs, eq.rhs)
        g_t, g_u = substitute(template, z, t), substitute(template, z, u)
        h_eq = self.hyp(env, "left", eq)
        z_coq = self.fresh_ident(z)
        inner = dict(vmap)
        inner[z] = z_coq
        motive = f"(fun {z_coq} : {UNIVERSE} => {self.formula(template, inner)})"
        self.used.discard(z_coq)
        k = self.fresh_hyp()
        t_c, u_c = self._arg(t, vmap), self._arg(u, vmap)
        if side == "left":
            proof = f"(eq_sym {h_eq})" if not flip else h_eq  # u = t
            h_c = self.hyp(env, "left", g_u)
            tactics = (
                f"assert ({k} : {self.formula(g_t, vmap)}) "
                f"by exact (eq_ind {u_c} {motive} {h_c} {t_c} {proof})."
            )
            return tactics, [({("left", nameless(g_t)): k}, vmap)]
        proof = h_eq if not flip else f"(eq_sym {h_eq})"  # t = u
        h_c = self.hyp(env, "right", g_u)
        x = self.fresh_hyp()
        tactics = (
            f"assert ({k} : ~({self.formula(g_t, vmap)})) by "
            f"(intro {x}; apply {h_c}; exact (eq_ind {t_c} {motive} {x} {u_c} {proof}))."
        )
        return tactics, [({("right", nameless(g_t)): k}, vmap)]

    def rule_leftSubst(self, s, env, vmap):
        return self._subst(s, env, vmap, "left")

    def rule_rightSubst(self, s, env, vmap):
        return self._subst(s, env, vmap, "right")


def _tableaux_root(d: Derivation):
    """Recognise ``|- G`` proved by cutting ``~G`` against a refutation of ``~G |- ``.

    Returns (goal, refutation step name) or None.
    """
    root = d.final_step()
    seq = root.statement
    if root.rule != "cut" or seq.left or len(seq.right) != 1:
        return None
    goal = seq.right[0]
    first, second = (d[p] for p in root.premises)
    if first.rule != "rightNot" or len(first.premises) != 1 or d[first.premises[0]].rule != "hyp":
        return None
    neg = Not(goal)
    if {nameless(f) for f in second.statement.left} != {nameless(neg)} or second.statement.right:
        return None
    return goal, second.name


def export_coq(d: Derivation, name: str = "sctptp_proof") -> CoqScript:
    """Translate a checked level 1 derivation into a Coq script."""
    for s in d.steps:
        if s.rule in LEVEL2_NAMES:
            raise UnsupportedStep(f"{s.name}: level 2 rule {s.rule} must be eliminated first")
    report = check_proof(d, level_limit=1)
    if not report.valid:
        first = report.failures[0]
        raise CheckFailed(f"{first.step}: {first.code}: {first.message}")
    root = d.final_step()
    if root is None:
        raise CheckFailed("derivation has no derived step")
    ex = _Exporter(d)
    name = coq_ident(name)
    ex.used.add(name)
    vmap: dict = {}
    header: list = []
    tableaux = _tableaux_root(d)
    if tableaux is not None:
        goal, start = tableaux
        statement = f"~(~({ex.formula(goal, vmap)}))"
        h0 = ex.fresh_hyp()
        header.append(f"intro {h0}.")
        env = {("left", nameless(Not(goal))): h0, ("right", nameless(goal)): h0}
    else:
        seq = root.statement
        start = root.name
        env = {}
        if not seq.left and len(seq.right) == 1:
            statement = ex.formula(seq.right[0], vmap)
        else:
            statement = ex.sequent_statement(seq, vmap)
        if seq.left:
            names = [ex.fresh_hyp() for _ in seq.left]
            header.append(f"intros {' '.join(names)}.")
            for f, h in zip(seq.left, names):
                env[("left", nameless(f))] = h
        if len(seq.right) == 1:
            h = ex.fresh_hyp()
            header.append(f"apply NNPP. intro {h}.")
            env[("right", nameless(seq.right[0]))] = h
        elif seq.right:
            hd = ex.fresh_hyp()
            header.append(f"apply NNPP. intro {hd}.")
            for f in seq.right:
                h, x = ex.fresh_hyp(), ex.fresh_hyp()
                header.append(
                    f"assert ({h} : ~({ex.formula(f, vmap)})) by (intro {x}; apply {hd}; tauto)."
                )
                env[("right", nameless(f))] = h
    ex.run(start, env, vmap)
    context = emit_context(d, ex.escaping)
    axioms = ex.axiom_declarations()
    if axioms:
        context += "\n".join(axioms) + "\n"
    return CoqScript(name, context, statement, header, ex.groups)
