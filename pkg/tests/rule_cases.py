"""A valid and an invalid instance of every level 1 rule, as checker input.

Each case is (rule, premise sequents, conclusion, parameter text, expected
failure code or None).  Premises become axioms ``p0``, ``p1``.
"""
from __future__ import annotations

from sctptp.syntax import parse_derivation

OK = None

CASES = [
    # structural
    ("hyp", [], "[a, b] --> [c, a]", "0, 1", OK),
    ("hyp", [], "[a] --> [b]", "0, 0", "PatternMismatch"),
    ("hyp", [], "[a] --> [a]", "0, 3", "BadIndex"),
    ("leftHyp", [], "[a, ~a] --> []", "0, 1", OK),
    ("leftHyp", [], "[a, ~b] --> []", "0, 1", "PatternMismatch"),
    ("leftWeaken", ["[] --> [a]"], "[b] --> [a]", "0", OK),
    ("leftWeaken", ["[] --> [a]"], "[b] --> [c]", "0", "ContextMismatch"),
    ("rightWeaken", ["[a] --> []"], "[a] --> [b]", "0", OK),
    ("rightWeaken", ["[a] --> []"], "[c] --> [b]", "0", "ContextMismatch"),
    ("cut", ["[] --> [a, c]", "[a] --> [c]"], "[] --> [c]", "0", OK),
    ("cut", ["[] --> [a]", "[a] --> [b]"], "[] --> [c]", "0", "ContextMismatch"),
    # left introduction
    ("leftAnd", ["[a, b] --> [c]"], "[a & b] --> [c]", "0", OK),
    ("leftAnd", ["[a, b] --> [c]"], "[a | b] --> [c]", "0", "PatternMismatch"),
    ("leftOr", ["[a] --> [c]", "[b] --> [c]"], "[a | b] --> [c]", "0", OK),
    ("leftOr", ["[a] --> [c]", "[a] --> [c]"], "[a | b] --> [c]", "0", "ContextMismatch"),
    ("leftImp1", ["[] --> [a]", "[b] --> []"], "[a => b] --> []", "0", OK),
    ("leftImp1", ["[] --> [a]", "[b] --> []"], "[a & b] --> []", "0", "PatternMismatch"),
    ("leftImp2", ["[~a] --> []", "[b] --> []"], "[a => b] --> []", "0", OK),
    ("leftImp2", ["[] --> [a]", "[b] --> []"], "[a => b] --> []", "0", "ContextMismatch"),
    ("leftIff", ["[a => b, b => a] --> []"], "[a <=> b] --> []", "0", OK),
    ("leftIff", ["[a => b] --> [b => a]"], "[a <=> b] --> []", "0", "ContextMismatch"),
    ("leftNot", ["[] --> [a]"], "[~a] --> []", "0", OK),
    ("leftNot", ["[a] --> []"], "[~a] --> []", "0", "ContextMismatch"),
    ("leftEx", ["[p(Y)] --> []"], "[?[X]: p(X)] --> []", "0, $fot(Y)", OK),
    ("leftEx", ["[p(Y), q(Y)] --> []"], "[?[X]: p(X), q(Y)] --> []", "0, $fot(Y)", "EigenvariableCaptured"),
    ("leftAll", ["[p(f(a))] --> []"], "[![X]: p(X)] --> []", "0, $fot(f(a))", OK),
    ("leftAll", ["[p(f(a))] --> []"], "[![X]: p(X)] --> []", "0, $fot(a)", "ContextMismatch"),
    # right introduction
    ("rightAnd", ["[] --> [a]", "[] --> [b]"], "[] --> [a & b]", "0", OK),
    ("rightAnd", ["[] --> [a]", "[] --> [a]"], "[] --> [a & b]", "0", "ContextMismatch"),
    ("rightOr", ["[] --> [a, b]"], "[] --> [a | b]", "0", OK),
    ("rightOr", ["[] --> [a, b]"], "[] --> [a & b]", "0", "PatternMismatch"),
    ("rightImp", ["[a] --> [b]"], "[] --> [a => b]", "0", OK),
    ("rightImp", ["[b] --> [a]"], "[] --> [a => b]", "0", "ContextMismatch"),
    ("rightIff", ["[] --> [a => b]", "[] --> [b => a]"], "[] --> [a <=> b]", "0", OK),
    ("rightIff", ["[] --> [a => b]", "[] --> [a => b]"], "[] --> [a <=> b]", "0", "ContextMismatch"),
    ("rightNot", ["[a] --> []"], "[] --> [~a]", "0", OK),
    ("rightNot", ["[] --> [a]"], "[] --> [~a]", "0", "ContextMismatch"),
    ("rightEx", ["[] --> [p(f(a))]"], "[] --> [?[X]: p(X)]", "0, $fot(f(a))", OK),
    ("rightEx", ["[] --> [p(f(a))]"], "[] --> [![X]: p(X)]", "0, $fot(f(a))", "PatternMismatch"),
    ("rightAll", ["[] --> [p(Y)]"], "[] --> [![X]: p(X)]", "0, $fot(Y)", OK),
    ("rightAll", ["[] --> [p(X)]"], "[q(X)] --> [![X]: p(X)]", "0, $fot(X)", "EigenvariableCaptured"),
    # left negation introduction
    ("leftNotAnd", ["[~a] --> []", "[~b] --> []"], "[~(a & b)] --> []", "0", OK),
    ("leftNotAnd", ["[~a] --> []", "[~b] --> []"], "[~(a | b)] --> []", "0", "PatternMismatch"),
    ("leftNotOr", ["[~a, ~b] --> []"], "[~(a | b)] --> []", "0", OK),
    ("leftNotOr", ["[~a] --> [b]"], "[~(a | b)] --> []", "0", "ContextMismatch"),
    ("leftNotImp", ["[a, ~b] --> []"], "[~(a => b)] --> []", "0", OK),
    ("leftNotImp", ["[~a, b] --> []"], "[~(a => b)] --> []", "0", "ContextMismatch"),
    ("leftNotIff", ["[~(a => b)] --> []", "[~(b => a)] --> []"], "[~(a <=> b)] --> []", "0", OK),
    ("leftNotIff", ["[~(a => b)] --> []", "[~(b => a)] --> []"], "[a <=> b] --> []", "0", "PatternMismatch"),
    ("leftNotNot", ["[a] --> []"], "[~~a] --> []", "0", OK),
    ("leftNotNot", ["[~a] --> []"], "[~~a] --> []", "0", "ContextMismatch"),
    ("leftNotEx", ["[~p(f(a))] --> []"], "[~(?[X]: p(X))] --> []", "0, $fot(f(a))", OK),
    ("leftNotEx", ["[~p(a)] --> []"], "[~(?[X]: p(X))] --> []", "0, $fot(b)", "ContextMismatch"),
    ("leftNotAll", ["[~p(Y)] --> []"], "[~(![X]: p(X))] --> []", "0, $fot(Y)", OK),
    ("leftNotAll", ["[~p(Y)] --> [q(Y)]"], "[~(![X]: p(X))] --> [q(Y)]", "0, $fot(Y)", "EigenvariableCaptured"),
    # equality
    ("rightRefl", [], "[] --> [f(a) = f(a)]", "0", OK),
    ("rightRefl", [], "[] --> [f(a) = f(b)]", "0", "PatternMismatch"),
    ("rightSubst", ["[a = b] --> [p(a)]"], "[a = b] --> [p(b)]", "0, $fof(p(Z)), $fot(Z)", OK),
    ("rightSubst", ["[a = b] --> [p(a)]"], "[a = b] --> [p(c)]", "0, $fof(p(Z)), $fot(Z)", "ContextMismatch"),
    ("leftSubst", ["[p(a)] --> []"], "[p(b), a = b] --> []", "1, $fof(p(Z)), $fot(Z)", OK),
    ("leftSubst", ["[p(a)] --> []"], "[p(b), q(a)] --> []", "1, $fof(p(Z)), $fot(Z)", "NotAnEquality"),
]


def build(rule, premises, conclusion, params):
    lines = [f"fof(p{i}, axiom, {p})." for i, p in enumerate(premises)]
    names = ", ".join(f"p{i}" for i in range(len(premises)))
    lines.append(f"fof(s, plain, {conclusion}, inference({rule}, [status(thm), {params}], [{names}])).")
    return parse_derivation("\n".join(lines))


def run(case):
    """Return the failure code of a case, or None when it checks."""
    from sctptp.checker import StepError, check_step

    rule, premises, conclusion, params, _ = case
    d = build(rule, premises, conclusion, params)
    try:
        check_step(d, d["s"])
    except StepError as e:
        return e.code
    return None
