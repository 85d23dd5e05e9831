"""Catalog of SC-TPTP deduction rules.

Level 1 holds the 30 basic sequent rules; level 2 holds the advanced steps
that have an elimination procedure (NNF is checked but never eliminated).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .logic import Var
from .syntax import FormulaParam, IndexList, IntIndex, TermParam, VarList, VarParam

# parameter kinds
INT = "int"
TERM = "term"
VAR = "var"
FORMULA = "formula"
INT_LIST = "int_list"
VAR_LIST = "var_list"


@dataclass(frozen=True)
class RuleDescriptor:
    name: str
    level: int
    premise_count: int
    param_schema: tuple
    group: str


class ShapeError(ValueError):
    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(message)


def _r(name, level, premises, schema, group):
    return RuleDescriptor(name, level, premises, tuple(schema), group)


LEVEL1 = (
    # structural
    _r("hyp", 1, 0, [INT, INT], "structural"),
    _r("leftHyp", 1, 0, [INT, INT], "structural"),
    _r("leftWeaken", 1, 1, [INT], "structural"),
    _r("rightWeaken", 1, 1, [INT], "structural"),
    _r("cut", 1, 2, [INT], "structural"),
    # left introduction
    _r("leftAnd", 1, 1, [INT], "left"),
    _r("leftOr", 1, 2, [INT], "left"),
    _r("leftImp1", 1, 2, [INT], "left"),
    _r("leftImp2", 1, 2, [INT], "left"),
    _r("leftIff", 1, 1, [INT], "left"),
    _r("leftNot", 1, 1, [INT], "left"),
    _r("leftEx", 1, 1, [INT, VAR], "left"),
    _r("leftAll", 1, 1, [INT, TERM], "left"),
    # right introduction
    _r("rightAnd", 1, 2, [INT], "right"),
    _r("rightOr", 1, 1, [INT], "right"),
    _r("rightImp", 1, 1, [INT], "right"),
    _r("rightIff", 1, 2, [INT], "right"),
    _r("rightNot", 1, 1, [INT], "right"),
    _r("rightEx", 1, 1, [INT, TERM], "right"),
    _r("rightAll", 1, 1, [INT, VAR], "right"),
    # left negation introduction
    _r("leftNotAnd", 1, 2, [INT], "leftNot"),
    _r("leftNotOr", 1, 1, [INT], "leftNot"),
    _r("leftNotImp", 1, 1, [INT], "leftNot"),
    _r("leftNotIff", 1, 2, [INT], "leftNot"),
    _r("leftNotNot", 1, 1, [INT], "leftNot"),
    _r("leftNotEx", 1, 1, [INT, TERM], "leftNot"),
    _r("leftNotAll", 1, 1, [INT, VAR], "leftNot"),
    # equality
    _r("rightRefl", 1, 0, [INT], "equality"),
    _r("rightSubst", 1, 1, [INT, FORMULA, VAR], "equality"),
    _r("leftSubst", 1, 1, [INT, FORMULA, VAR], "equality"),
)

LEVEL2 = (
    _r("NNF", 2, 1, [], "level2"),
    _r("congruence", 2, 0, [], "level2"),
    _r("rightSubstMulti", 2, 1, [INT_LIST, FORMULA, VAR_LIST], "level2"),
    _r("leftSubstMulti", 2, 1, [INT_LIST, FORMULA, VAR_LIST], "level2"),
)

CATALOG = {r.name: r for r in LEVEL1 + LEVEL2}
LEVEL2_NAMES = frozenset(r.name for r in LEVEL2)


def lookup(name: str) -> Optional[RuleDescriptor]:
    return CATALOG.get(name)


def _fits(kind: str, p) -> bool:
    if kind == INT:
        return isinstance(p, IntIndex) and p.value >= 0
    if kind == TERM:
        return isinstance(p, (TermParam, VarParam))
    if kind == VAR:
        # variables are usually written $fot(X)
        return isinstance(p, VarParam) or (isinstance(p, TermParam) and isinstance(p.term, Var))
    if kind == FORMULA:
        return isinstance(p, FormulaParam)
    if kind == INT_LIST:
        return isinstance(p, IndexList) and all(v >= 0 for v in p.values)
    if kind == VAR_LIST:
        return isinstance(p, VarList)
    return False


def validate_param_shape(rule: RuleDescriptor, params: Sequence, premises: Sequence) -> None:
    """Raise :class:`ShapeError` unless parameter kinds and premise count match."""
    if len(premises) != rule.premise_count:
        raise ShapeError(
            "ArityMismatch",
            f"{rule.name} takes {rule.premise_count} premise(s), got {len(premises)}",
        )
    if len(params) != len(rule.param_schema):
        raise ShapeError(
            "ParamShapeMismatch",
            f"{rule.name} takes {len(rule.param_schema)} parameter(s), got {len(params)}",
        )
    for pos, (kind, p) in enumerate(zip(rule.param_schema, params)):
        if not _fits(kind, p):
            raise ShapeError(
                "ParamShapeMismatch", f"{rule.name} parameter {pos + 1} should be {kind}"
            )
    if rule.param_schema and rule.param_schema[0] == INT_LIST:
        if len(params[0].values) != len(params[2].names) or not params[0].values:
            raise ShapeError(
                "ParamShapeMismatch", f"{rule.name} needs as many indices as variables"
            )


def param_term(p):
    """The term carried by a TERM/VAR parameter."""
    return Var(p.name) if isinstance(p, VarParam) else p.term


def param_var(p) -> str:
    return p.name if isinstance(p, VarParam) else p.term.name
