from __future__ import annotations

import pytest

from sctptp.logic import Var
from sctptp.rules import (
    CATALOG,
    FORMULA,
    INT,
    LEVEL1,
    LEVEL2,
    ShapeError,
    lookup,
    validate_param_shape,
)
from sctptp.syntax import FormulaParam, IntIndex, TermParam, VarParam, parse_formula


def test_catalog_sizes():
    assert len(LEVEL1) == 30
    assert len(LEVEL2) == 4
    assert len(CATALOG) == 34
    assert all(r.level == 1 for r in LEVEL1) and all(r.level == 2 for r in LEVEL2)


def test_lookup_cut():
    r = lookup("cut")
    assert (r.level, r.premise_count, r.param_schema) == (1, 2, (INT,))


def test_lookup_congruence():
    r = lookup("congruence")
    assert (r.level, r.premise_count, r.param_schema) == (2, 0, ())


def test_lookup_unknown():
    assert lookup("nonsense") is None


@pytest.mark.parametrize(
    "name, count",
    [("hyp", 0), ("leftHyp", 0), ("rightRefl", 0), ("cut", 2), ("leftOr", 2), ("leftImp1", 2),
     ("leftImp2", 2), ("rightAnd", 2), ("rightIff", 2), ("leftNotAnd", 2), ("leftNotIff", 2),
     ("leftAnd", 1), ("rightAll", 1), ("leftSubst", 1), ("NNF", 1), ("rightSubstMulti", 1)],
)
def test_premise_counts(name, count):
    assert lookup(name).premise_count == count


def test_right_and_shape():
    validate_param_shape(lookup("rightAnd"), [IntIndex(0)], ["ax1", "ax2"])


def test_left_subst_shape():
    params = [IntIndex(1), FormulaParam(parse_formula("P(Z)")), VarParam("Z")]
    validate_param_shape(lookup("leftSubst"), params, ["a1"])
    assert lookup("leftSubst").param_schema[1] == FORMULA


def test_variable_written_as_fot():
    validate_param_shape(lookup("rightAll"), [IntIndex(0), TermParam(Var("X"))], ["s"])


def test_hyp_with_premise():
    with pytest.raises(ShapeError) as e:
        validate_param_shape(lookup("hyp"), [IntIndex(0), IntIndex(0)], ["s"])
    assert e.value.code == "ArityMismatch"


def test_wrong_parameter_kind():
    with pytest.raises(ShapeError) as e:
        validate_param_shape(lookup("leftAnd"), [FormulaParam(parse_formula("p"))], ["s"])
    assert e.value.code == "ParamShapeMismatch"
