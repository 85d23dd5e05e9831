"""Parse, check, elaborate and export SC-TPTP sequent-calculus proofs."""
from __future__ import annotations

from .checker import CheckReport, StepError, check_congruence, check_proof, check_step
from .logic import Sequent, alpha_equal, free_vars, sequent_sets_equal, substitute, to_nnf
from .syntax import Derivation, ParseError, parse_derivation, print_derivation

__all__ = [
    "CheckReport",
    "Derivation",
    "ParseError",
    "Sequent",
    "StepError",
    "alpha_equal",
    "check_congruence",
    "check_proof",
    "check_step",
    "free_vars",
    "parse_derivation",
    "print_derivation",
    "sequent_sets_equal",
    "substitute",
    "to_nnf",
]
