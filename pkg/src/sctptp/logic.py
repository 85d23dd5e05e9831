"""First-order terms, formulas and sequents.

All values are immutable.  Bound variables are kept by name; alpha-equivalence
is decided through :func:`nameless`, which replaces every bound occurrence by
its binder depth so that alpha-equivalent formulas map to identical keys.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import count
from typing import Iterable, Iterator, Mapping, Union


# -- terms -------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class App:
    """Function application; constants are applications with no arguments."""

    symbol: str
    args: tuple = ()

    def __str__(self) -> str:
        if not self.args:
            return self.symbol
        return f"{self.symbol}({', '.join(map(str, self.args))})"


Term = Union[Var, App]


def const(name: str) -> App:
    return App(name, ())


# -- formulas ----------------------------------------------------------------


@dataclass(frozen=True)
class Pred:
    symbol: str
    args: tuple = ()


@dataclass(frozen=True)
class Eq:
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class Not:
    body: "Formula"


@dataclass(frozen=True)
class Binary:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class And(Binary):
    pass


@dataclass(frozen=True)
class Or(Binary):
    pass


@dataclass(frozen=True)
class Imp(Binary):
    pass


@dataclass(frozen=True)
class Iff(Binary):
    pass


@dataclass(frozen=True)
class Quantifier:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Forall(Quantifier):
    pass


@dataclass(frozen=True)
class Exists(Quantifier):
    pass


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bot:
    pass


TRUE = Top()
FALSE = Bot()

Formula = Union[Pred, Eq, Not, And, Or, Imp, Iff, Forall, Exists, Top, Bot]
Atom = Union[Pred, Eq]


def is_atom(f: Formula) -> bool:
    return isinstance(f, (Pred, Eq))


@dataclass(frozen=True)
class Sequent:
    left: tuple = ()
    right: tuple = ()

    def __str__(self) -> str:
        # local import: the printer lives in the syntax module
        from .syntax import format_sequent

        return format_sequent(self)


class ArityConflict(ValueError):
    """A symbol is used with two different arities (or as both kinds)."""


# -- variables ---------------------------------------------------------------


def term_vars(t: Term) -> frozenset:
    if isinstance(t, Var):
        return frozenset((t.name,))
    out: set = set()
    for a in t.args:
        out |= term_vars(a)
    return frozenset(out)


@lru_cache(maxsize=1 << 16)
def free_vars(f: Formula) -> frozenset:
    """Names of the variables with at least one free occurrence in ``f``."""
    if isinstance(f, Pred):
        out: set = set()
        for a in f.args:
            out |= term_vars(a)
        return frozenset(out)
    if isinstance(f, Eq):
        return term_vars(f.lhs) | term_vars(f.rhs)
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, Binary):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, Quantifier):
        return free_vars(f.body) - {f.var}
    return frozenset()


def all_vars(f: Formula) -> frozenset:
    """Every variable name occurring in ``f``, free or bound (binders included)."""
    if isinstance(f, (Pred, Eq)):
        return free_vars(f)
    if isinstance(f, Not):
        return all_vars(f.body)
    if isinstance(f, Binary):
        return all_vars(f.left) | all_vars(f.right)
    if isinstance(f, Quantifier):
        return all_vars(f.body) | {f.var}
    return frozenset()


def sequent_free_vars(s: Sequent) -> frozenset:
    out: set = set()
    for f in s.left + s.right:
        out |= free_vars(f)
    return frozenset(out)


def fresh_name(base: str, avoid: Iterable[str]) -> str:
    """``base`` followed by the smallest positive suffix not in ``avoid``."""
    avoid = set(avoid)
    for n in count(1):
        cand = f"{base}{n}"
        if cand not in avoid:
            return cand
    raise AssertionError("unreachable")


# -- substitution ------------------------------------------------------------


def subst_term(t: Term, mapping: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if not t.args:
        return t
    return App(t.symbol, tuple(subst_term(a, mapping) for a in t.args))


def substitute_many(f: Formula, mapping: Mapping[str, Term]) -> Formula:
    """Simultaneous capture-avoiding substitution of free variables."""
    if not mapping:
        return f
    if isinstance(f, Pred):
        return Pred(f.symbol, tuple(subst_term(a, mapping) for a in f.args))
    if isinstance(f, Eq):
        return Eq(subst_term(f.lhs, mapping), subst_term(f.rhs, mapping))
    if isinstance(f, Not):
        return Not(substitute_many(f.body, mapping))
    if isinstance(f, Binary):
        return type(f)(substitute_many(f.left, mapping), substitute_many(f.right, mapping))
    if isinstance(f, Quantifier):
        body_free = free_vars(f.body)
        live = {v: t for v, t in mapping.items() if v != f.var and v in body_free}
        if not live:
            return f
        incoming: set = set()
        for t in live.values():
            incoming |= term_vars(t)
        var, body = f.var, f.body
        if var in incoming:
            new = fresh_name(var, all_vars(body) | incoming | set(live))
            body = substitute_many(body, {var: Var(new)})
            var = new
        return type(f)(var, substitute_many(body, live))
    return f


def substitute(f: Formula, var: str, t: Term) -> Formula:
    """``f`` with free occurrences of ``var`` replaced by ``t`` (no capture)."""
    return substitute_many(f, {var: t})


# -- alpha-equivalence -------------------------------------------------------


def _term_key(t: Term, bound: tuple) -> tuple:
    if isinstance(t, Var):
        # innermost binder wins; index counts binders from the inside
        for depth, name in enumerate(reversed(bound)):
            if name == t.name:
                return ("B", depth)
        return ("V", t.name)
    return ("F", t.symbol, tuple(_term_key(a, bound) for a in t.args))


def _key(f: Formula, bound: tuple) -> tuple:
    if isinstance(f, Pred):
        return ("P", f.symbol, tuple(_term_key(a, bound) for a in f.args))
    if isinstance(f, Eq):
        return ("=", _term_key(f.lhs, bound), _term_key(f.rhs, bound))
    if isinstance(f, Not):
        return ("~", _key(f.body, bound))
    if isinstance(f, Binary):
        return (type(f).__name__, _key(f.left, bound), _key(f.right, bound))
    if isinstance(f, Quantifier):
        return (type(f).__name__, _key(f.body, bound + (f.var,)))
    return (type(f).__name__,)


@lru_cache(maxsize=1 << 16)
def nameless(f: Formula) -> tuple:
    """Canonical key of ``f``: bound variables become binder-depth indices."""
    return _key(f, ())


def alpha_equal(f: Formula, g: Formula) -> bool:
    return f == g or nameless(f) == nameless(g)


class FormulaSet:
    """A sequent side viewed as a set of alpha-equivalence classes."""

    __slots__ = ("_keys",)

    def __init__(self, formulas: Iterable[Formula] = ()):
        self._keys = frozenset(nameless(f) for f in formulas)

    @classmethod
    def _of(cls, keys: frozenset) -> "FormulaSet":
        out = cls.__new__(cls)
        out._keys = keys
        return out

    def __contains__(self, f: Formula) -> bool:
        return nameless(f) in self._keys

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FormulaSet) and self._keys == other._keys

    def __hash__(self) -> int:
        return hash(self._keys)

    def __len__(self) -> int:
        return len(self._keys)

    def __or__(self, other: "FormulaSet") -> "FormulaSet":
        return FormulaSet._of(self._keys | other._keys)

    def __le__(self, other: "FormulaSet") -> bool:
        return self._keys <= other._keys

    def __sub__(self, other: "FormulaSet") -> "FormulaSet":
        return FormulaSet._of(self._keys - other._keys)

    def with_(self, *formulas: Formula) -> "FormulaSet":
        return FormulaSet._of(self._keys | {nameless(f) for f in formulas})


def sequent_sets_equal(s1: Sequent, s2: Sequent) -> bool:
    return FormulaSet(s1.left) == FormulaSet(s2.left) and FormulaSet(s1.right) == FormulaSet(
        s2.right
    )


# -- negation normal form ----------------------------------------------------


def to_nnf(f: Formula) -> Formula:
    """Negation normal form; ``=>`` and ``<=>`` are eliminated."""
    return _nnf(f, False)


def _nnf(f: Formula, neg: bool) -> Formula:
    if isinstance(f, (Pred, Eq)):
        return Not(f) if neg else f
    if isinstance(f, Top):
        return FALSE if neg else TRUE
    if isinstance(f, Bot):
        return TRUE if neg else FALSE
    if isinstance(f, Not):
        return _nnf(f.body, not neg)
    if isinstance(f, And):
        op = Or if neg else And
        return op(_nnf(f.left, neg), _nnf(f.right, neg))
    if isinstance(f, Or):
        op = And if neg else Or
        return op(_nnf(f.left, neg), _nnf(f.right, neg))
    if isinstance(f, Imp):
        if neg:
            return And(_nnf(f.left, False), _nnf(f.right, True))
        return Or(_nnf(f.left, True), _nnf(f.right, False))
    if isinstance(f, Iff):
        a, b = f.left, f.right
        if neg:
            return Or(And(_nnf(a, False), _nnf(b, True)), And(_nnf(b, False), _nnf(a, True)))
        return And(Or(_nnf(a, True), _nnf(b, False)), Or(_nnf(b, True), _nnf(a, False)))
    if isinstance(f, Forall):
        return Exists(f.var, _nnf(f.body, True)) if neg else Forall(f.var, _nnf(f.body, False))
    if isinstance(f, Exists):
        return Forall(f.var, _nnf(f.body, True)) if neg else Exists(f.var, _nnf(f.body, False))
    raise TypeError(f"not a formula: {f!r}")


# -- traversal helpers -------------------------------------------------------


def subterms(t: Term) -> Iterator[Term]:
    """``t`` and all its subterms, children before parents."""
    if isinstance(t, App):
        for a in t.args:
            yield from subterms(a)
    yield t


def atom_args(a: Atom) -> tuple:
    return a.args if isinstance(a, Pred) else (a.lhs, a.rhs)


def atom_head(a: Atom) -> tuple:
    """(symbol, arity) used to decide whether two atoms can be matched."""
    if isinstance(a, Pred):
        return (a.symbol, len(a.args))
    return ("=", 2)


def rebuild_atom(a: Atom, args: tuple) -> Atom:
    if isinstance(a, Pred):
        return Pred(a.symbol, tuple(args))
    return Eq(args[0], args[1])


def collect_signature(formulas: Iterable[Formula], terms: Iterable[Term] = ()) -> dict:
    """Map each symbol to ``(kind, arity)``, kind being ``"pred"`` or ``"func"``.

    Symbols are listed in order of first occurrence.
    Raises :class:`ArityConflict` on inconsistent use.
    """
    sig: dict = {}

    def note(symbol: str, kind: str, arity: int) -> None:
        seen = sig.setdefault(symbol, (kind, arity))
        if seen != (kind, arity):
            raise ArityConflict(
                f"symbol {symbol!r} used as {seen[0]}/{seen[1]} and as {kind}/{arity}"
            )

    def walk_term(t: Term) -> None:
        if isinstance(t, App):
            for a in t.args:
                walk_term(a)
            note(t.symbol, "func", len(t.args))

    def walk(f: Formula) -> None:
        if isinstance(f, Pred):
            note(f.symbol, "pred", len(f.args))
            for a in f.args:
                walk_term(a)
        elif isinstance(f, Eq):
            walk_term(f.lhs)
            walk_term(f.rhs)
        elif isinstance(f, Not):
            walk(f.body)
        elif isinstance(f, Binary):
            walk(f.left)
            walk(f.right)
        elif isinstance(f, Quantifier):
            walk(f.body)

    for f in formulas:
        walk(f)
    for t in terms:
        walk_term(t)
    return sig
