"""Reading and writing SC-TPTP derivation files.

A derivation is a list of annotated ``fof`` statements whose statement is a
sequent ``[A, B] --> [C]`` or a plain FOF formula.  Steps with role ``plain``
or ``assumption`` carry an ``inference(rule, [status(thm), ...], [premises])``
annotation.

Parsing notes:

* ``-->`` and ``->`` are both accepted as the sequent arrow; ``-->`` is printed.
* Quantifier bodies extend as far right as possible, so
  ``?[X] : d(X) => ![Y] : d(Y)`` reads as ``?[X] : (d(X) => ![Y] : d(Y))``.
* A bare ``o`` in a parameter slot is read as the index ``0``.
* ``![X, Y] :`` is desugared into two nested binders.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Optional, Union

from .logic import (
    FALSE,
    TRUE,
    And,
    App,
    Binary,
    Bot,
    Eq,
    Exists,
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
)

ROLES = ("axiom", "conjecture", "assumption", "plain")

RULE_ALIASES = {
    "leftNotForall": "leftNotAll",
    "leftNotExists": "leftNotEx",
    "leftForall": "leftAll",
    "rightForall": "rightAll",
    "leftExists": "leftEx",
    "rightExists": "rightEx",
}


def resolve_rule_name(token: str) -> str:
    """Canonical rule name for ``token``; unknown names pass through unchanged."""
    return RULE_ALIASES.get(token, token)


# -- errors ------------------------------------------------------------------


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0, token: str = ""):
        self.line = line
        self.column = column
        self.token = token
        where = f"{line}:{column}: " if line else ""
        near = f" (near {token!r})" if token else ""
        super().__init__(f"{where}{message}{near}")


class TPTPSyntaxError(ParseError):
    pass


class DuplicateName(ParseError):
    pass


class DanglingPremise(ParseError):
    pass


# -- data --------------------------------------------------------------------


@dataclass(frozen=True)
class IntIndex:
    value: int


@dataclass(frozen=True)
class TermParam:
    term: Term


@dataclass(frozen=True)
class FormulaParam:
    formula: Formula


@dataclass(frozen=True)
class VarParam:
    name: str


@dataclass(frozen=True)
class IndexList:
    values: tuple


@dataclass(frozen=True)
class VarList:
    names: tuple


Param = Union[IntIndex, TermParam, FormulaParam, VarParam, IndexList, VarList]


@dataclass(frozen=True)
class InferenceRecord:
    rule: str
    params: tuple = ()
    premises: tuple = ()
    status: Optional[str] = "thm"


@dataclass(frozen=True)
class ProofStep:
    name: str
    role: str
    statement: Sequent
    inference: Optional[InferenceRecord] = None
    # printing only: the source wrote a formula rather than a sequent
    formula_statement: bool = False
    # raw text of a non-inference annotation (axioms, conjectures)
    annotation: Optional[str] = None

    @property
    def rule(self) -> Optional[str]:
        return self.inference.rule if self.inference else None

    @property
    def premises(self) -> tuple:
        return self.inference.premises if self.inference else ()

    @property
    def params(self) -> tuple:
        return self.inference.params if self.inference else ()


@dataclass(frozen=True)
class Derivation:
    steps: tuple
    index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(self.steps))
        object.__setattr__(self, "index", {s.name: i for i, s in enumerate(self.steps)})

    def __getitem__(self, name: str) -> ProofStep:
        return self.steps[self.index[name]]

    def __contains__(self, name: str) -> bool:
        return name in self.index

    def __iter__(self):
        return iter(self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def derived_steps(self) -> list:
        return [s for s in self.steps if s.role in ("plain", "assumption")]

    def final_step(self) -> Optional[ProofStep]:
        derived = self.derived_steps()
        return derived[-1] if derived else None

    def conjecture(self) -> Optional[ProofStep]:
        for s in self.steps:
            if s.role == "conjecture":
                return s
        return None


# -- lexer -------------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+|%[^\n]*|/\*.*?\*/)
  | (?P<op>-->|->|<=>|<~>|=>|<=|~\||~&|!=|[=~&|!?()\[\],.:])
  | (?P<dollar>\$[a-z_]+)
  | (?P<upper>[A-Z][A-Za-z0-9_]*)
  | (?P<lower>[a-z][A-Za-z0-9_]*)
  | (?P<int>[0-9]+)
  | (?P<quoted>'(?:[^'\\]|\\.)*')
    """,
    re.VERBOSE | re.DOTALL,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    start: int
    line: int
    col: int


def _tokenize(text: str) -> list:
    toks = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise TPTPSyntaxError(
                "unexpected character", line, pos - line_start + 1, text[pos]
            )
        kind = m.lastgroup
        if kind != "ws":
            toks.append(_Tok(kind, m.group(), pos, line, pos - line_start + 1))
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    toks.append(_Tok("eof", "", len(text), line, pos - line_start + 1))
    return toks


# -- parser ------------------------------------------------------------------


def _unquote(text: str) -> str:
    return re.sub(r"\\(.)", r"\1", text[1:-1])

_BINOPS = {"<=>", "=>", "<=", "<~>", "~|", "~&"}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    # token helpers
    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def peek(self, k: int = 1) -> _Tok:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def error(self, message: str, tok: Optional[_Tok] = None) -> TPTPSyntaxError:
        tok = tok or self.tok
        return TPTPSyntaxError(message, tok.line, tok.col, tok.text or "<eof>")

    def at(self, text: str) -> bool:
        return self.tok.kind in ("op", "dollar") and self.tok.text == text

    def advance(self) -> _Tok:
        tok = self.tok
        if tok.kind != "eof":
            self.i += 1
        return tok

    def expect(self, text: str) -> _Tok:
        if not self.at(text):
            raise self.error(f"expected {text!r}")
        return self.advance()

    def expect_word(self, word: str) -> None:
        if self.tok.kind != "lower" or self.tok.text != word:
            raise self.error(f"expected {word!r}")
        self.advance()

    # file level
    def derivation(self) -> list:
        steps = []
        while self.tok.kind != "eof":
            steps.append(self.statement())
        return steps

    def name(self) -> str:
        tok = self.tok
        if tok.kind in ("lower", "int"):
            self.advance()
            return tok.text
        if tok.kind == "quoted":
            self.advance()
            return _unquote(tok.text)
        raise self.error("expected a step name")

    def statement(self) -> ProofStep:
        if self.tok.kind != "lower" or self.tok.text != "fof":
            raise self.error("expected 'fof'")
        self.advance()
        self.expect("(")
        name = self.name()
        self.expect(",")
        role_tok = self.tok
        if role_tok.kind != "lower" or role_tok.text not in ROLES:
            raise self.error("expected a formula role")
        self.advance()
        self.expect(",")
        seq, is_formula = self.statement_body()
        inference = None
        annotation = None
        if self.at(","):
            self.advance()
            if self.tok.kind == "lower" and self.tok.text == "inference" and self.peek().text == "(":
                inference = self.inference()
            else:
                annotation = self.raw_general_term()
        self.expect(")")
        self.expect(".")
        return ProofStep(name, role_tok.text, seq, inference, is_formula, annotation)

    def statement_body(self) -> tuple:
        k = 0
        while self.peek(k).text == "(" and self.peek(k).kind == "op":
            k += 1
        if self.peek(k).kind == "op" and self.peek(k).text == "[":
            return self.sequent(), False
        return Sequent((), (self.formula(),)), True

    def sequent(self) -> Sequent:
        if self.at("("):
            self.advance()
            seq = self.sequent()
            self.expect(")")
            return seq
        left = self.formula_tuple()
        if not (self.at("-->") or self.at("->")):
            raise self.error("expected '-->'")
        self.advance()
        right = self.formula_tuple()
        return Sequent(left, right)

    def formula_tuple(self) -> tuple:
        self.expect("[")
        items = []
        if not self.at("]"):
            items.append(self.formula())
            while self.at(","):
                self.advance()
                items.append(self.formula())
        self.expect("]")
        return tuple(items)

    def raw_general_term(self) -> str:
        start = self.tok.start
        depth = 0
        while True:
            tok = self.tok
            if tok.kind == "eof":
                raise self.error("unterminated annotation")
            if tok.kind == "op" and tok.text in "([":
                depth += 1
            elif tok.kind == "op" and tok.text in ")]":
                if depth == 0:
                    break
                depth -= 1
            self.advance()
        text = self.text[start : self.tok.start].strip()
        if not text:
            raise self.error("empty annotation")
        return text

    def inference(self) -> InferenceRecord:
        self.advance()  # inference
        self.expect("(")
        if self.tok.kind not in ("lower", "upper"):
            raise self.error("expected a rule name")
        rule = resolve_rule_name(self.advance().text)
        self.expect(",")
        self.expect("[")
        status = None
        params = []
        if self.tok.kind == "lower" and self.tok.text == "status" and self.peek().text == "(":
            self.advance()
            self.expect("(")
            if self.tok.kind != "lower":
                raise self.error("expected a status")
            status = self.advance().text
            self.expect(")")
            if self.at(","):
                self.advance()
            elif not self.at("]"):
                raise self.error("expected ',' or ']'")
        if not self.at("]"):
            params.append(self.param())
            while self.at(","):
                self.advance()
                params.append(self.param())
        self.expect("]")
        self.expect(",")
        self.expect("[")
        premises = []
        if not self.at("]"):
            premises.append(self.name())
            while self.at(","):
                self.advance()
                premises.append(self.name())
        self.expect("]")
        self.expect(")")
        return InferenceRecord(rule, tuple(params), tuple(premises), status)

    def param(self) -> Param:
        tok = self.tok
        if tok.kind == "int":
            self.advance()
            return IntIndex(int(tok.text))
        if tok.kind == "lower" and tok.text == "o":
            # typeset zero
            self.advance()
            return IntIndex(0)
        if tok.kind == "upper":
            self.advance()
            return VarParam(tok.text)
        if self.at("$fot"):
            self.advance()
            self.expect("(")
            t = self.term()
            self.expect(")")
            return TermParam(t)
        if self.at("$fof"):
            self.advance()
            self.expect("(")
            f = self.formula()
            self.expect(")")
            return FormulaParam(f)
        if self.at("["):
            self.advance()
            items = []
            if not self.at("]"):
                items.append(self.advance())
                while self.at(","):
                    self.advance()
                    items.append(self.advance())
            self.expect("]")
            kinds = {t.kind for t in items}
            if kinds <= {"int"}:
                return IndexList(tuple(int(t.text) for t in items))
            if kinds == {"upper"}:
                return VarList(tuple(t.text for t in items))
            raise self.error("list parameter must hold only indices or only variables", items[0])
        raise self.error("unexpected parameter")

    # formulas
    def formula(self) -> Formula:
        first = self.unit()
        if self.at("&") or self.at("|"):
            op_text = self.tok.text
            op = And if op_text == "&" else Or
            acc = first
            while self.at(op_text):
                self.advance()
                acc = op(acc, self.unit())
            if self.tok.kind == "op" and (self.tok.text in _BINOPS or self.tok.text in "&|"):
                raise self.error("mixed connectives need parentheses")
            return acc
        if self.tok.kind == "op" and self.tok.text in _BINOPS:
            op_text = self.advance().text
            second = self.unit()
            if self.tok.kind == "op" and (self.tok.text in _BINOPS or self.tok.text in "&|"):
                raise self.error("non-associative connective needs parentheses")
            if op_text == "<=>":
                return Iff(first, second)
            if op_text == "=>":
                return Imp(first, second)
            if op_text == "<=":
                return Imp(second, first)
            if op_text == "<~>":
                return Not(Iff(first, second))
            if op_text == "~|":
                return Not(Or(first, second))
            return Not(And(first, second))
        return first

    def unit(self) -> Formula:
        if self.at("~"):
            self.advance()
            return Not(self.unit())
        if self.at("!") or self.at("?"):
            quant = Forall if self.advance().text == "!" else Exists
            self.expect("[")
            names = [self.variable()]
            while self.at(","):
                self.advance()
                names.append(self.variable())
            self.expect("]")
            self.expect(":")
            body = self.formula()
            for name in reversed(names):
                body = quant(name, body)
            return body
        if self.at("("):
            self.advance()
            f = self.formula()
            self.expect(")")
            return f
        if self.at("$true"):
            self.advance()
            return TRUE
        if self.at("$false"):
            self.advance()
            return FALSE
        return self.atomic()

    def variable(self) -> str:
        if self.tok.kind != "upper":
            raise self.error("expected a variable")
        return self.advance().text

    def atomic(self) -> Formula:
        tok = self.tok
        if tok.kind not in ("upper", "lower", "quoted"):
            raise self.error("expected a formula")
        lhs = self.term()
        if self.at("=") or self.at("!="):
            neg = self.advance().text == "!="
            eq = Eq(lhs, self.term())
            return Not(eq) if neg else eq
        if isinstance(lhs, Var):
            return Pred(lhs.name, ())
        return Pred(lhs.symbol, lhs.args)

    def term(self) -> Term:
        tok = self.tok
        if tok.kind not in ("upper", "lower", "quoted"):
            raise self.error("expected a term")
        self.advance()
        name = _unquote(tok.text) if tok.kind == "quoted" else tok.text
        if self.at("("):
            self.advance()
            args = [self.term()]
            while self.at(","):
                self.advance()
                args.append(self.term())
            self.expect(")")
            return App(name, tuple(args))
        if tok.kind == "upper":
            return Var(name)
        return App(name, ())

    def finish(self) -> None:
        if self.tok.kind != "eof":
            raise self.error("trailing input")


def parse_derivation(text: str) -> Derivation:
    """Parse SC-TPTP text.

    Raises :class:`TPTPSyntaxError`, :class:`DuplicateName` or
    :class:`DanglingPremise`.
    """
    steps = _Parser(text).derivation()
    seen: dict = {}
    for s in steps:
        if s.name in seen:
            raise DuplicateName(f"step name {s.name!r} is used twice")
        seen[s.name] = s
    for s in steps:
        for p in s.premises:
            if p not in seen:
                raise DanglingPremise(f"step {s.name!r} cites unknown premise {p!r}")
    return Derivation(tuple(steps))


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    f = p.formula()
    p.finish()
    return f


def parse_term(text: str) -> Term:
    p = _Parser(text)
    t = p.term()
    p.finish()
    return t


def parse_sequent(text: str) -> Sequent:
    p = _Parser(text)
    s = p.sequent()
    p.finish()
    return s


# -- printer -----------------------------------------------------------------

_LOWER_WORD = re.compile(r"[a-z][A-Za-z0-9_]*\Z|[0-9]+\Z")


def _name(name: str) -> str:
    if _LOWER_WORD.match(name):
        return name
    return "'" + name.replace("\\", "\\\\").replace("'", "\\'") + "'"


_UPPER_WORD = re.compile(r"[A-Z][A-Za-z0-9_]*\Z")


def _symbol(name: str, bare_upper: bool) -> str:
    # an upper-case word reads back as a symbol only when applied or in atom position
    if bare_upper and _UPPER_WORD.match(name):
        return name
    return _name(name)


def format_term(t: Term) -> str:
    if isinstance(t, Var):
        return t.name
    if not t.args:
        return _symbol(t.symbol, False)
    return f"{_symbol(t.symbol, True)}({', '.join(format_term(a) for a in t.args)})"


_OPS = {And: "&", Or: "|", Imp: "=>", Iff: "<=>"}


def _unit(f: Formula) -> str:
    if isinstance(f, (Binary, Quantifier)):
        return f"({format_formula(f)})"
    return format_formula(f)


def format_formula(f: Formula) -> str:
    if isinstance(f, Pred):
        if not f.args:
            return _symbol(f.symbol, True)
        return f"{_symbol(f.symbol, True)}({', '.join(format_term(a) for a in f.args)})"
    if isinstance(f, Eq):
        return f"{format_term(f.lhs)} = {format_term(f.rhs)}"
    if isinstance(f, Top):
        return "$true"
    if isinstance(f, Bot):
        return "$false"
    if isinstance(f, Not):
        if isinstance(f.body, Eq):
            return f"~({format_formula(f.body)})"
        return "~" + _unit(f.body)
    if isinstance(f, (And, Or)):
        # left-nested chains print flat, which reparses to the same tree
        parts = []
        node = f
        while isinstance(node, type(f)):
            parts.append(node.right)
            node = node.left
        parts.append(node)
        return f" {_OPS[type(f)]} ".join(_unit(p) for p in reversed(parts))
    if isinstance(f, (Imp, Iff)):
        return f"{_unit(f.left)} {_OPS[type(f)]} {_unit(f.right)}"
    if isinstance(f, Quantifier):
        q = "!" if isinstance(f, Forall) else "?"
        return f"{q}[{f.var}] : {format_formula(f.body)}"
    raise TypeError(f"not a formula: {f!r}")


def format_sequent(s: Sequent) -> str:
    left = ", ".join(format_formula(f) for f in s.left)
    right = ", ".join(format_formula(f) for f in s.right)
    return f"[{left}] --> [{right}]"


def format_param(p: Param) -> str:
    if isinstance(p, IntIndex):
        return str(p.value)
    if isinstance(p, TermParam):
        return f"$fot({format_term(p.term)})"
    if isinstance(p, FormulaParam):
        return f"$fof({format_formula(p.formula)})"
    if isinstance(p, VarParam):
        return p.name
    if isinstance(p, IndexList):
        return "[" + ", ".join(str(v) for v in p.values) + "]"
    if isinstance(p, VarList):
        return "[" + ", ".join(p.names) + "]"
    raise TypeError(f"not a parameter: {p!r}")


def format_inference(inf: InferenceRecord) -> str:
    params = [format_param(p) for p in inf.params]
    if inf.status is not None:
        params.insert(0, f"status({inf.status})")
    premises = ", ".join(_name(p) for p in inf.premises)
    return f"inference({inf.rule}, [{', '.join(params)}], [{premises}])"


def format_step(s: ProofStep) -> str:
    if s.formula_statement and not s.statement.left and len(s.statement.right) == 1:
        body = format_formula(s.statement.right[0])
    else:
        body = format_sequent(s.statement)
    parts = [_name(s.name), s.role, body]
    if s.inference is not None:
        parts.append(format_inference(s.inference))
    elif s.annotation is not None:
        parts.append(s.annotation)
    return f"fof({', '.join(parts)})."


def print_derivation(d: Union[Derivation, Iterable[ProofStep]]) -> str:
    return "".join(format_step(s) + "\n" for s in d)
