"""The ``.ukb`` knowledge-base language.

One declaration per line; ``#`` starts a comment::

    universe Age = grid(0, 100, 5)
    universe Kind = labels(robin, penguin)
    set young on Age = trapezoid(0, 0, 20, 35)
    var age in Age
    option implication = kd
    assert usually(0.9) if age is young then speed is fast
    query infer speed
    query interval speed in fast
    query mc speed in fast samples=100000 seed=7
    query arith a + b on Sum

Statements::

    stmt  := 'if' disj 'then' disj | disj
    disj  := conj ('or' conj)*
    conj  := atom ('and' atom)*
    atom  := 'usually' '(' NUM ')' atom | '(' stmt ')' | NAME 'is' NAME

A leading ``usually(α)`` right after ``assert`` qualifies the whole statement;
anywhere else it binds to the following atom.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from .arithmetic import OP_SYMBOLS
from .config import CONFLICT_POLICIES
from .mc_oracle import SELECTIONS
from .translation import And, Canonical, If, Or, Statement, TranslationError, Usually

KEYWORDS = {"if", "then", "and", "or", "is", "usually", "in", "on"}
SHAPES = {"triangular": 3, "trapezoid": 4, "interval": 2, "singleton": 1, "grades": None}
OPTIONS = {"implication": ("luka", "kd"), "conflict_policy": CONFLICT_POLICIES}


class KbError(Exception):
    """Syntax or semantic error at a 1-based line/column."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message, self.line, self.col = message, line, col


# -- AST -------------------------------------------------------------------

Pos = tuple


@dataclass(frozen=True)
class UniverseDecl:
    name: str
    kind: str  # grid | labels
    args: tuple
    pos: Pos | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class SetDecl:
    name: str
    universe: str
    shape: str
    args: tuple
    pos: Pos | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class VarDecl:
    name: str
    universe: str
    pos: Pos | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class OptionDecl:
    name: str
    value: str
    pos: Pos | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Assert:
    statement: Statement
    pos: Pos | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class InferQuery:
    variable: str
    pos: Pos | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class IntervalQuery:
    variable: str
    set_name: str
    pos: Pos | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class McQuery:
    variable: str
    set_name: str
    samples: int
    seed: int
    selection: str = "uniform"
    pos: Pos | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class ArithQuery:
    left: str
    op: str  # add | sub | mul | div | pow
    right: str
    universe: str
    pos: Pos | None = field(default=None, compare=False, repr=False)


Decl = Union[UniverseDecl, SetDecl, VarDecl, OptionDecl, Assert, InferQuery, IntervalQuery, McQuery, ArithQuery]


@dataclass(frozen=True)
class KbDocument:
    decls: tuple

    def of(self, *types) -> list:
        return [d for d in self.decls if isinstance(d, types)]


# -- lexer -----------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t]+)
  | (?P<comment>\#.*)
  | (?P<num>[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?(?![A-Za-z_]))
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<str>"[^"\n]*")
  | (?P<punct>[(),=+\-*/^])
    """,
    re.VERBOSE,
)


@dataclass
class Tok:
    kind: str
    text: str
    line: int
    col: int


def tokenize_line(text: str, line: int) -> list[Tok]:
    toks, i = [], 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if not m:
            raise KbError(f"unexpected character {text[i]!r}", line, i + 1)
        kind = m.lastgroup
        if kind not in ("ws", "comment"):
            toks.append(Tok(kind, m.group(), line, i + 1))
        i = m.end()
    return toks


# -- parser ----------------------------------------------------------------


class _Line:
    def __init__(self, toks: list[Tok], line: int, width: int):
        self.toks, self.i, self.line, self.width = toks, 0, line, width

    def peek(self) -> Tok | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def where(self) -> tuple[int, int]:
        t = self.peek()
        return (t.line, t.col) if t else (self.line, self.width + 1)

    def fail(self, expected: str):
        t = self.peek()
        got = f"{t.text!r}" if t else "end of line"
        raise KbError(f"expected {expected}, got {got}", *self.where())

    def at(self, text: str) -> bool:
        t = self.peek()
        return t is not None and t.text == text and t.kind in ("name", "punct")

    def expect(self, text: str) -> Tok:
        if not self.at(text):
            self.fail(repr(text))
        return self._advance()

    def _advance(self) -> Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def name(self, what: str = "a name") -> Tok:
        t = self.peek()
        if t is None or t.kind != "name" or t.text in KEYWORDS:
            self.fail(what)
        return self._advance()

    def number(self, what: str = "a number") -> float:
        t = self.peek()
        if t is None or t.kind != "num":
            self.fail(what)
        self._advance()
        return float(t.text)

    def integer(self, what: str) -> int:
        t = self.peek()
        if t is None or t.kind != "num" or not re.fullmatch(r"[-+]?\d+", t.text):
            self.fail(what)
        self._advance()
        return int(t.text)

    def label(self) -> str:
        t = self.peek()
        if t is not None and t.kind == "str":
            self._advance()
            return t.text[1:-1]
        if t is not None and t.kind in ("name", "num"):
            self._advance()
            return t.text
        self.fail("a label")

    def end(self):
        if self.peek() is not None:
            self.fail("end of line")

    def args(self, item) -> tuple:
        self.expect("(")
        out = [item()]
        while self.at(","):
            self._advance()
            out.append(item())
        self.expect(")")
        return tuple(out)


class _Parser:
    def __init__(self):
        self.universes: dict[str, UniverseDecl] = {}
        self.sets: dict[str, SetDecl] = {}
        self.vars: dict[str, VarDecl] = {}
        self.decls: list = []

    # declarations

    def line(self, p: _Line):
        head = p.name("a declaration keyword")
        pos = (head.line, head.col)
        method = getattr(self, f"decl_{head.text}", None)
        if method is None:
            raise KbError(
                f"unknown declaration {head.text!r} (expected universe, set, var, option, assert or query)",
                *pos,
            )
        decl = method(p, pos)
        p.end()
        self.decls.append(decl)

    def _fresh(self, tok: Tok, table: dict, what: str):
        for other in (self.universes, self.sets, self.vars):
            if tok.text in other:
                raise KbError(f"duplicate declaration of {what} {tok.text!r}", tok.line, tok.col)

    def _known(self, tok: Tok, table: dict, what: str):
        if tok.text not in table:
            raise KbError(f"unknown {what} {tok.text!r}", tok.line, tok.col)
        return table[tok.text]

    def decl_universe(self, p: _Line, pos):
        name = p.name("a universe name")
        self._fresh(name, self.universes, "universe")
        p.expect("=")
        kind = p.name("grid or labels")
        if kind.text == "grid":
            args = p.args(p.number)
            if len(args) != 3:
                raise KbError("grid takes (min, max, step)", kind.line, kind.col)
        elif kind.text == "labels":
            args = p.args(p.label)
        else:
            raise KbError(f"unknown universe kind {kind.text!r}", kind.line, kind.col)
        d = UniverseDecl(name.text, kind.text, args, pos)
        self.universes[name.text] = d
        return d

    def decl_set(self, p: _Line, pos):
        name = p.name("a set name")
        self._fresh(name, self.sets, "set")
        p.expect("on")
        u = self._known(p.name("a universe name"), self.universes, "universe")
        p.expect("=")
        shape = p.name("a shape")
        if shape.text not in SHAPES:
            raise KbError(f"unknown shape {shape.text!r}", shape.line, shape.col)
        if shape.text == "singleton" and u.kind == "labels":
            args = p.args(p.label)
        else:
            args = p.args(p.number)
        arity = SHAPES[shape.text]
        if arity is not None and len(args) != arity:
            raise KbError(f"{shape.text} takes {arity} arguments, got {len(args)}", shape.line, shape.col)
        if shape.text != "grades" and shape.text != "singleton" and u.kind == "labels":
            raise KbError(f"{shape.text} needs a grid universe", shape.line, shape.col)
        d = SetDecl(name.text, u.name, shape.text, args, pos)
        self.sets[name.text] = d
        return d

    def decl_var(self, p: _Line, pos):
        name = p.name("a variable name")
        self._fresh(name, self.vars, "variable")
        p.expect("in")
        u = self._known(p.name("a universe name"), self.universes, "universe")
        d = VarDecl(name.text, u.name, pos)
        self.vars[name.text] = d
        return d

    def decl_option(self, p: _Line, pos):
        name = p.name("an option name")
        if name.text not in OPTIONS:
            raise KbError(f"unknown option {name.text!r}", name.line, name.col)
        p.expect("=")
        value = p.name("an option value")
        if value.text not in OPTIONS[name.text]:
            raise KbError(
                f"{name.text} must be one of {', '.join(OPTIONS[name.text])}", value.line, value.col
            )
        return OptionDecl(name.text, value.text, pos)

    def decl_assert(self, p: _Line, pos):
        if p.at("usually"):
            t = p.peek()
            alpha = self._usually_prefix(p)
            s = self._usual(self.stmt(p), alpha, t)
        else:
            s = self.stmt(p)
        return Assert(s, pos)

    def decl_query(self, p: _Line, pos):
        kind = p.name("infer, interval, mc or arith")
        if kind.text == "infer":
            return InferQuery(self._var(p).text, pos)
        if kind.text == "interval":
            v = self._var(p)
            p.expect("in")
            return IntervalQuery(v.text, self._set(p).text, pos)
        if kind.text == "mc":
            v = self._var(p)
            p.expect("in")
            s = self._set(p)
            params = {"selection": "uniform"}
            for key in ("samples", "seed"):
                t = p.name(f"{key}=")
                if t.text != key:
                    raise KbError(f"expected {key}=, got {t.text!r}", t.line, t.col)
                p.expect("=")
                params[key] = p.integer(f"an integer {key}")
            if p.peek() is not None:
                t = p.name("selection=")
                if t.text != "selection":
                    raise KbError(f"expected selection=, got {t.text!r}", t.line, t.col)
                p.expect("=")
                sel = p.name("a selection rule")
                if sel.text not in SELECTIONS:
                    raise KbError(f"selection must be one of {', '.join(SELECTIONS)}", sel.line, sel.col)
                params["selection"] = sel.text
            if params["samples"] < 1:
                raise KbError("samples must be at least 1", *pos)
            return McQuery(v.text, s.text, params["samples"], params["seed"], params["selection"], pos)
        if kind.text == "arith":
            a = self._var(p)
            t = p.peek()
            if t is None or t.text not in OP_SYMBOLS:
                p.fail("one of + - * / ^")
            p._advance()
            b = self._var(p)
            p.expect("on")
            u = self._known(p.name("a universe name"), self.universes, "universe")
            return ArithQuery(a.text, OP_SYMBOLS[t.text], b.text, u.name, pos)
        raise KbError(f"unknown query {kind.text!r}", kind.line, kind.col)

    def _var(self, p: _Line) -> Tok:
        t = p.name("a variable name")
        self._known(t, self.vars, "variable")
        return t

    def _set(self, p: _Line) -> Tok:
        t = p.name("a set name")
        self._known(t, self.sets, "set")
        return t

    # statements

    def _usually_prefix(self, p: _Line) -> float:
        p.expect("usually")
        p.expect("(")
        alpha = p.number("a usuality level")
        p.expect(")")
        return alpha

    def _usual(self, inner, alpha, tok: Tok):
        try:
            return Usually(inner, alpha, (tok.line, tok.col))
        except TranslationError:
            raise KbError(f"usuality level {alpha} out of range (0, 1]", tok.line, tok.col) from None

    def stmt(self, p: _Line):
        if p.at("if"):
            t = p.expect("if")
            a = self.disj(p)
            p.expect("then")
            return If(a, self.disj(p), (t.line, t.col))
        return self.disj(p)

    def disj(self, p: _Line):
        s = self.conj(p)
        while p.at("or"):
            t = p._advance()
            s = Or(s, self.conj(p), (t.line, t.col))
        return s

    def conj(self, p: _Line):
        s = self.atom(p)
        while p.at("and"):
            t = p._advance()
            s = And(s, self.atom(p), (t.line, t.col))
        return s

    def atom(self, p: _Line):
        t = p.peek()
        if p.at("usually"):
            alpha = self._usually_prefix(p)
            return self._usual(self.atom(p), alpha, t)
        if p.at("("):
            p._advance()
            s = self.stmt(p)
            p.expect(")")
            return s
        v = self._var(p)
        p.expect("is")
        a = self._set(p)
        return Canonical(v.text, a.text, (v.line, v.col))


def parse(text: str) -> KbDocument:
    """Parse ``.ukb`` source; raises :class:`KbError` with a position on failure."""
    parser = _Parser()
    for n, raw in enumerate(text.splitlines(), start=1):
        toks = tokenize_line(raw, n)
        if toks:
            parser.line(_Line(toks, n, len(raw)))
    return KbDocument(tuple(parser.decls))


# -- pretty printer --------------------------------------------------------


def _num(x: float) -> str:
    return repr(float(x)) if not float(x).is_integer() else str(int(x)) if abs(x) < 1e15 else repr(float(x))


def _label(s: str) -> str:
    if re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", s) and s not in KEYWORDS:
        return s
    if re.fullmatch(r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?", s):
        return s
    return f'"{s}"'


def format_statement(s, top: bool = True) -> str:
    if isinstance(s, Canonical):
        return f"{s.variable} is {s.set_name}"
    if isinstance(s, Usually):
        # only the outermost prefix may govern an unparenthesised statement
        nested = isinstance(s.inner, Usually)
        inner = format_statement(s.inner, top=top and not nested)
        if not top and not isinstance(s.inner, (Canonical, Usually)):
            inner = f"({inner})"
        return f"usually({_num(s.alpha)}) {inner}"

    def part(c):
        text = format_statement(c, top=False)
        return text if isinstance(c, Canonical) else f"({text})"

    if isinstance(s, If):
        return f"if {part(s.antecedent)} then {part(s.consequent)}"
    word = "and" if isinstance(s, And) else "or"
    return f"{part(s.left)} {word} {part(s.right)}"


_SYMBOL = {v: k for k, v in OP_SYMBOLS.items()}


def format_decl(d) -> str:
    if isinstance(d, UniverseDecl):
        args = ", ".join(_num(a) if d.kind == "grid" else _label(a) for a in d.args)
        return f"universe {d.name} = {d.kind}({args})"
    if isinstance(d, SetDecl):
        args = ", ".join(_label(a) if isinstance(a, str) else _num(a) for a in d.args)
        return f"set {d.name} on {d.universe} = {d.shape}({args})"
    if isinstance(d, VarDecl):
        return f"var {d.name} in {d.universe}"
    if isinstance(d, OptionDecl):
        return f"option {d.name} = {d.value}"
    if isinstance(d, Assert):
        return f"assert {format_statement(d.statement)}"
    if isinstance(d, InferQuery):
        return f"query infer {d.variable}"
    if isinstance(d, IntervalQuery):
        return f"query interval {d.variable} in {d.set_name}"
    if isinstance(d, McQuery):
        tail = "" if d.selection == "uniform" else f" selection={d.selection}"
        return f"query mc {d.variable} in {d.set_name} samples={d.samples} seed={d.seed}{tail}"
    if isinstance(d, ArithQuery):
        return f"query arith {d.left} {_SYMBOL[d.op]} {d.right} on {d.universe}"
    raise TypeError(f"not a declaration: {d!r}")


def format_document(doc: KbDocument) -> str:
    return "".join(format_decl(d) + "\n" for d in doc.decls)
