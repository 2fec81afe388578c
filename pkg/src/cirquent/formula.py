"""Formula and hyperformula language: parsing, rendering, translation to cirquents.

Grammar (lowest precedence first)::

    expr  := disj ('->' expr)?
    disj  := conj ('|' conj)*
    conj  := unary ('&' unary)*
    unary := '~' unary | IDENT | '#t' | '#f' | '(' expr ')' | '[' expr ']'
           | '&{' list '}' | '|{' list '}'

`[F]` overlines F. Infix chains are variable-arity: `P | Q | R` is one
disjunction with three children, `(P | Q) | R` is not.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Iterator, Mapping, Union

from .core import AND, OR, Cirquent, CirquentError, Gate, Port


@dataclass(frozen=True)
class Lit:
    atom: str
    negated: bool = False
    over: bool = False


@dataclass(frozen=True)
class Conj:
    children: tuple["Formula", ...] = ()
    over: bool = False


@dataclass(frozen=True)
class Disj:
    children: tuple["Formula", ...] = ()
    over: bool = False


Formula = Union[Lit, Conj, Disj]
TOP = Conj(())
BOT = Disj(())


class FormulaError(CirquentError):
    pass


class SyntaxError_(FormulaError):
    def __init__(self, pos: int, message: str):
        self.pos = pos
        super().__init__(f"syntax error at position {pos}: {message}")


class DoubleOverline(FormulaError):
    pass


class NegatedOverline(FormulaError):
    pass


# construction helpers --------------------------------------------------------

def lit(text: str) -> Lit:
    return Lit(text[1:], True) if text.startswith("~") else Lit(text)


def conj(*xs: Formula) -> Formula:
    return xs[0] if len(xs) == 1 else Conj(tuple(xs))


def disj(*xs: Formula) -> Formula:
    return xs[0] if len(xs) == 1 else Disj(tuple(xs))


def over(f: Formula) -> Formula:
    if f.over:
        raise DoubleOverline("double overline")
    return replace(f, over=True)


@lru_cache(maxsize=None)
def strip(f: Formula) -> Formula:
    """The same formula with every overline removed."""
    if isinstance(f, Lit):
        return Lit(f.atom, f.negated) if f.over else f
    return type(f)(tuple(strip(x) for x in f.children))


def has_overline(f: Formula) -> bool:
    if f.over:
        return True
    return not isinstance(f, Lit) and any(has_overline(x) for x in f.children)


def negation(f: Formula) -> Formula:
    """Classical negation with the negation pushed to atoms (overline-free input)."""
    if has_overline(f):
        raise NegatedOverline("negation applied to an overlined subformula")
    if isinstance(f, Lit):
        return Lit(f.atom, not f.negated)
    kind = Disj if isinstance(f, Conj) else Conj
    return kind(tuple(negation(x) for x in f.children))


def occurrences(f: Formula) -> int:
    """Number of subformula occurrences."""
    if isinstance(f, Lit):
        return 1
    return 1 + sum(occurrences(x) for x in f.children)


def atoms_of(f: Formula) -> set[str]:
    if isinstance(f, Lit):
        return {f.atom}
    out: set[str] = set()
    for x in f.children:
        out |= atoms_of(x)
    return out


def evaluate_formula(f: Formula, values: Mapping[str, bool]) -> bool:
    if isinstance(f, Lit):
        return values[f.atom] != f.negated
    if isinstance(f, Conj):
        return all(evaluate_formula(x, values) for x in f.children)
    return any(evaluate_formula(x, values) for x in f.children)


# tokenizer and parser --------------------------------------------------------

_TOKEN = re.compile(r"\s*(->|#t|#f|&\{|\|\{|[A-Za-z][A-Za-z0-9_]*|[~&|()\[\]{},])")


def _tokenize(text: str) -> list[tuple[str, int]]:
    out, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            p = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise SyntaxError_(p, f"unexpected character {text[p]!r}")
        out.append((m.group(1), m.start(1)))
        pos = m.end()
    out.append(("", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> str:
        return self.toks[self.i][0]

    def pos(self) -> int:
        return self.toks[self.i][1]

    def take(self, expect: str | None = None) -> str:
        tok = self.peek()
        if expect is not None and tok != expect:
            raise SyntaxError_(self.pos(), f"expected {expect!r}, found {tok or 'end of input'!r}")
        self.i += 1
        return tok

    def expr(self):
        left = self.disj()
        if self.peek() == "->":
            self.take()
            return ("imp", left, self.expr())
        return left

    def disj(self):
        xs = [self.conj()]
        while self.peek() == "|":
            self.take()
            xs.append(self.conj())
        return xs[0] if len(xs) == 1 else ("or", xs)

    def conj(self):
        xs = [self.unary()]
        while self.peek() == "&":
            self.take()
            xs.append(self.unary())
        return xs[0] if len(xs) == 1 else ("and", xs)

    def unary(self):
        tok, pos = self.peek(), self.pos()
        if tok == "~":
            self.take()
            return ("neg", self.unary())
        if tok == "(":
            self.take()
            x = self.expr()
            self.take(")")
            return x
        if tok == "[":
            self.take()
            x = self.expr()
            self.take("]")
            return ("over", x, pos)
        if tok in ("&{", "|{"):
            self.take()
            xs = []
            if self.peek() != "}":
                xs.append(self.expr())
                while self.peek() == ",":
                    self.take()
                    xs.append(self.expr())
            self.take("}")
            return ("and" if tok == "&{" else "or", xs)
        if tok == "#t":
            self.take()
            return ("and", [])
        if tok == "#f":
            self.take()
            return ("or", [])
        if tok and (tok[0].isalpha()):
            self.take()
            return ("lit", tok)
        raise SyntaxError_(pos, f"unexpected {tok or 'end of input'!r}")


def _desugar(t, negate: bool = False) -> Formula:
    tag = t[0]
    if tag == "lit":
        return Lit(t[1], negate)
    if tag == "neg":
        return _desugar(t[1], not negate)
    if tag == "imp":
        return _desugar(("or", [("neg", t[1]), t[2]]), negate)
    if tag == "over":
        if negate:
            raise NegatedOverline(f"overline at position {t[2]} under negation")
        inner = _desugar(t[1])
        if inner.over:
            raise DoubleOverline(f"double overline at position {t[2]}")
        return replace(inner, over=True)
    kids = [_desugar(x, negate) for x in t[1]]
    is_and = (tag == "and") != negate
    if len(kids) == 1:
        return kids[0]
    return Conj(tuple(kids)) if is_and else Disj(tuple(kids))


def parse(text: str) -> Formula:
    """Parse a (hyper)formula, expanding all abbreviations."""
    p = _Parser(text)
    tree = p.expr()
    if p.peek() != "":
        raise SyntaxError_(p.pos(), f"unexpected {p.peek()!r}")
    return _desugar(tree)


def parse_formula(text: str) -> Formula:
    f = parse(text)
    if has_overline(f):
        raise FormulaError("overlines are not allowed here")
    return f


# rendering --------------------------------------------------------------------

def render(f: Formula) -> str:
    body = _render_body(f)
    return f"[{body}]" if f.over else body


def _render_body(f: Formula) -> str:
    if isinstance(f, Lit):
        return ("~" if f.negated else "") + f.atom
    if not f.children:
        return "#t" if isinstance(f, Conj) else "#f"
    if len(f.children) == 1:
        return ("&{" if isinstance(f, Conj) else "|{") + render(f.children[0]) + "}"
    op = " & " if isinstance(f, Conj) else " | "
    return op.join(_render_child(x, f) for x in f.children)


def _render_child(x: Formula, parent: Formula) -> str:
    s = render(x)
    if x.over or isinstance(x, Lit) or len(x.children) < 2:
        return s
    if isinstance(parent, Conj) or isinstance(x, Disj):
        return f"({s})"
    return s


# translation to cirquents -----------------------------------------------------

def underline(f: Formula) -> Formula:
    """Overline all and only the literals."""
    if isinstance(f, Lit):
        return Lit(f.atom, f.negated, True)
    return type(f)(tuple(underline(x) for x in f.children))


def to_cirquent(h: Formula, port_prefix: str = "p", gate_prefix: str = "g",
                index: dict[str, Formula] | None = None) -> Cirquent:
    """Translate a hyperformula; identical shareable occurrences become one node.

    An occurrence is shareable when it is overlined or lies inside an overlined
    subformula. Ports are named p1, p2, ... and gates g1, g2, ... in left-to-right
    order of first creation. When `index` is given it receives, for every node,
    the overline-free formula the node stands for.
    """
    nodes: dict = {}
    ch: dict[str, set[str]] = {}
    shared: dict[Formula, str] = {}
    counts = {"p": 0, "g": 0}

    def new(f: Formula) -> str:
        if isinstance(f, Lit):
            counts["p"] += 1
            name = f"{port_prefix}{counts['p']}"
            nodes[name] = Port(f.atom, f.negated)
        else:
            counts["g"] += 1
            name = f"{gate_prefix}{counts['g']}"
            nodes[name] = Gate(AND if isinstance(f, Conj) else OR)
        ch[name] = set()
        if index is not None:
            index[name] = strip(f)
        return name

    def go(f: Formula, inside: bool) -> str:
        share = inside or f.over
        if share:
            key = strip(f)
            if key in shared:
                return shared[key]
            name = new(f)
            shared[key] = name
        else:
            name = new(f)
        if not isinstance(f, Lit):
            for x in f.children:
                ch[name].add(go(x, share))
        return name

    root = go(h, False)
    return Cirquent(nodes, {k: frozenset(v) for k, v in ch.items()}, root, _trusted=True)


def iter_subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if not isinstance(f, Lit):
        for x in f.children:
            yield from iter_subformulas(x)
