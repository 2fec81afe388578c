"""The cut-free sequent calculus G and its translation into CL8.

Sequents are sets of formulas. Introduction rules take a principal formula of
any arity: from Γ,E1,...,Ek infer Γ,E1∨...∨Ek, and from Γ,E1 ... Γ,Ek infer
Γ,E1∧...∧Ek.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator

from .builder import Builder
from .core import CirquentError
from .formula import (Conj, Disj, Formula, FormulaError, Lit, occurrences, parse, render,
                      underline, to_cirquent)
from .prover import endgame, expand_trade, trade_params
from .rules import Derivation
from .semantics import BudgetExceeded

Sequent = frozenset


class GError(CirquentError):
    pass


class NotAxiom(GError):
    pass


class PremiseMismatch(GError):
    pass


class GProofInvalid(GError):
    pass


class NotSingleton(GError):
    pass


@dataclass(frozen=True)
class GProof:
    sequent: Sequent
    rule: str  # "axiom", "or" or "and"
    principal: Formula | None = None
    children: tuple["GProof", ...] = ()

    def nodes(self) -> Iterator["GProof"]:
        stack = [self]
        while stack:
            n = stack.pop()
            yield n
            stack.extend(reversed(n.children))

    def node_count(self) -> int:
        return sum(1 for _ in self.nodes())

    def size(self) -> int:
        """Total formula occurrences over all sequents."""
        return sum(occurrences(f) for n in self.nodes() for f in n.sequent)


@dataclass(frozen=True)
class Unprovable:
    """prove_g verdict; `sequent` is an open leaf with no complementary pair."""
    sequent: Sequent = frozenset()

    def __bool__(self) -> bool:
        return False


def _has_pair(s: Sequent) -> bool:
    return any(isinstance(f, Lit) and Lit(f.atom, not f.negated) in s for f in s)


def _no_constants(f: Formula) -> bool:
    if isinstance(f, Lit):
        return True
    return len(f.children) >= 2 and all(_no_constants(x) for x in f.children)


def _rule_error(n: GProof) -> GError | None:
    S = n.sequent
    if not S:
        return PremiseMismatch("empty sequent")
    bad = [f for f in S if not _no_constants(f)]
    if bad:
        return GProofInvalid(f"{render(bad[0])} uses a constant or a unary connective")
    if n.rule == "axiom":
        if n.children:
            return PremiseMismatch("axiom node with premises")
        return None if _has_pair(S) else NotAxiom(f"no complementary pair in {fmt_sequent(S)}")
    E = n.principal
    want = Disj if n.rule == "or" else Conj if n.rule == "and" else None
    if want is None:
        return GProofInvalid(f"unknown rule {n.rule!r}")
    if not isinstance(E, want) or E not in S:
        return PremiseMismatch(f"principal must be a {n.rule} formula of the sequent")
    contexts = (S - {E}, S)  # Γ may or may not already contain the principal
    if n.rule == "or":
        if len(n.children) != 1:
            return PremiseMismatch("or-introduction has one premise")
        ok = any(n.children[0].sequent == g | set(E.children) for g in contexts)
        return None if ok else PremiseMismatch("premise is not Γ with the disjuncts added")
    if len(n.children) != len(E.children):
        return PremiseMismatch(f"and-introduction needs {len(E.children)} premises")
    for g in contexts:
        if all(ch.sequent == g | {e} for ch, e in zip(n.children, E.children)):
            return None
    return PremiseMismatch("premises are not Γ,E1 ... Γ,Ek for one common Γ")


def check_g_proof(p: GProof) -> tuple[tuple[int, ...], GError] | None:
    """None if p is a G-proof, else the path to the first bad node and its error."""
    stack: list[tuple[tuple[int, ...], GProof]] = [((), p)]
    while stack:
        path, n = stack.pop()
        err = _rule_error(n)
        if err is not None:
            return path, err
        for i in reversed(range(len(n.children))):
            stack.append((path + (i,), n.children[i]))
    return None


def _key(f: Formula) -> str:
    return render(f)


def prove_g(f: Formula | Sequent, budget: int = 200_000) -> GProof | Unprovable:
    """Naive bottom-up proof search, decomposing the leftmost compound formula."""
    root = f if isinstance(f, frozenset) else frozenset({f})
    spent = 0

    def go(S: Sequent) -> GProof | Unprovable:
        nonlocal spent
        spent += sum(occurrences(x) for x in S)
        if spent > budget:
            raise BudgetExceeded(f"G proof search exceeded {budget} formula occurrences")
        if _has_pair(S):
            return GProof(S, "axiom")
        compound = sorted((x for x in S if not isinstance(x, Lit)), key=_key)
        if not compound:
            return Unprovable(S)
        E = compound[0]
        rest = S - {E}
        if isinstance(E, Disj):
            sub = go(rest | set(E.children))
            return sub if isinstance(sub, Unprovable) else GProof(S, "or", E, (sub,))
        kids = []
        for e in E.children:
            sub = go(rest | {e})
            if isinstance(sub, Unprovable):
                return sub
            kids.append(sub)
        return GProof(S, "and", E, tuple(kids))

    for x in root:
        if not _no_constants(x):
            raise GProofInvalid(f"{render(x)} uses a constant or a unary connective")
    return go(root)


# ---------------------------------------------------------------------------
# translation

@dataclass
class GTrace:
    """Which conjunct gate stood for which G-node, in processing order."""
    assoc: list[tuple[str, Sequent]] = field(default_factory=list)


def translate_g_to_cl8(p: GProof, trace: GTrace | None = None) -> Derivation:
    """A CL8 proof of to_cirquent(underline(F)) for a G-proof of {F}."""
    if len(p.sequent) != 1:
        raise NotSingleton(f"root sequent has {len(p.sequent)} formulas")
    bad = check_g_proof(p)
    if bad is not None:
        raise GProofInvalid(f"node {list(bad[0])}: {bad[1]}")
    (F,) = p.sequent
    form: dict[str, Formula] = {}
    target = to_cirquent(underline(F), index=form)
    w = Builder(target, bottom_up=True)
    r0 = target.root
    d0 = w.fresh("d")
    w.apply("shortening/or", a=r0, b=d0, Gamma=target.children(r0))
    top = w.fresh("top")
    w.apply("shortening/and", a=d0, b=top, Gamma={r0})
    todo: list[tuple[str, GProof]] = [(d0, p)]
    while todo:
        d, n = todo.pop()
        if trace is not None:
            trace.assoc.append((d, n.sequent))
        if n.rule == "axiom":
            continue
        E = n.principal
        if any(E in ch.sequent for ch in n.children):
            raise GProofInvalid("premise keeps the principal formula; only strict steps translate")
        x = _isolate(w, d, E, form)
        cur = w.current
        if n.rule == "or":
            w.apply("deepening/or", a=d, b=x, Gamma=cur.children(d) - {x},
                    Delta=cur.children(x), Theta=cur.parents(d))
            todo.append((d, n.children[0]))
            continue
        cs = sorted(cur.children(x))
        bs = [w.fresh("d") for _ in cs]
        tp = trade_params(x, d, cs, bs, Pi=cur.children(d) - {x}, Theta=cur.parents(d),
                          Gammas=[cur.children(c) for c in cs],
                          Omegas=[cur.parents(c) - {x} for c in cs])
        w.extend(expand_trade(cur, tp))
        w.apply("deepening/and", a=top, b=x, Gamma=w.current.children(top) - {x},
                Delta=set(bs))
        by_part = {e: ch for ch, e in zip(n.children, E.children)}
        for c, b in reversed(list(zip(cs, bs))):
            todo.append((b, by_part[form[c]]))
    endgame(w)
    return w.derivation()


def _isolate(w: Builder, d: str, E: Formula, form: dict[str, Formula]) -> str:
    """The child of d standing for E, split off so that d is its only parent."""
    cur = w.current
    hits = sorted(x for x in cur.children(d) if form.get(x) == E)
    if not hits:
        raise GProofInvalid(f"principal {render(E)} has no node under conjunct {d}")
    x = hits[0]
    others = cur.parents(x) - {d}
    if others:
        a, b = w.fresh(x), w.fresh(x)
        w.apply(f"globalization/{cur.label(x).kind.value}", a=a, b=b, c=x,
                Gamma=cur.children(x), Theta={d}, Omega=others)
        form[a] = form[b] = form[x]
        x = a
    return x


def p_simulation_size(p: GProof) -> tuple[int, int]:
    """(size of the G-proof, size of its CL8 translation)."""
    return p.size(), translate_g_to_cl8(p).size()


# ---------------------------------------------------------------------------
# .gpf text format

def fmt_sequent(s: Sequent) -> str:
    return "{" + ", ".join(sorted(map(render, s))) + "}"


def _item(f: Formula) -> str:
    s = render(f)
    return f"({s})" if re.search(r"\s", s) else s


def format_g_proof(p: GProof) -> str:
    if p.rule == "axiom":
        return "(axiom " + " ".join(sorted(_item(f) for f in p.sequent)) + ")"
    parts = " ".join(_item(e) for e in p.principal.children)
    kids = " ".join(format_g_proof(c) for c in p.children)
    return f"({p.rule} ({parts}) {kids})"


class GpfError(GError):
    def __init__(self, pos: int, message: str):
        self.pos = pos
        super().__init__(f"position {pos}: {message}")


def _split(text: str, base: int) -> list[tuple[str, int]]:
    """Split on whitespace outside brackets; returns (item, absolute offset)."""
    items, depth, start = [], 0, None
    for i, ch in enumerate(text + " "):
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
            if depth < 0:
                raise GpfError(base + i, "unbalanced ')'")
        if ch.isspace() and depth == 0:
            if start is not None:
                items.append((text[start:i], base + start))
                start = None
        elif start is None:
            start = i
    if depth:
        raise GpfError(base + len(text), "unbalanced '('")
    return items


def _formula(item: str, pos: int) -> Formula:
    try:
        return parse(item)
    except FormulaError as e:
        raise GpfError(pos, str(e)) from None


def _node(item: str, pos: int) -> GProof:
    if not (item.startswith("(") and item.endswith(")")):
        raise GpfError(pos, "expected a parenthesized proof node")
    parts = _split(item[1:-1], pos + 1)
    if not parts:
        raise GpfError(pos, "empty proof node")
    head = parts[0][0]
    if head == "axiom":
        return GProof(frozenset(_formula(t, q) for t, q in parts[1:]), "axiom")
    if head not in ("or", "and") or len(parts) < 3:
        raise GpfError(pos, "expected (axiom ...), (or (...) child) or (and (...) children)")
    group, gpos = parts[1]
    if not (group.startswith("(") and group.endswith(")")):
        raise GpfError(gpos, "principal must be a parenthesized list of formulas")
    comps = tuple(_formula(t, q) for t, q in _split(group[1:-1], gpos + 1))
    if len(comps) < 2:
        raise GpfError(gpos, "principal needs at least two components")
    E = Disj(comps) if head == "or" else Conj(comps)
    kids = tuple(_node(t, q) for t, q in parts[2:])
    if head == "or":
        if len(kids) != 1:
            raise GpfError(pos, "or node takes exactly one child")
        gamma = kids[0].sequent - set(comps)
    else:
        if len(kids) != len(comps):
            raise GpfError(pos, f"and node needs {len(comps)} children")
        gamma = frozenset().union(*(k.sequent - {e} for k, e in zip(kids, comps)))
        if any(k.sequent != gamma | {e} for k, e in zip(kids, comps)):
            raise GpfError(pos, "and children do not share a context")
    return GProof(gamma | {E}, head, E, kids)


def _reseat(n: GProof, S: Sequent, path: tuple[int, ...] = ()) -> GProof:
    """Recompute sequents top-down, reading every step strictly."""
    if n.rule == "axiom":
        if n.sequent != S:
            raise GpfError(0, f"axiom at {list(path)} lists {fmt_sequent(n.sequent)}, "
                              f"expected {fmt_sequent(S)}")
        return n
    rest = S - {n.principal}
    if n.rule == "or":
        kids = (_reseat(n.children[0], rest | set(n.principal.children), path + (0,)),)
    else:
        kids = tuple(_reseat(k, rest | {e}, path + (i,))
                     for i, (k, e) in enumerate(zip(n.children, n.principal.children)))
    return GProof(S, n.rule, n.principal, kids)


def parse_g_proof(text: str) -> GProof:
    items = _split(text.strip(), len(text) - len(text.lstrip()))
    if len(items) != 1:
        raise GpfError(0, f"expected one proof, found {len(items)} items")
    sketch = _node(*items[0])
    # sequents are implicit, so inner contexts are read off the root downwards
    return _reseat(sketch, sketch.sequent)


__all__ = ["GProof", "Unprovable", "GError", "NotAxiom", "PremiseMismatch", "GProofInvalid",
           "NotSingleton", "GpfError", "GTrace", "check_g_proof", "prove_g",
           "translate_g_to_cl8", "p_simulation_size", "format_g_proof", "parse_g_proof",
           "fmt_sequent"]
