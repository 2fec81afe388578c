"""Cirquent data model: labeled rooted DAGs with named nodes."""

from __future__ import annotations

import enum
import re
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

ATOM_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class Kind(enum.Enum):
    AND = "and"
    OR = "or"

    @property
    def dual(self) -> "Kind":
        return Kind.OR if self is Kind.AND else Kind.AND

    @property
    def symbol(self) -> str:
        return "∘" if self is Kind.AND else "•"


AND = Kind.AND
OR = Kind.OR


@dataclass(frozen=True, order=True)
class Port:
    atom: str
    negated: bool = False

    def __post_init__(self) -> None:
        if not ATOM_RE.match(self.atom):
            raise ValueError(f"bad atom name {self.atom!r}")

    @property
    def opposite(self) -> "Port":
        return Port(self.atom, not self.negated)

    def __str__(self) -> str:
        return ("~" if self.negated else "") + self.atom


@dataclass(frozen=True)
class Gate:
    kind: Kind

    def __str__(self) -> str:
        return self.kind.value


Label = Port | Gate


def sort_key(label: Label) -> tuple:
    """Total order on labels, used by canonical forms."""
    if isinstance(label, Port):
        return (1, label.atom, label.negated)
    return (0, label.kind.value, False)


class CirquentError(Exception):
    """Base class for errors raised by this package."""


@dataclass(frozen=True)
class Violation:
    kind: str  # CycleDetected, PortHasChild, UnreachableNode, DanglingEdge, MissingRoot
    where: tuple[str, ...]

    def __str__(self) -> str:
        return f"{self.kind}({', '.join(self.where)})"


class InvalidCirquent(CirquentError):
    def __init__(self, violations: list[Violation]):
        self.violations = violations
        super().__init__("; ".join(map(str, violations)))


class Cirquent:
    """Immutable cirquent. Children sets are the primary representation."""

    __slots__ = ("_nodes", "_children", "_root", "_parents", "_hash")

    def __init__(self, nodes: Mapping[str, Label], children: Mapping[str, frozenset[str]],
                 root: str, *, _trusted: bool = False):
        self._nodes = dict(nodes)
        self._children = {n: frozenset(children.get(n, ())) for n in self._nodes}
        self._root = root
        self._parents: dict[str, frozenset[str]] | None = None
        self._hash: int | None = None
        if not _trusted:
            problems = _violations(self._nodes, self._children, root)
            if problems:
                raise InvalidCirquent(problems)

    # basic accessors
    @property
    def root(self) -> str:
        return self._root

    @property
    def nodes(self) -> Mapping[str, Label]:
        return self._nodes

    def label(self, n: str) -> Label:
        return self._nodes[n]

    def __contains__(self, n: object) -> bool:
        return n in self._nodes

    def __len__(self) -> int:
        return len(self._nodes)

    def children(self, n: str) -> frozenset[str]:
        return self._children[n]

    @property
    def children_map(self) -> Mapping[str, frozenset[str]]:
        return self._children

    def parents(self, n: str) -> frozenset[str]:
        return self.parents_map[n]

    @property
    def parents_map(self) -> Mapping[str, frozenset[str]]:
        if self._parents is None:
            acc: dict[str, set[str]] = {n: set() for n in self._nodes}
            for p, cs in self._children.items():
                for c in cs:
                    acc[c].add(p)
            self._parents = {n: frozenset(s) for n, s in acc.items()}
        return self._parents

    @property
    def edges(self) -> frozenset[tuple[str, str]]:
        return frozenset((p, c) for p, cs in self._children.items() for c in cs)

    def edge_count(self) -> int:
        return sum(len(cs) for cs in self._children.values())

    def size(self) -> int:
        """Nodes plus edges."""
        return len(self._nodes) + self.edge_count()

    def is_port(self, n: str) -> bool:
        return isinstance(self._nodes[n], Port)

    def is_gate(self, n: str, kind: Kind | None = None) -> bool:
        lab = self._nodes[n]
        return isinstance(lab, Gate) and (kind is None or lab.kind is kind)

    def ports(self) -> list[str]:
        return sorted(n for n, l in self._nodes.items() if isinstance(l, Port))

    def gates(self, kind: Kind | None = None) -> list[str]:
        return sorted(n for n in self._nodes if self.is_gate(n, kind))

    def atoms(self) -> set[str]:
        return {l.atom for l in self._nodes.values() if isinstance(l, Port)}

    def topological(self) -> list[str]:
        """Nodes ordered so that every parent precedes its children."""
        pm = self.parents_map
        indeg = {n: len(pm[n]) for n in self._nodes}
        out, queue = [], deque(sorted(n for n, d in indeg.items() if d == 0))
        while queue:
            n = queue.popleft()
            out.append(n)
            for c in sorted(self._children[n]):
                indeg[c] -= 1
                if indeg[c] == 0:
                    queue.append(c)
        return out

    def ancestors(self, n: str) -> set[str]:
        pm, seen, stack = self.parents_map, set(), [n]
        while stack:
            for p in pm[stack.pop()]:
                if p not in seen:
                    seen.add(p)
                    stack.append(p)
        return seen

    def descendants(self, n: str) -> set[str]:
        seen, stack = set(), [n]
        while stack:
            for c in self._children[stack.pop()]:
                if c not in seen:
                    seen.add(c)
                    stack.append(c)
        return seen

    # equality is by named identity
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cirquent):
            return NotImplemented
        return (self._root == other._root and self._nodes == other._nodes
                and self._children == other._children)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._root, frozenset(self._nodes.items()),
                               frozenset(self._children.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Cirquent({len(self._nodes)} nodes, root={self._root!r})"

    def diff(self, other: "Cirquent") -> list[str]:
        """Human readable differences, used in mismatch reports."""
        out = []
        if self._root != other._root:
            out.append(f"root {self._root} vs {other._root}")
        for n in sorted(set(self._nodes) | set(other._nodes)):
            a, b = self._nodes.get(n), other._nodes.get(n)
            if a != b:
                out.append(f"node {n}: {a} vs {b}")
            elif self._children[n] != other._children[n]:
                out.append(f"children of {n}: {sorted(self._children[n])} vs "
                           f"{sorted(other._children[n])}")
        return out


def _violations(nodes: Mapping[str, Label], children: Mapping[str, Iterable[str]],
                root: str) -> list[Violation]:
    out: list[Violation] = []
    if root not in nodes:
        out.append(Violation("MissingRoot", (str(root),)))
    for p, cs in children.items():
        for c in cs:
            if p not in nodes or c not in nodes:
                out.append(Violation("DanglingEdge", (p, c)))
            elif isinstance(nodes[p], Port):
                out.append(Violation("PortHasChild", (p, c)))
    if out:
        return out
    # cycle detection by Kahn's algorithm
    indeg = {n: 0 for n in nodes}
    for cs in children.values():
        for c in cs:
            indeg[c] += 1
    queue = deque(n for n, d in indeg.items() if d == 0)
    seen = 0
    while queue:
        n = queue.popleft()
        seen += 1
        for c in children.get(n, ()):
            indeg[c] -= 1
            if indeg[c] == 0:
                queue.append(c)
    if seen != len(nodes):
        cyc = sorted(n for n, d in indeg.items() if d > 0)
        out.append(Violation("CycleDetected", tuple(cyc)))
    reach, stack = {root}, [root]
    while stack:
        for c in children.get(stack.pop(), ()):
            if c not in reach:
                reach.add(c)
                stack.append(c)
    for n in sorted(set(nodes) - reach):
        out.append(Violation("UnreachableNode", (n,)))
    return out


def check_cirquent(nodes: Mapping[str, Label], edges: Iterable[tuple[str, str]],
                   root: str) -> list[Violation]:
    """All invariant violations of the candidate graph (empty list if valid)."""
    ch: dict[str, set[str]] = {}
    for p, c in edges:
        ch.setdefault(p, set()).add(c)
    return _violations(nodes, ch, root)


def validate_cirquent(nodes: Mapping[str, Label], edges: Iterable[tuple[str, str]],
                      root: str) -> Cirquent:
    ch: dict[str, set[str]] = {}
    for p, c in edges:
        ch.setdefault(p, set()).add(c)
    problems = _violations(nodes, ch, root)
    if problems:
        raise InvalidCirquent(problems)
    return Cirquent(nodes, {k: frozenset(v) for k, v in ch.items()}, root, _trusted=True)


def build(root: str, nodes: Mapping[str, Label | str],
          edges: Iterable[tuple[str, str]] | Mapping[str, Iterable[str]]) -> Cirquent:
    """Convenience constructor. Labels may be written 'and', 'or', 'P', '~P'."""
    labs = {n: parse_label(l) if isinstance(l, str) else l for n, l in nodes.items()}
    if isinstance(edges, Mapping):
        edges = [(p, c) for p, cs in edges.items() for c in cs]
    return validate_cirquent(labs, edges, root)


def parse_label(text: str) -> Label:
    if text in ("and", "∘"):
        return Gate(AND)
    if text in ("or", "•"):
        return Gate(OR)
    if text.startswith("~") or text.startswith("¬"):
        return Port(text[1:], True)
    return Port(text)


AXIOM = Cirquent({"r": Gate(AND)}, {}, "r")
COAXIOM = Cirquent({"r": Gate(OR)}, {}, "r")


def axiom(name: str = "r") -> Cirquent:
    return Cirquent({name: Gate(AND)}, {}, name, _trusted=True)


def is_single_gate(c: Cirquent, kind: Kind) -> bool:
    return len(c) == 1 and c.is_gate(c.root, kind)


def is_circuit(c: Cirquent) -> bool:
    labels = [l for l in c.nodes.values() if isinstance(l, Port)]
    return len(labels) == len(set(labels))


def negate(c: Cirquent) -> Cirquent:
    nodes = {n: l.opposite if isinstance(l, Port) else Gate(l.kind.dual)
             for n, l in c.nodes.items()}
    return Cirquent(nodes, c.children_map, c.root, _trusted=True)


def rename_atoms(c: Cirquent, renaming: Mapping[str, str]) -> Cirquent:
    """Relabel every port (~)P as (~)r(P); r is the identity outside its support."""
    nodes = {n: Port(renaming.get(l.atom, l.atom), l.negated) if isinstance(l, Port) else l
             for n, l in c.nodes.items()}
    return Cirquent(nodes, c.children_map, c.root, _trusted=True)


def rename_nodes(c: Cirquent, mapping: Mapping[str, str]) -> Cirquent:
    """Apply a bijection on node names (identity outside its support)."""
    m = lambda n: mapping.get(n, n)  # noqa: E731
    nodes = {m(n): l for n, l in c.nodes.items()}
    if len(nodes) != len(c.nodes):
        raise CirquentError("node renaming is not injective")
    ch = {m(n): frozenset(m(x) for x in cs) for n, cs in c.children_map.items()}
    return Cirquent(nodes, ch, m(c.root), _trusted=True)


def delete_orphans(nodes: Mapping[str, Label], edges: Iterable[tuple[str, str]],
                   root: str) -> Cirquent:
    """Remove parentless non-root nodes repeatedly, then validate."""
    nodes = dict(nodes)
    ch: dict[str, set[str]] = {n: set() for n in nodes}
    for p, c in edges:
        ch[p].add(c)
    ch = _cascade(nodes, ch, root)
    return validate_cirquent(nodes, [(p, c) for p, cs in ch.items() for c in cs], root)


def _cascade(nodes: dict[str, Label], ch: dict[str, set[str]], root: str,
             start: Iterable[str] | None = None) -> dict[str, set[str]]:
    """In-place orphan cascade. `start` restricts the initial candidates."""
    indeg = {n: 0 for n in nodes}
    for cs in ch.values():
        for c in cs:
            indeg[c] += 1
    cand = nodes if start is None else start
    queue = deque(sorted(n for n in cand if n in nodes and n != root and indeg[n] == 0))
    while queue:
        n = queue.popleft()
        if n not in nodes:
            continue
        for c in sorted(ch.get(n, ())):
            indeg[c] -= 1
            if indeg[c] == 0 and c != root:
                queue.append(c)
        del nodes[n]
        ch.pop(n, None)
    return ch


_SUFFIX = re.compile(r"#\d+\Z")


def fresh_name(base: str, used: Iterable[str] | Mapping[str, object]) -> str:
    """The name base#k with the smallest k >= 1 not in use."""
    base = _SUFFIX.sub("", base) or "n"
    taken = used if isinstance(used, (set, frozenset, dict)) else set(used)
    k = 1
    while f"{base}#{k}" in taken:
        k += 1
    return f"{base}#{k}"


class NameSupply:
    """Deterministic fresh names that also avoid everything handed out earlier."""

    def __init__(self, used: Iterable[str] = ()):
        self.used = set(used)

    def reserve(self, names: Iterable[str]) -> None:
        self.used.update(names)

    def __call__(self, base: str) -> str:
        n = fresh_name(base, self.used)
        self.used.add(n)
        return n


# canonical form ---------------------------------------------------------------

def _rank(sig: dict[str, object]) -> dict[str, int]:
    order = {s: i for i, s in enumerate(sorted(set(sig.values())))}
    return {v: order[s] for v, s in sig.items()}


def _refine(c: Cirquent, colors: dict[str, int]) -> dict[str, int]:
    ch, pa = c.children_map, c.parents_map
    ncells = len(set(colors.values()))
    while True:
        sig = {v: (colors[v], tuple(sorted(colors[x] for x in ch[v])),
                   tuple(sorted(colors[x] for x in pa[v]))) for v in colors}
        new = _rank(sig)
        k = len(set(new.values()))
        if k == ncells:
            return new
        colors, ncells = new, k


def _certificate(c: Cirquent, colors: dict[str, int]) -> tuple:
    labels = tuple(sort_key(c.label(v)) for v in sorted(colors, key=colors.get))
    edges = tuple(sorted((colors[p], colors[x]) for p, cs in c.children_map.items() for x in cs))
    return (len(colors), labels, edges, colors[c.root])


def canonical_form(c: Cirquent) -> tuple[tuple, dict[str, int]]:
    """Canonical certificate plus the node numbering that realises it."""
    pa = c.parents_map
    twin = {v: (sort_key(c.label(v)), pa[v], c.children(v)) for v in c.nodes}
    init = _rank({v: (sort_key(c.label(v)), len(c.children(v)), len(pa[v]),
                      v == c.root) for v in c.nodes})
    best: list = [None, None]

    def search(colors: dict[str, int]) -> None:
        colors = _refine(c, colors)
        cells: dict[int, list[str]] = {}
        for v, k in colors.items():
            cells.setdefault(k, []).append(v)
        open_cells = [k for k, vs in cells.items() if len(vs) > 1]
        if not open_cells:
            cert = _certificate(c, colors)
            if best[0] is None or cert < best[0]:
                best[0], best[1] = cert, colors
            return
        target = min(open_cells)
        tried = set()
        for v in sorted(cells[target]):
            if twin[v] in tried:
                continue
            tried.add(twin[v])
            ind = {w: 2 * k + (0 if w == v else 1) for w, k in colors.items()}
            search(_rank(ind))

    search(init)
    return best[0], best[1]


def canonical_key(c: Cirquent) -> bytes:
    return repr(canonical_form(c)[0]).encode()


def isomorphism(a: Cirquent, b: Cirquent) -> dict[str, str] | None:
    """A label/edge/root preserving bijection from a's names to b's, if any."""
    ca, na = canonical_form(a)
    cb, nb = canonical_form(b)
    if ca != cb:
        return None
    inv = {k: v for v, k in nb.items()}
    return {v: inv[k] for v, k in na.items()}


def canonical_names(c: Cirquent, prefix: str = "n") -> Cirquent:
    """Isomorphic copy with nodes renamed n0, n1, ... in canonical order."""
    _, num = canonical_form(c)
    return rename_nodes(c, {v: f"{prefix}{k}" for v, k in num.items()})


def iter_edges(c: Cirquent) -> Iterator[tuple[str, str]]:
    for p in sorted(c.children_map):
        for x in sorted(c.children_map[p]):
            yield p, x
