"""Abstract resource semantics: evaluation, arrangements, validity."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .core import AND, Cirquent, CirquentError, Port, is_circuit, rename_atoms

DEFAULT_PORT_BUDGET = 24

Arrangement = frozenset  # frozenset of frozenset({a, b}) allocations


class BudgetExceeded(CirquentError):
    pass


class IncompleteAssignment(CirquentError):
    pass


class NotACircuit(CirquentError):
    pass


class NotValidating(CirquentError):
    pass


class BadArrangement(CirquentError):
    pass


def arrangement(pairs: Iterable[Iterable[str]]) -> Arrangement:
    return frozenset(frozenset(p) for p in pairs)


def format_arrangement(arr: Arrangement) -> str:
    pairs = sorted(tuple(sorted(p)) for p in arr)
    return "{" + ", ".join(f"{a}~{b}" for a, b in pairs) + "}"


def check_arrangement(c: Cirquent, arr: Arrangement) -> None:
    used: set[str] = set()
    for pair in arr:
        if len(pair) != 2:
            raise BadArrangement(f"allocation {sorted(pair)} is not a pair")
        a, b = sorted(pair)
        for x in (a, b):
            if x not in c or not c.is_port(x):
                raise BadArrangement(f"{x} is not a port")
        if c.label(a) != c.label(b).opposite:
            raise BadArrangement(f"{a} and {b} do not carry opposite labels")
        if a in used or b in used:
            raise BadArrangement("allocations are not disjoint")
        used |= {a, b}


def evaluate(c: Cirquent, f: Mapping[str, bool]) -> bool:
    """Bottom-up truth value of the root under a port assignment."""
    missing = [p for p in c.ports() if p not in f]
    if missing:
        raise IncompleteAssignment(f"no value for ports {missing}")
    return _eval_masks(c, {p: int(bool(f[p])) for p in c.ports()}, 1) == 1


def _eval_masks(c: Cirquent, port_masks: Mapping[str, int], full: int) -> int:
    """Evaluate many assignments at once; bit i of a mask is assignment i."""
    val: dict[str, int] = {}
    for n in reversed(c.topological()):
        lab = c.label(n)
        if isinstance(lab, Port):
            val[n] = port_masks[n]
        elif lab.kind is AND:
            m = full
            for x in c.children(n):
                m &= val[x]
            val[n] = m
        else:
            m = 0
            for x in c.children(n):
                m |= val[x]
            val[n] = m
    return val[c.root]


def _var_masks(k: int) -> tuple[list[int], int]:
    n = 1 << k
    full = (1 << n) - 1
    out = []
    for i in range(k):
        w = 1 << i
        block = ((1 << w) - 1) << w
        out.append(block * (full // ((1 << (2 * w)) - 1)))
    return out, full


def _decode(index: int, k: int) -> list[bool]:
    return [bool(index >> i & 1) for i in range(k)]


def is_consistent(f: Mapping[str, bool], arr: Arrangement) -> bool:
    return all(len({bool(f[x]) for x in pair}) == 2 for pair in arr)


def _falsifier(c: Cirquent, arr: Arrangement, budget: int) -> dict[str, bool] | None:
    """A consistent falsifying assignment, or None when `arr` is validating."""
    ports = c.ports()
    if len(ports) > budget:
        raise BudgetExceeded(f"{len(ports)} ports exceed the exhaustive budget {budget}")
    pairs = sorted(tuple(sorted(p)) for p in arr)
    allocated = {x for p in pairs for x in p}
    free = [p for p in ports if p not in allocated]
    k = len(pairs) + len(free)
    masks, full = _var_masks(k)
    pm: dict[str, int] = {}
    for i, (a, b) in enumerate(pairs):
        pm[a], pm[b] = masks[i], full ^ masks[i]
    for j, p in enumerate(free):
        pm[p] = masks[len(pairs) + j]
    root = _eval_masks(c, pm, full)
    if root == full:
        return None
    bad = (full ^ root)
    idx = (bad & -bad).bit_length() - 1
    bits = _decode(idx, k)
    f = {}
    for i, (a, b) in enumerate(pairs):
        f[a], f[b] = bits[i], not bits[i]
    for j, p in enumerate(free):
        f[p] = bits[len(pairs) + j]
    return f


def is_validating(c: Cirquent, arr: Arrangement, budget: int = DEFAULT_PORT_BUDGET) -> bool:
    check_arrangement(c, arr)
    return _falsifier(c, arr, budget) is None


@dataclass(frozen=True)
class NotValid:
    """Verdict for cirquents without a validating arrangement.

    `countermodels` holds falsifying assignments; every maximal arrangement is
    consistent with at least one of them.
    """
    countermodels: tuple[Mapping[str, bool], ...] = ()
    arrangements_tried: int = 0

    def __bool__(self) -> bool:
        return False

    def __str__(self) -> str:
        return "not-valid"


def _twins(c: Cirquent, ports: list[str]) -> list[list[str]]:
    """Group interchangeable ports (same label, same parents), order preserved."""
    groups: dict[tuple, list[str]] = {}
    for p in ports:
        groups.setdefault((c.label(p), c.parents(p)), []).append(p)
    return sorted(groups.values(), key=lambda g: g[0])


def maximal_arrangements(c: Cirquent) -> Iterator[Arrangement]:
    """Maximal arrangements up to swapping interchangeable ports.

    Adding allocations only removes consistent assignments, so some maximal
    arrangement validates whenever any arrangement does.
    """
    by_atom: dict[str, tuple[list[str], list[str]]] = {}
    for p in c.ports():
        lab = c.label(p)
        by_atom.setdefault(lab.atom, ([], []))[lab.negated].append(p)
    per_atom = []
    for atom in sorted(by_atom):
        pos, neg = by_atom[atom]
        if pos and neg:
            per_atom.append(_matchings(c, pos, neg))
    yield from _product(per_atom, frozenset())


def _product(options: list, acc: frozenset) -> Iterator[Arrangement]:
    if not options:
        yield acc
        return
    for m in options[0]():
        yield from _product(options[1:], acc | m)


def _matchings(c: Cirquent, pos: list[str], neg: list[str]):
    small, large = (pos, neg) if len(pos) <= len(neg) else (neg, pos)
    s_groups = _twins(c, small)
    l_groups = _twins(c, large)
    seq = [(gi, p) for gi, g in enumerate(s_groups) for p in g]

    def gen():
        cap = [len(g) for g in l_groups]
        chosen: list[int] = []

        def rec(i: int) -> Iterator[frozenset]:
            if i == len(seq):
                used = [0] * len(l_groups)
                pairs = []
                for (gi, p), lg in zip(seq, chosen):
                    q = l_groups[lg][used[lg]]
                    used[lg] += 1
                    pairs.append(frozenset((p, q)))
                yield frozenset(pairs)
                return
            lo = chosen[-1] if i > 0 and seq[i - 1][0] == seq[i][0] else 0
            for lg in range(lo, len(l_groups)):
                if cap[lg]:
                    cap[lg] -= 1
                    chosen.append(lg)
                    yield from rec(i + 1)
                    chosen.pop()
                    cap[lg] += 1
        yield from rec(0)
    return gen


def decide_validity(c: Cirquent, budget: int = DEFAULT_PORT_BUDGET) -> Arrangement | NotValid:
    """A validating arrangement, or NotValid."""
    if len(c.ports()) > budget:
        raise BudgetExceeded(f"{len(c.ports())} ports exceed the exhaustive budget {budget}")
    cache: list[dict[str, bool]] = []
    tried = 0
    for arr in maximal_arrangements(c):
        tried += 1
        if any(is_consistent(f, arr) for f in cache):
            continue
        f = _falsifier(c, arr, budget)
        if f is None:
            return arr
        cache.append(f)
    return NotValid(tuple(cache), tried)


def is_valid(c: Cirquent, budget: int = DEFAULT_PORT_BUDGET) -> bool:
    # the empty arrangement is a falsy witness, so test the type
    return not isinstance(decide_validity(c, budget), NotValid)


def classical_tautology(c: Cirquent) -> bool:
    """Truth under every assignment giving opposite values to P and ~P ports."""
    if not is_circuit(c):
        raise NotACircuit("classical reading needs distinct port labels")
    atoms = sorted(c.atoms())
    masks, full = _var_masks(len(atoms))
    idx = {a: i for i, a in enumerate(atoms)}
    pm = {}
    for p in c.ports():
        lab = c.label(p)
        m = masks[idx[lab.atom]]
        pm[p] = full ^ m if lab.negated else m
    return _eval_masks(c, pm, full) == full


def generalize_to_circuit(c: Cirquent, arr: Arrangement,
                          budget: int = DEFAULT_PORT_BUDGET) -> tuple[Cirquent, dict[str, str]]:
    """A circuit B and atom renaming r with rename_atoms(B, r) == c.

    Each allocation gets its own atom, and so does each unallocated port; an
    original atom name is reused for its first class.
    """
    if not is_validating(c, arr, budget):
        raise NotValidating("arrangement is not validating")
    classes: list[list[str]] = [sorted(p) for p in arr]
    allocated = {x for p in arr for x in p}
    classes += [[p] for p in c.ports() if p not in allocated]
    classes.sort()
    used: set[str] = set()
    renaming: dict[str, str] = {}
    relabel: dict[str, Port] = {}
    for cls in classes:
        atom = c.label(cls[0]).atom
        new = atom
        k = 1
        while new in used:
            new = f"{atom}_{k}"
            k += 1
        used.add(new)
        if new != atom:
            renaming[new] = atom
        for p in cls:
            relabel[p] = Port(new, c.label(p).negated)
    nodes = {n: relabel.get(n, lab) for n, lab in c.nodes.items()}
    out = Cirquent(nodes, c.children_map, c.root, _trusted=True)
    # renamed atoms must not collide with original atoms used elsewhere
    assert rename_atoms(out, renaming) == c
    return out, renaming
