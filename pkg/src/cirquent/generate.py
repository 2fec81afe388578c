"""Random and exhaustive cirquent generators for property sweeps."""

from __future__ import annotations

import itertools
import random
from typing import Iterator

from .core import AND, OR, Cirquent, Gate, Port, canonical_key

ATOMS = "PQRSTUVWXYZABCDEFGHIJKLMNO"


def _atom(i: int) -> str:
    return ATOMS[i] if i < len(ATOMS) else f"A{i}"


# shapes ---------------------------------------------------------------------

def _shapes(n: int) -> Iterator[tuple[frozenset[int], ...]]:
    """Single-root DAG shapes on nodes 0..n-1 (0 is the root, edges go to higher
    numbers), one representative per isomorphism class."""
    seen: set = set()
    kids: list[frozenset[int]] = []

    def rec(i: int, has_parent: int) -> Iterator[tuple[frozenset[int], ...]]:
        if i == n:
            if has_parent == (1 << n) - 2:
                key = canonical_key(_skeleton(kids))
                if key not in seen:
                    seen.add(key)
                    yield tuple(kids)
            return
        # node i must already have a parent, since only lower nodes point at it
        if i > 0 and not has_parent >> i & 1:
            return
        later = range(i + 1, n)
        for r in range(len(later) + 1):
            for s in itertools.combinations(later, r):
                kids.append(frozenset(s))
                mask = has_parent
                for x in s:
                    mask |= 1 << x
                yield from rec(i + 1, mask)
                kids.pop()

    yield from rec(0, 0)


def _skeleton(kids: list[frozenset[int]] | tuple[frozenset[int], ...]) -> Cirquent:
    nodes = {str(i): Gate(AND) for i in range(len(kids))}
    return Cirquent(nodes, {str(i): frozenset(map(str, ks)) for i, ks in enumerate(kids)}, "0")


def _literal_patterns(k: int, circuit: bool) -> Iterator[tuple[tuple[int, bool], ...]]:
    """Literal assignments to k ports up to atom renaming and polarity flip:
    atoms appear in order of first use and first appear positive."""
    out: list[tuple[int, bool]] = []

    def rec(i: int, used: int, pos: set, neg: set) -> Iterator[tuple[tuple[int, bool], ...]]:
        if i == k:
            yield tuple(out)
            return
        for a in range(used + 1):
            for neg_flag in ((False,) if a == used else (False, True)):
                if circuit and a in (neg if neg_flag else pos):
                    continue
                out.append((a, neg_flag))
                (neg if neg_flag else pos).add(a)
                yield from rec(i + 1, max(used, a + 1), pos, neg)
                if not any(x == (a, neg_flag) for x in out[:-1]):
                    (neg if neg_flag else pos).discard(a)
                out.pop()

    yield from rec(0, 0, set(), set())


def enumerate_cirquents(max_nodes: int, circuits_only: bool = False,
                        min_nodes: int = 1) -> Iterator[Cirquent]:
    """Every cirquent with min_nodes..max_nodes nodes, up to isomorphism and
    consistent renaming or polarity flip of atoms."""
    for n in range(min_nodes, max_nodes + 1):
        yield from _enumerate_n(n, circuits_only)


def _enumerate_n(n: int, circuits_only: bool) -> Iterator[Cirquent]:
    for kids in _shapes(n):
        seen: set = set()
        leaves = [i for i in range(n) if not kids[i]]
        inner = [i for i in range(n) if kids[i]]
        # each leaf is a port or a childless gate of either kind
        for leaf_roles in itertools.product((None, AND, OR), repeat=len(leaves)):
            ports = [v for v, r in zip(leaves, leaf_roles) if r is None]
            for kinds in itertools.product((AND, OR), repeat=len(inner)):
                base: dict[str, object] = {}
                for v, kd in zip(inner, kinds):
                    base[str(v)] = Gate(kd)
                for v, r in zip(leaves, leaf_roles):
                    if r is not None:
                        base[str(v)] = Gate(r)
                for pat in _literal_patterns(len(ports), circuits_only):
                    nodes = dict(base)
                    for v, (a, neg) in zip(ports, pat):
                        nodes[str(v)] = Port(_atom(a), neg)
                    c = Cirquent(nodes, {str(i): frozenset(map(str, ks)) for i, ks in enumerate(kids)},
                                 "0")
                    key = canonical_key(c)
                    if key not in seen:
                        seen.add(key)
                        yield c


def count_shapes(n: int) -> int:
    return sum(1 for _ in _shapes(n))


# random ---------------------------------------------------------------------

def random_cirquent(rng: random.Random, max_ports: int = 8, max_gates: int = 6,
                    circuit: bool = False, atoms: int | None = None,
                    share: float = 0.3, childless_gates: float = 0.05) -> Cirquent:
    """A random cirquent grown bottom-up: ports first, then gates over earlier nodes.

    `share` is the chance that a chosen child is also reused by a later gate.
    """
    n_ports = rng.randint(1, max_ports)
    lo = 0 if n_ports == 1 else 1
    n_gates = rng.randint(lo, max(lo, max_gates))
    nodes: dict[str, object] = {}
    if circuit:
        pool = [Port(_atom(i), neg) for i in range((n_ports + 1) // 2 + 1) for neg in (False, True)]
        rng.shuffle(pool)
        labels = pool[:n_ports]
    else:
        k = atoms or max(1, n_ports // 2)
        labels = [Port(_atom(rng.randrange(k)), rng.random() < 0.5) for _ in range(n_ports)]
    order = [f"p{i}" for i in range(n_ports)]
    for name, lab in zip(order, labels):
        nodes[name] = lab
    kids: dict[str, frozenset[str]] = {x: frozenset() for x in order}
    unparented = list(order)
    for g in range(n_gates):
        name = f"g{g}"
        kind = rng.choice((AND, OR))
        nodes[name] = Gate(kind)
        if rng.random() < childless_gates:
            kids[name] = frozenset()
            unparented.append(name)
            continue
        take = max(1, min(len(unparented), rng.randint(1, 3)))
        chosen = set(rng.sample(unparented, take))
        for x in chosen:
            unparented.remove(x)
        done = [x for x in kids if x not in unparented and x not in chosen and x != name]
        for x in done:
            if rng.random() < share / max(1, len(done)) * 2:
                chosen.add(x)
        kids[name] = frozenset(chosen)
        unparented.append(name)
    if len(unparented) > 1:
        kind = rng.choice((AND, OR))
        nodes["r"] = Gate(kind)
        kids["r"] = frozenset(unparented)
        root = "r"
    else:
        root = unparented[0]
    return Cirquent(nodes, kids, root)


def random_circuit(rng: random.Random, max_ports: int = 8, max_gates: int = 6, **kw) -> Cirquent:
    return random_cirquent(rng, max_ports, max_gates, circuit=True, **kw)


def random_sized(rng: random.Random, max_nodes: int, circuit: bool = False) -> Cirquent:
    """A random cirquent with at most max_nodes nodes."""
    while True:
        ports = rng.randint(1, max(1, max_nodes - 1))
        c = random_cirquent(rng, ports, max(0, max_nodes - ports - 1), circuit=circuit)
        if len(c) <= max_nodes:
            return c


def random_trade(rng: random.Random, n: int, **kw) -> tuple[Cirquent, "RuleParams"]:
    """A random trade conclusion b=OR(Pi, a), a=AND(c1..cn) over a random context,
    with its parameters (a, b, c1.., b1.., Pi, Theta, Gamma_i, Omega_i)."""
    from .prover import trade_params
    h = random_cirquent(rng, **kw)
    pool = sorted(h.nodes)
    cs = rng.sample(pool, min(n, len(pool)))
    rest = [x for x in pool if x not in cs]
    pi = set(rng.sample(rest, rng.randint(0, min(2, len(rest)))))
    nodes = dict(h.nodes)
    kids = {x: set(h.children(x)) for x in h.nodes}
    nodes["ta"], nodes["tb"], nodes["top"] = Gate(AND), Gate(OR), Gate(rng.choice((AND, OR)))
    kids["ta"], kids["tb"], kids["top"] = set(cs), pi | {"ta"}, {"tb", h.root}
    theta = {"top"}
    if rng.random() < 0.5:
        nodes["mid"] = Gate(rng.choice((AND, OR)))
        kids["mid"] = {"tb"}
        kids["top"].add("mid")
        theta.add("mid")
    c = Cirquent(nodes, {x: frozenset(v) for x, v in kids.items()}, "top")
    bs = [f"tb{i}" for i in range(1, len(cs) + 1)]
    p = trade_params("ta", "tb", cs, bs, Pi=pi, Theta=theta,
                     Gammas=[c.children(x) for x in cs],
                     Omegas=[c.parents(x) - {"ta"} for x in cs])
    return c, p


__all__ = ["enumerate_cirquents", "count_shapes", "random_cirquent", "random_circuit",
           "random_sized", "random_trade"]
