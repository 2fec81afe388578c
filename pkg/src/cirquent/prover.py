"""Completeness procedure: standardization, trade, rank, proof search, lifting, duality."""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .builder import Builder
from .core import AND, OR, Cirquent, CirquentError, Gate, NameSupply, negate, rename_atoms
from .rules import (DUAL, Derivation, ParamViolation, RuleId, RuleParams, Step, _absent,
                    _gate, _kids, _need, _pars, _Work)
from .semantics import DEFAULT_PORT_BUDGET, NotValid, decide_validity, generalize_to_circuit


class RankError(CirquentError):
    """The trade loop failed to decrease the rank."""


# ---------------------------------------------------------------------------
# standardization

def _first_standardizing_step(c: Cirquent, fresh) -> tuple[str, RuleParams] | None:
    """The next conclusion-to-premise restructuring step, or None at the fixpoint."""
    order = c.topological()
    for x in order:
        if c.is_gate(x) and len(c.parents(x)) >= 2:
            ps = sorted(c.parents(x))
            kind = c.label(x).kind
            return (f"globalization/{kind.value}",
                    RuleParams.of(a=fresh(x), b=fresh(x), c=x, Gamma=c.children(x),
                                  Theta={ps[0]}, Omega=ps[1:]))
    for a in order:
        if not c.is_gate(a):
            continue
        kind = c.label(a).kind
        for b in sorted(c.children(a)):
            if c.is_gate(b, kind):
                return (f"deepening/{kind.value}",
                        RuleParams.of(a=a, b=b, Gamma=c.children(a) - {b},
                                      Delta=c.children(b), Theta=c.parents(a)))
    for b in order:
        if c.is_gate(b) and len(c.children(b)) == 1:
            (a,) = c.children(b)
            return (f"lengthening/{c.label(b).kind.value}",
                    RuleParams.of(a=a, b=b, Gamma=c.children(a), Theta=c.parents(b),
                                  Omega=c.parents(a) - {b}))
    return None


def standardize(c: Cirquent, names: NameSupply | None = None) -> tuple[Cirquent, Derivation]:
    """The standard form S of c and a restructuring derivation from S to c."""
    b = Builder(c, bottom_up=True, names=names)
    while (nxt := _first_standardizing_step(b.current, b.fresh)) is not None:
        b.apply(nxt[0], nxt[1])
    return b.current, b.derivation()


def is_standard(c: Cirquent) -> bool:
    for n in c.gates():
        kind = c.label(n).kind
        if n != c.root and len(c.parents(n)) != 1:
            return False
        if len(c.children(n)) == 1:
            return False
        if any(c.is_gate(x, kind) for x in c.children(n)):
            return False
    return True


# ---------------------------------------------------------------------------
# trade

_INDEXED = re.compile(r"([a-zA-Z]+?)(\d+)\Z")


def trade_arity(p: RuleParams) -> int:
    idx = [int(m.group(2)) for k in p.central if (m := _INDEXED.match(k)) and m.group(1) == "c"]
    n = len(idx)
    _need(sorted(idx) == list(range(1, n + 1)), "missing-param", "trade needs c1..cn")
    for i in range(1, n + 1):
        p.c(f"b{i}")
    return n


def trade_params(a: str, b: str, cs, bs, Pi=(), Theta=(), Gammas=(), Omegas=()) -> RuleParams:
    """Trade parameters with the indexed roles c1.., b1.., Gamma1.., Omega1.."""
    roles: dict = {"a": a, "b": b, "Pi": set(Pi), "Theta": set(Theta)}
    for i, (ci, bi) in enumerate(zip(cs, bs), 1):
        roles[f"c{i}"], roles[f"b{i}"] = ci, bi
    for i, g in enumerate(Gammas, 1):
        roles[f"Gamma{i}"] = set(g)
    for i, o in enumerate(Omegas, 1):
        roles[f"Omega{i}"] = set(o)
    return RuleParams.of(**roles)


def _trade_conventions(p: RuleParams, n: int) -> tuple[str, str, list[str], list[str]]:
    a, b = p.c("a"), p.c("b")
    cs = [p.c(f"c{i}") for i in range(1, n + 1)]
    bs = [p.c(f"b{i}") for i in range(1, n + 1)]
    central = [a, b] + cs + bs
    _need(len(set(central)) == len(central), "distinct-central",
          "trade central parameters are not pairwise distinct")
    for k, v in p.peripheral.items():
        # a child ci of a may itself hang below another cj
        allowed = set(cs) | ({b} if k.startswith("Omega") else set())
        bad = (set(central) & v) - allowed
        _need(not bad, "peripheral-contains-central", f"{k} contains central node(s) {sorted(bad)}")
    return a, b, cs, bs


def trade_premise(c: Cirquent, p: RuleParams) -> Cirquent:
    """The premise of the trade instance whose conclusion is c."""
    n = trade_arity(p)
    a, b, cs, bs = _trade_conventions(p, n)
    Pi, T = p.s("Pi"), p.s("Theta")
    _gate(c, b, OR, "b")
    _gate(c, a, AND, "a")
    _kids(c, b, Pi | {a}, "b")
    _pars(c, b, T, "b")
    _kids(c, a, frozenset(cs), "a")
    _pars(c, a, frozenset({b}), "a")
    for i, ci in enumerate(cs, 1):
        _kids(c, ci, p.s(f"Gamma{i}"), f"c{i}")
        _pars(c, ci, p.s(f"Omega{i}") | {a}, f"c{i}")
    for i, bi in enumerate(bs, 1):
        _absent(c, bi, f"b{i}")
    w = _Work(c)
    for x in T:
        w.ch[x] = (w.ch[x] - {b}) | {a}
    w.del_node(b)
    w.ch[a] = frozenset(bs)
    for ci, bi in zip(cs, bs):
        w.add_node(bi, Gate(OR))
        w.ch[bi] = Pi | {ci}
    return w.finish(cascade_from=Pi if n == 0 else None)


def trade_conclusion(c: Cirquent, p: RuleParams) -> Cirquent:
    """The conclusion of the trade instance whose premise is c."""
    n = trade_arity(p)
    a, b, cs, bs = _trade_conventions(p, n)
    Pi, T = p.s("Pi"), p.s("Theta")
    _gate(c, a, AND, "a")
    _pars(c, a, T, "a")
    _kids(c, a, frozenset(bs), "a")
    _absent(c, b, "b")
    for ci, bi in zip(cs, bs):
        _need(ci in c, "missing-node", f"{ci} is not a node")
        _need(bi in c, "missing-node", f"{bi} is not a node")
    for x in Pi:
        _need(x in c, "missing-node", f"Pi member {x} is not a node")
    w = _Work(c)
    for bi in bs:
        w.del_node(bi)
    w.add_node(b, Gate(OR))
    w.ch[b] = Pi | {a}
    w.ch[a] = frozenset(cs)
    for x in T:
        w.ch[x] = (w.ch[x] - {a}) | {b}
    out = w.finish()
    # the schema is rigid, so agreement of the reverse computation decides the instance
    try:
        back = trade_premise(out, p)
    except ParamViolation as e:
        raise ParamViolation(e.code, f"not a trade premise: {e}") from None
    _need(back == c, "neighborhood", "premise does not match the trade schema")
    return out


def expand_trade(conclusion: Cirquent, p: RuleParams) -> Derivation:
    """A primitive derivation from the trade premise to `conclusion`."""
    n = trade_arity(p)
    a, b, cs, bs = _trade_conventions(p, n)
    trade_premise(conclusion, p)  # validates the instance
    Pi, T = p.s("Pi"), p.s("Theta")
    w = Builder(conclusion, bottom_up=True)
    if n == 0:
        w.apply("weakening", a=b, Gamma={a}, Delta=Pi, Theta=T)
    else:
        for i in range(n, 0, -1):
            ci, bi = cs[i - 1], bs[i - 1]
            w.apply("shortening/or", a=ci, b=bi, Gamma=p.s(f"Gamma{i}"), Theta={a},
                    Omega=w.current.parents(ci) - {a})
        for i in range(n, 0, -1):
            ci, bi = cs[i - 1], bs[i - 1]
            w.apply("pulldown", a=bi, b=a, c=b, Gamma={ci}, Pi=Pi,
                    Sigma=w.current.children(a) - {bi}, Theta=T,
                    Delta=Pi if i > 1 else ())
    w.apply("lengthening/or", a=a, b=b, Gamma=w.current.children(a), Theta=T)
    return w.derivation()


# ---------------------------------------------------------------------------
# rank and the proof procedure

def active_gates(c: Cirquent) -> list[str]:
    """Disjunctive gates without disjunctive ancestors."""
    out, blocked = [], set()
    for n in c.topological():
        if n in blocked:
            continue
        if c.is_gate(n, OR):
            out.append(n)
            blocked |= c.descendants(n)
    return sorted(out)


def rank(c: Cirquent, s: int) -> int:
    if s < 2:
        raise ValueError("rank base must be at least 2")
    total = 0
    for g in active_gates(c):
        total += s ** sum(1 for x in c.descendants(g) if c.is_gate(x, AND))
    return total


@dataclass
class ProverTrace:
    stages: dict[str, Cirquent] = field(default_factory=dict)
    ranks: list[int] = field(default_factory=list)
    s: int = 0
    renaming: dict[str, str] = field(default_factory=dict)


def _next_trade(c: Cirquent, fresh) -> RuleParams | None:
    for b in active_gates(c):
        conj = sorted(x for x in c.children(b) if c.is_gate(x, AND))
        if not conj:
            continue
        a = conj[0]
        cs = sorted(c.children(a))
        return trade_params(a, b, cs, [fresh(b) for _ in cs], Pi=c.children(b) - {a},
                            Theta=c.parents(b), Gammas=[c.children(x) for x in cs],
                            Omegas=[c.parents(x) - {a} for x in cs])
    return None


def _opposite_pair(c: Cirquent, g: str) -> tuple[str, str]:
    ports = sorted(x for x in c.children(g) if c.is_port(x))
    for i, x in enumerate(ports):
        for y in ports[i + 1:]:
            if c.label(x) == c.label(y).opposite:
                return x, y
    raise CirquentError(f"disjunctive gate {g} has no opposite pair")


def endgame(w: Builder, trace: ProverTrace | None = None) -> None:
    """From a conjunction of disjunctions of ports down to the axiom, bottom-up.

    Each disjunction keeps one opposite pair (E), equal pairs are merged (F),
    couplings replace the pairs by childless conjunctions (G), and deepenings
    absorb those into the root.
    """
    stages = trace.stages if trace is not None else {}
    top = w.current.root
    for g in sorted(w.current.children(top)):
        cur = w.current
        if not cur.is_gate(g, OR):
            raise CirquentError(f"{g} is not a disjunctive gate")
        pair = set(_opposite_pair(cur, g))
        if cur.children(g) != pair:
            w.apply("weakening", a=g, Gamma=pair, Delta=cur.children(g) - pair, Theta={top})
    stages["E"] = w.current
    groups: dict[frozenset, list[str]] = {}
    for g in sorted(w.current.children(top)):
        groups.setdefault(w.current.children(g), []).append(g)
    for k, gs in groups.items():
        x = gs[0]
        for y in gs[1:]:
            m = w.fresh(x)
            w.apply("localization/or", a=x, b=y, c=m, Gamma=k, Theta={top}, Omega={top})
            x = m
    stages["F"] = w.current
    for g in sorted(w.current.children(top)):
        cur = w.current
        pos, neg = sorted(cur.children(g), key=lambda x: cur.label(x).negated)
        w.apply("coupling", a=g, b=pos, c=neg, atom=cur.label(pos).atom, Theta={top})
    stages["G"] = w.current
    for g in sorted(w.current.children(top)):
        w.apply("deepening/and", a=top, b=g, Gamma=w.current.children(top) - {g})


def prove_circuit(c: Cirquent, trace: ProverTrace | None = None) -> Derivation:
    """A CL8 proof of a valid circuit, built bottom-up."""
    trace = trace if trace is not None else ProverTrace()
    w = Builder(c, bottom_up=True)
    w.extend(standardize(c, w.names)[1])
    trace.stages["J"] = w.current
    s = max(2, len(w.current) + 1)
    trace.s = s
    trace.ranks.append(rank(w.current, s))
    while (p := _next_trade(w.current, w.fresh)) is not None:
        w.extend(expand_trade(w.current, p))
        w.extend(standardize(w.current, w.names)[1])
        r = rank(w.current, s)
        if r >= trace.ranks[-1]:
            raise RankError(f"rank {r} does not decrease below {trace.ranks[-1]}")
        trace.ranks.append(r)
    trace.stages["D"] = w.current
    cur = w.current
    if not cur.is_gate(cur.root, AND):
        if not cur.is_gate(cur.root):
            raise CirquentError("a single port is not provable")
        w.apply("shortening/and", a=cur.root, b=w.fresh("top"), Gamma=cur.children(cur.root))
    endgame(w, trace)
    return w.derivation()


def prove(c: Cirquent, budget: int = DEFAULT_PORT_BUDGET,
          trace: ProverTrace | None = None) -> Derivation | NotValid:
    """A CL8 proof of c ending at c node-for-node, or NotValid."""
    witness = decide_validity(c, budget)
    if isinstance(witness, NotValid):
        return witness
    circuit, renaming = generalize_to_circuit(c, witness, budget)
    if trace is not None:
        trace.renaming = dict(renaming)
    return lift_instance(prove_circuit(circuit, trace), renaming)


def lift_instance(proof: Derivation, r: dict[str, str]) -> Derivation:
    """The same proof with every atom P replaced by r(P)."""
    steps = []
    for st in proof.steps:
        if st.params.atom is not None:
            st = Step(st.rule, st.params.replace(atom=r.get(st.params.atom, st.params.atom)))
        steps.append(st)
    return Derivation([rename_atoms(c, r) for c in proof.cirquents], steps)


def dual_step(st: Step) -> Step:
    r = st.rule
    flavor = r.flavor.dual if r.flavor is not None else None
    rid = RuleId(DUAL[r.name], flavor)
    p = st.params
    if r.name in ("coupling", "cocoupling"):
        p = p.replace(b=p.c("c"), c=p.c("b"))
    elif r.name == "redraw":
        p = p.replace(mapping={v: k for k, v in p.mapping.items()})
    return Step(rid, p)


def dualize(d: Derivation) -> Derivation:
    """Reverse, negate every cirquent, and dualize every rule."""
    return Derivation([negate(c) for c in reversed(d.cirquents)],
                      [dual_step(st) for st in reversed(d.steps)])


__all__ = ["RankError", "standardize", "is_standard", "trade_premise", "trade_conclusion",
           "trade_params", "trade_arity", "expand_trade", "active_gates", "rank", "ProverTrace",
           "prove", "prove_circuit", "endgame", "lift_instance", "dualize", "dual_step"]
