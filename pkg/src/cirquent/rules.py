"""Inference rules as named, parameterized, bidirectional graph transformations."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .core import (AND, OR, Cirquent, CirquentError, Gate, InvalidCirquent, Kind, Port,
                   _cascade, fresh_name, is_single_gate, rename_nodes)


class Direction(enum.Enum):
    FORWARD = "premise_to_conclusion"
    BACKWARD = "conclusion_to_premise"


FORWARD = Direction.FORWARD
BACKWARD = Direction.BACKWARD


class RuleError(CirquentError):
    def __init__(self, code: str, message: str = ""):
        self.code = code
        super().__init__(f"{code}: {message}" if message else code)


class ParamViolation(RuleError):
    pass


class FreshNameClash(RuleError):
    def __init__(self, message: str = ""):
        super().__init__("fresh-name", message)


class ConclusionMismatch(RuleError):
    def __init__(self, message: str = ""):
        super().__init__("conclusion-mismatch", message)


RESTRUCTURING = ("deepening", "flattening", "globalization", "localization",
                 "lengthening", "shortening")
PRIMITIVE = RESTRUCTURING + ("coupling", "weakening", "pulldown", "cocoupling",
                             "coweakening", "copulldown", "merging", "comerging", "redraw")
ALL_RULES = PRIMITIVE + ("trade",)

INVERSE = {"deepening": "flattening", "flattening": "deepening",
           "globalization": "localization", "localization": "globalization",
           "lengthening": "shortening", "shortening": "lengthening"}

DUAL = {"deepening": "flattening", "flattening": "deepening",
        "globalization": "localization", "localization": "globalization",
        "lengthening": "shortening", "shortening": "lengthening",
        "coupling": "cocoupling", "cocoupling": "coupling",
        "weakening": "coweakening", "coweakening": "weakening",
        "pulldown": "copulldown", "copulldown": "pulldown",
        "merging": "comerging", "comerging": "merging", "redraw": "redraw"}


@dataclass(frozen=True)
class RuleId:
    name: str
    flavor: Kind | None = None

    def __post_init__(self) -> None:
        if self.name not in ALL_RULES:
            raise ValueError(f"unknown rule {self.name!r}")
        if (self.name in RESTRUCTURING) != (self.flavor is not None):
            raise ValueError(f"flavor must be given exactly for restructuring rules: {self}")

    def __str__(self) -> str:
        return self.name if self.flavor is None else f"{self.name}/{self.flavor.value}"

    @classmethod
    def parse(cls, text: str) -> "RuleId":
        name, _, fl = text.partition("/")
        return cls(name, Kind(fl) if fl else None)


def rule(text: str) -> RuleId:
    return RuleId.parse(text)


SET_ROLES = ("Gamma", "Delta", "Theta", "Omega", "Sigma", "Pi")


@dataclass(frozen=True)
class RuleParams:
    central: Mapping[str, str] = field(default_factory=dict)
    peripheral: Mapping[str, frozenset[str]] = field(default_factory=dict)
    atom: str | None = None
    mapping: Mapping[str, str] | None = None

    @classmethod
    def of(cls, atom: str | None = None, mapping: Mapping[str, str] | None = None,
           **roles: str | Iterable[str]) -> "RuleParams":
        """RuleParams.of(a='1', b='2', Gamma={'3'}) style constructor."""
        central, peripheral = {}, {}
        for k, v in roles.items():
            if isinstance(v, str):
                central[k] = v
            else:
                peripheral[k] = frozenset(v)
        return cls(central, peripheral, atom, dict(mapping) if mapping is not None else None)

    def c(self, role: str) -> str:
        try:
            return self.central[role]
        except KeyError:
            raise ParamViolation("missing-param", f"central parameter {role} not given") from None

    def s(self, role: str) -> frozenset[str]:
        return self.peripheral.get(role, frozenset())

    def replace(self, **changes) -> "RuleParams":
        central = dict(self.central)
        peripheral = dict(self.peripheral)
        atom, mapping = self.atom, self.mapping
        for k, v in changes.items():
            if k == "atom":
                atom = v
            elif k == "mapping":
                mapping = v
            elif isinstance(v, str):
                central[k] = v
            elif v is None:
                central.pop(k, None)
                peripheral.pop(k, None)
            else:
                peripheral[k] = frozenset(v)
        return RuleParams(central, peripheral, atom, mapping)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RuleParams):
            return NotImplemented
        strip = lambda p: {k: v for k, v in p.peripheral.items() if v}  # noqa: E731
        return (dict(self.central) == dict(other.central) and strip(self) == strip(other)
                and self.atom == other.atom
                and (dict(self.mapping) if self.mapping else None)
                == (dict(other.mapping) if other.mapping else None))

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True)
class Step:
    rule: RuleId
    params: RuleParams

    def __str__(self) -> str:
        from .io import format_step
        return format_step(self)


# ---------------------------------------------------------------------------
# mutable working copy

class _Work:
    def __init__(self, c: Cirquent):
        self.src = c
        self.nodes = dict(c.nodes)
        self.ch = dict(c.children_map)  # values are frozensets, replaced on write
        self.root = c.root

    def add_edge(self, p: str, x: str) -> None:
        self.ch[p] = self.ch[p] | {x}

    def del_edge(self, p: str, x: str) -> None:
        self.ch[p] = self.ch[p] - {x}

    def add_node(self, n: str, label) -> None:
        self.nodes[n] = label
        self.ch[n] = frozenset()

    def del_node(self, n: str) -> None:
        del self.nodes[n]
        del self.ch[n]

    def finish(self, cascade_from: Iterable[str] | None = None) -> Cirquent:
        if cascade_from is not None:
            ch = {k: set(v) for k, v in self.ch.items()}
            ch = _cascade(self.nodes, ch, self.root, start=cascade_from)
            self.ch = {k: frozenset(v) for k, v in ch.items()}
        has_parent = set()
        for cs in self.ch.values():
            has_parent |= cs
        roots = [n for n in self.nodes if n not in has_parent]
        if len(roots) != 1:
            raise ParamViolation("shape", f"result would have roots {sorted(roots)}")
        try:
            return Cirquent(self.nodes, self.ch, roots[0])
        except InvalidCirquent as e:
            raise ParamViolation("shape", f"result is not a cirquent: {e}") from None


def _need(cond: bool, code: str, msg: str) -> None:
    if not cond:
        raise ParamViolation(code, msg)


def _exists(c: Cirquent, n: str, role: str) -> None:
    _need(n in c, "missing-node", f"{role}={n} is not a node")


def _absent(c: Cirquent, n: str, role: str) -> None:
    if n in c:
        raise FreshNameClash(f"{role}={n} already exists")


def _gate(c: Cirquent, n: str, kind: Kind, role: str) -> None:
    _exists(c, n, role)
    _need(c.is_gate(n, kind), "gate-kind", f"{role}={n} must be a {kind.value} gate")


def _kids(c: Cirquent, n: str, expect: frozenset[str], role: str) -> None:
    got = c.children(n)
    _need(got == expect, "neighborhood",
          f"children of {role}={n} are {sorted(got)}, expected {sorted(expect)}")


def _pars(c: Cirquent, n: str, expect: frozenset[str], role: str) -> None:
    got = c.parents(n)
    _need(got == expect, "neighborhood",
          f"parents of {role}={n} are {sorted(got)}, expected {sorted(expect)}")


def _nodes_exist(c: Cirquent, ns: Iterable[str], role: str) -> None:
    for n in ns:
        _need(n in c, "missing-node", f"{role} member {n} is not a node")


def _conventions(p: RuleParams, roles: Sequence[str]) -> None:
    vals = [p.c(r) for r in roles]
    _need(len(set(vals)) == len(vals), "distinct-central",
          f"central parameters {dict(zip(roles, vals))} are not pairwise distinct")
    cs = set(vals)
    for k, v in p.peripheral.items():
        bad = cs & v
        _need(not bad, "peripheral-contains-central",
              f"{k} contains central node(s) {sorted(bad)}")


# ---------------------------------------------------------------------------
# individual schemas; each function maps one side to the other

def _deepening(c: Cirquent, p: RuleParams, k: Kind, to_deep: bool) -> Cirquent:
    _conventions(p, ("a", "b"))
    a, b = p.c("a"), p.c("b")
    G, D, T = p.s("Gamma"), p.s("Delta"), p.s("Theta")
    _gate(c, a, k, "a")
    _pars(c, a, T, "a")
    w = _Work(c)
    if to_deep:
        _absent(c, b, "b")
        _kids(c, a, G | D, "a")
        w.ch[a] = G | {b}
        w.add_node(b, Gate(k))
        w.ch[b] = D
    else:
        _kids(c, a, G | {b}, "a")
        _gate(c, b, k, "b")
        _kids(c, b, D, "b")
        _pars(c, b, frozenset({a}), "b")
        w.del_node(b)
        w.ch[a] = G | D
    return w.finish()


def _globalization(c: Cirquent, p: RuleParams, k: Kind, merge: bool) -> Cirquent:
    _conventions(p, ("a", "b", "c"))
    a, b, m = p.c("a"), p.c("b"), p.c("c")
    G, T, O = p.s("Gamma"), p.s("Theta"), p.s("Omega")
    w = _Work(c)
    if merge:
        _absent(c, m, "c")
        for n, ps, role in ((a, T, "a"), (b, O, "b")):
            _gate(c, n, k, role)
            _kids(c, n, G, role)
            _pars(c, n, ps, role)
        for x in T | O:
            w.ch[x] = (w.ch[x] - {a, b}) | {m}
        w.del_node(a)
        w.del_node(b)
        w.add_node(m, Gate(k))
        w.ch[m] = G
    else:
        _absent(c, a, "a")
        _absent(c, b, "b")
        _gate(c, m, k, "c")
        _kids(c, m, G, "c")
        _pars(c, m, T | O, "c")
        w.del_node(m)
        for n in (a, b):
            w.add_node(n, Gate(k))
            w.ch[n] = G
        for x in T | O:
            w.ch[x] = (w.ch[x] - {m}) | ({a} if x in T else set()) | ({b} if x in O else set())
    return w.finish()


def _lengthening(c: Cirquent, p: RuleParams, k: Kind, to_long: bool) -> Cirquent:
    _conventions(p, ("a", "b"))
    a, b = p.c("a"), p.c("b")
    G, T, O = p.s("Gamma"), p.s("Theta"), p.s("Omega")
    _exists(c, a, "a")
    _kids(c, a, G, "a")
    w = _Work(c)
    if to_long:
        _absent(c, b, "b")
        _pars(c, a, T | O, "a")
        w.add_node(b, Gate(k))
        w.ch[b] = frozenset({a})
        for x in T:
            w.ch[x] = (w.ch[x] - ({a} if x not in O else set())) | {b}
    else:
        _gate(c, b, k, "b")
        _kids(c, b, frozenset({a}), "b")
        _pars(c, b, T, "b")
        _pars(c, a, O | {b}, "a")
        w.del_node(b)
        for x in T:
            w.ch[x] = (w.ch[x] - {b}) | {a}
    return w.finish()


def _coupling(c: Cirquent, p: RuleParams, add_ports: bool, bare: Kind) -> Cirquent:
    """Coupling (bare=AND) and cocoupling (bare=OR): a childless `bare` gate versus
    a gate of the other kind with two fresh opposite ports b:P and c:~P."""
    _conventions(p, ("a", "b", "c"))
    a, b, x = p.c("a"), p.c("b"), p.c("c")
    T = p.s("Theta")
    _need(p.atom is not None, "missing-param", "atom not given")
    try:
        pos, neg = Port(p.atom), Port(p.atom, True)
    except ValueError as e:
        raise ParamViolation("atom", str(e)) from None
    full = bare.dual
    w = _Work(c)
    if add_ports:
        _gate(c, a, bare, "a")
        _kids(c, a, frozenset(), "a")
        _pars(c, a, T, "a")
        _absent(c, b, "b")
        _absent(c, x, "c")
        w.nodes[a] = Gate(full)
        w.add_node(b, pos)
        w.add_node(x, neg)
        w.ch[a] = frozenset({b, x})
    else:
        _gate(c, a, full, "a")
        _kids(c, a, frozenset({b, x}), "a")
        _pars(c, a, T, "a")
        _need(c.label(b) == pos, "port-label", f"b={b} must be the port {pos}")
        _need(c.label(x) == neg, "port-label", f"c={x} must be the port {neg}")
        _pars(c, b, frozenset({a}), "b")
        _pars(c, x, frozenset({a}), "c")
        w.del_node(b)
        w.del_node(x)
        w.nodes[a] = Gate(bare)
        w.ch[a] = frozenset()
    return w.finish()


def _weakening(c: Cirquent, p: RuleParams, k: Kind, remove: bool, local: bool = False) -> Cirquent:
    """Weakening (k=OR) and coweakening (k=AND): a with children Gamma versus
    a with children Gamma+Delta."""
    _conventions(p, ("a",))
    a = p.c("a")
    G, D, T = p.s("Gamma"), p.s("Delta"), p.s("Theta")
    _gate(c, a, k, "a")
    _pars(c, a, T, "a")
    w = _Work(c)
    if remove:
        _kids(c, a, G | D, "a")
        w.ch[a] = G
        out = w.finish(cascade_from=D - G)
        _need(a in out, "shape", "a was deleted by the orphan cascade")
        return out
    _kids(c, a, G, "a")
    _nodes_exist(c, D, "Delta")
    w.ch[a] = G | D
    return w.finish()


def _pull(c: Cirquent, p: RuleParams, outer: Kind, to_top: bool) -> Cirquent:
    """Pulldown (outer=OR) and copulldown (outer=AND).
    Low side: c children {b}+Delta, a children Gamma+Pi.
    Top side: c children {b}+Delta+Pi, a children Gamma."""
    _conventions(p, ("a", "b", "c"))
    a, b, x = p.c("a"), p.c("b"), p.c("c")
    G, D, Pi, S, T = (p.s(r) for r in ("Gamma", "Delta", "Pi", "Sigma", "Theta"))
    _gate(c, x, outer, "c")
    _gate(c, b, outer.dual, "b")
    _gate(c, a, outer, "a")
    _pars(c, x, T, "c")
    _kids(c, b, S | {a}, "b")
    _pars(c, b, frozenset({x}), "b")
    _pars(c, a, frozenset({b}), "a")
    w = _Work(c)
    if to_top:
        _kids(c, x, D | {b}, "c")
        _kids(c, a, G | Pi, "a")
        w.ch[x] = D | Pi | {b}
        w.ch[a] = G
    else:
        _kids(c, x, D | Pi | {b}, "c")
        _kids(c, a, G, "a")
        w.ch[x] = D | {b}
        w.ch[a] = G | Pi
    return w.finish()


def _merging(c: Cirquent, p: RuleParams, k: Kind, merge: bool) -> Cirquent:
    """Merging (k=OR) and comerging (k=AND): b with children Gamma, parents Theta and
    c with children Delta, parents Omega versus a single a with the unions."""
    _conventions(p, ("a", "b", "c"))
    a, b, x = p.c("a"), p.c("b"), p.c("c")
    G, D, T, O = p.s("Gamma"), p.s("Delta"), p.s("Theta"), p.s("Omega")
    w = _Work(c)
    if merge:
        _absent(c, a, "a")
        for n, ks, ps, role in ((b, G, T, "b"), (x, D, O, "c")):
            _gate(c, n, k, role)
            _kids(c, n, ks, role)
            _pars(c, n, ps, role)
        for y in T | O:
            w.ch[y] = (w.ch[y] - {b, x}) | {a}
        w.del_node(b)
        w.del_node(x)
        w.add_node(a, Gate(k))
        w.ch[a] = G | D
    else:
        _absent(c, b, "b")
        _absent(c, x, "c")
        _gate(c, a, k, "a")
        _kids(c, a, G | D, "a")
        _pars(c, a, T | O, "a")
        w.del_node(a)
        w.add_node(b, Gate(k))
        w.add_node(x, Gate(k))
        w.ch[b], w.ch[x] = G, D
        for y in T | O:
            w.ch[y] = (w.ch[y] - {a}) | ({b} if y in T else set()) | ({x} if y in O else set())
    return w.finish()


def _redraw(c: Cirquent, p: RuleParams, forward: bool) -> Cirquent:
    _need(p.mapping is not None, "missing-param", "redraw needs a mapping")
    m = dict(p.mapping)
    _need(set(m) == set(c.nodes) if forward else set(m.values()) == set(c.nodes),
          "mapping", "mapping must be a bijection covering every node")
    _need(len(set(m.values())) == len(m), "mapping", "mapping is not injective")
    if not forward:
        m = {v: k for k, v in m.items()}
    return rename_nodes(c, m)


def apply_rule(c: Cirquent, rule: RuleId, params: RuleParams,
               direction: Direction = FORWARD) -> Cirquent:
    """The other cirquent of the rule instance determined by `params` on `c`."""
    fwd = direction is FORWARD
    n, k = rule.name, rule.flavor
    if n == "deepening":
        return _deepening(c, params, k, fwd)
    if n == "flattening":
        return _deepening(c, params, k, not fwd)
    if n == "globalization":
        return _globalization(c, params, k, fwd)
    if n == "localization":
        return _globalization(c, params, k, not fwd)
    if n == "lengthening":
        return _lengthening(c, params, k, fwd)
    if n == "shortening":
        return _lengthening(c, params, k, not fwd)
    if n == "coupling":
        return _coupling(c, params, fwd, AND)
    if n == "cocoupling":
        return _coupling(c, params, not fwd, OR)
    if n == "weakening":
        return _weakening(c, params, OR, remove=not fwd)
    if n == "coweakening":
        return _weakening(c, params, AND, remove=fwd)
    if n == "pulldown":
        return _pull(c, params, OR, to_top=fwd)
    if n == "copulldown":
        return _pull(c, params, AND, to_top=not fwd)
    if n == "merging":
        return _merging(c, params, OR, fwd)
    if n == "comerging":
        return _merging(c, params, AND, not fwd)
    if n == "redraw":
        return _redraw(c, params, fwd)
    if n == "trade":
        from .prover import trade_conclusion, trade_premise
        return trade_conclusion(c, params) if fwd else trade_premise(c, params)
    raise ParamViolation("unknown-rule", n)


# these conclusions may mention nodes the premise lost, so check them backwards
_CHECK_BACKWARD = {"weakening", "trade"}


def check_step(premise: Cirquent, conclusion: Cirquent, step: Step) -> None:
    """Raise a RuleError unless `conclusion` follows from `premise` by `step`."""
    if step.rule.name in _CHECK_BACKWARD:
        got = apply_rule(conclusion, step.rule, step.params, BACKWARD)
        if got != premise:
            raise ConclusionMismatch("premise differs: " + "; ".join(got.diff(premise)[:5]))
        return
    got = apply_rule(premise, step.rule, step.params, FORWARD)
    if got != conclusion:
        raise ConclusionMismatch("; ".join(got.diff(conclusion)[:5]))


def step_ok(premise: Cirquent, conclusion: Cirquent, step: Step) -> bool:
    try:
        check_step(premise, conclusion, step)
        return True
    except RuleError:
        return False


# ---------------------------------------------------------------------------
# derivations and profiles

@dataclass(frozen=True)
class Profile:
    name: str
    rules: frozenset[str]
    local: bool = False


_CL8 = frozenset(RESTRUCTURING + ("coupling", "weakening", "pulldown", "redraw"))
PROFILES = {
    "cl8": Profile("cl8", _CL8),
    "cl8s": Profile("cl8s", _CL8 | {"cocoupling", "coweakening", "copulldown"}),
    "cl8-merge": Profile("cl8-merge", (_CL8 - {"weakening"}) | {"merging", "comerging"}),
    "cl8-local": Profile("cl8-local", _CL8, local=True),
}


@dataclass
class Derivation:
    cirquents: list[Cirquent]
    steps: list[Step]

    def __post_init__(self) -> None:
        if len(self.cirquents) != len(self.steps) + 1:
            raise ValueError("a derivation has one more cirquent than steps")

    @property
    def first(self) -> Cirquent:
        return self.cirquents[0]

    @property
    def last(self) -> Cirquent:
        return self.cirquents[-1]

    def __len__(self) -> int:
        return len(self.steps)

    def size(self) -> int:
        """Total nodes plus edges over all cirquents."""
        return sum(c.size() for c in self.cirquents)

    def then(self, other: "Derivation") -> "Derivation":
        if other.first != self.last:
            raise ValueError("derivations do not meet")
        return Derivation(self.cirquents + other.cirquents[1:], self.steps + other.steps)

    def rule_counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for s in self.steps:
            out[str(s.rule)] = out.get(str(s.rule), 0) + 1
        return out


@dataclass(frozen=True)
class StepFailure:
    index: int  # index of the step (0-based); the premise is cirquents[index]
    error: RuleError

    def __str__(self) -> str:
        return f"step {self.index}: {self.error}"


class AxiomMismatch(RuleError):
    def __init__(self, message: str = ""):
        super().__init__("axiom-mismatch", message)


def _local_ok(step: Step) -> None:
    n = step.rule.name
    if n in ("weakening", "coweakening"):
        d = step.params.s("Delta") - step.params.s("Gamma")
        _need(len(d) == 1, "local", "local weakening deletes exactly one arc")
    if n in ("pulldown", "copulldown"):
        _need(len(step.params.s("Pi")) == 1, "local", "local pulldown moves exactly one arc")


def check_derivation(d: Derivation, profile: str | Profile = "cl8", *,
                     proof: bool = False, refutation: bool = False) -> StepFailure | None:
    """None when every step checks under `profile`; otherwise the first failure."""
    prof = PROFILES[profile] if isinstance(profile, str) else profile
    if proof and not is_single_gate(d.first, AND):
        return StepFailure(-1, AxiomMismatch("first cirquent is not the axiom"))
    if refutation and not is_single_gate(d.last, OR):
        return StepFailure(len(d.steps), AxiomMismatch("last cirquent is not the counter-axiom"))
    for i, st in enumerate(d.steps):
        try:
            if st.rule.name not in prof.rules:
                raise ParamViolation("profile", f"{st.rule} is not a rule of {prof.name}")
            if prof.local:
                _local_ok(st)
            check_step(d.cirquents[i], d.cirquents[i + 1], st)
        except RuleError as e:
            return StepFailure(i, e)
    return None


def is_i_analytic_step(premise: Cirquent, conclusion: Cirquent, step: Step | None = None) -> bool:
    """Every port of the premise is a port of the conclusion with the same label.

    For a redraw step, ports are followed through its mapping.
    """
    rename = step.params.mapping if step is not None and step.rule.name == "redraw" else None
    for n, lab in premise.nodes.items():
        if not isinstance(lab, Port):
            continue
        m = rename.get(n, n) if rename else n
        if m not in conclusion or conclusion.label(m) != lab:
            return False
    return True


def inverse_step(step: Step) -> Step:
    """The restructuring step that undoes `step` when read in the other direction."""
    r = step.rule
    if r.name in INVERSE:
        return Step(RuleId(INVERSE[r.name], r.flavor), step.params)
    if r.name == "redraw":
        m = {v: k for k, v in step.params.mapping.items()}
        return Step(r, step.params.replace(mapping=m))
    raise ValueError(f"{r} has no inverse")


# ---------------------------------------------------------------------------
# exhaustive parameter enumeration

DEFAULT_PARAM_BUDGET = 100_000


def _splits(xs: Iterable[str], both: bool = True) -> Iterator[tuple[frozenset, frozenset]]:
    """Every (L, R) with L | R == xs; elements may sit in both when `both`."""
    xs = sorted(xs)
    options = (0, 1, 2) if both else (0, 1)
    for pick in itertools.product(options, repeat=len(xs)):
        left = frozenset(x for x, o in zip(xs, pick) if o != 1)
        right = frozenset(x for x, o in zip(xs, pick) if o != 0)
        yield left, right


def _subsets(xs: Iterable[str]) -> Iterator[frozenset]:
    xs = sorted(xs)
    for r in range(len(xs) + 1):
        for s in itertools.combinations(xs, r):
            yield frozenset(s)


def _candidates(c: Cirquent, rule: RuleId, fwd: bool, atoms: Sequence[str]) -> Iterator[RuleParams]:
    n, k = rule.name, rule.flavor
    new = [fresh_name(x, c.nodes) for x in ("a", "b", "c")]
    gates = lambda kind: c.gates(kind)  # noqa: E731
    P = RuleParams.of
    if n in ("deepening", "flattening"):
        for a in gates(k):
            T = c.parents(a)
            if (n == "deepening") == fwd:
                for G, D in _splits(c.children(a)):
                    yield P(a=a, b=new[1], Gamma=G, Delta=D, Theta=T)
            else:
                for b in c.children(a):
                    if c.is_gate(b, k) and c.parents(b) == {a}:
                        yield P(a=a, b=b, Gamma=c.children(a) - {b}, Delta=c.children(b), Theta=T)
    elif n in ("globalization", "localization"):
        if (n == "globalization") == fwd:
            for a, b in itertools.permutations(gates(k), 2):
                if c.children(a) == c.children(b):
                    yield P(a=a, b=b, c=new[2], Gamma=c.children(a), Theta=c.parents(a),
                            Omega=c.parents(b))
        else:
            for m in gates(k):
                for T, O in _splits(c.parents(m)):
                    yield P(a=new[0], b=new[1], c=m, Gamma=c.children(m), Theta=T, Omega=O)
    elif n in ("lengthening", "shortening"):
        if (n == "lengthening") == fwd:
            for a in c.nodes:
                for T, O in _splits(c.parents(a)):
                    yield P(a=a, b=new[1], Gamma=c.children(a), Theta=T, Omega=O)
        else:
            for b in gates(k):
                if len(c.children(b)) == 1:
                    (a,) = c.children(b)
                    yield P(a=a, b=b, Gamma=c.children(a), Theta=c.parents(b),
                            Omega=c.parents(a) - {b})
    elif n in ("coupling", "cocoupling"):
        bare = AND if n == "coupling" else OR
        if (n == "coupling") == fwd:
            for a in gates(bare):
                if not c.children(a):
                    for atom in atoms:
                        yield P(atom, a=a, b=new[1], c=new[2], Theta=c.parents(a))
        else:
            for a in gates(bare.dual):
                kids = sorted(c.children(a))
                if len(kids) == 2 and all(c.is_port(x) for x in kids):
                    x, y = kids
                    if c.label(x).negated:
                        x, y = y, x
                    yield P(c.label(x).atom, a=a, b=x, c=y, Theta=c.parents(a))
    elif n in ("weakening", "coweakening"):
        kind = OR if n == "weakening" else AND
        grow = (n == "weakening") == fwd
        for a in gates(kind):
            T = c.parents(a)
            if grow:
                others = set(c.nodes) - {a} - c.ancestors(a)
                for D in _subsets(others):
                    yield P(a=a, Gamma=c.children(a), Delta=D, Theta=T)
            else:
                for G, D in _splits(c.children(a)):
                    yield P(a=a, Gamma=G, Delta=D, Theta=T)
    elif n in ("pulldown", "copulldown"):
        outer = OR if n == "pulldown" else AND
        to_top = (n == "pulldown") == fwd
        for x in gates(outer):
            for b in c.children(x):
                if not (c.is_gate(b, outer.dual) and c.parents(b) == {x}):
                    continue
                for a in c.children(b):
                    if not (c.is_gate(a, outer) and c.parents(a) == {b}):
                        continue
                    base = dict(a=a, b=b, c=x, Sigma=c.children(b) - {a}, Theta=c.parents(x))
                    if to_top:
                        for G, Pi in _splits(c.children(a)):
                            yield P(Gamma=G, Delta=c.children(x) - {b}, Pi=Pi, **base)
                    else:
                        for D, Pi in _splits(c.children(x) - {b}):
                            yield P(Gamma=c.children(a), Delta=D, Pi=Pi, **base)
    elif n in ("merging", "comerging"):
        kind = OR if n == "merging" else AND
        if (n == "merging") == fwd:
            for b, x in itertools.permutations(gates(kind), 2):
                yield P(a=new[0], b=b, c=x, Gamma=c.children(b), Delta=c.children(x),
                        Theta=c.parents(b), Omega=c.parents(x))
        else:
            for a in gates(kind):
                for G, D in _splits(c.children(a)):
                    for T, O in _splits(c.parents(a)):
                        yield P(a=a, b=new[1], c=new[2], Gamma=G, Delta=D, Theta=T, Omega=O)
    elif n == "redraw":
        yield P(mapping={x: x for x in c.nodes})
    else:
        raise ValueError(f"{rule} is derived; expand it instead")


def enumerate_params(c: Cirquent, rule: RuleId, direction: Direction = FORWARD,
                     atoms: Sequence[str] = ("P",),
                     budget: int = DEFAULT_PARAM_BUDGET) -> list[RuleParams]:
    """Every parameter assignment under which `rule` applies to `c` in `direction`.

    Fresh nodes get the deterministic names a#k, b#k, c#k; coupling draws its
    atom from `atoms`; redraw is enumerated by the identity mapping only.
    """
    from .semantics import BudgetExceeded
    out, tried = [], 0
    for p in _candidates(c, rule, direction is FORWARD, atoms):
        tried += 1
        if tried > budget:
            raise BudgetExceeded(f"more than {budget} candidate parameter sets")
        try:
            apply_rule(c, rule, p, direction)
        except RuleError:
            continue
        out.append(p)
    return out
