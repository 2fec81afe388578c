"""Text formats: .cirq cirquent blocks and .clp derivation files."""

from __future__ import annotations

import re
from typing import Iterable, Iterator

from .core import Cirquent, CirquentError, Gate, Kind, Port, iter_edges, validate_cirquent
from .rules import Derivation, RuleId, RuleParams, Step

NAME_RE = re.compile(r"[^\s,{}=>;\[\]#][^\s,{}=>;\[\]]*\Z")


class FormatError(CirquentError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


def _tokens(text: str) -> Iterator[tuple[int, list[str]]]:
    for no, raw in enumerate(text.splitlines(), 1):
        toks = []
        for t in raw.split():
            if t.startswith("#"):
                break
            toks.append(t)
        if toks:
            yield no, toks


def _check_name(n: str) -> str:
    if not NAME_RE.match(n):
        raise CirquentError(f"node name {n!r} cannot be written in text form")
    return n


def format_cirquent(c: Cirquent, name: str = "c") -> str:
    lines = [f"cirquent {name}"]
    for n in sorted(c.nodes):
        lab = c.label(_check_name(n))
        if isinstance(lab, Port):
            lines.append(f"node {n} port {lab}")
        else:
            lines.append(f"node {n} gate {lab.kind.value}")
    lines += [f"edge {p} {x}" for p, x in iter_edges(c)]
    lines += [f"root {c.root}", "end"]
    return "\n".join(lines) + "\n"


def _read_block(it, first_no: int) -> Cirquent:
    nodes, edges, root = {}, [], None
    for no, t in it:
        head = t[0]
        if head == "end":
            if root is None:
                raise FormatError(no, "missing root line")
            try:
                return validate_cirquent(nodes, edges, root)
            except CirquentError as e:
                raise FormatError(no, str(e)) from None
        if head == "node" and len(t) == 4 and t[2] in ("port", "gate"):
            if t[1] in nodes:
                raise FormatError(no, f"duplicate node {t[1]}")
            if t[2] == "gate":
                if t[3] not in ("and", "or"):
                    raise FormatError(no, f"bad gate kind {t[3]!r}")
                nodes[t[1]] = Gate(Kind(t[3]))
            else:
                neg = t[3].startswith("~")
                try:
                    nodes[t[1]] = Port(t[3][1:] if neg else t[3], neg)
                except ValueError as e:
                    raise FormatError(no, str(e)) from None
        elif head == "edge" and len(t) == 3:
            edges.append((t[1], t[2]))
        elif head == "root" and len(t) == 2:
            root = t[1]
        else:
            raise FormatError(no, f"unexpected line {' '.join(t)!r}")
    raise FormatError(first_no, "unterminated cirquent block")


def parse_cirquents(text: str) -> list[Cirquent]:
    it = _tokens(text)
    out = []
    for no, t in it:
        if t[0] != "cirquent":
            raise FormatError(no, f"expected 'cirquent', got {t[0]!r}")
        out.append(_read_block(it, no))
    return out


def parse_cirquent(text: str) -> Cirquent:
    cs = parse_cirquents(text)
    if len(cs) != 1:
        raise FormatError(1, f"expected one cirquent block, found {len(cs)}")
    return cs[0]


# steps ----------------------------------------------------------------------

def _fmt_set(s: Iterable[str]) -> str:
    return "{" + ",".join(sorted(_check_name(x) for x in s)) + "}"


def format_step(step: Step) -> str:
    p = step.params
    parts = [f"step {step.rule}"]
    for k in sorted(p.central, key=_role_order):
        parts.append(f"{k}={_check_name(p.central[k])}")
    if p.atom is not None:
        parts.append(f"atom={p.atom}")
    for k in sorted(p.peripheral, key=_role_order):
        if p.peripheral[k]:
            parts.append(f"{k}={_fmt_set(p.peripheral[k])}")
    if p.mapping is not None:
        parts.append("map={" + ",".join(f"{a}>{b}" for a, b in sorted(p.mapping.items())) + "}")
    return " ".join(parts)


_ORDER = ["a", "b", "c", "Gamma", "Delta", "Theta", "Omega", "Sigma", "Pi"]


def _role_order(k: str) -> tuple:
    m = re.match(r"([A-Za-z]+)(\d*)\Z", k)
    base, idx = (m.group(1), int(m.group(2) or 0)) if m else (k, 0)
    return (_ORDER.index(base) if base in _ORDER else len(_ORDER), base, idx)


def parse_step(tokens: list[str], no: int = 0) -> Step:
    if len(tokens) < 2 or tokens[0] != "step":
        raise FormatError(no, "expected 'step <rule> ...'")
    try:
        rid = RuleId.parse(tokens[1])
    except ValueError as e:
        raise FormatError(no, str(e)) from None
    central, peripheral, atom, mapping = {}, {}, None, None
    for tok in tokens[2:]:
        key, eq, val = tok.partition("=")
        if not eq or not key:
            raise FormatError(no, f"bad parameter {tok!r}")
        if key == "atom":
            atom = val
        elif key == "map":
            if not (val.startswith("{") and val.endswith("}")):
                raise FormatError(no, f"bad mapping {val!r}")
            mapping = {}
            for pair in filter(None, val[1:-1].split(",")):
                a, sep, b = pair.partition(">")
                if not sep:
                    raise FormatError(no, f"bad mapping entry {pair!r}")
                mapping[a] = b
        elif val.startswith("{"):
            if not val.endswith("}"):
                raise FormatError(no, f"unterminated set in {tok!r}")
            peripheral[key] = frozenset(filter(None, val[1:-1].split(",")))
        else:
            central[key] = val
    return Step(rid, RuleParams(central, peripheral, atom, mapping))


def format_derivation(d: Derivation) -> str:
    out = [format_cirquent(d.cirquents[0], "c0")]
    for i, st in enumerate(d.steps, 1):
        out.append(format_step(st) + "\n")
        out.append(format_cirquent(d.cirquents[i], f"c{i}"))
    return "".join(out)


def parse_derivation(text: str) -> Derivation:
    it = _tokens(text)
    cirqs: list[Cirquent] = []
    steps: list[Step] = []
    for no, t in it:
        if t[0] == "cirquent":
            if len(cirqs) != len(steps):
                raise FormatError(no, "two cirquent blocks without a step between them")
            cirqs.append(_read_block(it, no))
        elif t[0] == "step":
            if len(cirqs) != len(steps) + 1:
                raise FormatError(no, "step line must follow a cirquent block")
            steps.append(parse_step(t, no))
        else:
            raise FormatError(no, f"unexpected line {' '.join(t)!r}")
    if not cirqs or len(cirqs) != len(steps) + 1:
        raise FormatError(0, "derivation must start and end with a cirquent block")
    return Derivation(cirqs, steps)
