"""Small named cirquents and hand-written derivations used by tests and examples."""

from __future__ import annotations

from .builder import Builder
from .core import AND, Cirquent, Gate, Port, build
from .rules import Derivation, RuleId, RuleParams, Step, apply_rule
from .semantics import Arrangement, arrangement


def _ports(*labels: str) -> dict[str, str]:
    return {str(i): lab for i, lab in enumerate(labels, 1)}


def shared_p() -> Cirquent:
    """~P | (~Q & P) | (P & ~R) | (Q & R) with a single P port; ports 1..6 left to right."""
    nodes = _ports("~P", "~Q", "P", "~R", "Q", "R")
    nodes.update(a="and", b="and", c="and", r="or")
    return build("r", nodes, [("r", "1"), ("r", "a"), ("r", "b"), ("r", "c"), ("a", "2"),
                              ("a", "3"), ("b", "3"), ("b", "4"), ("c", "5"), ("c", "6")])


SHARED_P_WITNESS: Arrangement = arrangement([("1", "3"), ("2", "5"), ("4", "6")])


def split_p() -> Cirquent:
    """The same formula with two separate P ports (ports 1..7)."""
    nodes = _ports("~P", "~Q", "P", "P", "~R", "Q", "R")
    nodes.update(a="and", b="and", c="and", r="or")
    return build("r", nodes, [("r", "1"), ("r", "a"), ("r", "b"), ("r", "c"), ("a", "2"),
                              ("a", "3"), ("b", "4"), ("b", "5"), ("c", "6"), ("c", "7")])


def _one_atom(c: Cirquent, atom: str = "P") -> Cirquent:
    nodes = {n: (Port(atom, lab.negated) if isinstance(lab, Port) else lab)
             for n, lab in c.nodes.items()}
    return Cirquent(nodes, c.children_map, c.root)


def shared_p_instance() -> Cirquent:
    """shared_p with every atom renamed to P; not a circuit, still provable."""
    return _one_atom(shared_p())


def split_p_instance() -> Cirquent:
    return _one_atom(split_p())


def balanced_pairs() -> Cirquent:
    """((~P|~P) & (~P|~P)) | ((P|P) & (P|P)), ports 1..8 left to right."""
    nodes = _ports("~P", "~P", "~P", "~P", "P", "P", "P", "P")
    nodes.update(d1="or", d2="or", d3="or", d4="or", k1="and", k2="and", r="or")
    return build("r", nodes, [("d1", "1"), ("d1", "2"), ("d2", "3"), ("d2", "4"),
                              ("d3", "5"), ("d3", "6"), ("d4", "7"), ("d4", "8"),
                              ("k1", "d1"), ("k1", "d2"), ("k2", "d3"), ("k2", "d4"),
                              ("r", "k1"), ("r", "k2")])


BALANCED_ALPHA: Arrangement = arrangement([("1", "5"), ("2", "6"), ("3", "7"), ("4", "8")])
BALANCED_BETA: Arrangement = arrangement([("1", "5"), ("2", "7"), ("3", "6"), ("4", "8")])
# consistent with alpha and falsifying
BALANCED_ALPHA_COUNTERMODEL = {"1": False, "2": False, "7": False, "8": False,
                               "3": True, "4": True, "5": True, "6": True}


def triple_pairs() -> Cirquent:
    """Three (~P|~P) conjuncts against three (P|P) conjuncts; not valid."""
    nodes = _ports(*(["~P"] * 6 + ["P"] * 6))
    edges = []
    for g in range(6):
        nodes[f"d{g}"] = "or"
        edges += [(f"d{g}", str(2 * g + 1)), (f"d{g}", str(2 * g + 2))]
        edges.append(("k0" if g < 3 else "k1", f"d{g}"))
    nodes.update(k0="and", k1="and", r="or")
    return build("r", nodes, edges + [("r", "k0"), ("r", "k1")])


def blass() -> Cirquent:
    """((~P | ~Q) & (~R | ~S)) | ((P | R) & (Q | S)), tree-shaped."""
    nodes = {"~P": "~P", "~Q": "~Q", "~R": "~R", "~S": "~S", "P": "P", "Q": "Q", "R": "R",
             "S": "S", "u": "or", "v": "or", "m1": "or", "m2": "or", "r": "and", "z": "and",
             "top": "or"}
    return build("top", nodes, [("u", "~P"), ("u", "~Q"), ("v", "~R"), ("v", "~S"),
                                ("m1", "P"), ("m1", "R"), ("m2", "Q"), ("m2", "S"),
                                ("r", "u"), ("r", "v"), ("z", "m1"), ("z", "m2"),
                                ("top", "r"), ("top", "z")])


# ---------------------------------------------------------------------------
# the worked proof of shared_p, one primitive step per entry

def _p(**kw) -> RuleParams:
    return RuleParams.of(**kw)


E: frozenset = frozenset()

WORKED_STEPS: list[tuple[str, RuleParams]] = [
    ("deepening/and", _p(a="4", b="2", Gamma=E, Delta=E, Theta=E)),
    ("deepening/and", _p(a="4", b="3", Gamma={"2"}, Delta=E, Theta=E)),
    ("coupling", _p(a="2", b="Q", c="~Q", atom="Q", Theta={"4"})),
    ("coupling", _p(a="3", b="R", c="~R", atom="R", Theta={"4"})),
    ("lengthening/or", _p(a="4", b="1", Gamma={"2", "3"}, Theta=E, Omega=E)),
    ("pulldown", _p(a="2", b="4", c="1", Gamma={"Q"}, Delta=E, Pi={"~Q"}, Sigma={"3"}, Theta=E)),
    ("pulldown", _p(a="3", b="4", c="1", Gamma={"R"}, Delta={"~Q"}, Pi={"~R"}, Sigma={"2"},
                    Theta=E)),
    ("shortening/or", _p(a="Q", b="2", Gamma=E, Theta={"4"}, Omega=E)),
    ("shortening/or", _p(a="R", b="3", Gamma=E, Theta={"4"}, Omega=E)),
    ("lengthening/and", _p(a="~Q", b="2", Gamma=E, Theta={"1"}, Omega=E)),
    ("lengthening/and", _p(a="~R", b="3", Gamma=E, Theta={"1"}, Omega=E)),
    ("deepening/and", _p(a="2", b="5", Gamma={"~Q"}, Delta=E, Theta={"1"})),
    ("deepening/and", _p(a="3", b="6", Gamma={"~R"}, Delta=E, Theta={"1"})),
    ("redraw", None),  # identity re-layout; mapping filled in below
    ("globalization/and", _p(a="5", b="6", c="7", Gamma=E, Theta={"2"}, Omega={"3"})),
    ("coupling", _p(a="7", b="P", c="~P", atom="P", Theta={"2", "3"})),
    ("localization/or", _p(a="5", b="6", c="7", Gamma={"~P", "P"}, Theta={"2"}, Omega={"3"})),
    ("pulldown", _p(a="6", b="3", c="1", Gamma={"P"}, Delta={"2", "4"}, Pi={"~P"},
                    Sigma={"~R"}, Theta=E)),
    ("pulldown", _p(a="5", b="2", c="1", Gamma={"P"}, Delta={"~P", "3", "4"}, Pi={"~P"},
                    Sigma={"~Q"}, Theta=E)),
    # P still has the other parent here, so Omega is {5} and then {3}
    ("shortening/or", _p(a="P", b="6", Gamma=E, Theta={"3"}, Omega={"5"})),
    ("shortening/or", _p(a="P", b="5", Gamma=E, Theta={"2"}, Omega={"3"})),
]

# the last two steps with Omega left empty, as they are often written
WORKED_STEPS_EMPTY_OMEGA = {19: _p(a="P", b="6", Gamma=E, Theta={"3"}, Omega=E),
                            20: _p(a="P", b="5", Gamma=E, Theta={"2"}, Omega=E)}


def worked_proof() -> Derivation:
    """The 21-step proof of shared_p (up to node names), built by applying each step."""
    cur = Cirquent({"4": Gate(AND)}, {}, "4")
    cirqs, steps = [cur], []
    for rule, params in WORKED_STEPS:
        if params is None:
            params = RuleParams.of(mapping={n: n for n in cur.nodes})
        rid = RuleId.parse(rule)
        cur = apply_rule(cur, rid, params)
        cirqs.append(cur)
        steps.append(Step(rid, params))
    return Derivation(cirqs, steps)


WORKED_TARGET_NAMES = {"1": "r", "2": "a", "3": "b", "4": "c", "~P": "1", "~Q": "2", "P": "3",
                       "~R": "4", "Q": "5", "R": "6"}


# ---------------------------------------------------------------------------
# Blass's principle with merging in place of weakening

def blass_merge_derivation() -> Derivation:
    """A cl8-merge proof of blass(), node names matching blass()."""
    w = Builder(Cirquent({"r": Gate(AND)}, {}, "r"))
    for a, b, gamma in (("r", "x", ()), ("r", "y", ("x",)), ("x", "x1", ()), ("x", "x2", ("x1",)),
                        ("y", "y1", ()), ("y", "y2", ("y1",))):
        w.apply("deepening/and", a=a, b=b, Gamma=set(gamma), Delta=E,
                Theta=w.current.parents(a))
    for a, atom, parent in (("x1", "P", "x"), ("x2", "Q", "x"), ("y1", "R", "y"), ("y2", "S", "y")):
        w.apply("coupling", a=a, b=atom, c="~" + atom, atom=atom, Theta={parent})
    w.apply("lengthening/or", a="r", b="top", Gamma={"x", "y"}, Theta=E, Omega=E)
    w.apply("lengthening/or", a="x", b="u", Gamma={"x1", "x2"}, Theta={"r"}, Omega=E)
    w.apply("lengthening/or", a="y", b="v", Gamma={"y1", "y2"}, Theta={"r"}, Omega=E)
    for a, b, c, keep, move in (("x1", "x", "u", "P", "~P"), ("x2", "x", "u", "Q", "~Q"),
                                ("y1", "y", "v", "R", "~R"), ("y2", "y", "v", "S", "~S")):
        cur = w.current
        w.apply("pulldown", a=a, b=b, c=c, Gamma={keep}, Delta=cur.children(c) - {b}, Pi={move},
                Sigma=cur.children(b) - {a}, Theta=cur.parents(c))
    for a, gone in (("u", "x"), ("v", "y")):
        cur = w.current
        w.apply("pulldown", a=a, b="r", c="top", Gamma=cur.children(a) - {gone},
                Delta=cur.children("top") - {"r"}, Pi={gone}, Sigma=cur.children("r") - {a},
                Theta=E)
    w.apply("merging", a="m1", b="x1", c="y1", Gamma={"P"}, Delta={"R"}, Theta={"x"}, Omega={"y"})
    w.apply("merging", a="m2", b="x2", c="y2", Gamma={"Q"}, Delta={"S"}, Theta={"x"}, Omega={"y"})
    w.apply("globalization/and", a="x", b="y", c="z", Gamma={"m1", "m2"}, Theta={"top"},
            Omega={"top"})
    return w.derivation()


__all__ = ["shared_p", "split_p", "shared_p_instance", "split_p_instance", "balanced_pairs",
           "triple_pairs", "blass", "SHARED_P_WITNESS", "BALANCED_ALPHA", "BALANCED_BETA",
           "BALANCED_ALPHA_COUNTERMODEL", "WORKED_STEPS", "WORKED_STEPS_EMPTY_OMEGA",
           "worked_proof", "WORKED_TARGET_NAMES", "blass_merge_derivation"]
