import itertools

import pytest
from hypothesis import given

from cirquent.core import (AND, AXIOM, COAXIOM, OR, Cirquent, Gate, InvalidCirquent, Port, build,
                           canonical_key, canonical_names, check_cirquent, delete_orphans,
                           fresh_name, is_circuit, is_single_gate, isomorphism, negate,
                           rename_atoms, rename_nodes, validate_cirquent)
from cirquent.gallery import balanced_pairs, shared_p, shared_p_instance, split_p, split_p_instance
from cirquent.generate import enumerate_cirquents

from strategies import cirquents


def codes(violations):
    return {v.kind for v in violations}


def test_twelve_node_example_is_valid():
    # 4 ports under 8 gates with sharing at several levels
    c = build("r", {"p": "P", "q": "~P", "s": "Q", "t": "~Q", "g1": "or", "g2": "and",
                    "g3": "or", "g4": "and", "g5": "or", "g6": "and", "g7": "or", "r": "and"},
              [("g1", "p"), ("g1", "q"), ("g2", "q"), ("g2", "s"), ("g3", "s"), ("g3", "t"),
               ("g4", "g1"), ("g4", "g2"), ("g5", "g2"), ("g5", "g3"), ("g6", "g4"),
               ("g6", "g5"), ("g7", "g5"), ("g7", "t"), ("r", "g6"), ("r", "g7")])
    assert len(c) == 12 and len(c.ports()) == 4


def test_axiom_is_a_cirquent():
    assert validate_cirquent({"r": Gate(AND)}, [], "r") == AXIOM


@pytest.mark.parametrize("nodes,edges,root,code", [
    ({"r": Gate(AND), "p": Port("P"), "q": Port("Q")}, [("r", "p"), ("p", "q")], "r",
     "PortHasChild"),
    ({"r": Gate(AND), "a": Gate(OR)}, [("r", "a"), ("a", "r")], "r", "CycleDetected"),
    ({"r": Gate(AND), "a": Gate(OR)}, [], "r", "UnreachableNode"),
    ({"r": Gate(AND)}, [("r", "x")], "r", "DanglingEdge"),
    ({"r": Gate(AND)}, [], "z", "MissingRoot"),
])
def test_each_invariant_is_reported(nodes, edges, root, code):
    assert code in codes(check_cirquent(nodes, edges, root))
    with pytest.raises(InvalidCirquent):
        validate_cirquent(nodes, edges, root)


def test_all_violations_are_listed():
    found = check_cirquent({"r": Gate(AND), "p": Port("P"), "a": Gate(OR)},
                           [("r", "p"), ("p", "a"), ("r", "missing")], "r")
    assert {"PortHasChild", "DanglingEdge"} <= codes(found)


def test_circuits():
    assert is_circuit(shared_p())
    assert not is_circuit(split_p())
    assert is_circuit(AXIOM)


def test_negate_flips_everything():
    assert negate(AXIOM) == COAXIOM
    c = build("r", {"r": "or", "p": "P", "q": "~P"}, [("r", "p"), ("r", "q")])
    n = negate(c)
    assert n.label("r") == Gate(AND) and n.label("p") == Port("P", True)
    assert n.label("q") == Port("P")
    assert negate(negate(balanced_pairs())) == balanced_pairs()


@given(cirquents())
def test_negate_is_an_involution(c):
    assert negate(negate(c)) == c
    assert negate(c).edges == c.edges


def test_rename_atoms():
    to_p = {"Q": "P", "R": "P"}
    assert rename_atoms(shared_p(), to_p) == shared_p_instance()
    assert rename_atoms(split_p(), to_p) == split_p_instance()
    assert rename_atoms(shared_p(), {}) == shared_p()
    c = build("r", {"r": "and", "x": "P", "y": "Q"}, [("r", "x"), ("r", "y")])
    d = rename_atoms(c, {"P": "Q"})
    assert d.label("x") == d.label("y") == Port("Q") and len(d.ports()) == 2


@given(cirquents())
def test_rename_keeps_shape(c):
    d = rename_atoms(c, {a: "Z" for a in c.atoms()})
    assert d.edges == c.edges and d.root == c.root
    assert all(d.label(g) == c.label(g) for g in c.gates())


def test_canonical_key_examples():
    f = balanced_pairs()
    renamed = rename_nodes(f, {n: f"x{n}" for n in f.nodes})
    assert canonical_key(f) == canonical_key(renamed)
    assert isomorphism(f, renamed) is not None
    assert canonical_key(shared_p()) != canonical_key(split_p())


def _brute_isomorphic(a: Cirquent, b: Cirquent) -> bool:
    if len(a) != len(b) or a.edge_count() != b.edge_count():
        return False
    an, bn = sorted(a.nodes), sorted(b.nodes)
    for perm in itertools.permutations(bn):
        m = dict(zip(an, perm))
        if m[a.root] != b.root:
            continue
        if all(a.label(x) == b.label(m[x]) for x in an) and \
                {(m[p], m[x]) for p, x in a.edges} == b.edges:
            return True
    return False


def test_canonical_key_matches_brute_force_up_to_four_nodes():
    # one representative per class plus a relabelled copy of each
    pool = list(enumerate_cirquents(4))
    pool += [rename_nodes(c, {n: f"z{n}" for n in c.nodes}) for c in pool[::7]]
    by_size: dict = {}
    for c in pool:
        by_size.setdefault((len(c), c.edge_count()), []).append(c)
    for group in by_size.values():
        for a, b in itertools.combinations(group, 2):
            assert (canonical_key(a) == canonical_key(b)) == _brute_isomorphic(a, b)


def test_canonical_names_round_trip():
    c = shared_p()
    assert isomorphism(c, canonical_names(c)) is not None


def test_delete_orphans_cascades():
    # weakening example: removing the arc 1->4 drops 4 and then the R port
    nodes = {"6": Gate(AND), "1": Gate(OR), "2": Port("P"), "3": Port("P", True),
             "4": Gate(AND), "5": Gate(OR), "R": Port("R"), "Q": Port("Q"), "nQ": Port("Q", True)}
    edges = [("6", "1"), ("6", "5"), ("1", "2"), ("1", "3"), ("4", "R"), ("4", "Q"),
             ("5", "Q"), ("5", "nQ")]
    out = delete_orphans(nodes, edges, "6")
    assert "4" not in out and "R" not in out and "Q" in out


def test_delete_orphans_no_change():
    c = shared_p()
    assert delete_orphans(c.nodes, c.edges, c.root) == c


def test_single_gate_predicate():
    assert is_single_gate(AXIOM, AND) and not is_single_gate(AXIOM, OR)


def test_fresh_names():
    assert fresh_name("b", {"b", "b#1"}) == "b#2"
    assert fresh_name("b#3", set()) == "b#1"
