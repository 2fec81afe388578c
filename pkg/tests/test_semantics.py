import itertools
import random

import pytest
from hypothesis import given

from cirquent.core import AND, OR, Cirquent, Gate, Port, is_circuit, isomorphism, rename_atoms
from cirquent.formula import parse, to_cirquent, underline
from cirquent.gallery import (BALANCED_ALPHA, BALANCED_ALPHA_COUNTERMODEL, BALANCED_BETA,
                              SHARED_P_WITNESS, balanced_pairs, shared_p, shared_p_instance,
                              split_p, triple_pairs)
from cirquent.generate import enumerate_cirquents, random_circuit
from cirquent.semantics import (BadArrangement, BudgetExceeded, NotACircuit, NotValid,
                                NotValidating, arrangement, check_arrangement, classical_tautology,
                                decide_validity, evaluate, generalize_to_circuit, is_consistent,
                                is_valid, is_validating)

from strategies import cirquents


def lone(kind) -> Cirquent:
    return Cirquent({"o": Gate(kind)}, {}, "o")


def test_evaluate_examples():
    c = balanced_pairs()
    assert evaluate(c, BALANCED_ALPHA_COUNTERMODEL) is False
    assert evaluate(c, {p: True for p in c.ports()}) is True
    assert evaluate(lone(AND), {}) is True
    assert evaluate(lone(OR), {}) is False


def test_consistency_examples():
    f = BALANCED_ALPHA_COUNTERMODEL
    assert is_consistent(f, BALANCED_ALPHA)
    assert not is_consistent(f, BALANCED_BETA)
    assert is_consistent(f, arrangement([]))


def test_validating_examples():
    assert is_validating(balanced_pairs(), BALANCED_BETA)
    assert not is_validating(balanced_pairs(), BALANCED_ALPHA)
    assert is_validating(lone(AND), arrangement([]))
    assert is_validating(shared_p(), SHARED_P_WITNESS)


def test_decide_validity_examples():
    w = decide_validity(shared_p())
    assert not isinstance(w, NotValid) and is_validating(shared_p(), w)
    assert isinstance(decide_validity(split_p()), NotValid)
    assert isinstance(decide_validity(triple_pairs()), NotValid)
    assert is_valid(balanced_pairs()) and is_valid(shared_p_instance())


def test_countermodels_cover_maximal_arrangements():
    v = decide_validity(triple_pairs())
    assert v.countermodels
    for f in v.countermodels:
        assert evaluate(triple_pairs(), f) is False


def test_bad_arrangements_rejected():
    c = shared_p()
    with pytest.raises(BadArrangement):
        check_arrangement(c, arrangement([("1", "2")]))  # not opposite literals
    with pytest.raises(BadArrangement):
        check_arrangement(c, arrangement([("1", "3"), ("3", "1x")]))


def test_budget():
    with pytest.raises(BudgetExceeded):
        decide_validity(triple_pairs(), budget=4)


def test_classical_tautology_examples():
    f = parse("~P | (~Q & P) | (P & ~R) | (Q & R)")
    assert classical_tautology(to_cirquent(underline(f)))
    assert classical_tautology(to_cirquent(parse("P | ~P")))
    assert not classical_tautology(to_cirquent(parse("P | Q")))
    with pytest.raises(NotACircuit):
        classical_tautology(split_p())


def test_generalize_examples():
    c = shared_p_instance()
    g, r = generalize_to_circuit(c, SHARED_P_WITNESS)
    assert is_circuit(g) and rename_atoms(g, r) == c
    assert isomorphism(_atoms_erased(g), _atoms_erased(shared_p())) is not None
    assert classical_tautology(g)
    a, _ = generalize_to_circuit(lone(AND), arrangement([]))
    assert a == lone(AND)
    with pytest.raises(NotValidating):
        generalize_to_circuit(balanced_pairs(), BALANCED_ALPHA)


def _atoms_erased(c: Cirquent) -> Cirquent:
    # shape plus polarity; atom names vary between the two sides
    return Cirquent({n: Port("X", l.negated) if isinstance(l, Port) else l
                     for n, l in c.nodes.items()}, c.children_map, c.root)


# oracles ----------------------------------------------------------------------

def _matchings(c: Cirquent, ports: list[str]):
    if not ports:
        yield []
        return
    x, rest = ports[0], ports[1:]
    yield from _matchings(c, rest)
    for y in rest:
        if c.label(y) == c.label(x).opposite:
            for m in _matchings(c, [z for z in rest if z != y]):
                yield [(x, y)] + m


def oracle_valid(c: Cirquent, weak: bool = False) -> bool:
    """Brute force over every arrangement and every assignment."""
    ports = sorted(c.ports())
    fs = [dict(zip(ports, v)) for v in itertools.product((False, True), repeat=len(ports))]
    for m in _matchings(c, ports):
        ok = (lambda f: all(f[a] or f[b] for a, b in m)) if weak else \
             (lambda f: all(f[a] != f[b] for a, b in m))
        if all(evaluate(c, f) for f in fs if ok(f)):
            return True
    return False


def test_decider_matches_oracle_up_to_four_nodes():
    for c in enumerate_cirquents(4):
        v = is_valid(c)
        assert v == oracle_valid(c) == oracle_valid(c, weak=True), c


@given(cirquents(max_ports=6, max_gates=4))
def test_decider_matches_oracle_random(c):
    assert is_valid(c) == oracle_valid(c) == oracle_valid(c, weak=True)


@given(cirquents(max_ports=7, max_gates=5))
def test_monotone_evaluation(c):
    rng = random.Random(len(c))
    f = {p: rng.random() < 0.5 for p in c.ports()}
    for p in c.ports():
        if not f[p] and evaluate(c, f):
            assert evaluate(c, {**f, p: True})


@pytest.mark.parametrize("seed", range(100))
def test_circuit_validity_is_classical_truth(seed):
    c = random_circuit(random.Random(seed), max_ports=8, max_gates=6)
    assert is_valid(c) == classical_tautology(c)


def test_circuit_validity_is_classical_truth_up_to_five_nodes():
    for c in enumerate_cirquents(5, circuits_only=True):
        assert is_valid(c) == classical_tautology(c)


@given(cirquents(max_ports=6, max_gates=4))
def test_instance_closure_and_generalization(c):
    w = decide_validity(c)
    if isinstance(w, NotValid):
        return
    g, r = generalize_to_circuit(c, w)
    assert is_circuit(g) and rename_atoms(g, r) == c and is_validating(g, w)
    assert is_validating(rename_atoms(c, {a: "Z" for a in c.atoms()}), w)
