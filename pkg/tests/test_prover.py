import random

import pytest
from hypothesis import given

from cirquent.core import AND, OR, Cirquent, Gate, canonical_key, negate, rename_atoms
from cirquent.formula import parse, to_cirquent
from cirquent.gallery import (WORKED_TARGET_NAMES, shared_p, shared_p_instance, split_p,
                              worked_proof)
from cirquent.generate import enumerate_cirquents, random_trade
from cirquent.prover import (ProverTrace, RankError, active_gates, dualize, expand_trade,
                             is_standard, lift_instance, prove, rank, standardize, trade_arity,
                             trade_conclusion, trade_params, trade_premise)
from cirquent.rules import Derivation, ParamViolation, check_derivation
from cirquent.semantics import NotValid, is_valid

from strategies import cirquents


def lone(kind) -> Cirquent:
    return Cirquent({"o": Gate(kind)}, {}, "o")


# standardization --------------------------------------------------------------

def test_standardize_flattens_nested_disjunction():
    c = to_cirquent(parse("P | (Q | R)"))
    s, d = standardize(c)
    assert len(d.steps) == 1 and d.steps[0].rule.name == "deepening"
    assert canonical_key(s) == canonical_key(to_cirquent(parse("|{P, Q, R}")))
    assert d.first == s and d.last == c
    assert check_derivation(d, "cl8") is None


def test_shared_p_is_already_standard():
    assert is_standard(shared_p())
    s, d = standardize(shared_p())
    assert s == shared_p() and not d.steps


@given(cirquents(max_ports=6, max_gates=5))
def test_standardize_postconditions(c):
    s, d = standardize(c)
    assert is_standard(s)
    assert d.first == s and d.last == c
    assert check_derivation(d, "cl8") is None
    assert standardize(s)[0] == s
    for g in s.gates():
        assert g == s.root or len(s.parents(g)) == 1
        assert len(s.children(g)) != 1
        assert not any(s.is_gate(x, s.label(g).kind) for x in s.children(g))


# rank -------------------------------------------------------------------------

def test_rank_examples():
    assert rank(to_cirquent(parse("P & Q")), 5) == 0
    assert rank(to_cirquent(parse("P | Q")), 5) == 1
    assert rank(to_cirquent(parse("(P & Q) | R")), 5) == 5
    assert active_gates(to_cirquent(parse("P & (Q | (R & S))"))) == ["g2"]
    with pytest.raises(ValueError):
        rank(lone(OR), 1)


# trade ------------------------------------------------------------------------

def test_trade_example_has_five_steps():
    concl = to_cirquent(parse("(P & Q) | R"))
    root = concl.root
    a = next(x for x in concl.children(root) if concl.is_gate(x, AND))
    r = next(x for x in concl.children(root) if concl.is_port(x))
    cs = sorted(concl.children(a))
    p = trade_params(a, root, cs, ["b1", "b2"], Pi={r}, Gammas=[(), ()],
                     Omegas=[(), ()])
    prem = trade_premise(concl, p)
    assert canonical_key(prem) == canonical_key(to_cirquent(parse("(P | [R]) & (Q | [R])")))
    d = expand_trade(concl, p)
    assert len(d.steps) == 5
    assert d.first == prem and d.last == concl
    assert check_derivation(d, "cl8") is None
    assert trade_conclusion(prem, p) == concl


def test_trade_with_no_conjuncts():
    concl = Cirquent({"b": Gate(OR), "a": Gate(AND), "t": Gate(AND), "x": Gate(AND)},
                     {"t": frozenset({"b", "x"}), "b": frozenset({"a", "x"})}, "t")
    p = trade_params("a", "b", [], [], Pi={"x"}, Theta={"t"})
    d = expand_trade(concl, p)
    assert len(d.steps) == 2 and check_derivation(d, "cl8") is None


def test_trade_rejects_wrong_neighbourhood():
    concl = to_cirquent(parse("(P & Q) | R"))
    a = next(x for x in concl.children(concl.root) if concl.is_gate(x, AND))
    p = trade_params(a, concl.root, sorted(concl.children(a)), ["b1", "b2"], Pi=set())
    with pytest.raises(ParamViolation):
        trade_premise(concl, p)


@pytest.mark.parametrize("seed", range(50))
def test_random_trades_expand(seed):
    rng = random.Random(seed)
    c, p = random_trade(rng, seed % 5, max_ports=5, max_gates=4)
    d = expand_trade(c, p)
    assert check_derivation(d, "cl8") is None
    assert d.first == trade_premise(c, p) and d.last == c
    n = trade_arity(p)
    assert len(d.steps) == (2 if n == 0 else 1 + 2 * n)


# proving ----------------------------------------------------------------------

def test_prove_the_axiom():
    d = prove(lone(AND))
    assert not d.steps and check_derivation(d, "cl8", proof=True) is None


def test_prove_shared_p():
    t = ProverTrace()
    d = prove(shared_p(), trace=t)
    assert check_derivation(d, "cl8", proof=True) is None and d.last == shared_p()
    assert all(x > y for x, y in zip(t.ranks, t.ranks[1:]))
    assert set(t.stages) >= {"J", "D", "E", "F", "G"}


def test_prove_split_p_fails():
    assert isinstance(prove(split_p()), NotValid)


def test_prove_without_conjunctive_gates():
    c = to_cirquent(parse("P | ~P"))
    d = prove(c)
    assert check_derivation(d, "cl8", proof=True) is None and d.last == c


def test_prove_up_to_four_nodes():
    for c in enumerate_cirquents(4):
        d = prove(c)
        assert isinstance(d, NotValid) != is_valid(c)
        if not isinstance(d, NotValid):
            assert check_derivation(d, "cl8", proof=True) is None and d.last == c


@given(cirquents(max_ports=7, max_gates=5))
def test_prove_random(c):
    t = ProverTrace()
    d = prove(c, trace=t)
    assert isinstance(d, NotValid) != is_valid(c)
    if not isinstance(d, NotValid):
        assert check_derivation(d, "cl8", proof=True) is None and d.last == c
        assert all(x > y for x, y in zip(t.ranks, t.ranks[1:]))


# lifting and duality ----------------------------------------------------------

def test_lift_worked_proof_to_one_atom():
    d = worked_proof()
    lifted = lift_instance(d, {"Q": "P", "R": "P"})
    assert check_derivation(lifted, "cl8", proof=True) is None
    from cirquent.core import rename_nodes
    assert rename_nodes(lifted.last, WORKED_TARGET_NAMES) == shared_p_instance()
    assert lift_instance(d, {}).cirquents == d.cirquents


@given(cirquents(max_ports=6, max_gates=4))
def test_lift_random(c):
    d = prove(c)
    if isinstance(d, NotValid):
        return
    r = {a: "P" for a in c.atoms()}
    lifted = lift_instance(d, r)
    assert check_derivation(lifted, "cl8", proof=True) is None
    assert lifted.last == rename_atoms(c, r)


def test_dualize_examples():
    z = dualize(Derivation([lone(AND)], []))
    assert z.cirquents == [lone(OR)] and not z.steps
    d = prove(shared_p())
    r = dualize(d)
    assert check_derivation(r, "cl8s", refutation=True) is None
    assert r.first == negate(shared_p())
    assert dualize(r).cirquents == d.cirquents
    assert [str(s) for s in dualize(r).steps] == [str(s) for s in d.steps]


def test_rank_error_is_an_error():
    assert issubclass(RankError, Exception)
