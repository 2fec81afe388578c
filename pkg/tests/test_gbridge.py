import pytest
from hypothesis import given

from cirquent.formula import Disj, negation, parse, to_cirquent, underline
from cirquent.gbridge import (GpfError, GProof, GProofInvalid, GTrace, NotSingleton,
                              PremiseMismatch, Unprovable, check_g_proof, format_g_proof,
                              parse_g_proof, prove_g, translate_g_to_cl8)
from cirquent.rules import check_derivation

from strategies import formulas


def seq(*texts):
    return frozenset(parse(t) for t in texts)


def test_axiom_leaf():
    assert check_g_proof(GProof(seq("~P", "P"), "axiom")) is None
    bad = check_g_proof(GProof(seq("P", "Q"), "axiom"))
    assert bad is not None and bad[0] == ()


def test_or_step():
    leaf = GProof(seq("P", "~P"), "axiom")
    assert check_g_proof(GProof(seq("P | ~P"), "or", parse("P | ~P"), (leaf,))) is None


def test_and_step_with_different_contexts():
    left = GProof(seq("P", "~P"), "axiom")
    right = GProof(seq("Q", "~Q", "R"), "axiom")
    p = GProof(seq("P & Q", "~P", "~Q"), "and", parse("P & Q"), (left, right))
    path, err = check_g_proof(p)
    assert isinstance(err, PremiseMismatch)


def test_prove_g_examples():
    p = prove_g(parse("P | ~P"))
    assert p.node_count() == 2 and check_g_proof(p) is None
    q = prove_g(parse("~P | ~Q | (P & Q)"))
    assert check_g_proof(q) is None
    assert isinstance(prove_g(parse("P")), Unprovable)


@pytest.mark.parametrize("text", ["P | ~P", "(P | ~P) & (Q | ~Q)", "~P | ~Q | (P & Q)",
                                  "~P | (~Q & P) | (P & ~R) | (Q & R)", "~P | Q | P"])
def test_translation_examples(text):
    f = parse(text)
    t = GTrace()
    d = translate_g_to_cl8(prove_g(f), t)
    assert check_derivation(d, "cl8", proof=True) is None
    assert d.last == to_cirquent(underline(f))
    assert t.assoc


def test_translation_without_conjunction_uses_no_trade():
    d = translate_g_to_cl8(prove_g(parse("~P | Q | P")))
    assert not any(s.rule.name == "pulldown" for s in d.steps)


def test_and_step_creates_one_conjunct_per_tree_node():
    t = GTrace()
    p = prove_g(parse("(P | ~P) & (Q | ~Q)"))
    translate_g_to_cl8(p, t)
    assert len(t.assoc) == p.node_count()


def test_translation_needs_a_single_formula():
    with pytest.raises(NotSingleton):
        translate_g_to_cl8(GProof(seq("P", "~P"), "axiom"))


def test_translation_rejects_non_strict_steps():
    leaf = GProof(seq("P | ~P", "P", "~P"), "axiom")
    with pytest.raises(GProofInvalid):
        translate_g_to_cl8(GProof(seq("P | ~P"), "or", parse("P | ~P"), (leaf,)))


@given(formulas(atoms="PQR", over=False, max_leaves=5, constants=False))
def test_random_tautologies_translate(g):
    f = Disj((negation(g), g))
    p = prove_g(f)
    assert check_g_proof(p) is None
    d = translate_g_to_cl8(p)
    assert check_derivation(d, "cl8", proof=True) is None
    assert d.last == to_cirquent(underline(f))
    assert [str(s) for s in translate_g_to_cl8(p).steps] == [str(s) for s in d.steps]


def test_gpf_round_trip():
    text = "(and (P|~P Q|~Q) (or (P ~P) (axiom P ~P)) (or (Q ~Q) (axiom Q ~Q)))"
    p = parse_g_proof(text)
    assert check_g_proof(p) is None
    assert p.sequent == seq("(P | ~P) & (Q | ~Q)")
    assert parse_g_proof(format_g_proof(p)) == p
    q = prove_g(parse("~P | (~Q & P) | (P & ~R) | (Q & R)"))
    assert parse_g_proof(format_g_proof(q)) == q


@pytest.mark.parametrize("text", ["(axiom P ~P", "(foo P)", "(or (P) (axiom P))", "() ()"])
def test_gpf_errors(text):
    with pytest.raises(GpfError):
        parse_g_proof(text)


def test_constants_are_outside_g():
    with pytest.raises(GProofInvalid):
        prove_g(parse("#f | #t"))
