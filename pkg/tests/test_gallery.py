import pytest

from cirquent.core import canonical_key, rename_nodes
from cirquent.formula import parse, to_cirquent
from cirquent.gallery import (BALANCED_ALPHA, BALANCED_ALPHA_COUNTERMODEL, BALANCED_BETA,
                              SHARED_P_WITNESS, WORKED_STEPS, WORKED_STEPS_EMPTY_OMEGA,
                              WORKED_TARGET_NAMES, balanced_pairs, blass, blass_merge_derivation,
                              shared_p, shared_p_instance, split_p, split_p_instance,
                              triple_pairs, worked_proof)
from cirquent.rules import Derivation, Step, check_derivation
from cirquent.semantics import evaluate, is_valid, is_validating


def test_shapes_match_formulas():
    assert canonical_key(blass()) == canonical_key(
        to_cirquent(parse("((~P | ~Q) & (~R | ~S)) | ((P | R) & (Q | S))")))
    assert canonical_key(split_p()) == canonical_key(
        to_cirquent(parse("~P | (~Q & P) | (P & ~R) | (Q & R)")))
    assert len(triple_pairs().ports()) == 12


@pytest.mark.parametrize("make,valid", [(shared_p, True), (split_p, False),
                                        (shared_p_instance, True), (split_p_instance, False),
                                        (balanced_pairs, True), (triple_pairs, False),
                                        (blass, True)])
def test_verdicts(make, valid):
    assert is_valid(make()) is valid


def test_witnesses():
    assert is_validating(shared_p(), SHARED_P_WITNESS)
    assert is_validating(balanced_pairs(), BALANCED_BETA)
    assert not is_validating(balanced_pairs(), BALANCED_ALPHA)
    assert not evaluate(balanced_pairs(), BALANCED_ALPHA_COUNTERMODEL)


def test_worked_proof_ends_at_shared_p():
    d = worked_proof()
    assert len(d.steps) == len(WORKED_STEPS) == 21
    assert rename_nodes(d.last, WORKED_TARGET_NAMES) == shared_p()


def test_empty_omega_variant_fails_at_its_first_changed_step():
    d = worked_proof()
    steps = list(d.steps)
    for i, p in WORKED_STEPS_EMPTY_OMEGA.items():
        steps[i] = Step(steps[i].rule, p)
    fail = check_derivation(Derivation(d.cirquents, steps), "cl8", proof=True)
    assert fail is not None and fail.index == min(WORKED_STEPS_EMPTY_OMEGA)


def test_blass_with_merging():
    d = blass_merge_derivation()
    assert check_derivation(d, "cl8-merge", proof=True) is None
    assert d.last == blass()
    assert {s.rule.name for s in d.steps} >= {"merging"}
    assert "weakening" not in {s.rule.name for s in d.steps}
