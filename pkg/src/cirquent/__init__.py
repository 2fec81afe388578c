"""Cirquents: shared-node Boolean circuits, the CL8 rule system, resource semantics,
a complete prover, a G-to-CL8 translation and polynomial pigeonhole proofs."""

from .builder import Builder
from .core import (AND, AXIOM, COAXIOM, OR, Cirquent, CirquentError, Gate, InvalidCirquent, Kind,
                   Port, axiom, build, canonical_form, canonical_key, canonical_names, is_circuit,
                   is_single_gate, isomorphism, negate, rename_atoms, rename_nodes)
from .formula import (Conj, Disj, Lit, parse, parse_formula, render, to_cirquent, underline)
from .generate import enumerate_cirquents, random_circuit, random_cirquent, random_trade
from .gallery import blass, blass_merge_derivation, shared_p, split_p, worked_proof
from .gbridge import (GProof, Unprovable, check_g_proof, format_g_proof, parse_g_proof, prove_g,
                      translate_g_to_cl8)
from .io import format_cirquent, format_derivation, parse_cirquent, parse_derivation
from .php import build_defs, build_php, php_proof, size_report
from .prover import dualize, expand_trade, prove, rank, standardize
from .rules import (PROFILES, Derivation, RuleParams, Step, apply_rule, check_derivation,
                    check_step, enumerate_params, is_i_analytic_step)
from .semantics import (BudgetExceeded, NotValid, classical_tautology, decide_validity, evaluate,
                        is_valid, is_validating)

__version__ = "0.1.0"
