"""Hypothesis strategies shared by the test modules."""

import random

from hypothesis import strategies as st

from cirquent.formula import Conj, Disj, Lit
from cirquent.generate import random_cirquent


@st.composite
def cirquents(draw, max_ports=6, max_gates=5, circuit=False):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_cirquent(random.Random(seed), max_ports, max_gates, circuit=circuit)


def literals(atoms="PQRS", over=False):
    return st.builds(Lit, st.sampled_from(atoms), st.booleans(),
                     st.just(False) if not over else st.booleans())


def formulas(atoms="PQRS", over=False, max_leaves=12, constants=True):
    """Formulas in desugared shape: connectives have 0 or at least 2 children.

    With constants=False every connective has at least two children.
    """
    flag = st.booleans() if over else st.just(False)

    def extend(children):
        kids = st.lists(children, min_size=2, max_size=4).map(tuple)
        if constants:
            kids = st.one_of(st.just(()), kids)
        return st.one_of(st.builds(Conj, kids, flag), st.builds(Disj, kids, flag))

    return st.recursive(literals(atoms, over), extend, max_leaves=max_leaves)
