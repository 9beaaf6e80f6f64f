import random

import hypothesis.strategies as st

from maxshare.formula import (
    And, Const, Formula, Iff, Implies, Not, Or, Var, Xor,
)

_BINARY = (And, Or, Xor, Implies, Iff)


def random_formula(rng: random.Random, nvars: int, depth: int) -> Formula:
    if depth == 0 or rng.random() < 0.2:
        if rng.random() < 0.1:
            return Const(rng.random() < 0.5)
        return Var(rng.randint(1, nvars))
    shape = rng.randint(0, 5)
    if shape == 0:
        return Not(random_formula(rng, nvars, depth - 1))
    cls = _BINARY[shape - 1]
    return cls(random_formula(rng, nvars, depth - 1),
               random_formula(rng, nvars, depth - 1))


def equivalent_variant(rng: random.Random, f: Formula) -> Formula:
    """A structurally different formula with the same truth table,
    built by stacking a few semantics-preserving rewrites."""
    for _ in range(rng.randint(1, 3)):
        choice = rng.randint(0, 3)
        if choice == 0:
            f = Not(Not(f))
        elif choice == 1:
            f = And(f, f)
        elif choice == 2:
            f = Or(f, Const(False))
        else:
            f = Iff(f, Const(True))
    return f


def formulas(max_vars: int = 4, max_leaves: int = 12):
    leaf = st.one_of(
        st.builds(Const, st.booleans()),
        st.builds(Var, st.integers(min_value=1, max_value=max_vars)),
    )
    return st.recursive(
        leaf,
        lambda child: st.one_of(
            st.builds(Not, child),
            st.builds(And, child, child),
            st.builds(Or, child, child),
            st.builds(Xor, child, child),
            st.builds(Implies, child, child),
            st.builds(Iff, child, child),
        ),
        max_leaves=max_leaves,
    )
