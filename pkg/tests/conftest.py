"""Shared strategies and helpers for the test suite."""

from fractions import Fraction
from math import factorial

import hypothesis.strategies as st

from supercalc import Dims, SOURCE, SuperPolynomial, coordinates

DIMS22 = Dims(2, 2)


def odd_monomials_of(dims, parity=None):
    monos = [tuple(g for g in range(1, dims.odd + 1) if mask >> (g - 1) & 1) for mask in range(1 << dims.odd)]
    if parity is not None:
        monos = [m for m in monos if len(m) & 1 == int(parity)]
    return monos


def coefficients():
    return st.fractions(min_value=-4, max_value=4, max_denominator=3).filter(bool)


@st.composite
def super_polynomials(draw, dims=DIMS22, parity=None, max_terms=4, max_exp=2):
    """Random polynomial over ``dims``; ``parity`` restricts the Grassmann grade."""
    monos = odd_monomials_of(dims, parity)
    exp_strategy = st.tuples(*[st.integers(0, max_exp) for _ in range(dims.even)])
    raw = draw(st.lists(st.tuples(exp_strategy, st.sampled_from(monos), coefficients()), max_size=max_terms))
    acc = {}
    for exps, odd, coeff in raw:
        even = tuple((i + 1, e) for i, e in enumerate(exps) if e)
        acc[(even, odd)] = acc.get((even, odd), 0) + coeff
    return SuperPolynomial(dims, acc)


def source_coords(dims=DIMS22):
    return st.sampled_from(coordinates(dims, SOURCE))


def index_lists(dims=DIMS22, min_n=1, max_n=3):
    return st.lists(source_coords(dims), min_size=min_n, max_size=max_n).map(tuple)


def exp_nilpotent(p: SuperPolynomial) -> SuperPolynomial:
    """Exact exponential of a nilpotent polynomial (terminating series)."""
    result = SuperPolynomial.constant(p.dims, 1)
    power = SuperPolynomial.constant(p.dims, 1)
    k = 1
    while True:
        power = power * p
        if power.is_zero():
            return result
        result = result + power * Fraction(1, factorial(k))
        k += 1
