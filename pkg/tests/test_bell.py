import random
from fractions import Fraction
from itertools import product

import pytest

from supercalc import (
    EVEN,
    ODD,
    BellMultiIndex,
    Dims,
    FunctionSymbol,
    Jet,
    SuperPolynomial,
    Term,
    bell_combinatorial,
    bell_multiindex,
    bell_via_definition,
    coordinates,
    expr_equal,
    instantiate,
    normalize_terms,
    random_polynomial,
    x,
    xi,
)
from supercalc.algebra import SOURCE
from conftest import exp_nilpotent

F = FunctionSymbol("f", 4, EVEN)
D22 = Dims(2, 2)

# integer partition counts p(n) and Bell numbers B_n
P_N = {1: 1, 2: 2, 3: 3, 4: 5, 5: 7, 6: 11}
B_N = {1: 1, 2: 2, 3: 5, 4: 15, 5: 52, 6: 203}


def jet(*indices):
    return Jet(F, indices)


class TestSmallCases:
    def test_single_index(self):
        expected = normalize_terms([Term(Fraction(1), (jet(x(1)),))])
        assert expr_equal(bell_combinatorial((x(1),), F), expected)
        assert expr_equal(bell_via_definition((x(1),), F), expected)

    def test_two_even_indices(self):
        idx = (x(1), x(2))
        expected = normalize_terms(
            [
                Term(Fraction(1), (jet(x(2), x(1)),)),
                Term(Fraction(1), (jet(x(2)), jet(x(1)))),
            ]
        )
        assert expr_equal(bell_combinatorial(idx, F), expected)
        assert expr_equal(bell_via_definition(idx, F), expected)

    def test_two_odd_indices(self):
        idx = (xi(1), xi(2))
        expected = normalize_terms(
            [
                Term(Fraction(1), (jet(xi(2), xi(1)),)),
                Term(Fraction(1), (jet(xi(2)), jet(xi(1)))),
            ]
        )
        assert expr_equal(bell_combinatorial(idx, F), expected)
        assert expr_equal(bell_via_definition(idx, F), expected)

    def test_repeated_odd_index_vanishes(self):
        assert bell_combinatorial((xi(1), xi(1)), F).is_zero()
        assert bell_via_definition((xi(1), xi(1)), F).is_zero()


class TestEquivalence:
    def test_exhaustive_up_to_n3(self):
        coords = coordinates(D22, SOURCE)
        for n in (1, 2, 3):
            for idx in product(coords, repeat=n):
                assert expr_equal(bell_combinatorial(idx, F), bell_via_definition(idx, F))

    @pytest.mark.parametrize("seed", range(25))
    def test_concrete_against_conjugated_exponential(self, seed):
        """Instantiated jets must reproduce exp(-f) d..d exp(f) computed directly.

        The Grassmann-free part of f never leaves the exponent: its exp
        conjugates away, leaving twisted derivatives acting on the exact
        exponential of the nilpotent part."""
        rng = random.Random(seed)
        f_poly = random_polynomial(rng, D22, 3, EVEN, max_terms=4)
        coords = coordinates(D22, SOURCE)
        idx = tuple(rng.choice(coords) for _ in range(rng.randint(1, 4)))
        symbolic = instantiate(bell_via_definition(idx, F), {F: f_poly}, D22)
        body, soul = f_poly.split_body_soul()
        g = exp_nilpotent(soul)
        for a in idx:
            twist = body.partial(a) * g if not a.parity else SuperPolynomial.zero(D22)
            g = twist + g.partial(a)
        direct = exp_nilpotent(-soul) * g
        assert symbolic == direct


class TestClassicalSpecialization:
    @pytest.mark.parametrize("n", sorted(P_N))
    def test_single_even_variable(self, n):
        f1 = FunctionSymbol("f", 1, EVEN)
        e = bell_multiindex(BellMultiIndex((n,), ()), f1)
        assert len(e.terms) == P_N[n]
        assert sum(t.coeff for t in e.terms) == B_N[n]

    def test_second_derivative_shape(self):
        f1 = FunctionSymbol("f", 1, EVEN)
        e = bell_multiindex(BellMultiIndex((2,), ()), f1)
        expected = normalize_terms(
            [
                Term(Fraction(1), (Jet(f1, (x(1), x(1))),)),
                Term(Fraction(1), (Jet(f1, (x(1),)), Jet(f1, (x(1),)))),
            ]
        )
        assert expr_equal(e, expected)


class TestMultiIndex:
    def test_single_even_order(self):
        f1 = FunctionSymbol("f", 1, EVEN)
        e = bell_multiindex(BellMultiIndex((1,), ()), f1)
        assert expr_equal(e, normalize_terms([Term(Fraction(1), (Jet(f1, (x(1),)),))]))

    def test_rightmost_operator_is_innermost(self):
        assert BellMultiIndex((0, 0), (1, 1)).index_list() == (xi(2), xi(1))
        assert BellMultiIndex((2, 1), ()).index_list() == (x(2), x(1), x(1))

    def test_matches_index_list_form(self):
        f2 = FunctionSymbol("f", 4, EVEN)
        mi = BellMultiIndex((1, 0), (0, 1))
        assert expr_equal(bell_multiindex(mi, f2), bell_via_definition((xi(2), x(1)), f2))

    def test_odd_order_above_one_rejected(self):
        with pytest.raises(ValueError):
            bell_multiindex(BellMultiIndex((0,), (2,)), F)

    def test_empty_multiindex_rejected(self):
        with pytest.raises(ValueError):
            bell_multiindex(BellMultiIndex((0, 0), (0,)), F)

    def test_negative_order_rejected(self):
        with pytest.raises(ValueError):
            bell_multiindex(BellMultiIndex((-1,), ()), F)


class TestParityGuard:
    def test_odd_function_rejected(self):
        g = FunctionSymbol("g", 4, ODD)
        with pytest.raises(ValueError):
            bell_combinatorial((x(1),), g)
        with pytest.raises(ValueError):
            bell_via_definition((x(1),), g)
