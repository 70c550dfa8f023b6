from fractions import Fraction

import hypothesis.strategies as st
from hypothesis import given

from supercalc import (
    EVEN,
    ODD,
    Expression,
    FunctionSymbol,
    Jet,
    SuperPolynomial,
    Term,
    expr_equal,
    expr_latex,
    expr_text,
    instantiate,
    jet_parity,
    normalize_jet,
    normalize_term,
    normalize_terms,
    x,
    xi,
    y,
    zeta,
)
from supercalc.symbolic import jet_key, jet_text
from conftest import DIMS22, coefficients, super_polynomials

F_EVEN = FunctionSymbol("f", 4, EVEN)
G_ODD = FunctionSymbol("g", 4, ODD)


class TestNormalizeJet:
    def test_odd_swap_gives_sign(self):
        sign, j = normalize_jet(Jet(F_EVEN, (xi(2), xi(1))))
        assert sign == -1 and j.indices == (xi(1), xi(2))

    def test_even_indices_sort_freely(self):
        sign, j = normalize_jet(Jet(F_EVEN, (x(2), x(1))))
        assert sign == 1 and j.indices == (x(1), x(2))

    def test_even_before_odd(self):
        sign, j = normalize_jet(Jet(F_EVEN, (xi(1), x(1))))
        assert sign == 1 and j.indices == (x(1), xi(1))

    def test_repeated_odd_index_is_zero(self):
        assert normalize_jet(Jet(F_EVEN, (xi(1), xi(1)))) is None
        assert normalize_jet(Jet(F_EVEN, (xi(1), x(1), xi(1)))) is None

    def test_repeated_even_index_is_fine(self):
        sign, j = normalize_jet(Jet(F_EVEN, (x(1), x(1))))
        assert sign == 1 and j.indices == (x(1), x(1))

    def test_three_odd_full_reversal(self):
        # (xi3, xi2, xi1) -> 3 inversions
        sign, j = normalize_jet(Jet(F_EVEN, (xi(2), x(2), xi(1))))
        assert sign == -1 and j.indices == (x(2), xi(1), xi(2))


class TestNormalizeTerm:
    def test_odd_odd_swap(self):
        ja = Jet(G_ODD, (x(1),))  # odd jet
        jb = Jet(F_EVEN, (xi(1),))  # odd jet, sorts before ja (name f < g)
        t = normalize_term(Term(Fraction(1), (ja, jb)))
        assert t == Term(Fraction(-1), (jb, ja))

    def test_even_factor_moves_freely(self):
        ja = Jet(G_ODD, (xi(1),))  # even jet
        jb = Jet(F_EVEN, ())
        t = normalize_term(Term(Fraction(1), (ja, jb)))
        assert t == Term(Fraction(1), (jb, ja))

    def test_zero_jet_kills_term(self):
        t = Term(Fraction(1), (Jet(F_EVEN, (xi(1), xi(1))),))
        assert normalize_term(t) is None

    def test_identical_odd_jets_square_to_zero(self):
        j = Jet(G_ODD, ())
        assert normalize_term(Term(Fraction(1), (j, j))) is None

    def test_identical_even_jets_survive(self):
        j = Jet(F_EVEN, (x(1),))
        t = normalize_term(Term(Fraction(2), (j, j)))
        assert t == Term(Fraction(2), (j, j))


class TestExpressionEquality:
    def test_reflexive(self):
        e = normalize_terms([Term(Fraction(1), (Jet(F_EVEN, (x(1),)),))])
        assert expr_equal(e, e)

    def test_anticommuted_derivative_pair(self):
        e1 = normalize_terms([Term(Fraction(1), (Jet(F_EVEN, (xi(1), xi(2))),))])
        e2 = normalize_terms([Term(Fraction(-1), (Jet(F_EVEN, (xi(2), xi(1))),))])
        assert expr_equal(e1, e2)

    def test_extra_term_breaks_equality(self):
        e1 = normalize_terms([Term(Fraction(1), (Jet(F_EVEN, (x(1),)),))])
        e2 = e1 + normalize_terms([Term(Fraction(1), (Jet(F_EVEN, (x(2),)),))])
        assert not expr_equal(e1, e2)

    def test_collection(self):
        t = Term(Fraction(1), (Jet(F_EVEN, (x(1),)),))
        assert normalize_terms([t, t]) == normalize_terms([Term(Fraction(2), t.factors)])
        assert normalize_terms([t, Term(Fraction(-1), t.factors)]).is_zero()


# -- strategies for raw symbolic data -------------------------------------------

_HEADS = [FunctionSymbol("f", 4, EVEN), FunctionSymbol("g", 4, ODD), y(1), zeta(1)]
_COORDS = [x(1), x(2), xi(1), xi(2)]


def jets():
    return st.tuples(st.sampled_from(_HEADS), st.lists(st.sampled_from(_COORDS), max_size=2).map(tuple)).map(
        lambda hi: Jet(*hi)
    )


def raw_terms():
    return st.tuples(coefficients(), st.lists(jets(), max_size=4).map(tuple)).map(lambda ct: Term(*ct))


@given(st.lists(raw_terms(), max_size=5))
def test_normalize_is_idempotent(terms):
    e = normalize_terms(terms)
    assert normalize_terms(e.terms) == e
    for t in e.terms:
        assert normalize_term(t) == t


@given(raw_terms())
def test_sign_coherence_against_bubble_sort(t):
    """Any sequence of adjacent supercommutations must reach the same normal form."""
    jets_signed = []
    coeff = t.coeff
    for j in t.factors:
        nj = normalize_jet(j)
        if nj is None:
            assert normalize_term(t) is None
            return
        s, cj = nj
        coeff *= s
        jets_signed.append(cj)
    # plain bubble sort, a different transposition sequence than insertion sort
    items = list(jets_signed)
    changed = True
    while changed:
        changed = False
        for i in range(len(items) - 1):
            if jet_key(items[i + 1]) < jet_key(items[i]):
                if jet_parity(items[i]) & jet_parity(items[i + 1]):
                    coeff = -coeff
                items[i], items[i + 1] = items[i + 1], items[i]
                changed = True
    expected = None
    for a, b in zip(items, items[1:]):
        if a == b and jet_parity(a):
            expected = None
            break
    else:
        expected = Term(coeff, tuple(items)) if coeff else None
    assert normalize_term(t) == expected


@given(
    st.lists(raw_terms(), max_size=4),
    super_polynomials(parity=EVEN),
    super_polynomials(parity=ODD),
    super_polynomials(parity=EVEN),
    super_polynomials(parity=ODD),
)
def test_instantiation_commutes_with_normalization(terms, pf, pg, py1, pz1):
    """Replacing jets by iterated partial derivatives of concrete polynomials
    must give the same polynomial before and after normalization."""
    bindings = {_HEADS[0]: pf, _HEADS[1]: pg, _HEADS[2]: py1, _HEADS[3]: pz1}
    raw = instantiate(Expression(tuple(terms)), bindings, DIMS22)
    normalized = instantiate(normalize_terms(terms), bindings, DIMS22)
    assert raw == normalized


def test_rendering():
    j = Jet(y(1), (x(2), xi(1)))
    assert jet_text(j) == "d^2 y1 / dx2 dxi1"
    e = normalize_terms(
        [
            Term(Fraction(-3, 2), (j, Jet(F_EVEN, (y(1),)))),
            Term(Fraction(1), ()),
        ]
    )
    assert expr_text(e) == "1 - 3/2 (d^2 y1 / dx2 dxi1) (d f / dy1)"
    assert expr_latex(e) == (
        r"1 - \tfrac{3}{2}\,\frac{\partial^{2} y^{1}}{\partial x^{2}\,\partial \xi^{1}}"
        r"\,\frac{\partial f}{\partial y^{1}}"
    )
    assert expr_text(Expression()) == "0"
