"""Symbolic expressions: signed ordered products of jets of named functions.

A jet stands for an iterated partial derivative of either a named function
symbol or a map component (identified by its target coordinate).  Its index
list is ordered outermost-first: ``Jet(h, (a, b))`` means ``d_a(d_b(h))``.

Because odd derivatives and odd factors anticommute, both the index list of
a jet and the factor list of a term carry meaning only up to signs.  The
normal form fixed here sorts indices into the canonical coordinate order
and factors into a fixed global order, tracking a -1 per odd-odd adjacent
swap; expressions collect like terms on top of that.  Structural equality
of normal forms is the only equality the package ever tests.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, List, NamedTuple, Optional, Tuple, Union

from .algebra import Coordinate, Parity, coord_key, coord_latex, coord_text


class FunctionSymbol(NamedTuple):
    """An abstract smooth function of ``arity`` coordinates, of fixed parity."""

    name: str
    arity: int
    parity: Parity


Head = Union[FunctionSymbol, Coordinate]


class Jet(NamedTuple):
    """An iterated derivative of a function symbol or map component.

    ``indices`` is outermost-first: the first coordinate is the derivative
    applied last.  A Coordinate head names the map component of that target
    coordinate; a FunctionSymbol head names an abstract function.
    """

    head: Head
    indices: Tuple[Coordinate, ...] = ()


class Term(NamedTuple):
    coeff: Fraction
    factors: Tuple[Jet, ...]


def head_parity(head: Head) -> int:
    return int(head.parity)


def jet_parity(j: Jet) -> int:
    """Grade of a jet: head parity plus one per odd derivative index, mod 2."""
    p = head_parity(j.head)
    for c in j.indices:
        p ^= int(c.parity)
    return p


def term_parity(t: Term) -> int:
    p = 0
    for j in t.factors:
        p ^= jet_parity(j)
    return p


def jet_key(j: Jet) -> tuple:
    """Total order on jets used for the canonical factor order."""
    idx = tuple(coord_key(c) for c in j.indices)
    if isinstance(j.head, FunctionSymbol):
        return (1, (j.head.name, j.head.arity, int(j.head.parity)), idx)
    return (0, coord_key(j.head), idx)


def normalize_jet(j: Jet) -> Optional[Tuple[int, Jet]]:
    """Sort derivative indices into canonical order.

    Swapping two adjacent derivatives costs a sign only when both are odd,
    so the net sign is the parity of odd-odd inversions.  A repeated odd
    index makes the jet zero, reported as None.
    """
    odds = [c for c in j.indices if c.parity]
    if len(set(odds)) != len(odds):
        return None
    sign = 1
    for i in range(len(odds)):
        ki = coord_key(odds[i])
        for q in range(i + 1, len(odds)):
            if ki > coord_key(odds[q]):
                sign = -sign
    return sign, Jet(j.head, tuple(sorted(j.indices, key=coord_key)))


def normalize_term(t: Term) -> Optional[Term]:
    """Normalize each jet, then sort factors by ``jet_key`` with signs.

    Each adjacent swap of two odd factors flips the coefficient's sign.
    A term containing a zero jet, or two copies of the same odd jet (an
    odd element squares to zero), is zero and reported as None.
    """
    coeff = t.coeff
    jets: List[Jet] = []
    for j in t.factors:
        nj = normalize_jet(j)
        if nj is None:
            return None
        sign, canonical = nj
        if sign < 0:
            coeff = -coeff
        jets.append(canonical)
    keys = [jet_key(j) for j in jets]
    parities = [jet_parity(j) for j in jets]
    for i in range(1, len(jets)):
        pos = i
        while pos > 0 and keys[pos] < keys[pos - 1]:
            if parities[pos] & parities[pos - 1]:
                coeff = -coeff
            keys[pos - 1], keys[pos] = keys[pos], keys[pos - 1]
            parities[pos - 1], parities[pos] = parities[pos], parities[pos - 1]
            jets[pos - 1], jets[pos] = jets[pos], jets[pos - 1]
            pos -= 1
    for a, b, p in zip(jets, jets[1:], parities):
        if p and a == b:
            return None
    if not coeff:
        return None
    return Term(coeff, tuple(jets))


class Expression:
    """A normalized sum of terms; construct through :func:`normalize_terms`."""

    __slots__ = ("terms",)

    def __init__(self, terms: Tuple[Term, ...] = ()):
        self.terms = terms

    def __add__(self, other: "Expression") -> "Expression":
        return normalize_terms(self.terms + other.terms)

    def scale(self, c) -> "Expression":
        c = Fraction(c)
        if not c:
            return Expression()
        return Expression(tuple(Term(t.coeff * c, t.factors) for t in self.terms))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Expression):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self) -> str:
        return expr_text(self)

    def __repr__(self) -> str:
        return f"Expression({expr_text(self)})"


def normalize_terms(terms: Iterable[Term]) -> Expression:
    """Normalize a raw term list: canonical factors, like terms collected."""
    collected: dict = {}
    for t in terms:
        nt = normalize_term(t)
        if nt is None:
            continue
        c = collected.get(nt.factors, 0) + nt.coeff
        if c:
            collected[nt.factors] = c
        else:
            collected.pop(nt.factors, None)
    ordered = sorted(collected.items(), key=lambda kv: tuple(jet_key(j) for j in kv[0]))
    return Expression(tuple(Term(c, factors) for factors, c in ordered))


def expr_equal(e1: Expression, e2: Expression) -> bool:
    """Structural equality of normal forms."""
    return e1.terms == e2.terms


# -- rendering ---------------------------------------------------------------


def _head_text(head: Head) -> str:
    return head.name if isinstance(head, FunctionSymbol) else coord_text(head)


def jet_text(j: Jet) -> str:
    if not j.indices:
        return _head_text(j.head)
    order = len(j.indices)
    d = "d" if order == 1 else f"d^{order}"
    denom = " ".join("d" + coord_text(c) for c in j.indices)
    return f"{d} {_head_text(j.head)} / {denom}"


def term_text(t: Term) -> str:
    factors = " ".join(f"({jet_text(j)})" for j in t.factors)
    mag = abs(t.coeff)
    if not factors:
        return str(mag)
    if mag == 1:
        return factors
    return f"{mag} {factors}"


def expr_text(e: Expression) -> str:
    if not e.terms:
        return "0"
    pieces = []
    for t in e.terms:
        body = term_text(t)
        if not pieces:
            pieces.append(body if t.coeff > 0 else f"-{body}")
        else:
            pieces.append(f"{'+' if t.coeff > 0 else '-'} {body}")
    return " ".join(pieces)


def _head_latex(head: Head) -> str:
    return head.name if isinstance(head, FunctionSymbol) else coord_latex(head)


def jet_latex(j: Jet) -> str:
    if not j.indices:
        return _head_latex(j.head)
    order = len(j.indices)
    top = r"\partial" if order == 1 else rf"\partial^{{{order}}}"
    denom = r"\,".join(rf"\partial {coord_latex(c)}" for c in j.indices)
    return rf"\frac{{{top} {_head_latex(j.head)}}}{{{denom}}}"


def expr_latex(e: Expression) -> str:
    if not e.terms:
        return "0"
    pieces = []
    for t in e.terms:
        factors = r"\,".join(jet_latex(j) for j in t.factors)
        mag = abs(t.coeff)
        if not factors:
            body = str(mag) if mag.denominator == 1 else rf"\tfrac{{{mag.numerator}}}{{{mag.denominator}}}"
        elif mag == 1:
            body = factors
        else:
            coeff = str(mag) if mag.denominator == 1 else rf"\tfrac{{{mag.numerator}}}{{{mag.denominator}}}"
            body = rf"{coeff}\,{factors}"
        if not pieces:
            pieces.append(body if t.coeff > 0 else f"-{body}")
        else:
            pieces.append(f"{'+' if t.coeff > 0 else '-'} {body}")
    return " ".join(pieces)
