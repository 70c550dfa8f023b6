"""Exact arithmetic in a supercommutative polynomial algebra.

Elements are finite sums ``c * x1^e1 .. xn^en * xi_a xi_b ..`` where the
``x`` coordinates commute, the ``xi`` generators anticommute
(``xi_a xi_b = -xi_b xi_a``, hence ``xi_a^2 = 0``) and every coefficient
``c`` is a ``fractions.Fraction``.  All equality checks in this package are
bit-exact; there are no tolerances anywhere.

A Grassmann monomial is stored with strictly increasing generator ordinals.
The sign of sorting a product into that form is absorbed into the
coefficient, which is an equivalent, canonical stand-in for keeping
antisymmetric coefficient arrays.
"""

from __future__ import annotations

from enum import IntEnum
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple, Optional, Tuple, Union


class Parity(IntEnum):
    """Z2 grade: EVEN elements commute with everything, ODD ones anticommute."""

    EVEN = 0
    ODD = 1


EVEN = Parity.EVEN
ODD = Parity.ODD

SOURCE = "source"
TARGET = "target"

_SPACE_RANK = {SOURCE: 0, TARGET: 1}


class Coordinate(NamedTuple):
    """A single coordinate of a superspace, identified up to its space tag.

    ``ordinal`` is 1-based within the coordinate's parity sector: the
    commuting x2 and the anticommuting xi2 both have ordinal 2.
    """

    space: str
    parity: Parity
    ordinal: int


def coord_key(c: Coordinate) -> Tuple[int, int, int]:
    """Canonical total order on coordinates: even before odd, then by ordinal."""
    return (int(c.parity), c.ordinal, _SPACE_RANK[c.space])


def x(k: int) -> Coordinate:
    """The k-th commuting coordinate of the source space."""
    return Coordinate(SOURCE, EVEN, k)


def xi(k: int) -> Coordinate:
    """The k-th anticommuting generator of the source space."""
    return Coordinate(SOURCE, ODD, k)


def y(k: int) -> Coordinate:
    """The k-th commuting coordinate of the target space."""
    return Coordinate(TARGET, EVEN, k)


def zeta(k: int) -> Coordinate:
    """The k-th anticommuting generator of the target space."""
    return Coordinate(TARGET, ODD, k)


_TEXT_NAMES = {(SOURCE, EVEN): "x", (SOURCE, ODD): "xi", (TARGET, EVEN): "y", (TARGET, ODD): "zeta"}
_LATEX_NAMES = {(SOURCE, EVEN): "x", (SOURCE, ODD): r"\xi", (TARGET, EVEN): "y", (TARGET, ODD): r"\zeta"}


def coord_text(c: Coordinate) -> str:
    return f"{_TEXT_NAMES[c.space, c.parity]}{c.ordinal}"


def coord_latex(c: Coordinate) -> str:
    return f"{_LATEX_NAMES[c.space, c.parity]}^{{{c.ordinal}}}"


class Dims(NamedTuple):
    """Shape of a superspace: ``even`` commuting and ``odd`` anticommuting coordinates."""

    even: int
    odd: int


def coordinates(dims: Dims, space: str = SOURCE) -> Tuple[Coordinate, ...]:
    """All coordinates of a space, even ones first, each sector by ordinal."""
    evens = tuple(Coordinate(space, EVEN, k) for k in range(1, dims.even + 1))
    odds = tuple(Coordinate(space, ODD, k) for k in range(1, dims.odd + 1))
    return evens + odds


# An even monomial is a sparse exponent map ((ordinal, exponent), ...) with
# ordinals strictly increasing and exponents > 0; a Grassmann monomial is a
# strictly increasing tuple of generator ordinals.  () is the unit in both.
EvenMono = Tuple[Tuple[int, int], ...]
OddMono = Tuple[int, ...]
TermKey = Tuple[EvenMono, OddMono]

Scalar = Union[int, Fraction]


def mul_even(a: EvenMono, b: EvenMono) -> EvenMono:
    """Merge two sparse exponent maps, adding exponents."""
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for ordinal, e in b:
        exps[ordinal] = exps.get(ordinal, 0) + e
    return tuple(sorted(exps.items()))


def mul_grassmann(a: OddMono, b: OddMono) -> Optional[Tuple[int, OddMono]]:
    """Multiply two Grassmann monomials.

    Returns ``(sign, product)`` with the product sorted strictly increasing
    and the sign of the sorting permutation, or ``None`` when the factors
    share a generator (the product is zero by nilpotency).
    """
    if not a:
        return (1, b)
    if not b:
        return (1, a)
    merged = []
    sign = 1
    i = j = 0
    while i < len(a) and j < len(b):
        if a[i] == b[j]:
            return None
        if a[i] < b[j]:
            merged.append(a[i])
            i += 1
        else:
            # b[j] jumps over the remaining factors of a
            if (len(a) - i) & 1:
                sign = -sign
            merged.append(b[j])
            j += 1
    merged.extend(a[i:])
    merged.extend(b[j:])
    return (sign, tuple(merged))


class SuperPolynomial:
    """A polynomial element of the function algebra of a superspace.

    ``terms`` maps ``(even_monomial, grassmann_monomial)`` to a nonzero
    Fraction; the zero polynomial is the empty map.  Instances are treated
    as immutable: every operation returns a fresh polynomial, so values can
    be shared freely between threads.
    """

    __slots__ = ("dims", "terms")

    def __init__(self, dims: Dims, terms: Union[Mapping[TermKey, Scalar], Iterable[Tuple[TermKey, Scalar]], None] = None):
        self.dims = Dims(*dims)
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        clean: dict = {}
        for (even, odd), coeff in items:
            even = tuple((int(o), int(e)) for o, e in even)
            odd = tuple(int(o) for o in odd)
            self._check_monomials(even, odd)
            c = clean.get((even, odd), 0) + Fraction(coeff)
            if c:
                clean[(even, odd)] = c
            else:
                clean.pop((even, odd), None)
        self.terms = clean

    def _check_monomials(self, even: EvenMono, odd: OddMono) -> None:
        n, m = self.dims
        for ordinal, e in even:
            if not 1 <= ordinal <= n:
                raise ValueError(f"even ordinal {ordinal} out of range for dims {self.dims}")
            if e <= 0:
                raise ValueError("even exponents must be positive (omit zero entries)")
        if any(o2 <= o1 for o1, o2 in zip(odd, odd[1:])):
            raise ValueError(f"Grassmann monomial {odd} must be strictly increasing")
        if odd and not (1 <= odd[0] and odd[-1] <= m):
            raise ValueError(f"odd ordinal out of range for dims {self.dims}")

    @classmethod
    def _raw(cls, dims: Dims, terms: dict) -> "SuperPolynomial":
        """Internal constructor for already-canonical term maps."""
        p = object.__new__(cls)
        p.dims = dims
        p.terms = terms
        return p

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, dims: Dims) -> "SuperPolynomial":
        return cls._raw(Dims(*dims), {})

    @classmethod
    def constant(cls, dims: Dims, value: Scalar) -> "SuperPolynomial":
        c = Fraction(value)
        return cls._raw(Dims(*dims), {((), ()): c} if c else {})

    @classmethod
    def variable(cls, dims: Dims, coord: Coordinate) -> "SuperPolynomial":
        """The polynomial consisting of the bare coordinate."""
        dims = Dims(*dims)
        bound = dims.even if coord.parity == EVEN else dims.odd
        if not 1 <= coord.ordinal <= bound:
            raise ValueError(f"{coord} out of range for dims {dims}")
        key = (((coord.ordinal, 1),), ()) if coord.parity == EVEN else ((), (coord.ordinal,))
        return cls._raw(dims, {key: Fraction(1)})

    # -- ring structure ----------------------------------------------------

    def _coerce(self, other) -> "SuperPolynomial":
        if isinstance(other, SuperPolynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return SuperPolynomial.constant(self.dims, other)
        return NotImplemented

    def _check_dims(self, other: "SuperPolynomial") -> None:
        if self.dims != other.dims:
            raise ValueError(f"dimension mismatch: {self.dims} vs {other.dims}")

    def __add__(self, other) -> "SuperPolynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        self._check_dims(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return SuperPolynomial._raw(self.dims, out)

    __radd__ = __add__

    def __neg__(self) -> "SuperPolynomial":
        return SuperPolynomial._raw(self.dims, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "SuperPolynomial":
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "SuperPolynomial":
        return (-self) + other

    def __mul__(self, other) -> "SuperPolynomial":
        if isinstance(other, (int, Fraction)):
            if not other:
                return SuperPolynomial.zero(self.dims)
            return SuperPolynomial._raw(self.dims, {k: c * other for k, c in self.terms.items()})
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        self._check_dims(other)
        out: dict = {}
        for (e1, o1), c1 in self.terms.items():
            for (e2, o2), c2 in other.terms.items():
                g = mul_grassmann(o1, o2)
                if g is None:
                    continue
                sign, odd = g
                key = (mul_even(e1, e2), odd)
                c = out.get(key, 0) + sign * c1 * c2
                if c:
                    out[key] = c
                else:
                    out.pop(key, None)
        return SuperPolynomial._raw(self.dims, out)

    def __rmul__(self, other) -> "SuperPolynomial":
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int) -> "SuperPolynomial":
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = SuperPolynomial.constant(self.dims, 1)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, SuperPolynomial):
            return NotImplemented
        return self.dims == other.dims and self.terms == other.terms

    __hash__ = None  # mutable term map; structural __eq__ only

    def is_zero(self) -> bool:
        return not self.terms

    # -- grading and calculus ----------------------------------------------

    def parity(self) -> Optional[Parity]:
        """EVEN or ODD for homogeneous polynomials, None for mixed ones.

        The zero polynomial reports EVEN (it sits in every graded piece).
        """
        grades = {len(odd) & 1 for _, odd in self.terms}
        if len(grades) > 1:
            return None
        return ODD if grades == {1} else EVEN

    def partial(self, c: Coordinate) -> "SuperPolynomial":
        """Left partial derivative with respect to a coordinate.

        Even coordinates differentiate the commuting part termwise.  Odd
        coordinates act from the left: removing the generator at position j
        of a sorted Grassmann monomial contributes the sign (-1)^(j-1).
        """
        n, m = self.dims
        bound = n if c.parity == EVEN else m
        if not 1 <= c.ordinal <= bound:
            raise ValueError(f"{c} out of range for dims {self.dims}")
        out: dict = {}
        if c.parity == EVEN:
            for (even, odd), coeff in self.terms.items():
                for pos, (ordinal, e) in enumerate(even):
                    if ordinal == c.ordinal:
                        reduced = even[:pos] + ((ordinal, e - 1),) + even[pos + 1:] if e > 1 else even[:pos] + even[pos + 1:]
                        key = (reduced, odd)
                        s = out.get(key, 0) + coeff * e
                        if s:
                            out[key] = s
                        else:
                            out.pop(key, None)
                        break
        else:
            for (even, odd), coeff in self.terms.items():
                if c.ordinal in odd:
                    j = odd.index(c.ordinal)
                    sign = -1 if j & 1 else 1
                    key = (even, odd[:j] + odd[j + 1:])
                    s = out.get(key, 0) + sign * coeff
                    if s:
                        out[key] = s
                    else:
                        out.pop(key, None)
        return SuperPolynomial._raw(self.dims, out)

    def split_body_soul(self) -> Tuple["SuperPolynomial", "SuperPolynomial"]:
        """Split into the Grassmann-free part and its nilpotent complement."""
        body = {k: c for k, c in self.terms.items() if not k[1]}
        soul = {k: c for k, c in self.terms.items() if k[1]}
        return SuperPolynomial._raw(self.dims, body), SuperPolynomial._raw(self.dims, soul)

    # -- presentation -------------------------------------------------------

    def sorted_terms(self) -> Iterator[Tuple[TermKey, Fraction]]:
        """Terms in the canonical order: lexicographic on (odd, even) monomials."""
        return iter(sorted(self.terms.items(), key=lambda kv: (kv[0][1], kv[0][0])))

    def __str__(self) -> str:
        return poly_text(self)

    def __repr__(self) -> str:
        return f"SuperPolynomial({self.dims.even}|{self.dims.odd}: {poly_text(self)})"


def _monomial_text(even: EvenMono, odd: OddMono, space: str) -> str:
    parts = []
    for ordinal, e in even:
        name = coord_text(Coordinate(space, EVEN, ordinal))
        parts.append(name if e == 1 else f"{name}^{e}")
    parts.extend(coord_text(Coordinate(space, ODD, o)) for o in odd)
    return " ".join(parts)


def poly_text(p: SuperPolynomial, space: str = SOURCE) -> str:
    """Plain-text rendering, e.g. ``2/3 x1^2 xi1 xi2 - 5``."""
    if not p.terms:
        return "0"
    pieces = []
    for (even, odd), coeff in p.sorted_terms():
        mono = _monomial_text(even, odd, space)
        mag = abs(coeff)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag} {mono}"
        else:
            body = str(mag)
        if not pieces:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f"{'+' if coeff > 0 else '-'} {body}")
    return " ".join(pieces)


def _coeff_latex(mag: Fraction) -> str:
    if mag.denominator == 1:
        return str(mag.numerator)
    return rf"\tfrac{{{mag.numerator}}}{{{mag.denominator}}}"


def poly_latex(p: SuperPolynomial, space: str = SOURCE) -> str:
    """LaTeX rendering with superscripted coordinate indices."""
    if not p.terms:
        return "0"
    pieces = []
    for (even, odd), coeff in p.sorted_terms():
        factors = []
        for ordinal, e in even:
            name = coord_latex(Coordinate(space, EVEN, ordinal))
            factors.append(name if e == 1 else f"({name})^{{{e}}}")
        factors.extend(coord_latex(Coordinate(space, ODD, o)) for o in odd)
        mono = r"\,".join(factors)
        mag = abs(coeff)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = rf"{_coeff_latex(mag)}\,{mono}"
        else:
            body = _coeff_latex(mag)
        if not pieces:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f"{'+' if coeff > 0 else '-'} {body}")
    return " ".join(pieces)
