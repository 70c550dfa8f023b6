"""Differentiation of jet expressions and substitution along supermaps.

Substitution of a map into a polynomial follows the analytic-continuation
recipe: split each commuting component into its Grassmann-free body and
nilpotent soul, Taylor-expand the coefficient polynomial about the body
(the series terminates by soul nilpotency), and substitute anticommuting
components directly.  ``compose_direct`` computes the same pullback by
brute-force monomial substitution and serves as the independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from .algebra import (
    EVEN,
    ODD,
    SOURCE,
    TARGET,
    Coordinate,
    Dims,
    EvenMono,
    SuperPolynomial,
    coordinates,
)
from .symbolic import Expression, FunctionSymbol, Head, Jet, Term, jet_parity, normalize_terms


@dataclass(frozen=True)
class SuperMap:
    """A smooth map between superspaces, given by polynomial components.

    ``even_components[b-1]`` is the even function the b-th commuting target
    coordinate pulls back to; ``odd_components[β-1]`` likewise for the β-th
    anticommuting one.  Component parities are enforced at construction.
    """

    source: Dims
    target: Dims
    even_components: Tuple[SuperPolynomial, ...]
    odd_components: Tuple[SuperPolynomial, ...] = ()

    def __post_init__(self):
        if len(self.even_components) != self.target.even or len(self.odd_components) != self.target.odd:
            raise ValueError(f"component count does not match target dims {self.target}")
        for slot_parity, comps in ((EVEN, self.even_components), (ODD, self.odd_components)):
            for i, comp in enumerate(comps):
                if comp.dims != self.source:
                    raise ValueError(f"component {i + 1} has dims {comp.dims}, expected {self.source}")
                p = comp.parity()
                if not comp.is_zero() and p != slot_parity:
                    raise ValueError(f"parity mismatch: component {i + 1} of the {slot_parity.name.lower()} block")

    def component(self, c: Coordinate) -> SuperPolynomial:
        comps = self.even_components if c.parity == EVEN else self.odd_components
        return comps[c.ordinal - 1]

    @classmethod
    def identity(cls, dims: Dims) -> "SuperMap":
        dims = Dims(*dims)
        even = tuple(SuperPolynomial.variable(dims, Coordinate(SOURCE, EVEN, k)) for k in range(1, dims.even + 1))
        odd = tuple(SuperPolynomial.variable(dims, Coordinate(SOURCE, ODD, k)) for k in range(1, dims.odd + 1))
        return cls(dims, dims, even, odd)


# -- differentiation of expressions ------------------------------------------


def _product_rule(e: Expression, a: Coordinate, diff_jet) -> Expression:
    """Super product rule: pass ``d_a`` through each factor list.

    Differentiating factor i costs (-1)^(a~ * sum of parities to its left);
    ``diff_jet(jet)`` supplies the replacement factor tuple for d_a(jet).
    """
    out: List[Term] = []
    a_odd = int(a.parity)
    for t in e.terms:
        prefix = 0
        for i, j in enumerate(t.factors):
            coeff = -t.coeff if (a_odd & prefix) else t.coeff
            for repl_coeff, repl in diff_jet(j):
                out.append(Term(coeff * repl_coeff, t.factors[:i] + repl + t.factors[i + 1:]))
            prefix ^= jet_parity(j)
    return normalize_terms(out)


def differentiate(e: Expression, a: Coordinate, target: Dims) -> Expression:
    """Derivative treating function-symbol jets as composed with a map.

    Component jets differentiate directly (the new index lands outermost);
    a function-symbol jet triggers the chain rule: a sum over all target
    coordinates b of the component jet d(y_b)/d(x_a) placed immediately
    left of the symbol jet, whose own index list gains b outermost.
    """
    if a.space != SOURCE:
        raise ValueError(f"can only differentiate by source coordinates, got {a}")
    targets = coordinates(Dims(*target), TARGET)

    def diff_jet(j: Jet):
        if isinstance(j.head, FunctionSymbol):
            return [(1, (Jet(b, (a,)), Jet(j.head, (b,) + j.indices))) for b in targets]
        return [(1, (Jet(j.head, (a,) + j.indices),))]

    return _product_rule(e, a, diff_jet)


def differentiate_direct(e: Expression, a: Coordinate) -> Expression:
    """Derivative of jets of functions living on the differentiated space itself."""

    def diff_jet(j: Jet):
        return [(1, (Jet(j.head, (a,) + j.indices),))]

    return _product_rule(e, a, diff_jet)


# -- substitution --------------------------------------------------------------


def _derive_even_monomial(even: EvenMono, orders: Mapping[int, int]) -> Optional[Tuple[int, EvenMono]]:
    """Apply d/dy_b ``orders[b]`` times to a commuting monomial.

    Returns the integer falling-factorial coefficient and reduced monomial,
    or None when any exponent is exhausted.
    """
    coeff = 1
    reduced = []
    exps = dict(even)
    for ordinal, k in orders.items():
        e = exps.get(ordinal, 0)
        if e < k:
            return None
        for step in range(k):
            coeff *= e - step
        exps[ordinal] = e - k
    for ordinal in sorted(exps):
        if exps[ordinal]:
            reduced.append((ordinal, exps[ordinal]))
    return coeff, tuple(reduced)


class _EvenComposer:
    """Caches body powers while composing commuting monomials with the map bodies."""

    def __init__(self, bodies: Tuple[SuperPolynomial, ...], source: Dims):
        self.bodies = bodies
        self.one = SuperPolynomial.constant(source, 1)
        self._powers: Dict[Tuple[int, int], SuperPolynomial] = {}

    def power(self, ordinal: int, e: int) -> SuperPolynomial:
        key = (ordinal, e)
        got = self._powers.get(key)
        if got is None:
            got = self.bodies[ordinal - 1] ** e
            self._powers[key] = got
        return got

    def compose(self, even: EvenMono) -> SuperPolynomial:
        value = self.one
        for ordinal, e in even:
            value = value * self.power(ordinal, e)
        return value


def substitute(f: SuperPolynomial, smap: SuperMap) -> SuperPolynomial:
    """Pull back ``f`` along ``smap`` by analytic continuation.

    For each term of f the anticommuting part substitutes components
    directly (ascending generator order); the commuting monomial is Taylor
    expanded about the component bodies, the k-th term carrying 1/k! and
    one soul factor per derivative, soul factors multiplied highest slot
    first.  The expansion stops at k = source odd dimension, past which
    every soul product vanishes.
    """
    if f.dims != smap.target:
        raise ValueError(f"dimension mismatch: f has dims {f.dims}, map target is {smap.target}")
    n2 = smap.target.even
    split = [comp.split_body_soul() for comp in smap.even_components]
    bodies = tuple(s[0] for s in split)
    souls = tuple(s[1] for s in split)
    composer = _EvenComposer(bodies, smap.source)
    max_order = smap.source.odd if any(not s.is_zero() for s in souls) else 0

    deriv_cache: Dict[Tuple[EvenMono, Tuple[int, ...]], Optional[Tuple[int, EvenMono]]] = {}
    result = SuperPolynomial.zero(smap.source)
    for (even, odd), coeff in f.terms.items():
        value = composer.compose(even) * coeff
        for k in range(1, max_order + 1):
            scale = Fraction(1, factorial(k))
            for bs in product(range(1, n2 + 1), repeat=k):
                soul_prod = souls[bs[-1] - 1]
                for b in bs[-2::-1]:
                    soul_prod = soul_prod * souls[b - 1]
                if soul_prod.is_zero():
                    continue
                cache_key = (even, tuple(sorted(bs)))
                if cache_key in deriv_cache:
                    derived = deriv_cache[cache_key]
                else:
                    counts: Dict[int, int] = {}
                    for b in bs:
                        counts[b] = counts.get(b, 0) + 1
                    derived = _derive_even_monomial(even, counts)
                    deriv_cache[cache_key] = derived
                if derived is None:
                    continue
                dcoeff, reduced = derived
                value = value + soul_prod * composer.compose(reduced) * (coeff * dcoeff * scale)
        for g in odd:
            value = value * smap.odd_components[g - 1]
        result = result + value
    return result


def compose_direct(f: SuperPolynomial, smap: SuperMap) -> SuperPolynomial:
    """Brute-force pullback: substitute components monomial by monomial.

    Independent of :func:`substitute`; the two must agree on every input,
    which is one of the package's core verification properties.
    """
    if f.dims != smap.target:
        raise ValueError(f"dimension mismatch: f has dims {f.dims}, map target is {smap.target}")
    powers: Dict[Tuple[int, int], SuperPolynomial] = {}

    def comp_power(ordinal: int, e: int) -> SuperPolynomial:
        key = (ordinal, e)
        got = powers.get(key)
        if got is None:
            got = smap.even_components[ordinal - 1] ** e
            powers[key] = got
        return got

    result = SuperPolynomial.zero(smap.source)
    for (even, odd), coeff in f.terms.items():
        value = SuperPolynomial.constant(smap.source, coeff)
        for ordinal, e in even:
            value = value * comp_power(ordinal, e)
        for g in odd:
            value = value * smap.odd_components[g - 1]
        result = result + value
    return result


# -- instantiation of jet expressions ------------------------------------------


def _iterated_partial(p: SuperPolynomial, indices: Tuple[Coordinate, ...]) -> SuperPolynomial:
    # indices are outermost-first, so apply them right to left
    for c in reversed(indices):
        p = p.partial(c)
    return p


def instantiate(e: Expression, bindings: Mapping[Head, SuperPolynomial], dims: Dims) -> SuperPolynomial:
    """Evaluate an expression whose jets all live on one space.

    Every head (function symbol or component coordinate) must be bound to a
    polynomial over ``dims``; a jet becomes the iterated partial derivative
    of its binding, and factor order maps to polynomial multiplication.
    """
    cache: Dict[Jet, SuperPolynomial] = {}
    result = SuperPolynomial.zero(dims)
    for t in e.terms:
        value = SuperPolynomial.constant(dims, t.coeff)
        for j in t.factors:
            jv = cache.get(j)
            if jv is None:
                jv = _iterated_partial(bindings[j.head], j.indices)
                cache[j] = jv
            value = value * jv
        result = result + value
    return result


def instantiate_composed(
    e: Expression,
    smap: SuperMap,
    bindings: Mapping[FunctionSymbol, SuperPolynomial],
) -> SuperPolynomial:
    """Evaluate an expression mixing component jets and composed symbol jets.

    Component jets differentiate their map component over the source;
    symbol jets differentiate their binding over the target and pull the
    result back along the map.
    """
    cache: Dict[Jet, SuperPolynomial] = {}
    result = SuperPolynomial.zero(smap.source)
    for t in e.terms:
        value = SuperPolynomial.constant(smap.source, t.coeff)
        for j in t.factors:
            jv = cache.get(j)
            if jv is None:
                if isinstance(j.head, FunctionSymbol):
                    jv = substitute(_iterated_partial(bindings[j.head], j.indices), smap)
                else:
                    jv = _iterated_partial(smap.component(j.head), j.indices)
                cache[j] = jv
            value = value * jv
        result = result + value
    return result
