"""Super Bell polynomials: differential polynomials in the jets of one even function.

``Y(a_1, .., a_n)`` is what remains after conjugating the iterated
derivative d_{a_n} .. d_{a_1} by exp(f): the exponentials cancel and the
result is a signed sum of products of jets of f.  It can be computed
straight from that definition (repeated differentiation, tracking the
exponential factor formally) or in closed combinatorial form as a sum over
ordered set partitions; both routes are implemented and must agree.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Sequence, Tuple

from .algebra import EVEN, Coordinate, x, xi
from .calculus import differentiate_direct
from .partitions import enumerate_partitions, order_partition
from .symbolic import Expression, FunctionSymbol, Jet, Term, normalize_terms, term_parity

IndexList = Tuple[Coordinate, ...]


def _require_even(f: FunctionSymbol) -> None:
    # an odd f would put signs into d_a(e^f) that this module does not model
    if f.parity != EVEN:
        raise ValueError(f"Bell polynomials need an even function, got parity {f.parity!r}")


def bell_combinatorial(idx: Sequence[Coordinate], f: FunctionSymbol) -> Expression:
    """Closed form: sum over partitions of (-1)^parity times one jet per block."""
    _require_even(f)
    if len(idx) < 1:
        raise ValueError("need at least one derivative index")
    idx = tuple(idx)
    terms = []
    for partition in enumerate_partitions(len(idx)):
        op = order_partition(partition, idx)
        sign = Fraction(-1 if op.parity else 1)
        jets = tuple(Jet(f, tuple(idx[p - 1] for p in block)) for block in op.blocks)
        terms.append(Term(sign, jets))
    return normalize_terms(terms)


def bell_via_definition(idx: Sequence[Coordinate], f: FunctionSymbol) -> Expression:
    """Compute e^-f d_{a_n} .. d_{a_1} e^f by direct repeated differentiation.

    The state tracks the cofactor T in T * e^f.  Since f is even,
    d_a(e^f) = (d_a f) e^f, so one derivative step maps T to
    d_a(T) + (-1)^(a~ T~) T (d_a f), the new first-order jet appended at
    the right where the exponential sat.  The trailing e^f cancels against
    the leading e^-f, which is never materialized.
    """
    _require_even(f)
    if len(idx) < 1:
        raise ValueError("need at least one derivative index")
    e = Expression((Term(Fraction(1), ()),))
    for a in idx:
        appended = []
        for t in e.terms:
            coeff = -t.coeff if (int(a.parity) & term_parity(t)) else t.coeff
            appended.append(Term(coeff, t.factors + (Jet(f, (a,)),)))
        e = differentiate_direct(e, a) + normalize_terms(appended)
    return e


class BellMultiIndex(NamedTuple):
    """Derivative orders per coordinate: ``even_orders[i]`` repeats of x_{i+1},
    ``odd_flags[j]`` in {0, 1} for xi_{j+1} (odd derivatives square to zero)."""

    even_orders: Tuple[int, ...]
    odd_flags: Tuple[int, ...]

    def index_list(self) -> IndexList:
        """Expand to an ordered index list, innermost derivative first.

        The operator string applies x-derivatives leftmost (outermost), so
        reading it right to left yields a_1, a_2, ...: the last odd flag is
        the innermost derivative.
        """
        ops = []
        for i, order in enumerate(self.even_orders, start=1):
            if order < 0:
                raise ValueError("even derivative orders must be non-negative")
            ops.extend([x(i)] * order)
        for j, flag in enumerate(self.odd_flags, start=1):
            if flag not in (0, 1):
                raise ValueError(f"odd derivative orders are capped at 1, got {flag}")
            if flag:
                ops.append(xi(j))
        if not ops:
            raise ValueError("multi-index must request at least one derivative")
        return tuple(reversed(ops))


def bell_multiindex(mi: BellMultiIndex, f: FunctionSymbol) -> Expression:
    """The multi-index parametrization, delegated through the index-list form."""
    return bell_via_definition(mi.index_list(), f)
