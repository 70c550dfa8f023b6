"""Right-hand side of the higher chain rule over superspaces.

The n-th mixed derivative of a composite f(y(x)) expands as a sum over set
partitions of the derivative indices: each ordered block contributes one
component jet and the outer function contributes one jet per partition,
indexed by a tuple of target coordinates that is summed over.  Two kinds of
sign appear: the ordering parity of the partition, and an internal sign per
block built from the parities of the chosen target coordinates and of the
indices in the later blocks.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from typing import Iterator, Sequence, Tuple

from .algebra import Coordinate, Dims, SOURCE, TARGET, coordinates
from .partitions import OrderedPartition, enumerate_partitions, order_partition
from .symbolic import Expression, FunctionSymbol, Jet, Term, normalize_terms

IndexList = Tuple[Coordinate, ...]


def internal_sign(i: int, op: OrderedPartition, bs: Sequence[Coordinate], idx: Sequence[Coordinate]) -> int:
    """Sign attached to block i (1-based) for target choice ``bs``.

    The exponent is b_i~ times the sum, over all later blocks k, of b_k~
    plus the parities of the indices inside block k.
    """
    if not bs[i - 1].parity:
        return 1
    total = 0
    for k in range(i, len(op.blocks)):
        total += int(bs[k].parity)
        for p in op.blocks[k]:
            total += int(idx[p - 1].parity)
    return -1 if total & 1 else 1


def fdb_raw_terms(idx: IndexList, source: Dims, target: Dims, f: FunctionSymbol) -> Iterator[Term]:
    """Yield the expansion's terms one partition and target tuple at a time.

    Uncollected: the caller normalizes.  Per term, the component jets come
    first, one per block in block order with the block's indices in their
    inherited (descending position) order, and the f-jet sits rightmost
    with its target indices ordered first-block-outermost.
    """
    n = len(idx)
    if n < 1:
        raise ValueError("need at least one derivative index")
    source, target = Dims(*source), Dims(*target)
    for c in idx:
        bound = source.even if not c.parity else source.odd
        if c.space != SOURCE or not 1 <= c.ordinal <= bound:
            raise ValueError(f"index {c} out of range for source dims {source}")
    if f.arity != target.even + target.odd:
        raise ValueError(f"f has arity {f.arity}, target dims {target} need {target.even + target.odd}")
    targets = coordinates(target, TARGET)
    for partition in enumerate_partitions(n):
        op = order_partition(partition, idx)
        base = -1 if op.parity else 1
        block_indices = [tuple(idx[p - 1] for p in block) for block in op.blocks]
        for bs in product(targets, repeat=len(op.blocks)):
            sign = base
            for i in range(1, len(op.blocks) + 1):
                sign *= internal_sign(i, op, bs, idx)
            jets = tuple(Jet(b, block) for b, block in zip(bs, block_indices))
            yield Term(Fraction(sign), jets + (Jet(f, bs),))


def fdb_rhs(idx: IndexList, source: Dims, target: Dims, f: FunctionSymbol) -> Expression:
    """The full partition-sum expansion of d_{a_n} .. d_{a_1} f(y(x)), normalized."""
    return normalize_terms(fdb_raw_terms(idx, source, target, f))
