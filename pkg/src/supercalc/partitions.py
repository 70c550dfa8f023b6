"""Set partitions of derivative-index positions, with block ordering and parity.

A derivative index list (a_1, .., a_n) is handled by position: partitions
are partitions of {1, .., n}, so repeated coordinates in the list stay
distinct.  The descending sequence (a_n, .., a_1) is the reference order:
blocks inherit it internally, blocks are ranked by their last (= lowest
position) element, and the partition's parity counts, mod 2, the pairs of
odd indices whose relative order the induced ranking flips.
"""

from __future__ import annotations

from typing import Iterable, List, NamedTuple, Sequence, Tuple

from .algebra import Coordinate, Parity

Partition = Tuple[Tuple[int, ...], ...]

_MAX_N = 12  # Bell(12) = 4 213 597; enumeration beyond this is never useful here


class OrderedPartition(NamedTuple):
    """A partition of positions {1..n} in canonical order.

    blocks:  each block lists its positions in descending order, and blocks
             are sorted so the first block has the largest last element.
    ranking: concatenation of the blocks; position of p in this tuple is the
             rank the partition assigns to index a_p.
    parity:  mod-2 count of odd-odd index pairs inverted between the
             descending reference order and ``ranking``.
    """

    blocks: Partition
    ranking: Tuple[int, ...]
    parity: Parity


def enumerate_partitions(n: int) -> List[Partition]:
    """All set partitions of {1, .., n} via restricted growth strings.

    Returns exactly the Bell number B_n of partitions, in the lexicographic
    order of their growth strings; blocks appear in first-occurrence order
    with positions ascending inside each block.
    """
    if not 1 <= n <= _MAX_N:
        raise ValueError(f"n must be in 1..{_MAX_N}, got {n}")
    out: List[Partition] = []

    def extend(rgs: List[int], top: int) -> None:
        if len(rgs) == n:
            blocks: List[List[int]] = [[] for _ in range(top + 1)]
            for pos, label in enumerate(rgs, start=1):
                blocks[label].append(pos)
            out.append(tuple(tuple(b) for b in blocks))
            return
        for label in range(top + 2):
            rgs.append(label)
            extend(rgs, max(top, label))
            rgs.pop()

    extend([0], 0)
    return out


def order_partition(partition: Iterable[Iterable[int]], idx: Sequence[Coordinate]) -> OrderedPartition:
    """Put a partition of positions into canonical block order for ``idx``."""
    n = len(idx)
    blocks = tuple(tuple(sorted(block, reverse=True)) for block in partition)
    seen = [p for b in blocks for p in b]
    if sorted(seen) != list(range(1, n + 1)):
        raise ValueError(f"not a partition of 1..{n}: {blocks}")
    # last element of a block = its lowest position; highest last element first
    blocks = tuple(sorted(blocks, key=lambda b: -b[-1]))
    ranking = tuple(p for b in blocks for p in b)
    op = OrderedPartition(blocks, ranking, Parity.EVEN)
    return op._replace(parity=partition_parity(op, idx))


def partition_parity(op: OrderedPartition, idx: Sequence[Coordinate]) -> Parity:
    """Ordering parity: sum of a_i~ * a_j~ over pairs i < j ranked i-before-j.

    In the descending reference order a_j precedes a_i whenever i < j, so
    the condition rank(i) < rank(j) picks exactly the pairs the partition
    ordering inverts; only pairs of two odd indices contribute.
    """
    rank = {p: r for r, p in enumerate(op.ranking)}
    odd_positions = [p for p in range(1, len(idx) + 1) if idx[p - 1].parity]
    total = 0
    for a, i in enumerate(odd_positions):
        for j in odd_positions[a + 1:]:
            if rank[i] < rank[j]:
                total += 1
    return Parity(total & 1)
