"""Brute-force verification of the partition expansion, instance by instance.

The oracle side never touches partitions: it differentiates the composite
one index at a time, replaying the chain and product rules, and the result
must match the assembled expansion exactly.  Abstract mode compares normal
forms of jet expressions; concrete mode instantiates both sides with a
random polynomial map and function and compares polynomials bit for bit.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .algebra import (
    EVEN,
    ODD,
    SOURCE,
    Coordinate,
    Dims,
    Parity,
    SuperPolynomial,
    coordinates,
)
from .calculus import SuperMap, differentiate, instantiate_composed, substitute
from .fdb import IndexList, fdb_rhs
from .symbolic import Expression, FunctionSymbol, Jet, Term, expr_equal


def lhs_direct(idx: IndexList, source: Dims, target: Dims, f: FunctionSymbol) -> Expression:
    """Left side of the formula, built with no partition combinatorics.

    Starts from the bare f-jet and applies one derivative per index,
    innermost (a_1) first.  An empty index list returns the bare jet.
    """
    source = Dims(*source)
    for c in idx:
        bound = source.even if not c.parity else source.odd
        if c.space != SOURCE or not 1 <= c.ordinal <= bound:
            raise ValueError(f"index {c} out of range for source dims {source}")
    e = Expression((Term(Fraction(1), (Jet(f, ()),)),))
    for a in idx:
        e = differentiate(e, a, target)
    return e


@dataclass(frozen=True)
class VerifyConfig:
    """Bounds for random instance generation (kept small; term counts grow fast)."""

    n_max: int = 4
    source_even_max: int = 2
    source_odd_max: int = 2
    target_even_max: int = 2
    target_odd_max: int = 2
    degree_max: int = 3

    def __post_init__(self):
        if not 1 <= self.n_max <= 6:
            raise ValueError("n_max must be in 1..6")
        for d in (self.source_even_max, self.source_odd_max, self.target_even_max, self.target_odd_max):
            if not 0 <= d <= 3:
                raise ValueError("dimension bounds must be in 0..3")
        if not 1 <= self.degree_max <= 3:
            raise ValueError("degree_max must be in 1..3")


@dataclass(frozen=True)
class Instance:
    """One reproducible test case: a map, a function, and an index list."""

    source: Dims
    target: Dims
    smap: SuperMap
    f: Union[SuperPolynomial, FunctionSymbol]
    idx: IndexList
    seed: int

    @property
    def instance_id(self) -> str:
        return f"seed-{self.seed}"


@dataclass(frozen=True)
class Report:
    """Outcome of checking one instance.

    ``lhs``/``rhs`` hold the canonical JSON-ready forms of both sides so a
    failure can be diffed; ``equal`` is exact structural equality.  The
    elapsed time is runtime metadata and stays out of the serialized form.
    """

    instance_id: str
    mode: str
    lhs: object
    rhs: object
    equal: bool
    seconds: float


def random_polynomial(
    rng: random.Random,
    dims: Dims,
    degree: int,
    parity: Optional[Parity] = None,
    max_terms: int = 4,
) -> SuperPolynomial:
    """A small random polynomial with coefficients in 1/3 Z, optionally homogeneous."""
    terms: Dict = {}
    for _ in range(rng.randint(1, max_terms)):
        total = rng.randint(0, degree)
        exps: Dict[int, int] = {}
        for _ in range(total):
            if dims.even:
                o = rng.randint(1, dims.even)
                exps[o] = exps.get(o, 0) + 1
        even = tuple(sorted(exps.items()))
        candidates = [tuple(g + 1 for g in range(dims.odd) if mask >> g & 1) for mask in range(1 << dims.odd)]
        if parity is not None:
            candidates = [c for c in candidates if len(c) & 1 == int(parity)]
        if not candidates:
            continue
        odd = rng.choice(candidates)
        coeff = Fraction(rng.choice([c for c in range(-4, 5) if c]), rng.choice([1, 1, 2, 3]))
        terms[(even, odd)] = terms.get((even, odd), 0) + coeff
    return SuperPolynomial(dims, {k: c for k, c in terms.items() if c})


def random_instance(config: VerifyConfig, seed: int, concrete: bool = True) -> Instance:
    """Deterministically generate one instance from a seed."""
    rng = random.Random(seed)
    while True:
        source = Dims(rng.randint(0, config.source_even_max), rng.randint(0, config.source_odd_max))
        if source.even + source.odd:
            break
    while True:
        target = Dims(rng.randint(0, config.target_even_max), rng.randint(0, config.target_odd_max))
        if target.even + target.odd:
            break
    even_components = tuple(
        random_polynomial(rng, source, config.degree_max, EVEN) for _ in range(target.even)
    )
    odd_components = tuple(
        random_polynomial(rng, source, config.degree_max, ODD) for _ in range(target.odd)
    )
    smap = SuperMap(source, target, even_components, odd_components)
    f: Union[SuperPolynomial, FunctionSymbol]
    if concrete:
        f = random_polynomial(rng, target, config.degree_max, max_terms=5)
    else:
        f = FunctionSymbol("f", target.even + target.odd, Parity(rng.randint(0, 1)))
    n = rng.randint(1, config.n_max)
    source_coords = coordinates(source, SOURCE)
    idx = tuple(rng.choice(source_coords) for _ in range(n))
    return Instance(source, target, smap, f, idx, seed)


def verify_instance(inst: Instance, mode: Optional[str] = None) -> Report:
    """Check one instance; inequality is reported, never raised."""
    from . import serialize  # late import: serialize depends on these types

    if mode is None:
        mode = "concrete" if isinstance(inst.f, SuperPolynomial) else "abstract"
    if mode not in ("abstract", "concrete"):
        raise ValueError(f"unknown mode {mode!r}")
    start = time.perf_counter()
    if mode == "abstract":
        f_sym = inst.f if isinstance(inst.f, FunctionSymbol) else FunctionSymbol(
            "f", inst.target.even + inst.target.odd, EVEN
        )
        lhs = lhs_direct(inst.idx, inst.source, inst.target, f_sym)
        rhs = fdb_rhs(inst.idx, inst.source, inst.target, f_sym)
        equal = expr_equal(lhs, rhs)
        lhs_obj, rhs_obj = serialize.expression_to_obj(lhs), serialize.expression_to_obj(rhs)
    else:
        if not isinstance(inst.f, SuperPolynomial):
            raise ValueError("concrete mode needs a polynomial f")
        f_sym = FunctionSymbol("f", inst.target.even + inst.target.odd, EVEN)
        lhs_poly = substitute(inst.f, inst.smap)
        for a in inst.idx:
            lhs_poly = lhs_poly.partial(a)
        rhs_poly = instantiate_composed(
            fdb_rhs(inst.idx, inst.source, inst.target, f_sym), inst.smap, {f_sym: inst.f}
        )
        equal = lhs_poly == rhs_poly
        lhs_obj, rhs_obj = serialize.poly_to_obj(lhs_poly), serialize.poly_to_obj(rhs_poly)
    elapsed = time.perf_counter() - start
    return Report(inst.instance_id, mode, lhs_obj, rhs_obj, equal, elapsed)


def run_campaign(
    seeds: Sequence[int],
    config: VerifyConfig = VerifyConfig(),
    mode: str = "concrete",
) -> List[Report]:
    """Verify one instance per seed; reports come back sorted by instance id."""
    reports = []
    for seed in seeds:
        inst = random_instance(config, seed, concrete=(mode != "abstract"))
        reports.append(verify_instance(inst, mode))
    reports.sort(key=lambda r: (len(r.instance_id), r.instance_id))
    return reports
