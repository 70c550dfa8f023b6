"""Exact calculus with commuting and anticommuting variables.

The package provides, over exact rationals:

- :mod:`supercalc.algebra` — polynomial arithmetic with Grassmann generators;
- :mod:`supercalc.symbolic` — normalized expressions in jets of named functions;
- :mod:`supercalc.calculus` — differentiation, substitution along supermaps;
- :mod:`supercalc.partitions` — ordered set partitions and their parity;
- :mod:`supercalc.fdb` — the partition expansion of iterated derivatives of
  a composite (the higher chain rule);
- :mod:`supercalc.bell` — generalized super Bell polynomials;
- :mod:`supercalc.verify` — a brute-force oracle that replays derivatives
  one at a time and checks every expansion instance exactly;
- :mod:`supercalc.cli` — the ``supercalc`` command.
"""

from .algebra import (
    EVEN,
    ODD,
    SOURCE,
    TARGET,
    Coordinate,
    Dims,
    Parity,
    SuperPolynomial,
    coordinates,
    mul_even,
    mul_grassmann,
    poly_latex,
    poly_text,
    x,
    xi,
    y,
    zeta,
)
from .bell import BellMultiIndex, bell_combinatorial, bell_multiindex, bell_via_definition
from .calculus import (
    SuperMap,
    compose_direct,
    differentiate,
    differentiate_direct,
    instantiate,
    instantiate_composed,
    substitute,
)
from .fdb import fdb_raw_terms, fdb_rhs, internal_sign
from .partitions import OrderedPartition, enumerate_partitions, order_partition, partition_parity
from .symbolic import (
    Expression,
    FunctionSymbol,
    Jet,
    Term,
    expr_equal,
    expr_latex,
    expr_text,
    jet_parity,
    normalize_jet,
    normalize_term,
    normalize_terms,
)
from .verify import (
    Instance,
    Report,
    VerifyConfig,
    lhs_direct,
    random_instance,
    random_polynomial,
    run_campaign,
    verify_instance,
)

__version__ = "0.1.0"

__all__ = [
    "BellMultiIndex",
    "Coordinate",
    "Dims",
    "EVEN",
    "Expression",
    "FunctionSymbol",
    "Instance",
    "Jet",
    "ODD",
    "OrderedPartition",
    "Parity",
    "Report",
    "SOURCE",
    "SuperMap",
    "SuperPolynomial",
    "TARGET",
    "Term",
    "VerifyConfig",
    "bell_combinatorial",
    "bell_multiindex",
    "bell_via_definition",
    "compose_direct",
    "coordinates",
    "differentiate",
    "differentiate_direct",
    "enumerate_partitions",
    "expr_equal",
    "expr_latex",
    "expr_text",
    "fdb_raw_terms",
    "fdb_rhs",
    "instantiate",
    "instantiate_composed",
    "internal_sign",
    "jet_parity",
    "lhs_direct",
    "mul_even",
    "mul_grassmann",
    "normalize_jet",
    "normalize_term",
    "normalize_terms",
    "order_partition",
    "partition_parity",
    "poly_latex",
    "poly_text",
    "random_instance",
    "random_polynomial",
    "run_campaign",
    "substitute",
    "verify_instance",
    "x",
    "xi",
    "y",
    "zeta",
]
