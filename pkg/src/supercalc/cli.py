"""Command-line front end.

Index lists are comma-separated tokens ``x<k>`` (commuting) and ``xi<k>``
(anticommuting), read left to right as a_1, .., a_n with a_1 the innermost
derivative: ``--idx x1,xi1`` means "first d/dx1, then d/dxi1".  Dimension
pairs are written ``n|m`` and maps ``n1|m1->n2|m2`` (a unicode arrow works
too).

Exit status: 0 on success, 1 when verification finds an inequality, 2 on
bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

from .algebra import Dims, EVEN, SOURCE, SuperPolynomial, poly_latex, poly_text, x, xi
from .bell import BellMultiIndex, bell_combinatorial, bell_multiindex, bell_via_definition
from .fdb import fdb_rhs
from .symbolic import Expression, FunctionSymbol, expr_latex, expr_text
from .verify import VerifyConfig, lhs_direct, random_instance, verify_instance
from . import serialize

DEFAULT_SEEDS = "1..100"


def parse_dims(text: str) -> Dims:
    m = re.fullmatch(r"\s*(\d+)\s*\|\s*(\d+)\s*", text)
    if not m:
        raise ValueError(f"expected dims like '2|1', got {text!r}")
    return Dims(int(m.group(1)), int(m.group(2)))


def parse_dims_pair(text: str) -> Tuple[Dims, Dims]:
    parts = re.split(r"->|→", text)
    if len(parts) != 2:
        raise ValueError(f"expected dims like '1|1->2|0', got {text!r}")
    return parse_dims(parts[0]), parse_dims(parts[1])


def parse_index_list(text: str):
    coords = []
    for token in text.split(","):
        token = token.strip()
        m = re.fullmatch(r"(xi|x)(\d+)", token)
        if not m:
            raise ValueError(f"bad index token {token!r}: expected x<k> or xi<k>")
        make = xi if m.group(1) == "xi" else x
        coords.append(make(int(m.group(2))))
    return tuple(coords)


def parse_seed_spec(text: str) -> List[int]:
    m = re.fullmatch(r"\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*", text)
    if m:
        lo, hi = int(m.group(1)), int(m.group(2))
        if hi < lo:
            raise ValueError(f"empty seed range {text!r}")
        return list(range(lo, hi + 1))
    return [int(tok) for tok in text.split(",")]


def load_json_input(spec: str):
    """``--input`` takes either a file path or inline JSON (starts with '{')."""
    if spec.lstrip().startswith("{"):
        return json.loads(spec)
    return json.loads(Path(spec).read_text(encoding="utf-8"))


def _print_expression(e: Expression, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(serialize.canonical_dumps(serialize.expression_to_obj(e)))
    elif fmt == "latex":
        print(expr_latex(e))
    else:
        print(expr_text(e))


def _print_polynomial(p: SuperPolynomial, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(serialize.canonical_dumps(serialize.poly_to_obj(p)))
    elif fmt == "latex":
        print(poly_latex(p, SOURCE))
    else:
        print(poly_text(p, SOURCE))


def _cmd_derive(args, fmt: str) -> int:
    idx = parse_index_list(args.idx)
    if args.abstract:
        if not args.dims:
            raise ValueError("--abstract needs --dims 'n1|m1->n2|m2'")
        source, target = parse_dims_pair(args.dims)
        f = FunctionSymbol("f", target.even + target.odd, EVEN)
        _print_expression(lhs_direct(idx, source, target, f), fmt)
        return 0
    if not args.input:
        raise ValueError("derive needs --input (polynomial JSON) or --abstract")
    p = serialize.poly_from_obj(load_json_input(args.input))
    for a in idx:
        p = p.partial(a)
    _print_polynomial(p, fmt)
    return 0


def _cmd_fdb(args, fmt: str) -> int:
    source, target = parse_dims_pair(args.dims)
    idx = parse_index_list(args.idx)
    f = FunctionSymbol("f", target.even + target.odd, EVEN)
    _print_expression(fdb_rhs(idx, source, target, f), fmt)
    return 0


def _cmd_bell(args, fmt: str) -> int:
    if args.l is not None or args.r is not None:
        even_orders = tuple(int(tok) for tok in args.l.split(",")) if args.l else ()
        odd_flags = tuple(int(tok) for tok in args.r.split(",")) if args.r else ()
        mi = BellMultiIndex(even_orders, odd_flags)
        d0, d1 = len(even_orders), len(odd_flags)
        f = FunctionSymbol("f", d0 + d1, EVEN)
        _print_expression(bell_multiindex(mi, f), fmt)
        return 0
    if not (args.idx and args.dims):
        raise ValueError("bell needs either --l/--r or --idx with --dims 'd0|d1'")
    dims = parse_dims(args.dims)
    idx = parse_index_list(args.idx)
    for c in idx:
        bound = dims.even if not c.parity else dims.odd
        if not 1 <= c.ordinal <= bound:
            raise ValueError(f"index {c} out of range for dims {dims}")
    f = FunctionSymbol("f", dims.even + dims.odd, EVEN)
    compute = bell_via_definition if args.method == "definition" else bell_combinatorial
    _print_expression(compute(idx, f), fmt)
    return 0


def _cmd_verify(args, fmt: str) -> int:
    modes = ["abstract", "concrete"] if args.mode == "both" else [args.mode]
    reports = []
    if args.input:
        instances = serialize.corpus_from_obj(load_json_input(args.input))
        for inst in instances:
            for mode in modes:
                reports.append(verify_instance(inst, mode))
    else:
        seed_spec = args.seeds
        if seed_spec is None:
            env_seed = os.environ.get("SUPERCALC_SEED")
            seed_spec = env_seed if env_seed else DEFAULT_SEEDS
        seeds = parse_seed_spec(seed_spec)
        config = VerifyConfig(
            n_max=args.n_max,
            source_even_max=args.dims_bounds[0].even,
            source_odd_max=args.dims_bounds[0].odd,
            target_even_max=args.dims_bounds[1].even,
            target_odd_max=args.dims_bounds[1].odd,
            degree_max=args.degree,
        )
        for seed in seeds:
            inst = random_instance(config, seed, concrete=True)
            for mode in modes:
                reports.append(verify_instance(inst, mode))
    reports.sort(key=lambda r: (len(r.instance_id), r.instance_id, r.mode))
    failures = [r for r in reports if not r.equal]
    if fmt == "json":
        sys.stdout.write(serialize.canonical_dumps(serialize.campaign_to_obj(reports)))
    else:
        for r in failures:
            print(f"UNEQUAL {r.instance_id} [{r.mode}]")
            print(f"  lhs: {serialize.canonical_dumps(r.lhs).strip()}")
            print(f"  rhs: {serialize.canonical_dumps(r.rhs).strip()}")
        print(f"{len(reports) - len(failures)}/{len(reports)} equal")
    return 1 if failures else 0


def _cmd_render(args, fmt: str) -> int:
    e = serialize.expression_from_obj(load_json_input(args.input))
    _print_expression(e, fmt)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="supercalc", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--format", choices=["text", "latex", "json"], default=None,
                        help="output format (default: text; render defaults to latex)")
    sub = parser.add_subparsers(dest="command", required=True)

    p_derive = sub.add_parser("derive", help="apply a derivative chain to a function")
    p_derive.add_argument("--idx", required=True, help="index list, e.g. 'x1,xi1' (a_1 first, innermost)")
    p_derive.add_argument("--input", help="polynomial JSON (path or inline) to differentiate")
    p_derive.add_argument("--abstract", action="store_true", help="differentiate an abstract composite instead")
    p_derive.add_argument("--dims", help="'n1|m1->n2|m2', required with --abstract")

    p_fdb = sub.add_parser("fdb", help="print the partition expansion of an iterated derivative")
    p_fdb.add_argument("--dims", required=True, help="'n1|m1->n2|m2'")
    p_fdb.add_argument("--idx", required=True, help="index list, e.g. 'x1,xi1'")

    p_bell = sub.add_parser("bell", help="print a super Bell polynomial")
    p_bell.add_argument("--l", help="comma list of even derivative orders, e.g. '2,0'")
    p_bell.add_argument("--r", help="comma list of 0/1 odd derivative flags, e.g. '1,1'")
    p_bell.add_argument("--idx", help="index list form, e.g. 'xi1,xi2'")
    p_bell.add_argument("--dims", help="'d0|d1', required with --idx")
    p_bell.add_argument("--method", choices=["combinatorial", "definition"], default="combinatorial")

    p_verify = sub.add_parser("verify", help="check the expansion against direct differentiation")
    p_verify.add_argument("--seeds", help="seed range 'A..B' or comma list (default 1..100; "
                                          "env SUPERCALC_SEED overrides the default)")
    p_verify.add_argument("--n-max", type=int, default=4, help="maximum derivative count per instance")
    p_verify.add_argument("--dims", dest="dims_bounds", type=parse_dims_pair, default=(Dims(2, 2), Dims(2, 2)),
                          help="upper dim bounds 'n1|m1->n2|m2' (default 2|2->2|2)")
    p_verify.add_argument("--degree", type=int, default=3, help="maximum polynomial degree")
    p_verify.add_argument("--mode", choices=["abstract", "concrete", "both"], default="concrete")
    p_verify.add_argument("--input", help="instance corpus JSON (path or inline) instead of random seeds")

    p_render = sub.add_parser("render", help="re-emit a stored expression (LaTeX by default)")
    p_render.add_argument("--input", required=True, help="expression JSON (path or inline)")
    return parser


_COMMANDS = {
    "derive": _cmd_derive,
    "fdb": _cmd_fdb,
    "bell": _cmd_bell,
    "verify": _cmd_verify,
    "render": _cmd_render,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.format or ("latex" if args.command == "render" else "text")
    try:
        return _COMMANDS[args.command](args, fmt)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"supercalc: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
