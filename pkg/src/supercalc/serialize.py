"""Versioned JSON forms for polynomials, expressions, instances, and reports.

Every document carries ``"schema": 1``.  ``canonical_dumps`` fixes key
order and whitespace so equal values serialize to identical bytes, which
is what makes verification reports reproducible and golden files diffable.
Coefficients travel as exact rational strings like ``"-3/2"``; no floats
appear anywhere.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import List, Union

from .algebra import Coordinate, Dims, Parity, SuperPolynomial
from .calculus import SuperMap
from .symbolic import Expression, FunctionSymbol, Jet, Term
from .verify import Instance, Report

SCHEMA_VERSION = 1


class SchemaError(ValueError):
    """Raised when a JSON document does not match the expected shape."""


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def _expect(condition: bool, message: str) -> None:
    if not condition:
        raise SchemaError(message)


def _check_header(obj, kind: str) -> None:
    _expect(isinstance(obj, dict), f"expected a JSON object for {kind}")
    _expect(obj.get("schema") == SCHEMA_VERSION, f"unsupported schema version {obj.get('schema')!r}")
    _expect(obj.get("kind") == kind, f"expected kind {kind!r}, got {obj.get('kind')!r}")


# -- polynomials ---------------------------------------------------------------


def poly_to_obj(p: SuperPolynomial) -> dict:
    terms = [
        {
            "even": {str(ordinal): e for ordinal, e in even},
            "odd": list(odd),
            "coeff": str(coeff),
        }
        for (even, odd), coeff in p.sorted_terms()
    ]
    return {
        "schema": SCHEMA_VERSION,
        "kind": "superpolynomial",
        "dims": [p.dims.even, p.dims.odd],
        "terms": terms,
    }


def poly_from_obj(obj) -> SuperPolynomial:
    _check_header(obj, "superpolynomial")
    try:
        dims = Dims(int(obj["dims"][0]), int(obj["dims"][1]))
        terms = {}
        for t in obj["terms"]:
            even = tuple(sorted((int(k), int(v)) for k, v in t["even"].items()))
            odd = tuple(int(g) for g in t["odd"])
            coeff = Fraction(t["coeff"])
            terms[(even, odd)] = terms.get((even, odd), 0) + coeff
        return SuperPolynomial(dims, terms)
    except SchemaError:
        raise
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise SchemaError(f"malformed polynomial document: {exc}") from exc


# -- coordinates, symbols, expressions ------------------------------------------


def coord_to_obj(c: Coordinate) -> dict:
    return {"space": c.space, "parity": int(c.parity), "ordinal": c.ordinal}


def coord_from_obj(obj) -> Coordinate:
    try:
        return Coordinate(obj["space"], Parity(obj["parity"]), int(obj["ordinal"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed coordinate: {exc}") from exc


def _head_to_obj(head) -> dict:
    if isinstance(head, FunctionSymbol):
        return {"kind": "symbol", "name": head.name, "arity": head.arity, "parity": int(head.parity)}
    return {"kind": "component", **coord_to_obj(head)}


def _head_from_obj(obj):
    try:
        if obj["kind"] == "symbol":
            return FunctionSymbol(obj["name"], int(obj["arity"]), Parity(obj["parity"]))
        if obj["kind"] == "component":
            return coord_from_obj(obj)
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed jet head: {exc}") from exc
    raise SchemaError(f"unknown jet head kind {obj.get('kind')!r}")


def expression_to_obj(e: Expression) -> dict:
    terms = [
        {
            "coeff": str(t.coeff),
            "factors": [
                {"head": _head_to_obj(j.head), "indices": [coord_to_obj(c) for c in j.indices]}
                for j in t.factors
            ],
        }
        for t in e.terms
    ]
    return {"schema": SCHEMA_VERSION, "kind": "expression", "terms": terms}


def expression_from_obj(obj) -> Expression:
    _check_header(obj, "expression")
    try:
        terms = tuple(
            Term(
                Fraction(t["coeff"]),
                tuple(
                    Jet(_head_from_obj(j["head"]), tuple(coord_from_obj(c) for c in j["indices"]))
                    for j in t["factors"]
                ),
            )
            for t in obj["terms"]
        )
        return Expression(terms)
    except SchemaError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"malformed expression document: {exc}") from exc


# -- instances and reports -------------------------------------------------------


def instance_to_obj(inst: Instance) -> dict:
    if isinstance(inst.f, SuperPolynomial):
        f_obj: dict = poly_to_obj(inst.f)
    else:
        f_obj = {"kind": "symbol", "name": inst.f.name, "arity": inst.f.arity, "parity": int(inst.f.parity)}
    return {
        "schema": SCHEMA_VERSION,
        "kind": "instance",
        "seed": inst.seed,
        "source": [inst.source.even, inst.source.odd],
        "target": [inst.target.even, inst.target.odd],
        "map": {
            "even": [poly_to_obj(c) for c in inst.smap.even_components],
            "odd": [poly_to_obj(c) for c in inst.smap.odd_components],
        },
        "f": f_obj,
        "idx": [coord_to_obj(c) for c in inst.idx],
    }


def instance_from_obj(obj) -> Instance:
    _check_header(obj, "instance")
    try:
        source = Dims(int(obj["source"][0]), int(obj["source"][1]))
        target = Dims(int(obj["target"][0]), int(obj["target"][1]))
        smap = SuperMap(
            source,
            target,
            tuple(poly_from_obj(c) for c in obj["map"]["even"]),
            tuple(poly_from_obj(c) for c in obj["map"]["odd"]),
        )
        f_obj = obj["f"]
        if f_obj.get("kind") == "symbol":
            f: Union[SuperPolynomial, FunctionSymbol] = FunctionSymbol(
                f_obj["name"], int(f_obj["arity"]), Parity(f_obj["parity"])
            )
        else:
            f = poly_from_obj(f_obj)
        idx = tuple(coord_from_obj(c) for c in obj["idx"])
        return Instance(source, target, smap, f, idx, int(obj["seed"]))
    except SchemaError:
        raise
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise SchemaError(f"malformed instance document: {exc}") from exc


def corpus_to_obj(instances: List[Instance]) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "kind": "instance_corpus",
        "instances": [instance_to_obj(i) for i in instances],
    }


def corpus_from_obj(obj) -> List[Instance]:
    _check_header(obj, "instance_corpus")
    return [instance_from_obj(i) for i in obj["instances"]]


def report_to_obj(r: Report) -> dict:
    # elapsed time is deliberately omitted: equal inputs must give equal bytes
    return {
        "schema": SCHEMA_VERSION,
        "kind": "report",
        "instance": r.instance_id,
        "mode": r.mode,
        "equal": r.equal,
        "lhs": r.lhs,
        "rhs": r.rhs,
    }


def campaign_to_obj(reports: List[Report]) -> dict:
    return {
        "schema": SCHEMA_VERSION,
        "kind": "verification_report",
        "total": len(reports),
        "passed": sum(1 for r in reports if r.equal),
        "reports": [report_to_obj(r) for r in reports],
    }
