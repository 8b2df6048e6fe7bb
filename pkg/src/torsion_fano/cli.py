"""Command-line interface.

    torsion-fano enumerate <group> [--table PATH] [--golden] [--json]
    torsion-fano hilbert <record|cover|basket> [--degree Q] --order N
                 [--closed-form] [--json]
    torsion-fano verify <record> [--order N] [--json]
    torsion-fano reproduce [--out PATH]

Exit codes for enumerate: 0 golden match (or plain success), 1 golden
mismatch, 2 undecidable branches present, 3 input error."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .baskets import Basket, canonicalize
from .catalog import Catalog, CatalogError
from .engine import enumerate_baskets
from .groups import FiniteAbelianGroup, GroupError
from .reproduce import golden_diff, reproduce_document
from .riemann_roch import FanoNumericalData, equivariant_hilbert_series
from .series import (
    GradedSeries,
    infer_generators,
    polynomial_text,
    recover_numerator,
    series_text,
)
from .tables import CyclicBasketTable, TableIncompleteError
from .verify import cover_series, verify_record


def _basket_json(b: Basket) -> dict:
    counter = b.counter()
    return {
        "group": str(b.group),
        "entries": [
            {"r": e.germ.r, "a": e.germ.a, "labels": list(e.labels), "count": v}
            for e, v in sorted(counter.items())
        ],
    }


def _series_json(s: GradedSeries) -> dict:
    return {
        "truncation_order": s.truncation_order,
        "classes": [
            {"class": list(c.exponents), "coefficients": list(s.class_values(c))}
            for c in s.group.elements()
            if any(s.class_values(c))
        ],
    }


def cmd_enumerate(args) -> int:
    try:
        group = FiniteAbelianGroup.parse(args.group)
    except GroupError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    catalog = Catalog.load(args.data)
    table = CyclicBasketTable.load(args.table) if args.table else catalog.table
    try:
        result = enumerate_baskets(group, table)
    except TableIncompleteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    expected, missing, extra = golden_diff(catalog, group, result)
    payload = {
        "group": str(group),
        "count": len(result.baskets),
        "baskets": [
            {**_basket_json(b), "name": expected.get(b.entries)}
            for b in result.baskets
        ],
        "statistics": result.statistics,
        "undecidable": list(result.undecidable),
    }
    if args.golden:
        payload["golden"] = {
            "match": not missing and not extra,
            "missing": missing,
            "extra": [_basket_json(b) for b in extra],
        }
    if args.json:
        print(json.dumps(payload, indent=1, sort_keys=True))
    else:
        print(f"{group}: {len(result.baskets)} torsion baskets")
        for b in result.baskets:
            name = expected.get(b.entries)
            print(f"  {name or '(new)'}: {b}")
        stats = ", ".join(f"{k}={v}" for k, v in sorted(result.statistics.items()))
        print(f"search: {stats}")
        for u in result.undecidable:
            print(f"undecidable: {u}")
        if args.golden:
            print(f"golden match: {not missing and not extra}")
    if result.undecidable:
        return 2
    if args.golden and (missing or extra):
        return 1
    return 0


def cmd_hilbert(args) -> int:
    catalog = Catalog.load(args.data)
    order = args.order
    target = args.target
    degree = None
    basket = None
    title = target

    if target in catalog.aliases:
        record = catalog.record(target)
        degree = record.quotient_degree
        basket = record.full_basket
        title = record.name
    elif target in catalog.covers:
        values = cover_series(catalog.covers[target], order)
        if args.json:
            print(json.dumps({"cover": target, "coefficients": list(values)}))
        else:
            print(f"{target}: " + ", ".join(str(v) for v in values))
        return 0
    elif target in catalog.baskets:
        if args.degree is None:
            print("error: a basket target needs --degree", file=sys.stderr)
            return 3
        degree = Fraction(args.degree)
        basket = catalog.baskets[target].basket
    else:
        print(f"error: unknown record/cover/basket {target!r}", file=sys.stderr)
        return 3

    data = FanoNumericalData(degree, basket)
    margin = order + sum(w for w in basket.group.factor_orders) + 8
    series = equivariant_hilbert_series(data, max(order, margin))
    out = {"target": title, "degree": str(degree), "series": _series_json(series.truncate(order))}
    closed = None
    if args.closed_form:
        gens = infer_generators(series.truncate(order))
        factors = [(c, d) for d, c in gens.generators]
        bound = sum(d for d, _ in gens.generators)
        try:
            numerator = recover_numerator(series, factors, bound)
            closed = {
                "generators": [
                    {"degree": d, "class": list(c)} for d, c in gens.generators
                ],
                "numerator": polynomial_text(numerator),
            }
        except Exception as exc:  # recovery failure reported with detail
            closed = {"error": str(exc)}
        out["closed_form"] = closed
    if args.json:
        print(json.dumps(out, indent=1, sort_keys=True))
    else:
        print(f"{title} (degree {degree}):")
        print(series_text(series.truncate(order)))
        if closed is not None:
            if "error" in closed:
                print(f"closed form: recovery failed: {closed['error']}")
            else:
                gens_text = ", ".join(
                    f"(deg {g['degree']}, {tuple(g['class'])})"
                    for g in closed["generators"]
                )
                print(f"generators: {gens_text}")
                print(f"numerator: {closed['numerator']}")
    return 0


def cmd_verify(args) -> int:
    catalog = Catalog.load(args.data)
    try:
        record = catalog.record(args.record)
    except CatalogError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    verification = verify_record(record, catalog.table, order=args.order)
    if args.json:
        print(json.dumps(verification.to_json(), indent=1, sort_keys=True))
    else:
        print(f"{record.name}: {'PASS' if verification.ok else 'FAIL'}")
        for name, ok, detail in verification.checks:
            print(f"  [{'ok' if ok else 'FAIL'}] {name}: {detail}")
    return 0 if verification.ok else 1


def cmd_reproduce(args) -> int:
    catalog = Catalog.load(args.data)
    doc = reproduce_document(catalog)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(doc)
    else:
        print(doc, end="")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="torsion-fano",
        description=(
            "enumerate noncyclic torsion baskets of Fano threefolds and "
            "verify Fano-Enriques quotients against a Molien-series oracle"
        ),
    )
    parser.add_argument(
        "--data", default=None, help="data directory (default: packaged data)"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="enumerate torsion baskets of a group")
    p.add_argument("group", help='group literal, e.g. "Z2xZ4"')
    p.add_argument("--table", default=None, help="cyclic table JSON path")
    p.add_argument("--golden", action="store_true", help="diff against shipped tables")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("hilbert", help="equivariant Hilbert series")
    p.add_argument("target", help="record, cover, or basket name")
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--degree", default=None, help="(-K)^3 for basket targets")
    p.add_argument("--closed-form", action="store_true")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("verify", help="verify a quotient record")
    p.add_argument("record")
    p.add_argument("--order", type=int, default=12)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("reproduce", help="regenerate all tabulated results")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_reproduce)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
