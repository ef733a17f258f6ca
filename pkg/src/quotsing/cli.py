"""Command-line interface.

Exit codes: 0 a verdict (or other result) was produced, 2 the verdict is
undecided, 3 the input was invalid, 4 a resource limit was hit.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from math import lcm
from pathlib import Path

from . import catalog
from .brieskorn import bp_construct_inductive, bp_construct_sylvester, bp_is_exceptional, bp_restricted_check
from .chars import (
    ClassData,
    dixon_character_table,
    invariant_dimensions,
    molien_dimensions,
    semiinvariant_dimensions,
)
from .classify import classify, nagura_bound, thomas_bound
from .exactnum import ParseError, canonical_order, parse_cyc
from .matgroup import DEFAULT_LIMIT, GMatrix, GroupTooLarge, MatrixGroup, close
from .primes import UncertifiedPrimality

EXIT_OK, EXIT_UNDECIDED, EXIT_INPUT, EXIT_LIMIT = 0, 2, 3, 4


class InputError(ValueError):
    """Invalid group file or arguments."""


# ---------------------------------------------------------------------------
# group files


def group_to_document(g: MatrixGroup, name: str | None = None) -> dict:
    m = 1
    for s in g.generators:
        m = lcm(m, s.field_order)
    m = canonical_order(m)
    doc = {
        "root_order": m,
        "dimension": g.dim,
        "generators": [s.to_text(m) for s in g.generators],
    }
    if name:
        doc["name"] = name
    doc["order"] = g.order
    return doc


def read_group_document(doc: dict) -> tuple[list[GMatrix], dict]:
    """Generators and declared metadata from a parsed group file."""
    if not isinstance(doc, dict):
        raise InputError("group file must hold a JSON object")
    for key in ("root_order", "dimension", "generators"):
        if key not in doc:
            raise InputError(f"missing field {key!r}")
    m, n = doc["root_order"], doc["dimension"]
    if not (isinstance(m, int) and m >= 1 and isinstance(n, int) and n >= 1):
        raise InputError("root_order and dimension must be positive integers")
    gens = []
    if not doc["generators"]:
        raise InputError("at least one generator is required")
    for k, rows in enumerate(doc["generators"]):
        if len(rows) != n or any(len(r) != n for r in rows):
            raise InputError(f"generator {k} is not {n}x{n}")
        parsed = []
        for i, row in enumerate(rows):
            out = []
            for j, text in enumerate(row):
                try:
                    out.append(parse_cyc(str(text), m))
                except ParseError as exc:
                    raise InputError(f"generator {k}, row {i + 1}, column {j + 1}: {exc}") from None
            parsed.append(out)
        mat = GMatrix(parsed)
        if mat.det().is_zero():
            raise InputError(f"generator {k} is singular")
        gens.append(mat)
    meta = {k: doc[k] for k in ("name", "order") if k in doc}
    return gens, meta


def load_group_file(path: str | Path, limit: int = DEFAULT_LIMIT):
    """A MatrixGroup (or ClassData for fixture files) and the declared metadata."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if isinstance(doc, dict) and "types" in doc:
        try:
            return catalog.class_data_from_json(doc), {"name": doc.get("name")}
        except (KeyError, ValueError, catalog.CatalogValidationError) as exc:
            raise InputError(f"{path}: invalid class-data file: {exc}") from None
    gens, meta = read_group_document(doc)
    g = close(gens, limit=limit)
    if "order" in meta and meta["order"] != g.order:
        raise InputError(f"declared order {meta['order']} but the generators give {g.order}")
    g.name = meta.get("name")
    return g, meta


# ---------------------------------------------------------------------------
# reports


def analysis_report(g, max_degree: int | None = None) -> dict:
    n1 = g.dim
    max_degree = n1 if max_degree is None else max_degree
    verdict = classify(g, max_degree=max_degree)
    inv = invariant_dimensions(g, max_degree)
    semi = semiinvariant_dimensions(g, max_degree)
    stats = {
        "dimension": n1,
        "order": str(g.order),
        "projective_order": str(g.projective_order),
        "classes": str(g.num_classes if isinstance(g, ClassData) else len(g.classes)),
    }
    return {
        "input": {"name": getattr(g, "name", None), "max_degree": max_degree},
        "group": stats,
        "verdict": verdict.to_json(),
        "invariant_dimensions": [{"degree": d, "invariants": str(inv[d]), "semi_invariants": str(semi[d])} for d in range(max_degree + 1)],
    }


def _print_text(report: dict, out) -> None:
    def line(key, value):
        print(f"{key:<26}{value}", file=out)

    for k, v in report["group"].items():
        line(k, v)
    v = report["verdict"]
    line("catalog match", v["catalog_name"] or "-")
    line("transitive", v["transitive"])
    line("primitivity", f"{v['primitivity']['state']} ({v['primitivity']['reason']})")
    line("reflections", v["reflections_present"])
    line("min semi-invariant degree", v["min_semiinvariant_degree"])
    line("exceptional", v["exceptional"])
    line("weakly exceptional", v["weakly_exceptional"])
    line("citations", ", ".join(v["citations"]))
    for b in v["lct_bounds"]:
        rel = {"upper": "<" if b["strict"] else "<=", "lower": ">="}[b["kind"]]
        line("lct bound", f"lct {rel} {b['value']}  [{b['citation']}]")
    for note in v["notes"]:
        line("note", note)
    print("degree  invariants  semi-invariants", file=out)
    for row in report["invariant_dimensions"]:
        print(f"{row['degree']:>6}  {row['invariants']:>10}  {row['semi_invariants']:>15}", file=out)
    if "timing_seconds" in report:
        line("time (s)", report["timing_seconds"])


def _emit(obj, as_json: bool, out, text_fn=None):
    if as_json or text_fn is None:
        print(json.dumps(obj, indent=2, sort_keys=True), file=out)
    else:
        text_fn(obj, out)


# ---------------------------------------------------------------------------
# commands


def _resolve_group(args):
    if getattr(args, "catalog", None):
        try:
            return catalog.build(args.catalog)
        except catalog.NoMatrixModel as exc:
            raise InputError(str(exc)) from None
        except catalog.UnknownGroup:
            raise InputError(f"unknown catalog group {args.catalog!r}") from None
    if not args.path:
        raise InputError("give a group file or --catalog NAME")
    return load_group_file(args.path, limit=args.limit)[0]


def cmd_analyze(args, out) -> int:
    start = time.perf_counter()
    g = _resolve_group(args)
    report = analysis_report(g, args.max_degree)
    if args.timing:
        report["timing_seconds"] = f"{time.perf_counter() - start:.3f}"
    _emit(report, args.json, out, _print_text)
    v = report["verdict"]
    return EXIT_UNDECIDED if v["exceptional"] == "undecided" else EXIT_OK


def cmd_catalog(args, out) -> int:
    if args.action == "list":
        rows = [
            {"name": e.name, "dimension": e.dim, "order": e.order, "model": e.model, "exceptional": e.exceptional, "summary": e.summary}
            for e in catalog.ENTRIES.values()
        ]
        if args.json:
            _emit(rows, True, out)
        else:
            for r in rows:
                print(f"{r['name']:<20}{r['dimension']:>3}{r['order']:>8}  {r['model']:<9}{r['exceptional']:<5}{r['summary']}", file=out)
        return EXIT_OK
    if not args.name:
        raise InputError("catalog build needs a group name")
    entry = catalog.entry(args.name)
    if entry.model == "declared":
        raise InputError(f"{args.name} has no matrix model or class data")
    if entry.model == "fixture":
        doc = catalog.read_fixture_json(args.name)
    else:
        doc = group_to_document(catalog.build(args.name), args.name)
    text = json.dumps(doc, indent=1) + "\n"
    if args.output:
        Path(args.output).write_text(text)
        print(f"wrote {args.name} (order {entry.order}) to {args.output}", file=out)
    else:
        out.write(text)
    return EXIT_OK


def cmd_bp(args, out) -> int:
    if args.action == "check":
        if len(args.values) < 4:
            raise InputError("bp check needs at least four exponents")
        try:
            check = bp_is_exceptional(args.values)
        except ValueError as exc:
            raise InputError(str(exc)) from None
        result = check.to_json()
        result["restricted"] = bp_restricted_check(args.values, allow_probable=args.allow_probable)
        if args.json:
            _emit(result, True, out)
        else:
            print(f"exceptional: {str(check.exceptional).lower()}", file=out)
            print(f"reciprocal sum: {result['reciprocal_sum']}", file=out)
            print(f"restricted condition: {str(result['restricted']).lower()}", file=out)
            print(f"reason: {check.reason}", file=out)
        return EXIT_OK
    if len(args.values) != 1:
        raise InputError("bp construct takes a single n")
    n = args.values[0]
    build = bp_construct_sylvester if args.sylvester else bp_construct_inductive
    try:
        t = build(n, allow_probable=args.allow_probable)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    check = bp_is_exceptional(t)
    result = {"exponents": [str(a) for a in t.exponents], "primality": t.primality, "check": check.to_json()}
    if args.json:
        _emit(result, True, out)
    else:
        print(" ".join(result["exponents"]), file=out)
        print(f"primality: {t.primality}; exceptional: {str(check.exceptional).lower()}", file=out)
    return EXIT_OK


def cmd_bound(args, out) -> int:
    try:
        if args.kind == "thomas":
            p, b = thomas_bound(args.n)
            result = {"n": args.n, "prime": p, "bound": f"{b}/1", "interval": f"({2 * args.n + 3}, {2 * (2 * args.n + 3)})"}
        else:
            p, b = nagura_bound(args.n)
            result = {"n": args.n, "prime": p, "bound": f"{b.numerator}/{b.denominator}", "limit": f"{12 * (args.n + 1)}/5"}
    except ValueError as exc:
        raise InputError(str(exc)) from None
    if args.json:
        _emit(result, True, out)
    else:
        print(f"p' = {result['prime']}, bound {result['bound'].removesuffix('/1')}", file=out)
    return EXIT_OK


def cmd_molien(args, out) -> int:
    g = _resolve_group(args)
    if isinstance(g, ClassData):
        raise InputError("the Molien series needs a matrix model")
    d = g.dim if args.max_degree is None else args.max_degree
    series = molien_dimensions(g, d)
    if args.json:
        _emit({"max_degree": d, "coefficients": [str(c) for c in series]}, True, out)
    else:
        print(" ".join(str(c) for c in series), file=out)
    return EXIT_OK


def cmd_chartable(args, out) -> int:
    g = _resolve_group(args)
    if isinstance(g, ClassData):
        raise InputError("character tables need a matrix model")
    table = dixon_character_table(g)
    sizes = [str(c.size) for c in g.classes]
    orders = [str(g.element_order(c.representative)) for c in g.classes]
    rows = [[str(v) for v in chi] for chi in table.characters]
    if args.json:
        _emit({"class_sizes": sizes, "element_orders": orders, "characters": rows}, True, out)
        return EXIT_OK
    width = max(len(x) for r in rows + [sizes, orders] for x in r) + 1
    print("size  " + "".join(s.rjust(width) for s in sizes), file=out)
    print("order " + "".join(s.rjust(width) for s in orders), file=out)
    for i, r in enumerate(rows):
        print(f"X{i + 1:<4} " + "".join(s.rjust(width) for s in r), file=out)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quotsing", description="Exceptional quotient singularities of finite linear groups")
    sub = p.add_subparsers(dest="command", required=True)

    def group_args(sp):
        sp.add_argument("path", nargs="?", help="group file (JSON)")
        sp.add_argument("--catalog", metavar="NAME", help="use a catalog group instead of a file")
        sp.add_argument("--limit", type=int, default=DEFAULT_LIMIT, help="closure size limit")
        sp.add_argument("--max-degree", type=int, default=None)
        sp.add_argument("--json", action="store_true")

    a = sub.add_parser("analyze", help="classify a group")
    group_args(a)
    a.add_argument("--timing", action="store_true", help="add wall-clock time (breaks byte-identical output)")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("catalog", help="list or export catalog groups")
    c.add_argument("action", choices=["list", "build"])
    c.add_argument("name", nargs="?")
    c.add_argument("-o", "--output")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_catalog)

    b = sub.add_parser("bp", help="Brieskorn-Pham exponent arithmetic")
    b.add_argument("action", choices=["check", "construct"])
    b.add_argument("values", nargs="+", type=int)
    b.add_argument("--sylvester", action="store_true")
    b.add_argument("--allow-probable", action="store_true", help="accept BPSW beyond the proved primality range")
    b.add_argument("--json", action="store_true")
    b.set_defaults(func=cmd_bp)

    bd = sub.add_parser("bound", help="prime-gap bounds for lct")
    bd.add_argument("kind", choices=["thomas", "nagura"])
    bd.add_argument("n", type=int)
    bd.add_argument("--json", action="store_true")
    bd.set_defaults(func=cmd_bound)

    m = sub.add_parser("molien", help="Molien series coefficients")
    group_args(m)
    m.set_defaults(func=cmd_molien)

    t = sub.add_parser("chartable", help="character table by Dixon's method")
    group_args(t)
    t.set_defaults(func=cmd_chartable)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (InputError, catalog.UnknownGroup) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UncertifiedPrimality as exc:
        print(f"error: {exc} (rerun with --allow-probable)", file=sys.stderr)
        return EXIT_INPUT
    except GroupTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT


if __name__ == "__main__":
    sys.exit(main())
