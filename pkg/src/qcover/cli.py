"""Command line: construct, verify, bounds, stats, density.

Exit codes: 0 success, 1 usage error, 2 verification failure,
3 construction infeasible, 4 C_2(10,5,3) refinement fell back to 45231.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import constructions as C
from .bounds import BoundTable, build_witness, density
from .design import DesignError, structural_counts
from .qcd import QcdError, qcd_read, qcd_write
from .render import FORMATS, render
from .spreads import lengthen
from .verify import (
    CoverageError,
    MemoryCapExceeded,
    multiplicity_histogram,
    v0_dim_filter,
    verify_cover,
)

EXIT_OK, EXIT_USAGE, EXIT_UNCOVERED, EXIT_INFEASIBLE, EXIT_FALLBACK = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _fail(code: int, kind: str, message: str, **extra) -> int:
    payload = {"error": kind, "message": message, "exit": code}
    payload.update(extra)
    print(json.dumps(payload, ensure_ascii=False), file=sys.stderr)
    return code


# ---------------------------------------------------------------------------
# construct
# ---------------------------------------------------------------------------

def _need(args, *names):
    missing = [f"--{x}" for x in names if getattr(args, x) is None]
    if missing:
        raise UsageError(f"method {args.method!r} needs {', '.join(missing)}")
    return [getattr(args, x) for x in names]


def _table_for(n):
    return BoundTable(max(n, 2))


def _witness(n, k, r):
    table = _table_for(n)
    cell = table.cell(n, k, r)
    if not cell.witnessed:
        raise DesignError(f"no constructive witness for C_2({n},{k},{r}) "
                          f"(best bound {cell.label()})")
    return build_witness(table, n, k, r)


def _m_all(a):
    n, k, r = _need(a, "n", "k", "r")
    return C.all_subspaces(n, k, r, verify=True)


def _m_point(a):
    n, k = _need(a, "n", "k")
    return C.point_cover(n, k)


def _m_hyperplane(a):
    n, r = _need(a, "n", "r")
    return C.hyperplane_cover(n, r)


def _m_normal(a):
    v, m = _need(a, "v", "m")
    return C.normal_spread_cover(v, m, a.delta or 0)


def _m_simple(a):
    (k,) = _need(a, "k")
    return C.simple_cmrd(k)


def _m_improved(a):
    n, k = _need(a, "n", "k")
    return C.improved_cmrd(n, k, _witness(n - k + 1, k, 2))


def _m_lengthen(a):
    n, k, r = _need(a, "n", "k", "r")
    return lengthen(_witness(n - 1, k - 1, r), provenance="ℓ")


def _m_recursive(a):
    n, k, r = _need(a, "n", "k", "r")
    return C.recursive_construction(_witness(n - 1, k, r), _witness(n - 1, k - 1, r - 1))


def _m_chain(a):
    levels = a.levels or 1
    return C.cmrd_chain(levels)[-1]


def _m_table(a):
    n, k, r = _need(a, "n", "k", "r")
    return _witness(n, k, r)


def _m_45230(a):
    return C.cover_10_5_3(refine=not a.no_refine)


METHODS = {
    "a": _m_all,
    "p": _m_point,
    "q": _m_hyperplane,
    "n": _m_normal,
    "c": _m_simple,
    "f": lambda a: C.cover_7_3_2(),
    "b396": lambda a: C.cover_7_3_2(),
    "g": lambda a: C.cover_8_4_3(),
    "b6897": lambda a: C.cover_8_4_3(),
    "i": _m_improved,
    "ℓ": _m_lengthen,
    "l": _m_lengthen,
    "r": _m_recursive,
    "chain": _m_chain,
    "b7-5-3": lambda a: C.cover_7_5_3(),
    "b45230": _m_45230,
    "table": _m_table,
}


def cmd_construct(args) -> int:
    builder = METHODS.get(args.method)
    if builder is None:
        raise UsageError(f"unknown method {args.method!r}; known: {', '.join(METHODS)}")
    try:
        design = builder(args)
    except CoverageError as exc:
        return _fail(EXIT_UNCOVERED, "verification", str(exc),
                     uncovered=exc.report.uncovered)
    except (ValueError, IndexError) as exc:
        if isinstance(exc, DesignError) or "witness" in str(exc):
            return _fail(EXIT_INFEASIBLE, "infeasible", str(exc))
        raise UsageError(str(exc)) from exc
    except (AssertionError, MemoryCapExceeded) as exc:
        return _fail(EXIT_INFEASIBLE, "infeasible", str(exc))
    if not design.verified:
        return _fail(EXIT_UNCOVERED, "verification", f"{design!r} was not verified")
    if args.output:
        qcd_write(design, args.output)
    print(f"C_2({design.n},{design.k},{design.r}): {len(design)} blocks, "
          f"provenance {design.provenance}, verified")
    if design.provenance == "i:fallback":
        return _fail(EXIT_FALLBACK, "ambiguity",
                     "refinement to 45230 did not verify; wrote the 45231 design",
                     size=len(design))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify / stats / density
# ---------------------------------------------------------------------------

def _parse_filter(text):
    key, _, value = text.partition("=")
    if key != "v0-dim" or not value.isdigit():
        raise UsageError(f"bad filter {text!r}; expected v0-dim=<d>")
    return int(value)


def _load(path, strict_count=True):
    try:
        return qcd_read(path, strict_count)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def cmd_verify(args) -> int:
    try:
        design = _load(args.file)
    except QcdError as exc:
        if "count=" not in str(exc):
            raise
        # a truncated body still gets checked so the first gap is reported
        print(f"warning: {exc}", file=sys.stderr)
        design = _load(args.file, strict_count=False)
    report = verify_cover(design, histogram=args.histogram,
                          shards=args.shards, workers=args.workers)
    print(f"C_2({design.n},{design.k},{design.r}): {len(design)} blocks")
    print(report.summary())
    if args.filter is not None:
        d = _parse_filter(args.filter)
        ell = args.ell if args.ell is not None else design.k
        hist = multiplicity_histogram(design, v0_dim_filter(design.n, ell, d))
        body = ", ".join(f"{m}: {c}" for m, c in sorted(hist.items()))
        print(f"filtered histogram (dim X cap V_0 = {d}, prefix length {ell}): {{{body}}}")
    if not report.is_cover:
        return _fail(EXIT_UNCOVERED, "verification",
                     f"{report.uncovered} r-subspaces uncovered",
                     first_uncovered=[int(v) for v in report.first_uncovered.rows])
    return EXIT_OK


def cmd_stats(args) -> int:
    design = _load(args.file)
    print(f"C_2({design.n},{design.k},{design.r}): {len(design)} blocks, "
          f"provenance {design.provenance or '-'}")
    for label, ann in sorted(design.annotations.items()):
        print(f"annotation {label}: dim {ann.subspace.dim}, {ann.count} blocks inside")
    for path in args.inside or []:
        u = _load(path)
        if u.n != design.n or len(u) != 1:
            raise UsageError(f"{path} must hold exactly one subspace of F_2^{design.n}")
        sub = u.blocks[0]
        print(f"inside {path}: {structural_counts(design, sub)}")
    return EXIT_OK


def cmd_density(args) -> int:
    design = _load(args.file)
    ratio: Fraction = density(design)
    print(f"{ratio.numerator}/{ratio.denominator}")
    print(f"{float(ratio):.9f}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# bounds
# ---------------------------------------------------------------------------

def cmd_bounds(args) -> int:
    if not 2 <= args.n_max <= 12:
        raise UsageError("--n-max must lie in 2..12")
    table = BoundTable(args.n_max)
    sys.stdout.write(render(table, args.format, args.n_min))
    if not args.fixture_check:
        return EXIT_OK
    values, markers = table.compare_reference()
    for key, got, ref in markers:
        print(f"warning: marker differs at C_2{key}: computed {got}, "
              f"table {ref.lower_marker}{ref.lower}-{ref.upper}{ref.upper_marker}",
              file=sys.stderr)
    if values:
        cells = [{"cell": list(key), "computed": got,
                  "reference": [ref.lower, ref.upper]} for key, got, ref in values]
        return _fail(EXIT_UNCOVERED, "fixture", f"{len(values)} value mismatches",
                     mismatches=cells)
    print(f"fixture check: all values reproduced ({len(markers)} marker warnings)",
          file=sys.stderr)
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qcover", description="q-covering designs over F_2")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="build and verify a design")
    c.add_argument("--method", required=True, help=", ".join(METHODS))
    for name in ("n", "k", "r", "v", "m", "delta", "levels"):
        c.add_argument(f"--{name}", type=int)
    c.add_argument("--no-refine", action="store_true",
                   help="b45230: build the 45231 design directly")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="check coverage of a .qcd file")
    v.add_argument("file")
    v.add_argument("--histogram", action="store_true")
    v.add_argument("--filter", help="v0-dim=<d>")
    v.add_argument("--ell", type=int, help="prefix length of V_0 (default k)")
    v.add_argument("--shards", type=int, default=1)
    v.add_argument("--workers", type=int, default=1)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bounds", help="best known bounds table")
    b.add_argument("--n-max", type=int, default=10)
    b.add_argument("--n-min", type=int, default=2)
    b.add_argument("--format", choices=FORMATS, default="text")
    b.add_argument("--fixture-check", action="store_true")
    b.set_defaults(func=cmd_bounds)

    s = sub.add_parser("stats", help="structural counts")
    s.add_argument("file")
    s.add_argument("--inside", action="append", help=".qcd file holding one subspace U")
    s.set_defaults(func=cmd_stats)

    d = sub.add_parser("density", help="exact density against the covering bound")
    d.add_argument("file")
    d.set_defaults(func=cmd_density)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        return _fail(EXIT_USAGE, "usage", str(exc))
    except QcdError as exc:
        return _fail(EXIT_USAGE, "parse", str(exc), line=exc.line)
    except MemoryCapExceeded as exc:
        return _fail(EXIT_INFEASIBLE, "memory", str(exc),
                     required=exc.required, available=exc.available)


if __name__ == "__main__":
    sys.exit(main())
