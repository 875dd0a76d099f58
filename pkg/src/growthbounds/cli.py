"""Command-line front door: enumeration, bounds, and golden-table reproduction.

Exit codes: 0 success / golden match, 1 usage error, 2 tolerance violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from decimal import Decimal
from fractions import Fraction
from importlib import resources

from . import __version__, automata, enumeration, manifolds, twig
from ._round import half_even5
from .polyalg import BivariatePoly
from .walk_rules import RULE_IDS, get_rule

LATTICES = ("square", "triangular", "hypercubic")


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the contract reserves 2 for
    tolerance violations, so remap to 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(1)


def load_golden() -> dict:
    path = resources.files("growthbounds.data").joinpath("golden.json")
    return json.loads(path.read_text())


def _build_parser():
    top = _Parser(prog="growth-bounds",
                  description="Exact counts and rigorous growth-constant "
                              "bounds for restricted lattice walks and "
                              "manifolds.")
    top.add_argument("--version", action="version", version=__version__)
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("enumerate", help="exact walk counts c_1..c_n")
    p.add_argument("--rule", required=True, choices=RULE_IDS)
    p.add_argument("--lattice", required=True, choices=LATTICES)
    p.add_argument("--d", type=int, default=None,
                   help="dimension (hypercubic lattice only)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("automata-bound",
                       help="certified transfer-matrix upper bound")
    p.add_argument("--rule", required=True, choices=RULE_IDS)
    p.add_argument("--lattice", required=True, choices=LATTICES)
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--k", type=int, required=True, help="max loop size")
    p.add_argument("--sizes", choices=("auto", "all", "odd"), default="auto")
    p.add_argument("--osculation", choices=("auto", "strict", "permissive"),
                   default="auto", dest="osculation")
    p.add_argument("--emit-matrix", default=None, metavar="FILE")
    p.add_argument("--format", choices=("csv", "json"), default="json")

    p = sub.add_parser("twig-bound", help="twig-method upper bound")
    p.add_argument("--d", type=int, required=True, choices=(2, 3))
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--emit-poly", default=None, metavar="FILE")
    p.add_argument("--format", choices=("csv", "json"), default="json")

    p = sub.add_parser("manifold-count", help="exact fixed-complex counts")
    p.add_argument("--class", required=True, dest="cls",
                   choices=manifolds.CLASS_IDS)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("formula-bound", help="closed-form bound calculators")
    p.add_argument("--theorem", type=int, required=True, choices=(2, 3, 4, 5, 6))
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("reproduce", help="regenerate a reference table and "
                                         "diff against golden values")
    p.add_argument("--table", type=int, required=True, choices=(1, 2, 3, 4, 5, 6))
    p.add_argument("--full", action="store_true",
                   help="include the long-running optional entries")
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    return top


def _emit(obj, fmt, csv_lines):
    if fmt == "json":
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        for line in csv_lines:
            print(line)


def _cmd_enumerate(args) -> int:
    rule = get_rule(args.rule, args.lattice, d=args.d)
    counts = enumeration.count_walks(rule, args.n, threads=args.threads)
    _emit({"rule": args.rule, "lattice": args.lattice, "n": args.n,
           "counts": counts},
          args.format, [",".join(str(c) for c in counts)])
    return 0


def _cmd_automata(args) -> int:
    rule = get_rule(args.rule, args.lattice, d=args.d)
    report = automata.automata_bound(rule, args.k, sizes=args.sizes,
                                     endpoint_osculation=args.osculation)
    matrix = report.pop("matrix")
    if args.emit_matrix:
        with open(args.emit_matrix, "w") as fh:
            json.dump(matrix.to_json_dict(), fh)
    report["loops_per_size"] = {str(m): c
                                for m, c in report["loops_per_size"].items()}
    _emit(report, args.format,
          [f"{args.rule},{args.lattice},{args.k},{report['bound']}"])
    return 0


def _cmd_twig(args) -> int:
    report = twig.twig_bound_report(args.d, args.level)
    if args.emit_poly:
        poly = twig.level_polynomial(args.d, args.level)
        with open(args.emit_poly, "w") as fh:
            json.dump(poly.to_json_dict(), fh)
    out = {"d": args.d, "level": args.level, "bound": report["bound"],
           "exact": report["exact"],
           "audits": [{k: v for k, v in a.items()
                       if k != "exact"} | {"exact": str(a["exact"])
                                           if a["exact"] is not None else None}
                      for a in report["audits"]]}
    _emit(out, args.format, [f"{args.d},{args.level},{report['bound']}"])
    return 0


def _cmd_manifold(args) -> int:
    mc = manifolds.ManifoldClass(args.cls, args.d, args.k)
    try:
        count = manifolds.enumerate_fixed(mc, args.n, cap=args.cap)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    _emit({"class": args.cls, "d": args.d, "k": args.k, "n": args.n,
           "count": count},
          args.format, [str(count)])
    return 0


_THEOREMS = {
    2: ("thm2", manifolds.bound_closed_sam_upper),
    3: ("thm3", manifolds.bound_sam_som_upper),
    4: ("thm4", manifolds.bound_xd_upper),
    5: ("thm5", manifolds.bound_sam_lower),
    6: ("thm6", manifolds.bound_closed_sam_lower),
}


def _cmd_formula(args) -> int:
    formula_id, fn = _THEOREMS[args.theorem]
    try:
        value = fn(args.d, args.k)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if isinstance(value, float):
        exact = None
        decimal = float(half_even5(Fraction(value).limit_denominator(10 ** 12)))
    else:
        frac = Fraction(value)
        exact = f"{frac.numerator}/{frac.denominator}"
        decimal = float(half_even5(frac))
    print(json.dumps({"formula_id": formula_id, "d": args.d, "k": args.k,
                      "exact": exact, "decimal": decimal}))
    return 0


# ---------------------------------------------------------------------------
# Golden-table reproduction.
# ---------------------------------------------------------------------------

_DEFAULT_KEYS = {
    1: list(range(1, 15)),
    2: [5, 7, 9, 11, 13],
    3: [4, 5, 6, 7, 10],
    4: [4, 6, 8, 10],
    5: [1, 2],
    6: [4, 12, 20, 28],
}


def _reproduce_rows(table: int, golden: dict, full: bool, threads):
    spec = golden[f"table{table}"]
    if table == 1:
        n = len(spec["counts"]) if full else max(_DEFAULT_KEYS[1])
        rule = get_rule(spec["rule"], spec["lattice"])
        counts = enumeration.count_walks(rule, n, threads=threads)
        for i, c in enumerate(counts):
            want = spec["counts"][i]
            yield {"key": i + 1, "computed": c, "golden": want,
                   "ok": c == want, "flag": None}
        return
    keys = (sorted(int(k) for k in spec["bounds"]) if full
            else _DEFAULT_KEYS[table])
    tol = spec["tolerance"]
    for k in keys:
        want = float(spec["bounds"][str(k)])
        if table == 5:
            got = float(twig.twig_bound_report(3, k)["bound"])
        else:
            rule = get_rule(spec["rule"], spec["lattice"])
            got = float(automata.automata_bound(rule, k)["bound"])
        flag = spec.get("flags", {}).get(str(k))
        if flag:
            lo, hi = spec["flag_window"][str(k)]
            ok = lo <= got <= hi
        else:
            ok = abs(got - want) <= tol
        yield {"key": k, "computed": got, "golden": want, "ok": ok,
               "flag": flag}


def _cmd_reproduce(args) -> int:
    golden = load_golden()
    rows = list(_reproduce_rows(args.table, golden, args.full, args.threads))
    ok = all(r["ok"] for r in rows)
    if args.format == "json":
        print(json.dumps({"table": args.table, "rows": rows, "ok": ok},
                         indent=2))
    else:
        for r in rows:
            cols = [str(r["key"]), str(r["computed"]), str(r["golden"]),
                    "ok" if r["ok"] else "MISMATCH"]
            if r["flag"]:
                cols.append(r["flag"])
            print(",".join(cols))
    return 0 if ok else 2


_COMMANDS = {
    "enumerate": _cmd_enumerate,
    "automata-bound": _cmd_automata,
    "twig-bound": _cmd_twig,
    "manifold-count": _cmd_manifold,
    "formula-bound": _cmd_formula,
    "reproduce": _cmd_reproduce,
}


def run(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    return _COMMANDS[args.command](args)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
