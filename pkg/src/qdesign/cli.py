"""Command-line front end.

Three subcommands:

* ``order``  -- maximal design order for one (symmetry, n, k), by the exact
  solver, the closed-form tables, or both with a cross-check.
* ``table``  -- the same over a range of n, as aligned text, JSON or CSV.
* ``oracle`` -- the independent verifiers (``collision`` and ``moment``).

Results go to stdout and are byte-identical for identical arguments (the
JSON timing field is informational and excluded from that promise);
progress and warnings go to stderr.  Exit codes: 0 success, 1 failed
--expect assertion, 2 usage error, 3 resource limit.
"""
from __future__ import annotations

import argparse
import csv
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from .errors import FormatError, PreconditionError, ResourceLimitError
from .oracles import FIXTURES, collision_exists, commutant_check
from .solver import DesignOrder, max_design_order, theorem_order
from .symmetry import SymmetrySpec, constraint_system, irrep_table, parse_custom

_BUILTIN = ("z2", "u1", "su2")


def _warn(message: str) -> None:
    print(f"warning: {message}", file=sys.stderr)


def _progress(message: str) -> None:
    print(message, file=sys.stderr)


def _load_spec(args) -> tuple[SymmetrySpec, str]:
    if getattr(args, "custom", None):
        try:
            with open(args.custom, "r", encoding="utf-8") as fh:
                spec = parse_custom(fh.read())
        except OSError as exc:
            raise FormatError(f"cannot read {args.custom}: {exc.strerror}") from exc
        _warn(
            "custom symmetry: results assume the local gate sets act "
            "semi-universally on every sector; that assumption is not checked"
        )
        return spec, "custom"
    if not getattr(args, "symmetry", None):
        raise PreconditionError("one of --symmetry or --custom is required")
    return {
        "z2": SymmetrySpec.z2(),
        "u1": SymmetrySpec.u1(),
        "su2": SymmetrySpec.su2(),
    }[args.symmetry], args.symmetry


def _order_json(order: DesignOrder | None):
    if order is None:
        return None
    return "infinite" if order.infinite else {"finite": order.t_max}


def _order_text(order: DesignOrder | None) -> str:
    if order is None:
        return "-"
    return "infinite" if order.infinite else str(order.t_max)


def _certificate_json(order: DesignOrder | None):
    if order is None or order.certificate is None:
        return None
    return list(order.certificate.vector)


def _agreement(exact: DesignOrder | None, theorem: DesignOrder | None) -> str:
    if exact is None or theorem is None:
        return "n/a"
    if exact.infinite or theorem.infinite:
        return "yes" if exact.infinite == theorem.infinite else "no"
    return "yes" if exact.t_max == theorem.t_max else "no"


def _parse_expect(text: str, parser, kinds) -> tuple[str, int | None]:
    if text in ("design", "no-design", "infinite"):
        token, value = text, None
    elif text.startswith("finite:"):
        try:
            token, value = "finite", int(text.split(":", 1)[1])
        except ValueError:
            parser.error(f"bad --expect value {text!r}")
    else:
        parser.error(f"bad --expect value {text!r}")
    if token not in kinds:
        parser.error(f"--expect {text!r} does not apply to this subcommand")
    return token, value


def _check_order_expect(expect, order: DesignOrder | None) -> bool:
    token, value = expect
    if order is None:
        return False
    if token == "infinite":
        return order.infinite
    return not order.infinite and order.t_max == value


# ---------------------------------------------------------------------------
# order


def _compute_methods(spec, name, n, k, method, budget):
    exact = theorem = None
    if method in ("exact", "both"):
        exact = max_design_order(spec, n, k, budget)
    if method in ("theorem", "both") and name != "custom":
        theorem = theorem_order(spec, n, k)
    return exact, theorem


def cmd_order(args, parser) -> int:
    expect = _parse_expect(args.expect, parser, ("finite", "infinite")) if args.expect else None
    spec, name = _load_spec(args)
    method = args.method
    if name == "custom":
        if method == "theorem":
            parser.error("closed-form tables cover built-in symmetries only")
        method = "exact"
    if name != "custom" and (args.n is None or args.k is None):
        parser.error("--n and --k are required for built-in symmetries")
    n = args.n if args.n is not None else 1
    k = args.k if args.k is not None else 1

    started = time.perf_counter()
    try:
        exact, theorem = _compute_methods(spec, name, n, k, method, args.node_budget)
    except ResourceLimitError as exc:
        return _emit_resource_limit(args, name, exc)
    elapsed_ms = int((time.perf_counter() - started) * 1000)

    primary = exact if exact is not None else theorem
    covered = None if method == "exact" else (theorem is not None)
    agreement = _agreement(exact, theorem) if method == "both" else "n/a"

    if args.json:
        payload = {
            "symmetry": name,
            "n": args.n,
            "k": args.k,
            "order": _order_json(primary),
            "certificate": _certificate_json(primary),
            "method": method,
            "covered": covered,
            "agreement": agreement,
            "timing_ms": elapsed_ms,
        }
        print(json.dumps(payload))
    else:
        where = name if args.n is None else f"{name} n={args.n} k={args.k}"
        if method == "theorem" and theorem is None:
            print(f"{where}: not covered by the closed-form tables")
        else:
            line = f"{where}: t_max={_order_text(primary)} ({method}"
            if method == "both":
                line += (
                    f"; theorem={_order_text(theorem)} agreement={agreement}"
                    if covered
                    else "; theorem not covered"
                )
            line += ")"
            cert = _certificate_json(primary)
            if cert is not None:
                line += f" certificate={cert}"
            print(line)

    if expect is not None and not _check_order_expect(expect, primary):
        _warn(f"expectation {args.expect!r} not met")
        return 1
    return 0


def _emit_resource_limit(args, name, exc: ResourceLimitError) -> int:
    interval = (
        {"lower": exc.lower, "upper": exc.upper}
        if exc.lower is not None or exc.upper is not None
        else None
    )
    if getattr(args, "json", False):
        print(json.dumps({"symmetry": name, "error": "resource-limit",
                          "interval": interval, "message": str(exc)}))
    else:
        print(f"resource limit: {exc}")
    return 3


# ---------------------------------------------------------------------------
# table


def _table_cell(payload):
    name, n, k, budget = payload
    spec = {"z2": SymmetrySpec.z2(), "u1": SymmetrySpec.u1(), "su2": SymmetrySpec.su2()}[name]
    order = max_design_order(spec, n, k, budget)
    return n, order


def cmd_table(args, parser) -> int:
    spec, name = _load_spec(args)
    if name == "custom":
        parser.error("table ranges over n, which custom symmetry tables fix")
    if args.json and args.csv:
        parser.error("--json and --csv are mutually exclusive")
    if args.n_from > args.n_to:
        parser.error("--n-from must not exceed --n-to")
    ns = range(args.n_from, args.n_to + 1)

    exact_by_n: dict[int, DesignOrder | None] = {n: None for n in ns}
    try:
        if args.method in ("exact", "both"):
            if args.jobs > 1:
                with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                    work = [(name, n, args.k, args.node_budget) for n in ns]
                    for n, order in pool.map(_table_cell, work):
                        exact_by_n[n] = order
                        _progress(f"done n={n}")
            else:
                for n in ns:
                    exact_by_n[n] = max_design_order(spec, n, args.k, args.node_budget)
                    _progress(f"done n={n}")
        theorem_by_n = {
            n: theorem_order(spec, n, args.k) if args.method in ("theorem", "both") else None
            for n in ns
        }
    except ResourceLimitError as exc:
        return _emit_resource_limit(args, name, exc)

    rows = []
    for n in ns:
        exact = exact_by_n[n]
        theorem = theorem_by_n[n]
        if args.method == "both":
            match = _agreement(exact, theorem) if theorem is not None else ""
        else:
            match = ""
        rows.append((n, exact, theorem, match))

    if args.json:
        print(json.dumps([
            {
                "symmetry": name,
                "n": n,
                "k": args.k,
                "exact": _order_json(exact),
                "theorem": _order_json(theorem),
                "match": match or None,
            }
            for n, exact, theorem, match in rows
        ]))
    elif args.csv:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["symmetry", "n", "k", "exact", "theorem", "match"])
        for n, exact, theorem, match in rows:
            writer.writerow([
                name,
                n,
                args.k,
                _order_text(exact) if exact is not None else "",
                _order_text(theorem) if theorem is not None else "",
                match,
            ])
    else:
        print(f"{name} k={args.k}")
        header = f"{'n':>4}  {'exact':>12}  {'theorem':>12}  match"
        print(header)
        for n, exact, theorem, match in rows:
            print(
                f"{n:>4}  {_order_text(exact) if exact is not None else '':>12}"
                f"  {_order_text(theorem) if theorem is not None else '':>12}  {match}"
            )
    return 0


# ---------------------------------------------------------------------------
# oracle


def cmd_oracle_collision(args, parser) -> int:
    expect = _parse_expect(args.expect, parser, ("design", "no-design"))[0] if args.expect else None
    spec, name = _load_spec(args)
    if name != "custom" and (args.n is None or args.k is None):
        parser.error("--n and --k are required for built-in symmetries")
    n = args.n if args.n is not None else 1
    k = args.k if args.k is not None else 1
    started = time.perf_counter()
    try:
        table = irrep_table(spec, n)
        system = constraint_system(spec, n, k)
        report = collision_exists(table, system, args.t)
    except ResourceLimitError as exc:
        return _emit_resource_limit(args, name, exc)
    elapsed_ms = int((time.perf_counter() - started) * 1000)

    if args.json:
        print(json.dumps({
            "oracle": "collision",
            "symmetry": name,
            "n": args.n,
            "k": args.k,
            "t": args.t,
            "found": report.found,
            "pair": [list(p) for p in report.pair] if report.pair else None,
            "timing_ms": elapsed_ms,
        }))
    else:
        where = (
            f"collision {name} t={args.t}"
            if args.n is None
            else f"collision {name} n={args.n} k={args.k} t={args.t}"
        )
        if report.found:
            a, b = report.pair
            print(f"{where}: found={list(a)} / {list(b)}")
        else:
            print(f"{where}: no collision")

    if expect is not None and (expect == "design") != (not report.found):
        _warn(f"expectation {args.expect!r} not met")
        return 1
    return 0


def cmd_oracle_moment(args, parser) -> int:
    expect = _parse_expect(args.expect, parser, ("design", "no-design"))[0] if args.expect else None
    if args.fixture:
        fixture = FIXTURES.get(args.fixture)
        if fixture is None:
            parser.error(
                f"unknown fixture {args.fixture!r}; known: {', '.join(sorted(FIXTURES))}"
            )
        spec, name, n, k = fixture.spec, fixture.spec.kind, fixture.n, None
        generators = fixture.generators
    else:
        spec, name = _load_spec(args)
        if args.n is None or args.k is None:
            parser.error("--n and --k are required without --fixture")
        n, k = args.n, args.k
        generators = None

    started = time.perf_counter()
    try:
        report = commutant_check(spec, n, k, args.t, gate_generators=generators)
    except ResourceLimitError as exc:
        return _emit_resource_limit(args, name, exc)
    elapsed_ms = int((time.perf_counter() - started) * 1000)

    if args.json:
        print(json.dumps({
            "oracle": "moment",
            "fixture": args.fixture,
            "symmetry": name,
            "n": n,
            "k": k,
            "t": args.t,
            "dim_gateset": report.dim_gateset,
            "dim_full": report.dim_full,
            "is_design": report.is_design,
            "timing_ms": elapsed_ms,
        }))
    else:
        where = f"moment {args.fixture or name} n={n} t={args.t}"
        verdict = "design" if report.is_design else "no design"
        print(
            f"{where}: dim_gateset={report.dim_gateset} "
            f"dim_full={report.dim_full} -> {verdict}"
        )

    if expect is not None and (expect == "design") != report.is_design:
        _warn(f"expectation {args.expect!r} not met")
        return 1
    return 0


# ---------------------------------------------------------------------------
# parser assembly


def _add_symmetry_flags(sub) -> None:
    sub.add_argument("--symmetry", choices=_BUILTIN, help="built-in symmetry")
    sub.add_argument("--custom", metavar="FILE", help="custom symmetry JSON file")


def _add_common_flags(sub) -> None:
    sub.add_argument("--json", action="store_true", help="machine-readable output")
    sub.add_argument("--node-budget", type=int, default=None,
                     help="search node budget (QDESIGN_NODE_BUDGET also applies)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qdesign",
        description="Maximal design orders of symmetric local random circuits.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_order = subs.add_parser("order", help="order for one (symmetry, n, k)")
    _add_symmetry_flags(p_order)
    p_order.add_argument("--n", type=int)
    p_order.add_argument("--k", type=int)
    p_order.add_argument("--method", choices=("exact", "theorem", "both"), default="both")
    p_order.add_argument("--expect", help="design|no-design|finite:N|infinite")
    _add_common_flags(p_order)
    p_order.set_defaults(func=cmd_order)

    p_table = subs.add_parser("table", help="orders over a range of n")
    _add_symmetry_flags(p_table)
    p_table.add_argument("--k", type=int, required=True)
    p_table.add_argument("--n-from", type=int, required=True)
    p_table.add_argument("--n-to", type=int, required=True)
    p_table.add_argument("--method", choices=("exact", "theorem", "both"), default="both")
    p_table.add_argument("--csv", action="store_true", help="CSV output")
    p_table.add_argument("--jobs", type=int, default=1, help="parallel rows")
    _add_common_flags(p_table)
    p_table.set_defaults(func=cmd_table)

    p_oracle = subs.add_parser("oracle", help="independent verifiers")
    oracle_subs = p_oracle.add_subparsers(dest="oracle_command", required=True)

    p_coll = oracle_subs.add_parser("collision", help="occupation-collision check")
    _add_symmetry_flags(p_coll)
    p_coll.add_argument("--n", type=int)
    p_coll.add_argument("--k", type=int)
    p_coll.add_argument("--t", type=int, required=True)
    p_coll.add_argument("--expect", help="design|no-design")
    _add_common_flags(p_coll)
    p_coll.set_defaults(func=cmd_oracle_collision)

    p_mom = oracle_subs.add_parser("moment", help="moment-commutant check")
    _add_symmetry_flags(p_mom)
    p_mom.add_argument("--fixture", help=f"named fixture: {', '.join(sorted(FIXTURES))}")
    p_mom.add_argument("--n", type=int)
    p_mom.add_argument("--k", type=int)
    p_mom.add_argument("--t", type=int, required=True)
    p_mom.add_argument("--expect", help="design|no-design")
    _add_common_flags(p_mom)
    p_mom.set_defaults(func=cmd_oracle_moment)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except (PreconditionError, FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
