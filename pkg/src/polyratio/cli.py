"""Command-line interface: ``polyratio {gen,ratio,verify,sweep,optimize,render}``.

Exit codes: 0 success, 1 verification failed, 2 usage error, 3 evaluation error.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import constructions as C
from .errors import GeometryError, NotBasicSetup, NotCoprime
from .exact import SqrtSum
from .geom import EXACT, region_area, region_perimeter, set_tolerance
from .pattern import is_pattern_preserving
from .render import render_svg
from .search import ANNEAL, HILL_CLIMB, SearchParams, optimize, refine
from .setup import Setup, dump_setup, load_setup
from .union import union
from .verify import (
    check_common_centre,
    check_square_theorem,
    check_triangle_theorem,
    conjecture_sweep,
    sweep_to_csv,
)

OK, FAILED, USAGE, EVAL_ERROR = 0, 1, 2, 3

SETUPS = ("basic", "shifted", "four-square", "triangles3", "triangles4", "figure6")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def _gen(args) -> int:
    if args.setup in ("basic", "shifted") and (args.k is None or args.n is None):
        raise UsageError(f"--setup {args.setup} needs --k and --n")
    if args.setup not in ("basic", "shifted") and (args.k is not None or args.n is not None):
        raise UsageError(f"--k/--n do not apply to --setup {args.setup}")
    if args.eps is not None and args.setup != "shifted":
        raise UsageError("--eps only applies to --setup shifted")
    if args.side is not None and args.setup not in ("basic", "shifted"):
        raise UsageError(f"--side does not apply to --setup {args.setup}")
    side = 1.0 if args.side is None else args.side
    if not side > 0:
        raise UsageError("--side must be positive")
    try:
        if args.setup == "basic":
            s = C.basic_setup(args.k, args.n, side)
        elif args.setup == "shifted":
            s = C.shifted_setup(args.k, args.n, side, args.eps)
        elif args.setup == "four-square":
            s = C.four_square_example()
        elif args.setup == "triangles3":
            s = C.inscribed_square_triangles(3)
        elif args.setup == "triangles4":
            s = C.inscribed_square_triangles(4)
        else:
            s = C.figure6_setup()
    except (NotCoprime, NotBasicSetup, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    if args.out:
        dump_setup(s, args.out)
        print(f"wrote {len(s.pieces)} polygons to {args.out}")
    else:
        from .setup import setup_to_dict

        print(json.dumps(setup_to_dict(s), indent=2))
    return OK


_TAN_SQ = {3: Fraction(3), 4: Fraction(1), 6: Fraction(1, 3)}


def _exact_bound(s: Setup):
    """4 tan(pi/n) / side as a SqrtSum when every piece is the same n-gon with n in {3, 4, 6}."""
    loops = s.loops(exact=True)
    n = len(loops[0].vertices)
    sides = set()
    for l in loops:
        if len(l.vertices) != n:
            return None, None
        for a, b in l.edges():
            sides.add((b[0] - a[0]) ** 2 + (b[1] - a[1]) ** 2)
    if n not in _TAN_SQ or len(sides) != 1:
        return None, None
    return n, SqrtSum.sqrt(16 * _TAN_SQ[n] / sides.pop())


def _ratio(args) -> int:
    s = load_setup(args.setup, exact=args.exact)
    out: dict = {"label": s.label, "polygons": len(s.pieces)}
    if args.exact:
        loops = s.loops(exact=True)
        region = union(loops)
        p, a = region_perimeter(region), region_area(region)
        r = p / a
        out.update(
            backend=EXACT,
            perimeter=float(p),
            perimeter_exact=repr(p),
            area=float(a),
            area_exact=f"{a.numerator}/{a.denominator}",
            ratio=float(r),
            boundary_vertices=region.vertex_count,
        )
        n, bound = _exact_bound(s)
        if bound is not None:
            out["certified_bound"] = repr(bound)
            out["ratio_exceeds_single"] = r > bound
            out["single_n"] = n
    else:
        region = union(s.pieces)
        p, a = float(region_perimeter(region)), float(region_area(region))
        out.update(backend="float", perimeter=p, area=a, ratio=p / a, boundary_vertices=region.vertex_count)
    if args.json:
        print(json.dumps(out, indent=2, sort_keys=True))
        return OK
    print(f"perimeter: {out['perimeter']!r}")
    print(f"area: {out['area']!r}")
    print(f"ratio: {_short(out['ratio'])}")
    if "ratio_exceeds_single" in out:
        bound = "4" if out["single_n"] == 4 else out["certified_bound"]
        print(f"ratio > {bound}: {str(out['ratio_exceeds_single']).lower()} (certified)")
    return OK


def _short(x: float) -> str:
    return repr(round(x)) if abs(x - round(x)) < 1e-12 else repr(x)


def _verify(args) -> int:
    if args.tol is not None and not args.tol > 0:
        raise UsageError("--tol must be positive")
    tol = 1e-9 if args.tol is None else args.tol
    if args.which == "common-centre":
        if args.k is None or args.n is None:
            raise UsageError("common-centre needs --k and --n")
        try:
            report = check_common_centre(args.k, args.n, tol)
        except (NotCoprime, ValueError) as exc:
            raise UsageError(str(exc)) from exc
    elif args.which == "squares":
        report = check_square_theorem(args.eps, tol)
    elif args.which == "triangles":
        report = check_triangle_theorem(args.eps1, args.eps2, tol)
    else:
        if args.setup is None or args.poly is None:
            raise UsageError("pattern needs --setup and --poly")
        s = load_setup(args.setup)
        if not 0 <= args.poly < len(s.pieces):
            raise UsageError(f"--poly must be in [0, {len(s.pieces)})")
        rep = is_pattern_preserving(s.pieces, args.poly, (args.dx, args.dy), args.samples, args.certify)
        doc = {
            "preserved": rep.preserved,
            "samples_checked": rep.samples_checked,
            "first_failure_t": rep.first_failure_t,
            "failure_kind": rep.failure_kind,
            "detail": rep.detail,
        }
        print(json.dumps(doc, indent=2, sort_keys=True) if args.json else f"preserved: {str(rep.preserved).lower()}")
        if not rep.preserved and not args.json:
            print(f"  {rep.failure_kind} at t={rep.first_failure_t:g}: {rep.detail}")
        return OK if rep.preserved else FAILED
    print(report.to_json() if args.json else report.summary())
    return OK if report.passed else FAILED


def _sweep(args) -> int:
    if args.max_k < 1 or args.max_n < 3:
        raise UsageError("need --max-k >= 1 and --max-n >= 3")
    if not args.eps > 0:
        raise UsageError("--eps must be positive")
    rows = conjecture_sweep(args.max_k, args.max_n, args.eps, samples=args.samples, workers=args.workers)
    text = sweep_to_csv(rows)
    if args.out:
        Path(args.out).write_text(text)
        disagree = [(r["k"], r["n"]) for r in rows if r["observed"] is not None and r["observed"] != r["predicted"]]
        print(f"wrote {len(rows)} rows to {args.out}; disagreements with the prediction: {disagree}")
    else:
        sys.stdout.write(text)
    return OK


def _search_params(args) -> SearchParams:
    doc = {}
    if args.config:
        doc.update(json.loads(Path(args.config).read_text()))
    for key in ("iterations", "seed", "step_scale", "step_decay", "moves", "fanout", "workers", "hole_policy"):
        value = getattr(args, key)
        if value is not None:
            doc[key] = value
    if args.anneal:
        doc.update(rule=ANNEAL, t0=args.anneal[0], cooling=args.anneal[1])
    doc.setdefault("rule", HILL_CLIMB)
    try:
        return SearchParams.from_dict(doc)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


def _optimize(args) -> int:
    params = _search_params(args)
    s = load_setup(args.setup)
    result = refine(s, params) if args.refine else optimize(s, params)
    if args.out:
        result.write(args.out)
    print(f"best ratio: {_short(result.best_ratio)}")
    print(f"evaluations: {result.evaluations}, improvements: {len(result.trace) - 1}")
    return OK


def _render(args) -> int:
    s = load_setup(args.setup)
    svg = render_svg(s, show_union=args.union, labels=args.labels)
    Path(args.out).write_text(svg)
    print(f"wrote {args.out}")
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="polyratio", description="Perimeter-to-area ratio of unions of regular polygons.")
    p.add_argument("--tolerance", type=float, help="float predicate tolerance (default 1e-9 or $POLYRATIO_TOL)")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", help="write a setup JSON file")
    g.add_argument("--setup", required=True, choices=SETUPS)
    g.add_argument("--k", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--eps", type=float)
    g.add_argument("--side", type=float)
    g.add_argument("--out")
    g.set_defaults(func=_gen)

    r = sub.add_parser("ratio", help="perimeter, area and ratio of a setup's union")
    r.add_argument("setup")
    r.add_argument("--exact", action="store_true", help="rational backend with certified comparison")
    r.add_argument("--json", action="store_true")
    r.set_defaults(func=_ratio)

    v = sub.add_parser("verify", help="numeric checks of the lemmas and theorems")
    v.add_argument("which", choices=("common-centre", "squares", "triangles", "pattern"))
    v.add_argument("--k", type=int)
    v.add_argument("--n", type=int)
    v.add_argument("--eps", type=float, default=0.05)
    v.add_argument("--eps1", type=float, default=0.05)
    v.add_argument("--eps2", type=float, default=0.05)
    v.add_argument("--setup")
    v.add_argument("--poly", type=int)
    v.add_argument("--dx", type=float, default=0.0)
    v.add_argument("--dy", type=float, default=0.0)
    v.add_argument("--samples", type=int, default=64)
    v.add_argument("--certify", action="store_true")
    v.add_argument("--tol", type=float)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=_verify)

    w = sub.add_parser("sweep", help="shifted-setup conjecture table as CSV")
    w.add_argument("--max-k", type=int, default=12)
    w.add_argument("--max-n", type=int, default=8)
    w.add_argument("--eps", type=float, default=0.05)
    w.add_argument("--samples", type=int, default=4, help="interior samples per pattern check")
    w.add_argument("--workers", type=int, default=1)
    w.add_argument("--out")
    w.set_defaults(func=_sweep)

    o = sub.add_parser("optimize", help="stochastic search from a setup")
    o.add_argument("setup")
    o.add_argument("--iters", dest="iterations", type=int)
    o.add_argument("--seed", type=int)
    o.add_argument("--anneal", nargs=2, type=float, metavar=("T0", "COOLING"))
    o.add_argument("--scale", dest="step_scale", type=float)
    o.add_argument("--decay", dest="step_decay", type=float)
    o.add_argument("--moves", type=int, help="polygons moved per proposal (0 = all)")
    o.add_argument("--fanout", type=int)
    o.add_argument("--workers", type=int)
    o.add_argument("--holes", dest="hole_policy", choices=("reject", "allow-and-flag"))
    o.add_argument("--config", help="JSON file with SearchParams fields")
    o.add_argument("--refine", action="store_true", help="coordinate descent instead of random proposals")
    o.add_argument("--out")
    o.set_defaults(func=_optimize)

    d = sub.add_parser("render", help="SVG drawing of a setup")
    d.add_argument("setup")
    d.add_argument("--out", required=True)
    d.add_argument("--union", action="store_true")
    d.add_argument("--labels", action="store_true")
    d.set_defaults(func=_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.tolerance is not None:
            set_tolerance(args.tolerance)
        return args.func(args)
    except UsageError as exc:
        print(f"polyratio: error: {exc}", file=sys.stderr)
        return USAGE
    except GeometryError as exc:
        print(f"polyratio: {exc.kind}: {exc}", file=sys.stderr)
        return EVAL_ERROR
    except (FileNotFoundError, json.JSONDecodeError, KeyError, ValueError) as exc:
        print(f"polyratio: error: cannot read input: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
