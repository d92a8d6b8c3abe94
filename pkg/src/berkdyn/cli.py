"""Command-line interface: every operation behind JSON input/output.

Each subcommand is a pure function of its input; identical input yields
byte-identical output.  All numeric output is exact rational strings; the
--approx flag adds clearly labeled decimal renderings.  Exit codes: 0 on
success, 2 on input errors, 3 on budget or degeneracy errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .dynamics import (
    activity_measure_approx,
    boundedness_profile,
    green_tail_bound,
    green_value,
    green_value_rational,
    iterate_marked,
    mandelbrot_test,
    pullback_dirac,
)
from .dot import export_dot
from .errors import BerkdynError, DegeneracyError, SchemaError, UserInputError
from .field import PAdicContext
from .points import INFINITY
from .polynomials import parse_poly
from .potential import emp_check, equilibrium
from .quadratic import quadratic_family, quadratic_table, run_quadratic
from .serialize import (
    approx_decorate,
    energy_report_to_json,
    escape_to_json,
    family_from_json,
    lift_from_json,
    measure_to_json,
    point_from_json,
    point_to_json,
    profile_to_json,
    region_from_json,
    skeleton_from_json,
    skeleton_to_json,
)
from .trees import build_hull


def _read_input(args) -> dict:
    raw = sys.stdin.read() if args.input == "-" else Path(args.input).read_text()
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON input: {exc}") from exc
    if not isinstance(obj, dict):
        raise SchemaError("top-level input must be a JSON object")
    return obj


def _ctx_from(obj: dict, args) -> PAdicContext:
    p = args.prime if args.prime is not None else obj.get("prime")
    if p is None:
        raise SchemaError("a prime is required (--prime or \"prime\" in input)")
    return PAdicContext(int(p))


def _skeleton_from(obj: dict, args, ctx, default_points=None):
    if args.skeleton is not None:
        spec = json.loads(Path(args.skeleton).read_text())
        return skeleton_from_json(spec, ctx)
    if "skeleton" in obj:
        return skeleton_from_json(obj["skeleton"], ctx)
    if default_points is not None:
        return build_hull(default_points)
    raise SchemaError("a skeleton is required (--skeleton or \"skeleton\")")


def _n_from(obj: dict, args, default=None) -> int:
    n = args.n if args.n is not None else obj.get("n", default)
    if n is None:
        raise SchemaError("an iteration count is required (--n or \"n\")")
    return int(n)


def _emit(args, payload, text: str | None = None) -> int:
    if text is not None and args.format in ("table", "dot"):
        sys.stdout.write(text)
        return 0
    if args.approx:
        payload = dict(payload)
        payload["approx_note"] = "decimal fields are non-authoritative renderings"
        payload = approx_decorate(payload)
    sys.stdout.write(
        json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
    )
    return 0


def _cmd_green(args) -> int:
    obj = _read_input(args)
    n = _n_from(obj, args)
    if "lift" in obj:
        lift = lift_from_json(obj["lift"], args.prime)
        ctx = lift.ctx
        points = [point_from_json(p, ctx) for p in obj.get("points", [])]
        values = [
            {"point": point_to_json(q), "green": str(green_value_rational(lift, n, q))}
            for q in points
        ]
        return _emit(args, {"mode": "lift", "n": n, "degree": lift.d, "values": values})
    fam, marked = family_from_json(obj.get("family", obj), args.prime)
    ctx = fam.ctx
    points = [point_from_json(p, ctx) for p in obj.get("points", [])]
    if not points:
        raise SchemaError("green needs a nonempty points list")
    values = [
        {"point": point_to_json(q), "green": str(green_value(fam, marked, n, q))}
        for q in points
    ]
    hull_pts = points + [INFINITY]
    skel = _skeleton_from(obj, args, ctx, default_points=hull_pts)
    payload = {
        "mode": "family",
        "n": n,
        "degree": fam.d,
        "values": values,
        "tail_bound": str(green_tail_bound(fam, skel)),
    }
    return _emit(args, payload)


def _cmd_activity(args) -> int:
    obj = _read_input(args)
    fam, marked = family_from_json(obj.get("family", obj), args.prime)
    ctx = fam.ctx
    n = _n_from(obj, args)
    zero = point_from_json("0", ctx)
    skel = _skeleton_from(obj, args, ctx, default_points=[zero, INFINITY])
    mu = activity_measure_approx(fam, marked, n, skel)
    c_n = iterate_marked(fam, marked, n)
    payload = {
        "n": n,
        "degree_c_n": c_n.degree(),
        "measure": measure_to_json(mu),
        "total_mass": str(mu.total_mass()),
        "tail_bound": str(green_tail_bound(fam, skel)),
    }
    return _emit(args, payload)


def _cmd_pullback(args) -> int:
    obj = _read_input(args)
    ctx = _ctx_from(obj, args)
    var = str(obj.get("var", "t"))
    g = parse_poly(str(obj.get("poly", "")), ctx, var)
    target = point_from_json(obj.get("target"), ctx)
    zero = point_from_json("0", ctx)
    skel = _skeleton_from(obj, args, ctx, default_points=[zero, INFINITY])
    mu = pullback_dirac(g, target, skel)
    payload = {
        "degree": g.degree(),
        "target": point_to_json(target),
        "measure": measure_to_json(mu),
        "total_mass": str(mu.total_mass()),
    }
    return _emit(args, payload)


def _cmd_mandelbrot(args) -> int:
    obj = _read_input(args)
    fam, marked = family_from_json(obj.get("family", obj), args.prime)
    ctx = fam.ctx
    mode = obj.get("mode", "test")
    if mode == "test":
        t = point_from_json(obj.get("t"), ctx)
        max_iter = int(obj.get("max_iter", 20))
        res = mandelbrot_test(fam, marked, t, max_iter)
        return _emit(args, {"mode": "test", "result": escape_to_json(res)})
    if mode == "profile":
        n = _n_from(obj, args)
        zero = point_from_json("0", ctx)
        skel = _skeleton_from(obj, args, ctx, default_points=[zero, INFINITY])
        prof = boundedness_profile(fam, marked, skel, n)
        payload = {"mode": "profile", "n": n}
        payload.update(profile_to_json(prof))
        payload["tail_bound"] = str(green_tail_bound(fam, skel))
        return _emit(args, payload)
    raise SchemaError(f"unknown mandelbrot mode: {mode!r}")


def _cmd_equilibrium(args, capacity_only: bool = False) -> int:
    obj = _read_input(args)
    ctx = _ctx_from(obj, args)
    region = region_from_json(obj.get("region", obj), ctx)
    base = point_from_json(obj.get("base", "infinity"), ctx)
    rep = equilibrium(region, base)
    if capacity_only:
        return _emit(
            args,
            {
                "robin": str(rep.robin),
                "capacity_log": str(rep.capacity_log),
            },
        )
    payload = energy_report_to_json(rep)
    trials = int(obj.get("emp_trials", 100))
    if trials > 0:
        payload["emp_check"] = {
            "trials": trials,
            "passed": emp_check(rep.minimizer, trials, candidates=rep.candidates),
        }
    return _emit(args, payload)


def _cmd_hull(args) -> int:
    obj = _read_input(args)
    ctx = _ctx_from(obj, args)
    pts = obj.get("points")
    if not isinstance(pts, list) or not pts:
        raise SchemaError("hull needs a nonempty points list")
    skel = build_hull([point_from_json(p, ctx) for p in pts])
    dot = export_dot(skel)
    payload = skeleton_to_json(skel)
    payload["dot"] = dot
    return _emit(args, payload, text=dot if args.format == "dot" else None)


def _cmd_example(args) -> int:
    if args.name != "quadratic":
        raise SchemaError(f"unknown example: {args.name!r}")
    p = args.prime if args.prime is not None else 3
    n = args.n if args.n is not None else 4
    report = run_quadratic(p, n)
    if args.figures:
        outdir = Path(args.figures)
        outdir.mkdir(parents=True, exist_ok=True)
        from .figures import green_profile_figure, skeleton_figure
        from .serialize import measure_from_json

        fam, marked = quadratic_family(p)
        ctx = fam.ctx
        mu = measure_from_json(report["measure"], ctx)
        eq = measure_from_json(report["equilibrium"]["measure"], ctx)
        skel = skeleton_from_json(report["skeleton"], ctx)
        fig1 = green_profile_figure(
            fam,
            marked,
            ns=list(range(1, n + 1)),
            boundary_rhos=[Fraction(0)],
            title=f"quadratic family, p={p}",
            path=outdir / f"quadratic_p{p}_green.png",
        )
        fig2 = skeleton_figure(
            build_hull(list(skel.vertices) + list(mu.support())),
            measures=[mu, eq],
            names=["activity", "equilibrium"],
            title=f"activity vs equilibrium, p={p}",
            path=outdir / f"quadratic_p{p}_measures.png",
        )
        report["figures"] = [str(fig1), str(fig2)]
    table = quadratic_table(report)
    return _emit(args, report, text=table if args.format == "table" else None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="berkdyn",
        description=(
            "exact dynamics and potential theory on the Berkovich line "
            "over (Q, v_p)"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, with_input=True):
        if with_input:
            sp.add_argument("--input", default="-", help="JSON input file or -")
        sp.add_argument("--prime", type=int, default=None)
        sp.add_argument("--n", type=int, default=None)
        sp.add_argument("--skeleton", default=None, help="skeleton JSON file")
        sp.add_argument(
            "--format", choices=("json", "dot", "table"), default="json"
        )
        sp.add_argument("--approx", action="store_true")

    for name, fn in (
        ("green", _cmd_green),
        ("activity", _cmd_activity),
        ("pullback", _cmd_pullback),
        ("mandelbrot", _cmd_mandelbrot),
        ("equilibrium", _cmd_equilibrium),
        ("hull", _cmd_hull),
    ):
        sp = sub.add_parser(name)
        common(sp)
        sp.set_defaults(handler=fn)

    sp = sub.add_parser("capacity")
    common(sp)
    sp.set_defaults(handler=lambda a: _cmd_equilibrium(a, capacity_only=True))

    sp = sub.add_parser("example")
    sp.add_argument("name", choices=("quadratic",))
    common(sp, with_input=False)
    sp.add_argument("--figures", default=None, help="directory for PNG figures")
    sp.set_defaults(handler=_cmd_example)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except DegeneracyError as exc:
        _error_out(exc)
        return 3
    except (UserInputError, BerkdynError) as exc:
        _error_out(exc)
        return 2


def _error_out(exc: BerkdynError):
    sys.stdout.write(
        json.dumps(
            {"error": exc.code, "detail": str(exc)}, sort_keys=True, ensure_ascii=False
        )
        + "\n"
    )


if __name__ == "__main__":
    raise SystemExit(main())
