"""JSON forms of points, measures, skeletons, regions and families.

All numeric payloads are exact rational strings ("a/b" in lowest terms,
"inf"/"-inf" for the infinities); every emitted value is accepted back by
the corresponding input parser.  Points print with their minimal-height
center so output is canonical.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .dynamics import (
    BoundednessProfile,
    EscapeResult,
    PolyFamily,
    RationalFamilyLift,
)
from .errors import SchemaError
from .field import ExtRat, PAdicContext, parse_extrat, parse_rational
from .points import INFINITY, BerkPoint
from .polynomials import Poly, format_poly, parse_poly
from .potential import CompactRegion, EnergyReport
from .trees import Measure, Skeleton, build_hull


def extrat_to_str(x: ExtRat | Fraction | int) -> str:
    return str(ExtRat(x))


def point_to_json(q: BerkPoint) -> Any:
    if q.infinite:
        return "infinity"
    return {
        "center": str(q.canonical_center()),
        "logradius": extrat_to_str(q.logr),
    }


def point_from_json(obj: Any, ctx: PAdicContext) -> BerkPoint:
    if obj == "infinity":
        return INFINITY
    if isinstance(obj, str):
        return BerkPoint.classical(ctx, parse_rational(obj))
    if not isinstance(obj, dict) or "center" not in obj:
        raise SchemaError(f"not a point: {obj!r}")
    center = parse_rational(str(obj["center"]))
    logr = parse_extrat(str(obj.get("logradius", "-inf")))
    if logr.inf > 0:
        raise SchemaError("logradius inf is not a point")
    return BerkPoint(ctx, center, logr)


def measure_to_json(mu: Measure) -> list:
    return [
        {"point": point_to_json(q), "mass": str(w)} for q, w in mu.atoms
    ]


def measure_from_json(obj: Any, ctx: PAdicContext) -> Measure:
    if not isinstance(obj, list):
        raise SchemaError("a measure is a list of {point, mass} atoms")
    atoms = []
    for entry in obj:
        atoms.append(
            (point_from_json(entry["point"], ctx), parse_rational(str(entry["mass"])))
        )
    return Measure(atoms)


def skeleton_to_json(skel: Skeleton) -> dict:
    edges = []
    for child, par in skel.edges():
        edges.append(
            {
                "from": child.label(),
                "to": par.label(),
                "length": extrat_to_str(skel.edge_length((child, par))),
            }
        )
    edges.sort(key=lambda e: (e["from"], e["to"]))
    return {
        "vertices": [point_to_json(v) for v in skel.vertices],
        "edges": edges,
    }


def skeleton_from_json(obj: Any, ctx: PAdicContext) -> Skeleton:
    if isinstance(obj, list):
        pts = obj
    elif isinstance(obj, dict):
        pts = obj.get("points", obj.get("vertices"))
        if pts is None:
            raise SchemaError("a skeleton needs a points or vertices list")
    else:
        raise SchemaError(f"not a skeleton: {obj!r}")
    return build_hull([point_from_json(p, ctx) for p in pts])


def region_from_json(obj: Any, ctx: PAdicContext) -> CompactRegion:
    if isinstance(obj, list):
        return CompactRegion([point_from_json(p, ctx) for p in obj])
    if not isinstance(obj, dict):
        raise SchemaError(f"not a region: {obj!r}")
    items = [point_from_json(p, ctx) for p in obj.get("discs", [])]
    items += [point_from_json(p, ctx) for p in obj.get("points", [])]
    if not items:
        raise SchemaError("a region needs discs or points")
    return CompactRegion(items)


def family_from_json(obj: Any, prime: int | None = None) -> tuple[PolyFamily, Poly]:
    if not isinstance(obj, dict):
        raise SchemaError("a family is an object with prime/degree/coeffs_t/marked")
    p = obj.get("prime", prime)
    if p is None:
        raise SchemaError("a family needs a prime")
    ctx = PAdicContext(int(p))
    coeffs_t = obj.get("coeffs_t")
    if not isinstance(coeffs_t, list):
        raise SchemaError("a family needs the coefficient list coeffs_t")
    coeffs = [parse_poly(str(s), ctx, "t") for s in coeffs_t]
    degree = obj.get("degree")
    if degree is not None and int(degree) != len(coeffs) - 1:
        raise SchemaError(
            f"declared degree {degree} but {len(coeffs)} coefficients"
        )
    fam = PolyFamily(ctx, coeffs)
    marked = parse_poly(str(obj.get("marked", "0")), ctx, "t")
    return fam, marked


def family_to_json(fam: PolyFamily, marked: Poly) -> dict:
    return {
        "prime": fam.ctx.p,
        "degree": fam.d,
        "coeffs_t": [format_poly(c) for c in fam.coeffs],
        "marked": format_poly(marked),
    }


def lift_from_json(obj: Any, prime: int | None = None) -> RationalFamilyLift:
    p = obj.get("prime", prime)
    if p is None:
        raise SchemaError("a lift needs a prime")
    ctx = PAdicContext(int(p))
    try:
        p_form = [parse_poly(str(s), ctx, "t") for s in obj["p_form"]]
        q_form = [parse_poly(str(s), ctx, "t") for s in obj["q_form"]]
        c1, c2 = obj["marked"]
    except (KeyError, ValueError, TypeError) as exc:
        raise SchemaError("a lift needs p_form, q_form and marked = [c1, c2]") from exc
    marked = (parse_poly(str(c1), ctx, "t"), parse_poly(str(c2), ctx, "t"))
    return RationalFamilyLift(ctx, p_form, q_form, marked)


def energy_report_to_json(rep: EnergyReport) -> dict:
    return {
        "robin": extrat_to_str(rep.robin),
        "capacity_log": extrat_to_str(rep.capacity_log),
        "measure": measure_to_json(rep.minimizer),
        "candidates": [point_to_json(q) for q in rep.candidates],
    }


def escape_to_json(res: EscapeResult) -> dict:
    out: dict[str, Any] = {"status": res.status}
    if res.n is not None:
        out["n"] = res.n
    return out


def profile_to_json(prof: BoundednessProfile) -> dict:
    return {
        "boundary": [q.label() for q in prof.boundary],
        "boundary_points": [point_to_json(q) for q in prof.boundary],
        "zero_vertices": [point_to_json(q) for q in prof.zero_vertices],
        "positive_vertices": [point_to_json(q) for q in prof.positive_vertices],
    }


_APPROX_KEYS = {
    "mass",
    "robin",
    "capacity_log",
    "green",
    "tail_bound",
    "total_mass",
    "length",
    "value",
    "logradius",
    "escape_green_value",
}


def approx_decorate(obj: Any) -> Any:
    """Add float renderings next to exact rational strings (non-authoritative)."""
    if isinstance(obj, list):
        return [approx_decorate(x) for x in obj]
    if isinstance(obj, dict):
        out = {}
        for key, val in obj.items():
            out[key] = approx_decorate(val)
            if key in _APPROX_KEYS and isinstance(val, str):
                try:
                    out[key + "_approx"] = float(Fraction(val))
                except (ValueError, ZeroDivisionError):
                    pass  # infinities keep only their exact form
        return out
    return obj
