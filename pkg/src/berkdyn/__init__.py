"""Exact dynamics and potential theory on the Berkovich projective line.

The coefficient field is Q with a fixed p-adic valuation; all arithmetic is
exact rational, all absolute values live in base-p logarithmic units.
"""

from .errors import BerkdynError
from .field import (
    NEG_INF,
    POS_INF,
    ExtRat,
    FieldElement,
    PAdicContext,
    logabs,
    valuation,
)
from .points import (
    INFINITY,
    BerkPoint,
    Direction,
    generalized_hsia,
    hsia_inf,
    join,
    leq,
    path_length,
    spherical,
)
from .polynomials import (
    Poly,
    count_roots_closed,
    count_roots_open,
    directional_slope,
    eval_logabs,
    parse_poly,
    taylor_recenter,
)
from .trees import (
    Measure,
    PLFunc,
    Skeleton,
    build_hull,
    laplacian,
    pl_add,
    pl_from_poly,
    pl_max,
    pl_max_zero,
    pl_scale,
    pl_sub,
    retract,
)
from .potential import (
    CompactRegion,
    EnergyReport,
    arakelov_green,
    emp_check,
    energy,
    equilibrium,
    potential_fn,
)
from .dynamics import (
    EscapeResult,
    PolyFamily,
    RationalFamilyLift,
    activity_measure_approx,
    boundedness_profile,
    green_pl,
    green_tail_bound,
    green_value,
    green_value_rational,
    iterate_marked,
    mandelbrot_test,
    passivity_indicator,
    pullback_dirac,
)
from .quadratic import run_quadratic

__all__ = [
    "BerkdynError",
    "NEG_INF",
    "POS_INF",
    "ExtRat",
    "FieldElement",
    "PAdicContext",
    "logabs",
    "valuation",
    "INFINITY",
    "BerkPoint",
    "Direction",
    "generalized_hsia",
    "hsia_inf",
    "join",
    "leq",
    "path_length",
    "spherical",
    "Poly",
    "count_roots_closed",
    "count_roots_open",
    "directional_slope",
    "eval_logabs",
    "parse_poly",
    "taylor_recenter",
    "Measure",
    "PLFunc",
    "Skeleton",
    "build_hull",
    "laplacian",
    "pl_add",
    "pl_from_poly",
    "pl_max",
    "pl_max_zero",
    "pl_scale",
    "pl_sub",
    "retract",
    "CompactRegion",
    "EnergyReport",
    "arakelov_green",
    "emp_check",
    "energy",
    "equilibrium",
    "potential_fn",
    "EscapeResult",
    "PolyFamily",
    "RationalFamilyLift",
    "activity_measure_approx",
    "boundedness_profile",
    "green_pl",
    "green_tail_bound",
    "green_value",
    "green_value_rational",
    "iterate_marked",
    "mandelbrot_test",
    "passivity_indicator",
    "pullback_dirac",
    "run_quadratic",
]

__version__ = "0.1.0"
