"""Capacities, equilibrium measures and potential functions.

The energy of an atomic measure against a base point is the double sum of
the negated two-point kernel; the equilibrium measure of a finite union of
closed discs is the minimizer of that quadratic form over the probability
simplex on the outermost disc points.  Because the support of the minimizer
is a priori contained in those finitely many boundary points, the
minimization is an exact finite quadratic program, solved by rational
linear algebra with an active-set loop.

The Arakelov-Green function of a measure is the kernel integrated against
it, with its free additive constant pinned so the double integral of the
function against the measure itself vanishes; the energy-minimizing
principle then reads I(rho) > I(mu) = 0 for every other probability
measure rho.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import (
    AtomOffSkeleton,
    EmptyRegion,
    InfinityNotAllowed,
    TypeOneBasePoint,
    UserInputError,
    ZeroCapacity,
)
from .field import NEG_INF, POS_INF, ExtRat
from .points import BerkPoint, generalized_hsia, leq, lt
from .trees import Measure, PLFunc, Skeleton

from .trees import _dedupe  # shared semantic dedup


class CompactRegion:
    """A finite union of closed discs and classical points, away from INFINITY.

    Discs nested inside others are merged away on construction, so ``items``
    holds exactly the outermost disc points (classical points count as discs
    of radius zero).
    """

    __slots__ = ("items",)

    def __init__(self, items: Iterable[BerkPoint]):
        pts = _dedupe(items)
        if any(q.infinite for q in pts):
            raise InfinityNotAllowed("regions do not reach INFINITY")
        maximal = [q for q in pts if not any(lt(q, w) for w in pts)]
        maximal.sort(key=lambda q: q.sort_key())
        self.items = tuple(maximal)

    @property
    def is_empty(self) -> bool:
        return not self.items

    def contains(self, x: BerkPoint) -> bool:
        return not x.infinite and any(leq(x, s) for s in self.items)

    def __repr__(self):
        return f"CompactRegion({[q.label() for q in self.items]})"


@dataclass(frozen=True)
class EnergyReport:
    robin: ExtRat
    capacity_log: ExtRat
    minimizer: Measure
    candidates: tuple[BerkPoint, ...]


def _kernel(x: BerkPoint, y: BerkPoint, base: BerkPoint) -> ExtRat:
    return -generalized_hsia(x, y, base)


def energy(mu: Measure, base: BerkPoint) -> ExtRat:
    """Double sum of the negated kernel against mu; +inf on type-1 atoms.

    Infinite energy is a value, not an error: any classical atom with
    nonzero weight makes the diagonal term blow up.
    """
    total = Fraction(0)
    for x, wx in mu.atoms:
        if base.type_number() == 1 and not base.infinite and base == x:
            return POS_INF
        for y, wy in mu.atoms:
            k = _kernel(x, y, base)
            if not k.is_finite:
                return POS_INF if k.inf > 0 else NEG_INF
            total += wx * wy * k.as_fraction()
    return ExtRat(total)


def solve_linear(
    rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
) -> list[Fraction] | None:
    """Exact Gaussian elimination; None when the system is singular."""
    n = len(rows)
    m = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            return None
        m[col], m[piv] = m[piv], m[col]
        pivot = m[col][col]
        m[col] = [x / pivot for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


def _stationary_solve(G, active):
    """Solve G w = V 1, sum(w) = 1 restricted to the active candidate set."""
    k = len(active)
    rows = []
    for i in active:
        rows.append([G[i][j] for j in active] + [Fraction(-1)])
    rows.append([Fraction(1)] * k + [Fraction(0)])
    rhs = [Fraction(0)] * k + [Fraction(1)]
    sol = solve_linear(rows, rhs)
    if sol is None:
        return None
    return sol[:k], sol[k]


def equilibrium(region: CompactRegion, base: BerkPoint) -> EnergyReport:
    """Energy-minimizing probability measure on the region, seen from base.

    Candidate atoms are the outermost disc points of the region; classical
    candidates carry infinite self-energy and are excluded (a region of only
    classical points has capacity zero).  The stationarity system
    G w = V 1, sum w = 1 is solved exactly, dropping the most negative
    weight until the solution is feasible; the finite candidate set
    guarantees termination.
    """
    if region.is_empty:
        raise EmptyRegion("cannot take the equilibrium measure of nothing")
    if not base.infinite and region.contains(base):
        raise UserInputError("base point lies inside the region")
    candidates = [s for s in region.items if not s.is_type1]
    if not candidates:
        raise ZeroCapacity(
            "all candidates are classical points: robin +inf, capacity 0"
        )
    n = len(candidates)
    G = [
        [_kernel(candidates[i], candidates[j], base).as_fraction() for j in range(n)]
        for i in range(n)
    ]
    active = list(range(n))
    while True:
        sol = _stationary_solve(G, active)
        if sol is None:
            raise ArithmeticError("singular stationarity system")
        w, V = sol
        if all(x >= 0 for x in w):
            break
        worst = min(range(len(w)), key=lambda i: w[i])
        active.pop(worst)
        if not active:
            raise ArithmeticError("active set emptied out")
    weights = {i: x for i, x in zip(active, w)}
    # KKT: inactive candidates must not undercut the stationary value
    for i in range(n):
        if i not in weights:
            grad = sum(G[i][j] * weights.get(j, Fraction(0)) for j in range(n))
            if grad < V:
                raise ArithmeticError("active-set loop ended non-optimal")
    minimizer = Measure(
        [(candidates[i], weights[i]) for i in sorted(weights) if weights[i] != 0]
    )
    return EnergyReport(
        robin=ExtRat(V),
        capacity_log=ExtRat(-V),
        minimizer=minimizer,
        candidates=tuple(candidates),
    )


def potential_fn(mu: Measure, base: BerkPoint, skel: Skeleton) -> PLFunc:
    """The function u with laplacian(u) = dirac(base) - mu and u(base) = 0.

    Along each edge the slope away from the base equals minus the mu-mass
    of the far component, so u is integrated outward from the base vertex.
    The atoms of mu must lie on the skeleton.
    """
    if base.infinite or base.is_type1:
        raise TypeOneBasePoint("the base point must be of type 2 or 3")
    if not skel.contains(base):
        raise AtomOffSkeleton("base point off the skeleton")
    for q, _ in mu.atoms:
        if not skel.contains(q):
            raise AtomOffSkeleton(f"atom {q.label()} off the skeleton")
    fine = skel.refine([base] + [q for q, _ in mu.atoms])
    # rooted orientation at the base vertex
    order = [base]
    toward_root: dict[BerkPoint, BerkPoint] = {}
    seen = {base}
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        for w in fine.neighbors(v):
            if w not in seen:
                seen.add(w)
                toward_root[w] = v
                order.append(w)
    mass_below = {v: mu.mass_at(v) for v in fine.vertices}
    for v in reversed(order):
        if v in toward_root:
            mass_below[toward_root[v]] += mass_below[v]
    values: dict[BerkPoint, Fraction] = {base: Fraction(0)}
    data = {}
    for v in order[1:]:
        near = toward_root[v]
        edge = (v, near) if fine.parent.get(v) == near else (near, v)
        far_mass = mass_below[v]
        # moving away from the base: up in rho if v is the disc-order parent
        if edge[1] == v:
            slope = -far_mass
        else:
            slope = far_mass
        rho_near = near.logr.as_fraction()
        intercept = values[near] - slope * rho_near
        data[edge] = (slope, intercept)
        if not v.infinite and not v.is_type1:
            values[v] = slope * v.logr.as_fraction() + intercept
    lone = ExtRat(0) if not fine.edges() else None
    return PLFunc(fine, data, lone_value=lone)


def arakelov_constant(mu: Measure) -> Fraction:
    """The additive constant making the double integral against mu vanish."""
    total = Fraction(0)
    for z, w in mu.atoms:
        e = energy(mu, z)
        if not e.is_finite:
            raise UserInputError("measure must have finite energy")
        total += w * e.as_fraction()
    return -total


def arakelov_green(mu: Measure, x: BerkPoint, y: BerkPoint) -> ExtRat:
    """Kernel averaged against mu plus the vanishing-normalized constant.

    Symmetric in x and y; +inf exactly on classical diagonals.
    """
    c = arakelov_constant(mu)
    total = Fraction(0)
    for z, w in mu.atoms:
        k = _kernel(x, y, z)
        if not k.is_finite:
            return k
        total += w * k.as_fraction()
    return ExtRat(total + c)


def green_energy(mu: Measure, rho: Measure) -> ExtRat:
    """I_mu(rho): the Arakelov-Green energy of rho relative to mu."""
    c = arakelov_constant(mu)
    total = Fraction(0)
    for x, wx in rho.atoms:
        for y, wy in rho.atoms:
            k = _kernel_avg(mu, x, y)
            if not k.is_finite:
                return POS_INF
            total += wx * wy * (k.as_fraction() + c)
    return ExtRat(total)


def _kernel_avg(mu: Measure, x: BerkPoint, y: BerkPoint) -> ExtRat:
    total = Fraction(0)
    for z, w in mu.atoms:
        k = _kernel(x, y, z)
        if not k.is_finite:
            return k
        total += w * k.as_fraction()
    return ExtRat(total)


def emp_check(
    mu: Measure,
    trials: int,
    candidates: Sequence[BerkPoint] | None = None,
    seed: int = 0,
) -> bool:
    """Probe the energy-minimizing principle with random probability measures.

    Draws ``trials`` random rational probability measures on the candidate
    set (defaulting to the support of mu) and checks I_mu(rho) > I_mu(mu)
    strictly whenever rho differs from mu.
    """
    pts = list(candidates) if candidates is not None else list(mu.support())
    pts = [q for q in pts if not q.is_type1 and not q.infinite]
    if not pts:
        return False
    base_energy = green_energy(mu, mu)
    rng = random.Random(seed)
    for _ in range(trials):
        raw = [rng.randint(0, 9) for _ in pts]
        if not any(raw):
            raw[rng.randrange(len(pts))] = 1
        total = sum(raw)
        rho = Measure([(q, Fraction(r, total)) for q, r in zip(pts, raw)])
        val = green_energy(mu, rho)
        if rho == mu:
            if val != base_energy:
                return False
            continue
        if not val > base_energy:
            return False
    return True
