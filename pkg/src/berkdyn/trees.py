"""Finite metrized subtrees of the Berkovich line and their Laplacians.

A skeleton is a finite set of points closed under pairwise joins; its edges
run between order-adjacent vertices and are parametrized by the log-radius
coordinate rho, so a piecewise-affine function is stored per edge as the
line value = slope*rho + intercept.  Edges reaching classical points or
INFINITY have infinite length but keep finite affine data; vertex values at
such leaves are the (possibly infinite) limits.

The Laplacian of a piecewise-affine function is the atomic measure putting
at each vertex minus the sum of the outgoing slopes.  The sign is pinned by
the test vector dd^c max(0, log|z|) = delta_infinity - delta_gauss.

Measures produced here are retractions to the chosen skeleton: mass created
off the skeleton (at roots outside the hull, say) shows up at its retraction
point.  That is exact for every quantity whose support lies in a skeleton
chosen to include it, and it is the documented semantics of the package.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import AtomOffSkeleton, InfinityNotAllowed, ZeroPolynomial
from .field import NEG_INF, POS_INF, ExtRat
from .points import INFINITY, BerkPoint, join, leq, lt, path_length
from .polynomials import Poly, envelope_breakpoints, newton_envelope

Edge = tuple[BerkPoint, BerkPoint]  # (child, parent) in the disc order


def _dedupe(points: Iterable[BerkPoint]) -> list[BerkPoint]:
    seen = {}
    for q in points:
        seen.setdefault(q, q)
    return list(seen.values())


class Skeleton:
    """A finite subtree: vertices closed under joins, ordered by containment.

    Vertices may include classical points and INFINITY as leaves.  The
    support of the skeleton is the union of the paths between its vertices.
    """

    __slots__ = ("vertices", "ctx", "parent", "children", "top")

    def __init__(self, vertices: Iterable[BerkPoint]):
        verts = _dedupe(vertices)
        if not verts:
            raise ValueError("a skeleton needs at least one vertex")
        verts.sort(key=lambda v: v.sort_key())
        self.vertices = tuple(verts)
        finite = [v for v in verts if not v.infinite]
        self.ctx = finite[0].ctx if finite else None
        for i, a in enumerate(finite):
            for b in finite[i + 1 :]:
                j = join(a, b)
                if j not in verts:
                    raise ValueError(
                        f"not join-closed: join({a.label()}, {b.label()}) missing"
                    )
        inf_vertex = next((v for v in verts if v.infinite), None)
        parent: dict[BerkPoint, BerkPoint | None] = {}
        top = None
        for v in finite:
            above = [w for w in finite if lt(v, w)]
            if above:
                parent[v] = min(above, key=lambda w: w.logr.as_fraction())
            elif inf_vertex is not None:
                parent[v] = inf_vertex
            else:
                parent[v] = None
                top = v
        if inf_vertex is not None:
            parent[inf_vertex] = None
            top = inf_vertex
            roots = [v for v in finite if parent[v].infinite]
            if len(roots) > 1:
                raise ValueError("multiple components below INFINITY")
        self.parent = parent
        self.top = top
        children: dict[BerkPoint, list[BerkPoint]] = {v: [] for v in verts}
        for v, q in parent.items():
            if q is not None:
                children[q].append(v)
        for q in children:
            children[q].sort(key=lambda v: v.sort_key())
        self.children = children

    def __eq__(self, other):
        if not isinstance(other, Skeleton):
            return NotImplemented
        return set(self.vertices) == set(other.vertices)

    def __hash__(self):
        return hash(frozenset(self.vertices))

    def __repr__(self):
        return f"Skeleton({[v.label() for v in self.vertices]})"

    def edges(self) -> list[Edge]:
        return [(v, q) for v, q in self.parent.items() if q is not None]

    def edge_interval(self, edge: Edge) -> tuple[ExtRat, ExtRat]:
        """The rho-range of the points on an edge."""
        child, par = edge
        lo = child.logr if not child.infinite else POS_INF
        hi = par.logr if not par.infinite else POS_INF
        return lo, hi

    def edge_length(self, edge: Edge) -> ExtRat:
        child, par = edge
        if child.is_type1 or par.infinite:
            return POS_INF
        return ExtRat(path_length(child, par))

    def neighbors(self, v: BerkPoint) -> list[BerkPoint]:
        out = list(self.children[v])
        if self.parent.get(v) is not None:
            out.append(self.parent[v])
        return out

    def locate(self, x: BerkPoint):
        """("vertex", v), ("edge", e) for interior points, or None."""
        for v in self.vertices:
            if v == x:
                return ("vertex", v)
        if x.infinite:
            return None
        for edge in self.edges():
            child, par = edge
            if child.infinite:
                continue
            if leq(child, x) and (par.infinite or leq(x, par)):
                return ("edge", edge)
        return None

    def contains(self, x: BerkPoint) -> bool:
        return self.locate(x) is not None

    def refine(self, points: Iterable[BerkPoint]) -> "Skeleton":
        """Insert points of the support as new vertices; geometry unchanged."""
        extra = []
        for q in points:
            if not self.contains(q):
                raise AtomOffSkeleton(f"{q.label()} is not on the skeleton")
            extra.append(q)
        if not extra:
            return self
        return Skeleton(list(self.vertices) + extra)

    def retract(self, x: BerkPoint) -> BerkPoint:
        """Nearest point of the skeleton along the tree; identity on it."""
        loc = self.locate(x)
        if loc is not None:
            return x if loc[0] == "edge" else loc[1]
        if x.infinite:
            return self.top if self.top is not None else self.vertices[-1]
        finite = [v for v in self.vertices if not v.infinite]
        if not finite:
            return INFINITY
        j = min((join(x, v) for v in finite), key=lambda q: q.logr.as_fraction())
        if self.contains(j):
            return j
        # x attaches above the highest finite vertex of an unbounded-free tree
        return self.top


def build_hull(points: Sequence[BerkPoint]) -> Skeleton:
    """Smallest subtree containing the given points (their convex hull).

    Closure under pairwise joins suffices: in an ultrametric tree the join
    of two joins is again a pairwise join of the generating set.
    """
    pts = _dedupe(points)
    if not pts:
        raise ValueError("build_hull needs at least one point")
    finite = [q for q in pts if not q.infinite]
    extra = []
    for i, a in enumerate(finite):
        for b in finite[i + 1 :]:
            extra.append(join(a, b))
    return Skeleton(pts + extra)


def retract(skel: Skeleton, x: BerkPoint) -> BerkPoint:
    return skel.retract(x)


class Measure:
    """A finite signed atomic measure: weighted points, zero weights dropped."""

    __slots__ = ("atoms",)

    def __init__(self, atoms: Iterable[tuple[BerkPoint, Fraction]] = ()):
        acc: dict[BerkPoint, Fraction] = {}
        order: dict[BerkPoint, BerkPoint] = {}
        for q, w in atoms:
            w = Fraction(w)
            if q in acc:
                acc[q] += w
            else:
                acc[q] = w
                order[q] = q
        pairs = [(q, acc[q]) for q in order.values() if acc[q] != 0]
        pairs.sort(key=lambda it: it[0].sort_key())
        self.atoms = tuple(pairs)

    @classmethod
    def dirac(cls, q: BerkPoint, w=1) -> "Measure":
        return cls([(q, Fraction(w))])

    @classmethod
    def zero(cls) -> "Measure":
        return cls(())

    def total_mass(self) -> Fraction:
        return sum((w for _, w in self.atoms), Fraction(0))

    def mass_at(self, q: BerkPoint) -> Fraction:
        for point, w in self.atoms:
            if point == q:
                return w
        return Fraction(0)

    def support(self) -> tuple[BerkPoint, ...]:
        return tuple(q for q, _ in self.atoms)

    @property
    def is_positive(self) -> bool:
        return all(w >= 0 for _, w in self.atoms)

    def finite_part(self) -> "Measure":
        return Measure([(q, w) for q, w in self.atoms if not q.infinite])

    def __add__(self, other: "Measure") -> "Measure":
        return Measure(list(self.atoms) + list(other.atoms))

    def __sub__(self, other: "Measure") -> "Measure":
        return self + (-other)

    def __neg__(self) -> "Measure":
        return Measure([(q, -w) for q, w in self.atoms])

    def __mul__(self, scalar) -> "Measure":
        scalar = Fraction(scalar)
        return Measure([(q, w * scalar) for q, w in self.atoms])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, Measure):
            return NotImplemented
        return self.atoms == other.atoms

    def __hash__(self):
        return hash(self.atoms)

    def __repr__(self):
        inner = ", ".join(f"{q.label()}: {w}" for q, w in self.atoms)
        return f"Measure({{{inner}}})"


class PLFunc:
    """A piecewise-affine function on a skeleton.

    Per edge the function is value(rho) = slope*rho + intercept in the
    log-radius coordinate of that edge; incident edges must agree at shared
    finite vertices.  Vertex values are ExtRat (infinite only at classical
    or INFINITY leaves).
    """

    __slots__ = ("skeleton", "edge_data", "vertex_values")

    def __init__(
        self,
        skeleton: Skeleton,
        edge_data: dict[Edge, tuple[Fraction, Fraction]],
        lone_value: ExtRat | None = None,
    ):
        self.skeleton = skeleton
        self.edge_data = {
            e: (Fraction(s), Fraction(c)) for e, (s, c) in edge_data.items()
        }
        edges = skeleton.edges()
        if set(self.edge_data) != set(edges):
            raise ValueError("edge data must cover exactly the skeleton edges")
        values: dict[BerkPoint, ExtRat] = {}
        for v in skeleton.vertices:
            incident = [e for e in edges if e[0] == v or e[1] == v]
            if not incident:
                if lone_value is None:
                    raise ValueError("a lone vertex needs an explicit value")
                values[v] = ExtRat(lone_value)
                continue
            vals = [self._edge_value_at(e, v) for e in incident]
            for other in vals[1:]:
                if other != vals[0]:
                    raise ValueError(
                        f"inconsistent edge data at {v.label()}: {vals}"
                    )
            values[v] = vals[0]
        self.vertex_values = values

    def _edge_value_at(self, edge: Edge, v: BerkPoint) -> ExtRat:
        s, c = self.edge_data[edge]
        if v.infinite:
            if s > 0:
                return POS_INF
            if s < 0:
                return NEG_INF
            return ExtRat(c)
        if v.is_type1:
            if s > 0:
                return NEG_INF
            if s < 0:
                return POS_INF
            return ExtRat(c)
        return ExtRat(s * v.logr.as_fraction() + c)

    @classmethod
    def constant(cls, skeleton: Skeleton, value) -> "PLFunc":
        value = Fraction(value)
        data = {e: (Fraction(0), value) for e in skeleton.edges()}
        return cls(skeleton, data, lone_value=ExtRat(value))

    def value_at(self, x: BerkPoint) -> ExtRat:
        loc = self.skeleton.locate(x)
        if loc is None:
            raise AtomOffSkeleton(f"{x.label()} is not on the skeleton")
        if loc[0] == "vertex":
            return self.vertex_values[loc[1]]
        s, c = self.edge_data[loc[1]]
        return ExtRat(s * x.logr.as_fraction() + c)

    def slope_away(self, edge: Edge, v: BerkPoint) -> Fraction:
        """Derivative of the function leaving v along the given edge."""
        s, _ = self.edge_data[edge]
        return s if edge[0] == v else -s

    def restrict_to(self, finer: Skeleton) -> "PLFunc":
        """Transfer the data onto a refinement with the same support.

        Every vertex of the coarse skeleton is a vertex of the refinement,
        so an interior point of a finer edge always sits in the interior of
        exactly one coarse edge.
        """
        if finer is self.skeleton or set(finer.vertices) == set(
            self.skeleton.vertices
        ):
            return self
        data = {}
        for edge in finer.edges():
            lo, hi = finer.edge_interval(edge)
            probe = BerkPoint.disc(
                finer.ctx, _edge_center(edge), _interior_sample(lo, hi)
            )
            loc = self.skeleton.locate(probe)
            if loc is None or loc[0] != "edge":
                raise AtomOffSkeleton("refinement changes the support")
            data[edge] = self.edge_data[loc[1]]
        lone = None
        if not finer.edges():
            lone = self.vertex_values[finer.vertices[0]]
        return PLFunc(finer, data, lone_value=lone)

    def finite_vertex_values(self) -> dict[BerkPoint, ExtRat]:
        return {
            v: val for v, val in self.vertex_values.items() if not v.infinite
        }

    def __repr__(self):
        pieces = ", ".join(
            f"[{c.label()},{q.label()}]: {s}*rho+{ic}"
            for (c, q), (s, ic) in sorted(
                self.edge_data.items(), key=lambda kv: kv[0][0].sort_key()
            )
        )
        return f"PLFunc({pieces})"


def _edge_center(edge: Edge) -> Fraction:
    child, par = edge
    return child.center if not child.infinite else par.center


def pl_from_poly(g: Poly, skel: Skeleton) -> PLFunc:
    """Realize log|g| as a piecewise-affine function on the skeleton.

    A vertex is inserted wherever the maximizing index of the Newton
    envelope changes along an edge; the result agrees with eval_logabs at
    every point of the skeleton and its slopes at vertices agree with
    directional_slope.
    """
    if g.is_zero:
        raise ZeroPolynomial("log|0| is not piecewise affine")
    new_vertices: list[BerkPoint] = []
    for edge in skel.edges():
        a = _edge_center(edge)
        hull = newton_envelope(g, a)
        lo, hi = skel.edge_interval(edge)
        for rho in envelope_breakpoints(hull):
            if lo < ExtRat(rho) < hi:
                new_vertices.append(BerkPoint.disc(skel.ctx, a, rho))
    refined = skel.refine(new_vertices)
    data = {}
    for edge in refined.edges():
        a = _edge_center(edge)
        hull = newton_envelope(g, a)
        lo, hi = refined.edge_interval(edge)
        rho = _interior_sample(lo, hi)
        i_star, la_star = max(hull, key=lambda iv: iv[1] + iv[0] * rho)
        data[edge] = (Fraction(i_star), la_star)
    lone = None
    if not refined.edges():
        from .polynomials import eval_logabs

        lone = eval_logabs(g, refined.vertices[0])
    return PLFunc(refined, data, lone_value=lone)


def _interior_sample(lo: ExtRat, hi: ExtRat) -> Fraction:
    if lo.is_finite and hi.is_finite:
        return (lo.as_fraction() + hi.as_fraction()) / 2
    if lo.is_finite:
        return lo.as_fraction() + 1
    if hi.is_finite:
        return hi.as_fraction() - 1
    return Fraction(0)


def _common_refinement(F: PLFunc, G: PLFunc) -> tuple[PLFunc, PLFunc]:
    union = Skeleton(list(F.skeleton.vertices) + list(G.skeleton.vertices))
    return F.restrict_to(union), G.restrict_to(union)


def pl_add(F: PLFunc, G: PLFunc) -> PLFunc:
    F, G = _common_refinement(F, G)
    data = {}
    for e in F.skeleton.edges():
        (s1, c1), (s2, c2) = F.edge_data[e], G.edge_data[e]
        data[e] = (s1 + s2, c1 + c2)
    lone = None
    if not F.skeleton.edges():
        v = F.skeleton.vertices[0]
        lone = F.vertex_values[v] + G.vertex_values[v]
    return PLFunc(F.skeleton, data, lone_value=lone)


def pl_sub(F: PLFunc, G: PLFunc) -> PLFunc:
    return pl_add(F, pl_scale(G, -1))


def pl_scale(F: PLFunc, scalar) -> PLFunc:
    scalar = Fraction(scalar)
    if scalar == 0:
        return PLFunc.constant(F.skeleton, 0)
    data = {e: (s * scalar, c * scalar) for e, (s, c) in F.edge_data.items()}
    lone = None
    if not F.skeleton.edges():
        lone = F.vertex_values[F.skeleton.vertices[0]] * scalar
    return PLFunc(F.skeleton, data, lone_value=lone)


def pl_shift(F: PLFunc, constant) -> PLFunc:
    constant = Fraction(constant)
    data = {e: (s, c + constant) for e, (s, c) in F.edge_data.items()}
    lone = None
    if not F.skeleton.edges():
        lone = F.vertex_values[F.skeleton.vertices[0]] + constant
    return PLFunc(F.skeleton, data, lone_value=lone)


def pl_max(F: PLFunc, G: PLFunc) -> PLFunc:
    """Pointwise maximum; crossing points become new vertices."""
    F, G = _common_refinement(F, G)
    crossings = []
    for e in F.skeleton.edges():
        (s1, c1), (s2, c2) = F.edge_data[e], G.edge_data[e]
        if s1 == s2:
            continue
        rho = Fraction(c2 - c1, s1 - s2)
        lo, hi = F.skeleton.edge_interval(e)
        if lo < ExtRat(rho) < hi:
            crossings.append(BerkPoint.disc(F.skeleton.ctx, _edge_center(e), rho))
    if crossings:
        fine = F.skeleton.refine(crossings)
        F, G = F.restrict_to(fine), G.restrict_to(fine)
    data = {}
    for e in F.skeleton.edges():
        lo, hi = F.skeleton.edge_interval(e)
        rho = _interior_sample(lo, hi)
        (s1, c1), (s2, c2) = F.edge_data[e], G.edge_data[e]
        data[e] = (s1, c1) if s1 * rho + c1 >= s2 * rho + c2 else (s2, c2)
    lone = None
    if not F.skeleton.edges():
        v = F.skeleton.vertices[0]
        lone = max(F.vertex_values[v], G.vertex_values[v])
    return PLFunc(F.skeleton, data, lone_value=lone)


def pl_max_zero(F: PLFunc) -> PLFunc:
    return pl_max(F, PLFunc.constant(F.skeleton, 0))


def laplacian(F: PLFunc) -> Measure:
    """The measure-valued Laplacian of a piecewise-affine function.

    Each vertex receives minus the sum of the slopes directed away from it;
    for a function log|g| whose roots all retract into the skeleton the
    atom at the top is deg(g) and the total mass is zero.
    """
    skel = F.skeleton
    atoms = []
    for v in skel.vertices:
        total = Fraction(0)
        for e in skel.edges():
            if e[0] == v or e[1] == v:
                total += F.slope_away(e, v)
        if total != 0:
            atoms.append((v, -total))
    return Measure(atoms)
