"""Cones, polytopes, gradings, and subset encodings for the lecture hall family.

Points are integer tuples. Two coordinate conventions coexist: the cone
lives in "partition order" (lambda_1, ..., lambda_n), while the vertex
matrices of the derived polytopes are stored in "column order" with
lambda_n first, matching how the generators print as columns.
:func:`flip_convention` is the single owner of that reversal; nothing else
reorders coordinates.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .errors import BudgetError, DomainError
from .exact import (
    AffineChart,
    IntMatrix,
    Vector,
    dot,
    is_zero_vector,
    nullspace_rational,
    primitive_vector,
    rational_rank,
    solve_linear,
    vsub,
)
from .lp import EQ, GE, lp_feasible, lp_optimize


def flip_convention(vec) -> Vector:
    """Swap between partition order and column order (an involution)."""
    return tuple(reversed(tuple(vec)))


@dataclass(frozen=True)
class ConeH:
    """Pointed rational cone {x : row . x >= 0 for every row}."""

    dim: int
    rows: tuple[Vector, ...]
    rays: Optional[tuple[Vector, ...]] = None

    def __post_init__(self):
        if any(len(r) != self.dim for r in self.rows):
            raise DomainError("inequality row length does not match ambient dimension")
        if rational_rank(self.rows) != self.dim:
            raise DomainError("cone is not pointed (inequality rows are rank deficient)")
        if self.rays is not None:
            for r in self.rays:
                if not self.contains(r):
                    raise DomainError(f"declared ray {r} violates the cone inequalities")

    def contains(self, point) -> bool:
        return all(dot(row, point) >= 0 for row in self.rows)


def lecture_hall_cone(n: int) -> ConeH:
    """The cone 0 <= x_1/1 <= x_2/2 <= ... <= x_n/n in integral H-form.

    Rows are x_1 >= 0 and i*x_{i+1} - (i+1)*x_i >= 0; the attached rays are
    the minimal generators (the reversed columns of the ray matrix).
    """
    if n < 1:
        raise DomainError("the cone needs at least one coordinate")
    rows = [tuple(1 if j == 0 else 0 for j in range(n))]
    for i in range(1, n):
        row = [0] * n
        row[i - 1] = -(i + 1)
        row[i] = i
        rows.append(tuple(row))
    rays = tuple(flip_convention(c) for c in _ray_matrix_columns(n))
    return ConeH(n, tuple(rows), rays)


@dataclass(frozen=True)
class PolytopeH:
    """Polytope {x : row . x >= rhs}; dilation scales the right-hand sides."""

    dim: int
    rows: tuple[tuple[Vector, int], ...]

    def dilate(self, t: int) -> "PolytopeH":
        if t < 0:
            raise DomainError("dilation factor must be nonnegative")
        return PolytopeH(self.dim, tuple((a, t * r) for a, r in self.rows))

    def contains(self, point) -> bool:
        return all(dot(a, point) >= r for a, r in self.rows)


def lecture_hall_polytope(n: int) -> PolytopeH:
    """The slice of the cone with x_n <= n, in H-form."""
    cone = lecture_hall_cone(n)
    rows = [(a, 0) for a in cone.rows]
    cap = [0] * n
    cap[n - 1] = -1
    rows.append((tuple(cap), -n))
    return PolytopeH(n, tuple(rows))


@dataclass(frozen=True)
class Grading:
    """Integer functional required to be positive on the cone minus the origin."""

    vector: Vector

    def degree(self, point) -> int:
        return dot(self.vector, point)

    def validate_for(self, cone: ConeH) -> None:
        if len(self.vector) != cone.dim:
            raise DomainError("grading length does not match the cone dimension")
        if cone.rays is not None:
            for r in cone.rays:
                if dot(self.vector, r) <= 0:
                    raise DomainError(f"grading is not positive on ray {r}")
            return
        # No ray list: look for a nonzero cone point with nonpositive degree.
        n = cone.dim
        base = [(tuple(Fraction(c) for c in row), GE, Fraction(0)) for row in cone.rows]
        base.append((tuple(-Fraction(c) for c in self.vector), GE, Fraction(0)))
        for j in range(n):
            for sign in (1, -1):
                probe = [Fraction(0)] * n
                probe[j] = Fraction(sign)
                sys = base + [(tuple(probe), GE, Fraction(1))]
                if lp_feasible(n, sys) is not None:
                    raise DomainError("grading is not positive on the whole cone")


def ones_grading(n: int) -> Grading:
    return Grading(tuple(1 for _ in range(n)))


def degree_grading(n: int) -> Grading:
    """The functional x_n - x_{n-1}; defined for n >= 2."""
    if n < 2:
        raise DomainError("the degree grading needs at least two coordinates")
    vec = [0] * n
    vec[n - 2] = -1
    vec[n - 1] = 1
    return Grading(tuple(vec))


# ---------------------------------------------------------------------------
# Vertex polytopes.


@dataclass(frozen=True)
class PolytopeV:
    """Lattice polytope given by its vertex list.

    Optional fields carry what generic code cannot cheaply recover: an exact
    membership test and the normalized volume (needed for covering checks on
    non-simplex targets).
    """

    ambient_dim: int
    vertices: tuple[Vector, ...]
    name: str = ""
    membership: Optional[Callable[[Vector], bool]] = field(default=None, compare=False, repr=False)
    normalized_volume: Optional[int] = field(default=None, compare=False)

    def __post_init__(self):
        for v in self.vertices:
            if len(v) != self.ambient_dim:
                raise DomainError("vertex length does not match ambient dimension")

    def contains(self, point) -> bool:
        if self.membership is not None:
            return self.membership(tuple(point))
        if len(self.vertices) == AffineChart.from_points(self.vertices).dim + 1:
            coeffs = barycentric_coordinates(self.vertices, point)
            return coeffs is not None and all(c >= 0 for c in coeffs)
        return point_in_hull(self.vertices, point)


def barycentric_coordinates(simplex_points, point):
    """Coefficients of ``point`` over an affinely independent point list, or None."""
    k = len(simplex_points)
    a_rows = [[Fraction(p[i]) for p in simplex_points] for i in range(len(point))]
    a_rows.append([Fraction(1)] * k)
    b = [Fraction(x) for x in point] + [Fraction(1)]
    return solve_linear(a_rows, b)


def point_in_hull(points, x) -> bool:
    """Exact LP test for membership in a convex hull of lattice points."""
    k = len(points)
    cons = []
    for i in range(len(x)):
        cons.append((tuple(Fraction(p[i]) for p in points), EQ, Fraction(x[i])))
    cons.append((tuple(Fraction(1) for _ in range(k)), EQ, Fraction(1)))
    for j in range(k):
        probe = [Fraction(0)] * k
        probe[j] = Fraction(1)
        cons.append((tuple(probe), GE, Fraction(0)))
    return lp_feasible(k, cons) is not None


def make_polytope_v(vertices, ambient_dim=None, name="", membership=None,
                    normalized_volume=None, check=True) -> PolytopeV:
    verts = tuple(tuple(int(x) for x in v) for v in vertices)
    if not verts:
        raise DomainError("a polytope needs at least one vertex")
    dim = ambient_dim if ambient_dim is not None else len(verts[0])
    if check and len(verts) > 1:
        for i, v in enumerate(verts):
            others = verts[:i] + verts[i + 1:]
            if point_in_hull(others, v):
                raise DomainError(f"vertex {v} lies in the hull of the others")
    return PolytopeV(dim, verts, name, membership, normalized_volume)


def _ray_matrix_columns(n: int) -> list[Vector]:
    """Columns of the minimal ray generator matrix, top entry first."""
    cols = [tuple(1 if r == 0 else 0 for r in range(n))]
    for j in range(2, n + 1):
        col = [n - r for r in range(j)] + [0] * (n - j)
        cols.append(tuple(col))
    return cols


def _difference_columns(n: int) -> list[Vector]:
    cols = [tuple(1 if r == 0 else 0 for r in range(n))]
    for j in range(2, n + 1):
        col = [1] * (j - 1) + [n - j + 1] + [0] * (n - j)
        cols.append(tuple(col))
    return cols


def ray_slice_polytope(n: int) -> PolytopeV:
    """Convex hull of the minimal ray generators, stored in column order.

    Equals the slice of the cone where the degree functional is 1.
    """
    if n < 1:
        raise DomainError("need n >= 1")
    return make_polytope_v(_ray_matrix_columns(n), name="Qn")


def row_difference_map(n: int) -> IntMatrix:
    """Upper bidiagonal map taking consecutive differences of column entries."""
    if n < 1:
        raise DomainError("need n >= 1")
    rows = []
    for i in range(n):
        row = [0] * n
        row[i] = 1
        if i + 1 < n:
            row[i + 1] = -1
        rows.append(tuple(row))
    return IntMatrix(tuple(rows))


def _difference_membership(n: int):
    cone = lecture_hall_cone(n)

    def member(point: Vector) -> bool:
        if len(point) != n or point[0] != 1:
            return False
        lam = suffix_sums(point)
        return cone.contains(lam)

    return member


def suffix_sums(column_point) -> Vector:
    """Recover partition-order coordinates from a difference-form column."""
    out = []
    acc = 0
    for x in reversed(tuple(column_point)):
        acc += x
        out.append(acc)
    return tuple(out)


def difference_polytope(n: int) -> PolytopeV:
    """Image of the ray slice under the row-difference map: a height-1 simplex."""
    if n < 1:
        raise DomainError("need n >= 1")
    return make_polytope_v(
        _difference_columns(n),
        name="Rn",
        membership=_difference_membership(n),
        normalized_volume=math.factorial(n - 1),
    )


def difference_pyramid_base(n: int) -> PolytopeV:
    """Facet of the difference polytope opposite the all-ones vertex.

    The full polytope is a height-1 pyramid over this base; the base spans
    dimension n-2 and all of its vertices have last coordinate 0.
    """
    if n < 2:
        raise DomainError("the pyramid base needs n >= 2")
    return make_polytope_v(_difference_columns(n)[:-1], name="Rn-tilde")


# ---------------------------------------------------------------------------
# Subsets of [n-1] and their three encodings.


@dataclass(frozen=True)
class SubsetA:
    """A subset {i_1 < ... < i_k} of [n-1], possibly empty."""

    n: int
    elements: tuple[int, ...]

    def __post_init__(self):
        prev = 0
        for e in self.elements:
            if not (prev < e <= self.n - 1):
                raise DomainError("subset elements must be strictly increasing within 1..n-1")
            prev = e

    def v_vector(self) -> Vector:
        """(0,...,0, i_1,...,i_k, i_k+1), padded to length n.

        The empty set maps to (0,...,0,1): it is the one degree-1 lattice
        point not produced by a nonempty subset, and the count of degree-1
        points forces it into the generating set.
        """
        k = len(self.elements)
        last = (self.elements[-1] + 1) if k else 1
        return (0,) * (self.n - k - 1) + self.elements + (last,)

    def characteristic_vector(self) -> Vector:
        ind = [0] * (self.n - 1)
        for e in self.elements:
            ind[e - 1] = 1
        return (1,) + tuple(ind)

    def composition(self) -> tuple[int, ...]:
        """Composition of n with k+1 parts: gaps read from the top down."""
        pts = (0,) + self.elements + (self.n,)
        gaps = [pts[i + 1] - pts[i] for i in range(len(pts) - 1)]
        return tuple(reversed(gaps))

    @staticmethod
    def from_composition(n: int, parts) -> "SubsetA":
        if any(p <= 0 for p in parts) or sum(parts) != n:
            raise DomainError("parts must be positive and sum to n")
        gaps = list(reversed(tuple(parts)))
        elements = []
        acc = 0
        for g in gaps[:-1]:
            acc += g
            elements.append(acc)
        return SubsetA(n, tuple(elements))


def all_subsets(n: int):
    """Deterministic enumeration of SubsetA over [n-1], empty set first."""
    for mask in range(1 << (n - 1)):
        yield SubsetA(n, tuple(i + 1 for i in range(n - 1) if mask >> i & 1))


def subset_encodings(a: SubsetA):
    return a.v_vector(), a.characteristic_vector(), a.composition()


# ---------------------------------------------------------------------------
# Interior lattice points and reflexivity.

_FACET_VERTEX_GUARD = 16
_FACET_DIM_GUARD = 8


def facets_in_chart(chart_points) -> list[tuple[Vector, int]]:
    """Facet inequalities (a, b) meaning a.x <= b, a primitive, for a small
    full-dimensional V-polytope given in chart coordinates.

    Candidate hyperplanes come from d-subsets of the vertices; anything
    bigger than the guard is out of scope for this artifact.
    """
    pts = [tuple(p) for p in chart_points]
    d = len(pts[0])
    if d == 0:
        return []
    if len(pts) > _FACET_VERTEX_GUARD or d > _FACET_DIM_GUARD:
        raise BudgetError("facet search guard exceeded")
    seen = set()
    facets = []
    for subset in itertools.combinations(range(len(pts)), d):
        base = pts[subset[0]]
        dirs = [vsub(pts[i], base) for i in subset[1:]]
        if rational_rank(dirs) != d - 1:
            continue
        normals = nullspace_rational(dirs, d) if dirs else nullspace_rational([[0] * d], d)
        if len(normals) != 1:
            continue
        denom = math.lcm(*[f.denominator for f in normals[0]])
        a = primitive_vector(tuple(int(f * denom) for f in normals[0]))
        b = dot(a, base)
        side_hi = any(dot(a, p) > b for p in pts)
        side_lo = any(dot(a, p) < b for p in pts)
        if side_hi and side_lo:
            continue
        if side_hi:
            a = tuple(-x for x in a)
            b = -b
        if (a, b) not in seen:
            seen.add((a, b))
            facets.append((a, b))
    return facets


def interior_lattice_points(p: PolytopeV) -> list[Vector]:
    """All lattice points in the relative interior, by exact bounding-box scan."""
    chart = AffineChart.from_points(p.vertices)
    if chart.dim == 0:
        return [p.vertices[0]]
    pts = [chart.to_lattice(v) for v in p.vertices]
    facets = facets_in_chart(pts)
    lows = [min(q[i] for q in pts) for i in range(chart.dim)]
    highs = [max(q[i] for q in pts) for i in range(chart.dim)]
    found = []
    for x in itertools.product(*[range(lo, hi + 1) for lo, hi in zip(lows, highs)]):
        if all(dot(a, x) < b for a, b in facets):
            found.append(chart.from_lattice(x))
    return sorted(found)


@dataclass(frozen=True)
class ReflexivityCertificate:
    reflexive: bool
    reason: Optional[str]
    interior_point: Optional[Vector]
    facet_data: tuple[tuple[Vector, int], ...]  # (primitive normal, rhs after translating)


def is_reflexive_after_translation(p: PolytopeV) -> ReflexivityCertificate:
    """Decide reflexivity up to translation, with certificate.

    Works in the lattice of the affine hull: requires exactly one
    relative-interior lattice point c, then checks that every facet's
    primitive outer normal evaluates to exactly 1 on the facet after
    translating by -c.
    """
    chart = AffineChart.from_points(p.vertices)
    if chart.dim == 0:
        return ReflexivityCertificate(True, None, p.vertices[0], ())
    pts = [chart.to_lattice(v) for v in p.vertices]
    facets = facets_in_chart(pts)
    interior = []
    lows = [min(q[i] for q in pts) for i in range(chart.dim)]
    highs = [max(q[i] for q in pts) for i in range(chart.dim)]
    for x in itertools.product(*[range(lo, hi + 1) for lo, hi in zip(lows, highs)]):
        if all(dot(a, x) < b for a, b in facets):
            interior.append(x)
            if len(interior) > 1:
                break
    if not interior:
        return ReflexivityCertificate(False, "no interior lattice point", None, ())
    if len(interior) > 1:
        return ReflexivityCertificate(False, "more than one interior lattice point", None, ())
    c = interior[0]
    facet_data = tuple((a, b - dot(a, c)) for a, b in facets)
    if all(rhs == 1 for _, rhs in facet_data):
        return ReflexivityCertificate(True, None, chart.from_lattice(c), facet_data)
    return ReflexivityCertificate(False, "a facet is not at lattice distance 1",
                                  chart.from_lattice(c), facet_data)


# ---------------------------------------------------------------------------
# Extreme ray utilities (used to validate the ray matrix).


def is_extreme_ray(cone: ConeH, point) -> bool:
    """Membership + primitivity + rank test on the tight inequalities."""
    if not cone.contains(point) or is_zero_vector(point):
        return False
    if primitive_vector(point) != tuple(point):
        return False
    tight = [row for row in cone.rows if dot(row, point) == 0]
    return rational_rank(tight) == cone.dim - 1


def affine_dimension(points) -> int:
    return AffineChart.from_points(points).dim


def coordinate_bounds_of_system(ineqs, eqs, n):
    """Exact per-coordinate bounds over {ineq rows >= rhs, eq rows == rhs}.

    Returns a list of (lo, hi) integers, None when the system is empty, and
    raises DomainError when some coordinate is unbounded.
    """
    cons = [(tuple(Fraction(c) for c in a), GE, Fraction(r)) for a, r in ineqs]
    cons += [(tuple(Fraction(c) for c in a), EQ, Fraction(r)) for a, r in eqs]
    bounds = []
    for j in range(n):
        obj = [Fraction(0)] * n
        obj[j] = Fraction(1)
        status_hi, _, hi = lp_optimize(n, cons, obj, maximize=True)
        if status_hi == "infeasible":
            return None
        status_lo, _, lo = lp_optimize(n, cons, obj, maximize=False)
        if status_hi == "unbounded" or status_lo == "unbounded":
            raise DomainError("system is unbounded in some coordinate")
        bounds.append((math.ceil(lo), math.floor(hi)))
    return bounds
