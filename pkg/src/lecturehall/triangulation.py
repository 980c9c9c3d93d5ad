"""Recursive triangulation of the difference polytopes, with certifiers.

The construction follows the pyramid/chimney recursion: the polytope for n
splits into a chimney over the copy for n-1 (lower functional constant 1,
upper functional determined by the tall vertex) and a height-1 pyramid over
the chimney's bottom face. Tubes over base cells are triangulated by a
height sweep that raises one fiber one step at a time; restricted to a
shared wall the sweep depends only on the wall, so adjacent tubes glue
face to face.

Nothing downstream trusts the construction: `check_unimodular`,
`check_flag`, `check_covering`, and `check_regular` certify every claim
from scratch, and regularity witnesses re-verify through an independent
interpolation check.
"""

from __future__ import annotations

import functools
import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import BudgetError, DomainError, VerificationError
from .exact import AffineChart, Vector, det, dot, vsub
from .geometry import PolytopeV, barycentric_coordinates, difference_polytope, make_polytope_v
from .lp import EQ, GE, lp_feasible_strict, rational_lp

TRIANGULATE_MAX_N = 7
REGULARITY_MAX_STRICT = 1200


@dataclass(frozen=True)
class Triangulation:
    """Vertex table plus maximal cells as sorted index tuples."""

    vertices: tuple[Vector, ...]
    facets: tuple[tuple[int, ...], ...]
    target: Optional[PolytopeV] = field(default=None, compare=False)
    lifting: Optional[tuple[Fraction, ...]] = field(default=None, compare=False)

    def facet_points(self, f) -> tuple[Vector, ...]:
        return tuple(self.vertices[i] for i in f)

    @property
    def dim(self) -> int:
        return len(self.facets[0]) - 1

    def with_lifting(self, heights) -> "Triangulation":
        return Triangulation(self.vertices, self.facets, self.target, tuple(heights))


def make_triangulation(vertices, facets, target=None, lifting=None, validate=True) -> Triangulation:
    verts = tuple(tuple(int(x) for x in v) for v in vertices)
    cells = tuple(tuple(sorted(int(i) for i in f)) for f in facets)
    if not cells:
        raise DomainError("a triangulation needs at least one maximal cell")
    size = len(cells[0])
    if validate:
        if any(len(set(f)) != size for f in cells):
            raise DomainError("all maximal cells must have the same vertex count, without repeats")
        used = set(itertools.chain.from_iterable(cells))
        if used != set(range(len(verts))):
            raise DomainError("every vertex must appear in at least one cell")
        for f in cells:
            pts = [verts[i] for i in f]
            if AffineChart.from_points(pts).dim != size - 1:
                raise DomainError(f"cell {f} is not affinely independent")
    return Triangulation(verts, cells, target, tuple(lifting) if lifting else None)


# ---------------------------------------------------------------------------
# Tube construction.


@dataclass(frozen=True)
class AffineFunctional:
    """x -> coeffs . x + constant with integer data."""

    coeffs: Vector
    constant: int

    def __call__(self, point) -> int:
        return dot(self.coeffs, point) + self.constant


@dataclass(frozen=True)
class ChimneySpec:
    """A base triangulation with integral lower <= upper functionals.

    Linearity makes the vertex check sufficient for the inequality on the
    whole base.
    """

    base: Triangulation
    lower: AffineFunctional
    upper: AffineFunctional

    def __post_init__(self):
        for v in self.base.vertices:
            if self.lower(v) > self.upper(v):
                raise DomainError(f"lower functional exceeds upper at {v}")


def _staircase_cells(fiber_ids, heights):
    """Cells of the height sweep over one simplex.

    fiber_ids are base vertex ids in their inherited (global) order and
    heights the nonnegative fiber lengths. Moves raise one fiber by one,
    lowest target height first, ties broken by fiber position; each move
    emits the current points of the other fibers together with the raised
    edge. Restriction to a subset of fibers reproduces the sweep of that
    subset, which is what makes neighboring tubes agree on shared walls.
    """
    k = len(fiber_ids)
    moves = sorted((j, idx) for idx in range(k) for j in range(1, heights[idx] + 1))
    h = [0] * k
    cells = []
    for j, idx in moves:
        cell = [(fiber_ids[i], h[i]) for i in range(k) if i != idx]
        cell.append((fiber_ids[idx], j - 1))
        cell.append((fiber_ids[idx], j))
        cells.append(cell)
        h[idx] = j
    return cells


def triangulate_tube(simplex_points, heights) -> Triangulation:
    """Triangulate {(x, y) : x in F, 0 <= y <= m(x)} for a unimodular simplex F.

    m is the affine extension of the given vertex heights (unique on a
    simplex, and automatically integral on the hull lattice because F is
    unimodular). The vertex set is exactly the lattice points (v_i, j),
    0 <= j <= m_i, with the fiber coordinate appended last. With all heights
    zero the tube degenerates to F itself, returned as a single cell.
    """
    pts = [tuple(int(x) for x in p) for p in simplex_points]
    hs = [int(m) for m in heights]
    if len(hs) != len(pts):
        raise DomainError("one height per vertex is required")
    if any(m < 0 for m in hs):
        raise DomainError("heights must be nonnegative")
    chart = AffineChart.from_points(pts)
    if chart.dim != len(pts) - 1:
        raise DomainError("base points are not affinely independent")
    if chart.dim > 0:
        edges = [vsub(chart.to_lattice(p), chart.to_lattice(pts[0])) for p in pts[1:]]
        if det(edges) not in (1, -1):
            raise DomainError("base simplex is not unimodular")
    index = {}
    table = []

    def vid(v, j):
        key = v + (j,)
        if key not in index:
            index[key] = len(table)
            table.append(key)
        return index[key]

    for v in pts:
        vid(v, 0)
    abstract = _staircase_cells(list(range(len(pts))), hs)
    if not abstract:
        facets = [tuple(range(len(pts)))]
    else:
        facets = [tuple(vid(pts[i], j) for i, j in cell) for cell in abstract]
    hull = []
    for v, m in zip(pts, hs):
        hull.append(v + (0,))
        if m:
            hull.append(v + (m,))
    target = make_polytope_v(
        hull,
        name="tube",
        membership=_tube_membership(pts, hs),
        normalized_volume=sum(hs) if sum(hs) else 1,
        check=False,
    )
    return make_triangulation(table, facets, target)


def _tube_membership(pts, heights):
    def member(point):
        x, y = point[:-1], point[-1]
        coeffs = barycentric_coordinates(pts, x)
        if coeffs is None or any(c < 0 for c in coeffs):
            return False
        m = sum(c * h for c, h in zip(coeffs, heights))
        return 0 <= y <= m

    return member


# ---------------------------------------------------------------------------
# The recursive construction.

CONSTRUCTION_ID = "chimney-staircase-v1"


@functools.lru_cache(maxsize=None)
def triangulate_difference_polytope(n: int) -> Triangulation:
    """Regular, flag, unimodular triangulation of the height-1 simplex.

    Facet count is (n-1)!; certified post hoc by the check_* functions
    rather than trusted from the construction.
    """
    if n < 1:
        raise DomainError("need n >= 1")
    if n > TRIANGULATE_MAX_N:
        raise BudgetError(f"n={n} exceeds the construction guard (n<={TRIANGULATE_MAX_N})")
    if n == 1:
        return make_triangulation([(1,)], [(0,)], difference_polytope(1))
    prev = triangulate_difference_polytope(n - 1)
    upper = AffineFunctional((0,) + (-1,) * (n - 2), n - 1)
    lower = AffineFunctional((0,) * (n - 1), 1)
    ChimneySpec(prev, lower, upper)  # validates lower <= upper on the base
    heights = [upper(v) - lower(v) for v in prev.vertices]

    def embed(w, j):
        # base copy sits at fiber level 1; raising by j moves the second
        # coordinate, the rest of w (past its constant leading 1) is kept
        return (1, 1 + j) + w[1:]

    index = {}
    table = []

    def vid(point):
        if point not in index:
            index[point] = len(table)
            table.append(point)
        return index[point]

    for w in prev.vertices:
        vid(embed(w, 0))
    # tube points in global sweep order, then the apex
    moves = sorted((j, idx) for idx, m in enumerate(heights) for j in range(1, m + 1))
    for j, idx in moves:
        vid(embed(prev.vertices[idx], j))
    apex = (1,) + (0,) * (n - 1)
    apex_id = vid(apex)
    facets = []
    for cell in prev.facets:
        local_heights = [heights[i] for i in cell]
        for abstract in _staircase_cells(list(cell), local_heights):
            facets.append(tuple(vid(embed(prev.vertices[i], j)) for i, j in abstract))
    for cell in prev.facets:
        facets.append(tuple(vid(embed(prev.vertices[i], 0)) for i in cell) + (apex_id,))
    return make_triangulation(table, facets, difference_polytope(n))


# ---------------------------------------------------------------------------
# Certifiers.


def _target_chart(t: Triangulation) -> AffineChart:
    pts = list(t.target.vertices) if t.target is not None else []
    pts += list(t.vertices)
    return AffineChart.from_points(pts)


def check_unimodular(t: Triangulation):
    """(ok, offending_facet_index): every cell spans a lattice basis of the
    target's affine hull."""
    chart = _target_chart(t)
    coords = [chart.to_lattice(v) for v in t.vertices]
    for fi, f in enumerate(t.facets):
        if len(f) != chart.dim + 1:
            return False, fi
        base = coords[f[0]]
        edges = [vsub(coords[i], base) for i in f[1:]]
        if det(edges) not in (1, -1):
            return False, fi
    return True, None


@dataclass(frozen=True)
class FlagReport:
    is_flag: bool
    minimal_non_faces: tuple[tuple[int, ...], ...]

    def non_face_points(self, t: Triangulation):
        return tuple(tuple(t.vertices[i] for i in nf) for nf in self.minimal_non_faces)


def check_flag(t: Triangulation) -> FlagReport:
    """Minimal non-faces of the complex; flag means they are all pairs.

    Candidate minimal non-faces of size >= 3 are cliques of the 1-skeleton
    grown one vertex at a time; growth stops at the first non-face on each
    branch, which is exactly where minimality can occur.
    """
    nverts = len(t.vertices)
    faces = set()
    for f in t.facets:
        for r in range(1, len(f) + 1):
            faces.update(itertools.combinations(f, r))
    adjacency = [set() for _ in range(nverts)]
    for f in t.facets:
        for a, b in itertools.combinations(f, 2):
            adjacency[a].add(b)
            adjacency[b].add(a)
    minimal = []
    for a in range(nverts):
        for b in range(a + 1, nverts):
            if (a, b) not in faces:
                minimal.append((a, b))

    def grow(clique, candidates):
        for v in candidates:
            ext = clique + (v,)
            if ext in faces:
                grow(ext, [w for w in candidates if w > v and w in adjacency[v]])
            else:
                if all(sub in faces for sub in itertools.combinations(ext, len(ext) - 1)):
                    minimal.append(ext)

    for a in range(nverts):
        for b in sorted(adjacency[a]):
            if b > a:
                grow((a, b), [w for w in range(b + 1, nverts) if w in adjacency[a] and w in adjacency[b]])
    minimal_sorted = tuple(sorted(set(minimal), key=lambda s: (len(s), s)))
    is_flag = all(len(s) == 2 for s in minimal_sorted) if minimal_sorted else True
    return FlagReport(is_flag, minimal_sorted)


@dataclass(frozen=True)
class CoveringReport:
    ok: bool
    volume_target: int
    volume_cells: int
    mode: str
    failures: tuple[str, ...]


def _target_volume(t: Triangulation, chart: AffineChart) -> int:
    tgt = t.target
    if tgt.normalized_volume is not None:
        return tgt.normalized_volume
    pts = [chart.to_lattice(v) for v in tgt.vertices]
    if len(pts) == chart.dim + 1:
        base = pts[0]
        return abs(det([vsub(p, base) for p in pts[1:]])) if chart.dim else 1
    raise DomainError("covering check needs a simplex target or an explicit normalized volume")


def check_covering(t: Triangulation) -> CoveringReport:
    """Vertices in the target, volumes adding up, cells meeting in faces.

    For targets of dimension <= 3 the pairwise face condition is verified
    exactly by strict LP separation; in higher dimension the volume count is
    combined with barycenter disjointness.
    """
    if t.target is None:
        raise DomainError("covering needs a target polytope")
    failures = []
    chart = _target_chart(t)
    for v in t.vertices:
        if not t.target.contains(v):
            failures.append(f"vertex {v} outside target")
    coords = [chart.to_lattice(v) for v in t.vertices]
    vol = 0
    for f in t.facets:
        base = coords[f[0]]
        edges = [vsub(coords[i], base) for i in f[1:]]
        vol += abs(det(edges)) if edges else 1
    vol_target = _target_volume(t, chart)
    if vol != vol_target:
        failures.append(f"cell volumes sum to {vol}, target has {vol_target}")
    exact_mode = chart.dim <= 3
    if exact_mode:
        for fa, fb in itertools.combinations(range(len(t.facets)), 2):
            if not _intersect_in_common_face(coords, t.facets[fa], t.facets[fb]):
                failures.append(f"cells {fa} and {fb} overlap beyond their shared face")
    else:
        for fa in range(len(t.facets)):
            bary = _barycenter(coords, t.facets[fa])
            for fb in range(len(t.facets)):
                if fa == fb:
                    continue
                if _rational_point_in_simplex(coords, t.facets[fb], bary):
                    failures.append(f"barycenter of cell {fa} lies in cell {fb}")
    return CoveringReport(not failures, vol_target, vol, "exact" if exact_mode else "barycenter",
                          tuple(failures))


def _barycenter(coords, facet):
    k = len(facet)
    return tuple(sum(Fraction(coords[i][d]) for i in facet) / k for d in range(len(coords[facet[0]])))


def _rational_point_in_simplex(coords, facet, point) -> bool:
    pts = [coords[i] for i in facet]
    coeffs = barycentric_coordinates(pts, point)
    return coeffs is not None and all(c >= 0 for c in coeffs)


def _intersect_in_common_face(coords, fa, fb) -> bool:
    """conv(fa) meet conv(fb) equals conv(fa & fb), via one strict LP.

    Barycentric representations over a simplex are unique, so the hulls
    intersect beyond the shared face exactly when a common point puts
    positive weight on a non-shared vertex of fa.
    """
    shared = set(fa) & set(fb)
    d = len(coords[fa[0]])
    na, nb = len(fa), len(fb)
    nvars = na + nb
    cons = []
    for c in range(d):
        row = [Fraction(coords[i][c]) for i in fa] + [-Fraction(coords[j][c]) for j in fb]
        cons.append((tuple(row), EQ, Fraction(0)))
    cons.append((tuple([Fraction(1)] * na + [Fraction(0)] * nb), EQ, Fraction(1)))
    cons.append((tuple([Fraction(0)] * na + [Fraction(1)] * nb), EQ, Fraction(1)))
    for j in range(nvars):
        probe = [Fraction(0)] * nvars
        probe[j] = Fraction(1)
        cons.append((tuple(probe), GE, Fraction(0)))
    off = tuple(Fraction(0 if v in shared else 1) for v in fa) + tuple(Fraction(0) for _ in fb)
    cons.append((off, ">", Fraction(0)))
    lp = rational_lp(nvars, cons)
    return lp_feasible_strict(lp) is None


@dataclass(frozen=True)
class LiftingCertificate:
    heights: tuple[Fraction, ...]


def _interpolation_row(coords, facet, v):
    """Integer row asserting interp_F(v) - h(v) < 0 over the height variables."""
    pts = [coords[i] for i in facet]
    coeffs = barycentric_coordinates(pts, coords[v])
    assert coeffs is not None
    denom = math.lcm(*[c.denominator for c in coeffs])
    return [(i, int(c * denom)) for i, c in zip(facet, coeffs)], denom


def check_regular(t: Triangulation, max_strict: int = REGULARITY_MAX_STRICT):
    """Lifting heights certifying regularity, or None when no lifting exists.

    One strict inequality per (cell, outside vertex) pair feeds the exact
    LP; any witness is re-verified through verify_lifting before it is
    returned.
    """
    nverts = len(t.vertices)
    chart = _target_chart(t)
    coords = [chart.to_lattice(v) for v in t.vertices]
    n_constraints = sum(nverts - len(f) for f in t.facets)
    if n_constraints > max_strict:
        raise BudgetError(
            f"regularity LP has {n_constraints} strict rows (guard {max_strict}); "
            "raise the guard to force the solve")
    cons = []
    for f in t.facets:
        inside = set(f)
        for v in range(nverts):
            if v in inside:
                continue
            entries, denom = _interpolation_row(coords, f, v)
            row = [Fraction(0)] * nverts
            for i, c in entries:
                row[i] += Fraction(c)
            row[v] -= Fraction(denom)
            cons.append((tuple(-x for x in row), ">", Fraction(0)))
    lp = rational_lp(nverts, cons)
    witness = lp_feasible_strict(lp)
    if witness is None:
        return None
    cert = LiftingCertificate(tuple(witness))
    if not verify_lifting(t, cert.heights):
        raise VerificationError("simplex produced a lifting that fails re-verification")
    return cert


@functools.lru_cache(maxsize=None)
def difference_regularity_certificate(n: int):
    """Memoized lifting certificate for the recursive triangulation.

    The LP for one size is solved once per process; callers still re-verify
    the witness independently.
    """
    return check_regular(triangulate_difference_polytope(n))


def verify_lifting(t: Triangulation, heights) -> bool:
    """Independent exact check that the heights induce exactly this triangulation."""
    hs = [Fraction(h) for h in heights]
    if len(hs) != len(t.vertices):
        return False
    chart = _target_chart(t)
    coords = [chart.to_lattice(v) for v in t.vertices]
    for f in t.facets:
        inside = set(f)
        pts = [coords[i] for i in f]
        for v in range(len(t.vertices)):
            if v in inside:
                continue
            coeffs = barycentric_coordinates(pts, coords[v])
            if coeffs is None:
                return False
            interp = sum(c * hs[i] for c, i in zip(coeffs, f))
            if not interp < hs[v]:
                return False
    return True


# ---------------------------------------------------------------------------
# Serialization: {"schema": 1, "vertices": [...], "facets": [...], "lifting": [...]}.


def triangulation_to_dict(t: Triangulation) -> dict:
    doc = {
        "schema": 1,
        "vertices": [list(v) for v in t.vertices],
        "facets": [list(f) for f in t.facets],
    }
    if t.lifting is not None:
        doc["lifting"] = [f"{h.numerator}/{h.denominator}" for h in t.lifting]
    return doc


def triangulation_to_json(t: Triangulation) -> str:
    return json.dumps(triangulation_to_dict(t), sort_keys=True, separators=(",", ": "), indent=1)


def triangulation_from_dict(doc: dict, target: Optional[PolytopeV] = None) -> Triangulation:
    if doc.get("schema") != 1:
        raise DomainError("unsupported triangulation schema")
    lifting = None
    if "lifting" in doc:
        lifting = [Fraction(int(p), int(q)) for p, q in (s.split("/") for s in doc["lifting"])]
    return make_triangulation(doc["vertices"], doc["facets"], target, lifting)


def triangulation_from_json(text: str, target: Optional[PolytopeV] = None) -> Triangulation:
    return triangulation_from_dict(json.loads(text), target)
