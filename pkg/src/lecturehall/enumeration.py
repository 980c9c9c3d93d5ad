"""Exact lattice-point enumeration under gradings and dilations.

The engine enumerates integer points of a bounded slice
{A x >= rhs, eq rows == rhs} by depth-first scan: static per-coordinate
bounds come from exact LPs, every constraint whose support closes at the
current depth tightens the local range, and open constraints prune through
interval arithmetic over the remaining box. On the lecture hall chain this
degenerates to the usual left-to-right propagation of the ratio
inequalities, so the cost stays linear in the number of points reported.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import BudgetError, DomainError, VerificationError
from .exact import IntPolynomial, SeriesTrunc, Vector, series_expand_rational
from .geometry import (
    ConeH,
    Grading,
    PolytopeH,
    coordinate_bounds_of_system,
    degree_grading,
    lecture_hall_cone,
    lecture_hall_polytope,
    ones_grading,
)

DESK_MAX_N = 6
DESK_MAX_T = 20
CEILING_MAX_T = 12
EULERIAN_MAX_N = 10


def _check_desk(n: int, t: int, unsafe: bool, max_n: int = DESK_MAX_N, max_t: int = DESK_MAX_T):
    if unsafe:
        return
    if n > max_n or t > max_t:
        raise BudgetError(
            f"n={n}, T={t} exceeds the desk-scale guard (n<={max_n}, T<={max_t}); "
            "pass unsafe=True / --unsafe-large to override")


def lattice_points(ineqs, eqs, n) -> list[Vector]:
    """All integer points of the bounded system, in lexicographic order."""
    bounds = coordinate_bounds_of_system(ineqs, eqs, n)
    if bounds is None:
        return []
    if any(lo > hi for lo, hi in bounds):
        return []
    cons = [(tuple(a), int(r), False) for a, r in ineqs] + [(tuple(a), int(r), True) for a, r in eqs]
    # last coordinate with a nonzero coefficient, per constraint
    closing = []
    for vec, _, _ in cons:
        last = max((j for j in range(n) if vec[j] != 0), default=-1)
        closing.append(last)
    # static interval of the suffix sum_{j>=d} vec_j * x_j over the box
    suffix_lo = [[0] * (n + 1) for _ in cons]
    suffix_hi = [[0] * (n + 1) for _ in cons]
    for ci, (vec, _, _) in enumerate(cons):
        for d in range(n - 1, -1, -1):
            c = vec[d]
            lo, hi = bounds[d]
            add_lo = c * lo if c > 0 else c * hi
            add_hi = c * hi if c > 0 else c * lo
            suffix_lo[ci][d] = suffix_lo[ci][d + 1] + add_lo
            suffix_hi[ci][d] = suffix_hi[ci][d + 1] + add_hi
    out = []
    point = [0] * n
    prefix = [[0] * (n + 1) for _ in cons]  # prefix[ci][d] = vec . point[:d]

    def descend(depth: int):
        if depth == n:
            out.append(tuple(point))
            return
        lo, hi = bounds[depth]
        # tighten with constraints that close exactly here
        for ci, (vec, rhs, is_eq) in enumerate(cons):
            c = vec[depth]
            if c == 0 or closing[ci] != depth:
                continue
            resid = rhs - prefix[ci][depth]
            if is_eq:
                if resid % c != 0:
                    return
                val = resid // c
                lo = max(lo, val)
                hi = min(hi, val)
            elif c > 0:
                lo = max(lo, -((-resid) // c))  # ceil(resid / c)
            else:
                hi = min(hi, resid // c)  # floor for negative coefficient
            if lo > hi:
                return
        for x in range(lo, hi + 1):
            point[depth] = x
            ok = True
            nd = depth + 1
            for ci, (vec, rhs, is_eq) in enumerate(cons):
                pre = prefix[ci][depth] + vec[depth] * x
                prefix[ci][nd] = pre
                lo_tot = pre + suffix_lo[ci][nd]
                hi_tot = pre + suffix_hi[ci][nd]
                if is_eq:
                    if not (lo_tot <= rhs <= hi_tot):
                        ok = False
                        break
                elif hi_tot < rhs:
                    ok = False
                    break
            if ok:
                descend(nd)

    descend(0)
    return out


@dataclass(frozen=True)
class GradedCount:
    grading: Grading
    t: int
    count: int


@dataclass(frozen=True)
class EhrhartData:
    polytope_id: str
    counts: tuple[int, ...]
    dim: int
    hstar: IntPolynomial


def hilbert_count(cone: ConeH, grading: Grading, t: int, extra_eqs=()) -> int:
    """Number of lattice points of the cone at degree t."""
    if t < 0:
        raise DomainError("degree must be nonnegative")
    grading.validate_for(cone)
    ineqs = [(row, 0) for row in cone.rows]
    eqs = [(grading.vector, t)] + list(extra_eqs)
    return len(lattice_points(ineqs, eqs, cone.dim))


def hilbert_slice(cone: ConeH, grading: Grading, t: int, extra_eqs=()) -> list[Vector]:
    grading.validate_for(cone)
    ineqs = [(row, 0) for row in cone.rows]
    eqs = [(grading.vector, t)] + list(extra_eqs)
    return lattice_points(ineqs, eqs, cone.dim)


def graded_counts(cone: ConeH, grading: Grading, T: int) -> list[GradedCount]:
    return [GradedCount(grading, t, hilbert_count(cone, grading, t)) for t in range(T + 1)]


def hilbert_series_trunc(cone: ConeH, grading: Grading, T: int, unsafe: bool = False) -> SeriesTrunc:
    _check_desk(cone.dim, T, unsafe)
    return SeriesTrunc([hilbert_count(cone, grading, t) for t in range(T + 1)])


def ehrhart_count(p: PolytopeH, t: int) -> int:
    """Lattice points of the t-th dilate; raises on unbounded input."""
    if t < 0:
        raise DomainError("dilation must be nonnegative")
    dilated = p.dilate(t)
    return len(lattice_points(list(dilated.rows), [], p.dim))


def ehrhart_counts(p: PolytopeH, T: int) -> list[int]:
    return [ehrhart_count(p, t) for t in range(T + 1)]


def hstar_from_counts(counts, dim: int) -> IntPolynomial:
    """Numerator of the count series over (1-z)^(dim+1).

    Needs at least dim+2 counts so the vanishing of the coefficient past the
    expected degree is actually observed; a nonvanishing high coefficient or
    a negative retained one means the counts and dimension are inconsistent.
    """
    counts = [int(c) for c in counts]
    if len(counts) < dim + 2:
        raise DomainError(f"need at least {dim + 2} counts for dimension {dim}")
    binom = IntPolynomial.one_minus_z_power(dim + 1)
    coeffs = []
    for k in range(len(counts)):
        acc = 0
        for j in range(min(k, dim + 1) + 1):
            acc += binom[j] * counts[k - j]
        if k > dim:
            if acc != 0:
                raise VerificationError(
                    f"count series times (1-z)^{dim + 1} has nonzero coefficient {acc} at degree {k}")
        else:
            if acc < 0:
                raise VerificationError(f"negative numerator coefficient {acc} at degree {k}")
            coeffs.append(acc)
    return IntPolynomial(coeffs)


def eulerian(n: int) -> IntPolynomial:
    """Descent generating polynomial of the symmetric group S_n, by enumeration."""
    if n < 0:
        raise DomainError("need n >= 0")
    if n > EULERIAN_MAX_N:
        raise BudgetError(f"n={n} exceeds the factorial-enumeration guard (n<={EULERIAN_MAX_N})")
    if n == 0:
        return IntPolynomial([1])
    counts = [0] * n
    for perm in itertools.permutations(range(n)):
        d = sum(1 for i in range(n - 1) if perm[i] > perm[i + 1])
        counts[d] += 1
    return IntPolynomial(counts)


def descent_number(perm) -> int:
    return sum(1 for i in range(len(perm) - 1) if perm[i] > perm[i + 1])


def eulerian_worpitzky_check(n: int, T: int) -> bool:
    """sum_t (1+t)^n z^t against the Eulerian numerator over (1-z)^(n+1)."""
    if n > EULERIAN_MAX_N:
        raise BudgetError(f"n={n} exceeds the guard")
    lhs = SeriesTrunc([(1 + t) ** n for t in range(T + 1)])
    rhs = series_expand_rational(eulerian(n), [IntPolynomial.one_minus_z_power(n + 1)], T)
    return lhs == rhs


def bme_rhs(n: int, T: int) -> SeriesTrunc:
    """Expansion of prod_{j=1..n} 1/(1 - q^(2j-1)) through degree T."""
    if n < 1:
        raise DomainError("need n >= 1")
    factors = []
    for j in range(1, n + 1):
        coeffs = [0] * (2 * j)
        coeffs[0] = 1
        coeffs[2 * j - 1] = -1
        factors.append(IntPolynomial(coeffs))
    return series_expand_rational(IntPolynomial.one(), factors, T)


def ceiling_series(n: int, T: int, unsafe: bool = False) -> SeriesTrunc:
    """Coefficient t counts cone points whose last coordinate has ceiling t.

    The fiber over t is x_n in [n(t-1)+1, nt] (just x_n = 0 at t = 0), which
    is finite even though the exponent is not a grading.
    """
    if n < 1:
        raise DomainError("need n >= 1")
    _check_desk(n, T, unsafe, max_n=DESK_MAX_N, max_t=CEILING_MAX_T)
    cone = lecture_hall_cone(n)
    rows = [(row, 0) for row in cone.rows]
    last = tuple(1 if j == n - 1 else 0 for j in range(n))
    neg_last = tuple(-x for x in last)
    coeffs = []
    for t in range(T + 1):
        lo = max(0, n * (t - 1) + 1)
        hi = n * t
        ineqs = rows + [(last, lo), (neg_last, -hi)]
        coeffs.append(len(lattice_points(ineqs, [], n)))
    return SeriesTrunc(coeffs)


# ---------------------------------------------------------------------------
# Counts for the named polytopes of the family.


def lecture_hall_ehrhart_count(n: int, t: int) -> int:
    return ehrhart_count(lecture_hall_polytope(n), t)


def difference_polytope_ehrhart_count(n: int, t: int) -> int:
    """Dilates of the height-1 simplex, counted in partition coordinates.

    The row-difference map is a lattice bijection, so the t-th dilate has as
    many points as the degree-t slice of the cone.
    """
    if n < 2:
        return 1  # a single point in every dilate
    return hilbert_count(lecture_hall_cone(n), degree_grading(n), t)


def pyramid_base_ehrhart_count(n: int, t: int) -> int:
    """Same slice with the first partition coordinate pinned to zero."""
    if n < 2:
        raise DomainError("the pyramid base needs n >= 2")
    if n == 2:
        return 1
    pin = tuple(1 if j == 0 else 0 for j in range(n))
    return hilbert_count(lecture_hall_cone(n), degree_grading(n), t, extra_eqs=[(pin, 0)])


def ehrhart_data_for(obj: str, n: int, unsafe: bool = False) -> EhrhartData:
    """Counts and numerator polynomial for one of the named objects."""
    if n < 1:
        raise DomainError("need n >= 1")
    if not unsafe and n > DESK_MAX_N:
        raise BudgetError(f"n={n} exceeds the desk-scale guard; use unsafe")
    if obj == "Pn":
        dim = n
        counts = [lecture_hall_ehrhart_count(n, t) for t in range(dim + 2)]
    elif obj == "Rn":
        dim = n - 1
        counts = [difference_polytope_ehrhart_count(n, t) for t in range(dim + 2)]
    elif obj == "Rn-tilde":
        dim = n - 2
        if dim < 0:
            raise DomainError("the pyramid base needs n >= 2")
        counts = [pyramid_base_ehrhart_count(n, t) for t in range(dim + 2)]
    else:
        raise DomainError(f"unknown object {obj!r}")
    return EhrhartData(obj, tuple(counts), dim, hstar_from_counts(counts, dim))
