"""Exact integer and rational linear algebra, polynomials, truncated series.

Everything in this module is exact: integers are unbounded, rationals are
`fractions.Fraction`, and nothing ever rounds. All higher modules build on
these primitives, so a single inexact coefficient here would silently
invalidate every certificate downstream.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

Vector = tuple[int, ...]


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def vsub(a, b) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def vadd(a, b) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def is_zero_vector(v) -> bool:
    return all(x == 0 for x in v)


def primitive_vector(v) -> Vector:
    """Divide an integer vector by the gcd of its entries (nonzero input)."""
    g = 0
    for x in v:
        g = math.gcd(g, abs(x))
    if g == 0:
        raise DomainError("zero vector has no primitive form")
    return tuple(x // g for x in v)


@dataclass(frozen=True)
class IntMatrix:
    """Rectangular matrix of unbounded integers."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.entries:
            width = len(self.entries[0])
            if any(len(r) != width for r in self.entries):
                raise DomainError("matrix rows have unequal lengths")

    @staticmethod
    def from_rows(rows) -> "IntMatrix":
        return IntMatrix(tuple(tuple(int(x) for x in r) for r in rows))

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def matmul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DomainError("matrix dimensions do not match")
        ot = tuple(zip(*other.entries))
        return IntMatrix(tuple(tuple(dot(r, c) for c in ot) for r in self.entries))

    def apply_column(self, col) -> Vector:
        if len(col) != self.cols:
            raise DomainError("column length does not match matrix width")
        return tuple(dot(r, col) for r in self.entries)

    def transpose(self) -> "IntMatrix":
        return IntMatrix(tuple(zip(*self.entries)))


def det(m) -> int:
    """Exact determinant by fraction-free Bareiss elimination.

    Intermediate entries stay integral (each division is exact), which keeps
    the bit growth polynomial instead of the exponential blowup of naive
    fraction arithmetic.
    """
    rows = m.entries if isinstance(m, IntMatrix) else tuple(tuple(int(x) for x in r) for r in m)
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise DomainError("determinant requires a square matrix")
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def mat_inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Integer inverse of a matrix with determinant +-1."""
    d = det(m)
    if d not in (1, -1):
        raise DomainError(f"matrix is not unimodular (det={d})")
    n = m.rows
    aug = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
           for i, row in enumerate(m.entries)]
    _rref(aug)
    inv = []
    for i in range(n):
        row = aug[i][n:]
        if any(f.denominator != 1 for f in row):
            raise DomainError("inverse is not integral")  # unreachable for det +-1
        inv.append(tuple(int(f) for f in row))
    return IntMatrix(tuple(inv))


class IntPolynomial:
    """Integer polynomial stored as a coefficient tuple, trailing zeros trimmed.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, IntPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("IntPolynomial", self.coeffs))

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPolynomial(
            [self[k] + other[k] for k in range(n)]
        )

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPolynomial([c * other for c in self.coeffs])
        out = [0] * (len(self.coeffs) + len(other.coeffs))
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def is_palindromic(self) -> bool:
        return self.coeffs == self.coeffs[::-1]

    @staticmethod
    def one() -> "IntPolynomial":
        return IntPolynomial([1])

    @staticmethod
    def one_minus_z_power(k: int) -> "IntPolynomial":
        """(1 - z)^k expanded by the binomial theorem."""
        return IntPolynomial([(-1) ** j * math.comb(k, j) for j in range(k + 1)])


class SeriesTrunc:
    """Truncated power series: exact coefficients c_0..c_T."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs):
        cs = tuple(int(c) for c in coeffs)
        if not cs:
            raise DomainError("a truncated series needs at least the constant term")
        object.__setattr__(self, "order", len(cs) - 1)
        object.__setattr__(self, "coeffs", cs)

    def __eq__(self, other):
        return isinstance(other, SeriesTrunc) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(("SeriesTrunc", self.coeffs))

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k]

    def __repr__(self):
        return f"SeriesTrunc({list(self.coeffs)})"


def series_expand_rational(numerator: IntPolynomial, denominator_factors, T: int) -> SeriesTrunc:
    """Power-series coefficients of numerator / prod(factors) through degree T.

    Each denominator factor must have constant term +-1 so that it is
    invertible as a power series; division then proceeds one factor at a
    time by exact convolution, which keeps intermediate coefficients small.
    """
    if T < 0:
        raise DomainError("truncation order must be nonnegative")
    cur = [numerator[k] for k in range(T + 1)]
    for f in denominator_factors:
        f0 = f[0]
        if f0 not in (1, -1):
            raise DomainError("denominator factor must have constant term +1 or -1")
        out = [0] * (T + 1)
        fdeg = f.degree
        for k in range(T + 1):
            acc = cur[k]
            for j in range(1, min(k, fdeg) + 1):
                acc -= f[j] * out[k - j]
            out[k] = acc if f0 == 1 else -acc
        cur = out
    return SeriesTrunc(cur)


# ---------------------------------------------------------------------------
# Rational elimination helpers.


def _rref(rows) -> list[int]:
    """In-place reduced row-echelon form over Fraction; returns pivot columns."""
    pivots = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def rational_rank(rows) -> int:
    if not rows:
        return 0
    work = [[Fraction(x) for x in r] for r in rows]
    return len(_rref(work))


def nullspace_rational(rows, ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of {u : row . u = 0 for every row}, over the rationals."""
    if not rows:
        return [tuple(Fraction(1 if i == j else 0) for j in range(ncols)) for i in range(ncols)]
    work = [[Fraction(x) for x in r] for r in rows]
    pivots = _rref(work)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -work[i][fc]
        basis.append(tuple(vec))
    return basis


def solve_linear(a_rows, b) -> tuple[Fraction, ...] | None:
    """One exact solution of A x = b, or None if the system is inconsistent.

    When the solution is not unique an arbitrary representative with free
    variables set to zero is returned.
    """
    ncols = len(a_rows[0]) if a_rows else 0
    work = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(a_rows, b)]
    pivots = _rref(work)
    for row in work:
        if all(x == 0 for x in row[:-1]) and row[-1] != 0:
            return None
    x = [Fraction(0)] * ncols
    for i, pc in enumerate(pivots):
        if pc == ncols:
            return None
        x[pc] = work[i][-1]
    return tuple(x)


def hnf_kernel_basis(m_rows, ncols: int) -> list[Vector]:
    """Z-basis of {x in Z^ncols : M x = 0} for an integral matrix of full row rank.

    Column reduction with unimodular operations: after clearing row i the
    columns past position i annihilate rows 0..i, so the trailing columns of
    the accumulated transform are an integral kernel basis.
    """
    acols = [[int(m_rows[i][j]) for i in range(len(m_rows))] for j in range(ncols)]
    ucols = [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    nrows = len(m_rows)
    for r in range(nrows):
        while True:
            nz = [j for j in range(r, ncols) if acols[j][r] != 0]
            if not nz:
                raise DomainError("kernel computation expects full row rank")
            if len(nz) == 1:
                j = nz[0]
                break
            j0 = min(nz, key=lambda j: abs(acols[j][r]))
            for j in nz:
                if j == j0:
                    continue
                q = acols[j][r] // acols[j0][r]
                if q:
                    acols[j] = [a - q * b for a, b in zip(acols[j], acols[j0])]
                    ucols[j] = [a - q * b for a, b in zip(ucols[j], ucols[j0])]
        acols[r], acols[j] = acols[j], acols[r]
        ucols[r], ucols[j] = ucols[j], ucols[r]
    kernel = [tuple(ucols[j]) for j in range(nrows, ncols)]
    for k in kernel:
        assert all(dot(row, k) == 0 for row in m_rows)
    return kernel


class AffineChart:
    """Integral coordinates on the affine hull of a lattice point set.

    The chart maps lattice points of the hull bijectively onto Z^d where d is
    the affine dimension, using a basis of the saturated direction lattice.
    Quantities such as normalized volume and facet primitivity are only
    meaningful in these induced coordinates.
    """

    __slots__ = ("origin", "basis")

    def __init__(self, origin: Vector, basis: tuple[Vector, ...]):
        self.origin = tuple(origin)
        self.basis = tuple(tuple(b) for b in basis)

    @staticmethod
    def from_points(points) -> "AffineChart":
        pts = [tuple(p) for p in points]
        origin = pts[0]
        dirs = [vsub(p, origin) for p in pts[1:]]
        dirs = [d for d in dirs if not is_zero_vector(d)]
        n = len(origin)
        if not dirs:
            return AffineChart(origin, ())
        ann = nullspace_rational(dirs, n)
        if not ann:
            basis = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
            return AffineChart(origin, basis)
        m_rows = []
        for u in ann:
            denom = math.lcm(*[f.denominator for f in u])
            m_rows.append(primitive_vector(tuple(int(f * denom) for f in u)))
        basis = tuple(hnf_kernel_basis(m_rows, n))
        return AffineChart(origin, basis)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def to_lattice(self, point) -> Vector:
        x = self.to_rational(point)
        if any(f.denominator != 1 for f in x):
            raise DomainError(f"{tuple(point)} is not a lattice point of the affine hull")
        return tuple(int(f) for f in x)

    def to_rational(self, point) -> tuple[Fraction, ...]:
        if not self.basis:
            if tuple(point) != self.origin:
                raise DomainError("point lies outside the zero-dimensional hull")
            return ()
        rhs = vsub_general(point, self.origin)
        a_rows = [[self.basis[k][i] for k in range(len(self.basis))] for i in range(len(self.origin))]
        x = solve_linear(a_rows, rhs)
        if x is None:
            raise DomainError(f"{tuple(point)} lies outside the affine hull")
        return x

    def from_lattice(self, x) -> Vector:
        out = list(self.origin)
        for xi, b in zip(x, self.basis):
            for i, bi in enumerate(b):
                out[i] += xi * bi
        return tuple(out)


def vsub_general(a, b):
    return tuple(x - y for x, y in zip(a, b))
