"""The explicit Hilbert basis of the lecture hall cone and decompositions.

The basis consists of one vector per subset of [n-1]; an independent
brute-force oracle recovers the same set as the irreducible lattice points,
and `decompose` writes any cone point as a sum of basis elements one degree
at a time.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError, VerificationError
from .exact import Vector, vsub
from .geometry import ConeH, Grading, SubsetA, all_subsets, lecture_hall_cone
from .enumeration import hilbert_slice


@dataclass(frozen=True)
class HilbertBasis:
    n: int
    elements: tuple[tuple[Vector, SubsetA], ...]

    def vectors(self) -> tuple[Vector, ...]:
        return tuple(v for v, _ in self.elements)

    def __len__(self):
        return len(self.elements)


def construct_hilbert_basis(n: int) -> HilbertBasis:
    """All 2^(n-1) subset vectors, sorted, each tagged with its subset."""
    if n < 1:
        raise DomainError("need n >= 1")
    tagged = sorted(((a.v_vector(), a) for a in all_subsets(n)), key=lambda p: p[0])
    return HilbertBasis(n, tuple(tagged))


def minimal_generators_bruteforce(cone: ConeH, grading: Grading, t_max: int) -> set[Vector]:
    """Irreducible lattice points of the cone up to the given degree.

    Points are enumerated degree by degree; a point is reducible exactly
    when subtracting some previously cached nonzero point lands back in the
    cone's lattice points, which is complete because the grading is positive.
    """
    if t_max < 1:
        raise DomainError("need t_max >= 1")
    generators: set[Vector] = set()
    cache: list[Vector] = []
    for t in range(1, t_max + 1):
        level = hilbert_slice(cone, grading, t)
        for p in level:
            reducible = any(cone.contains(vsub(p, q)) for q in cache)
            if not reducible:
                generators.add(p)
        cache.extend(level)
    return generators


@dataclass(frozen=True)
class Decomposition:
    """Parts in recursion order plus a per-step flag for the fallback search."""

    parts: tuple[Vector, ...]
    used_fallback: tuple[bool, ...]


def _splitting_rule(point: Vector, n: int) -> Vector:
    """b from the constructive rule: keep entries up to the last index where
    the entry drops below its position, then continue with j+1, ..., n."""
    j = 0
    for i in range(n, 0, -1):
        if point[i - 1] < i:
            j = i
            break
    return tuple(point[:j]) + tuple(range(j + 1, n + 1))


def decompose(point, n: int) -> Decomposition:
    """Write a nonzero cone point as a sum of degree-1 basis vectors.

    Prefers the constructive splitting rule; the rule is not total (its b
    can fall outside the basis), so when it fails the next part is found by
    scanning the basis for any v with point - v still in the cone. Every
    intermediate remainder is itself a cone point, so suffixes of the part
    list sum to cone points.
    """
    point = tuple(int(x) for x in point)
    cone = lecture_hall_cone(n)
    if not cone.contains(point):
        raise DomainError(f"{point} is not a cone point")
    if all(x == 0 for x in point):
        raise DomainError("cannot decompose the zero vector")
    basis = construct_hilbert_basis(n)
    basis_set = set(basis.vectors())
    parts = []
    flags = []
    current = point
    while any(current):
        b = _splitting_rule(current, n)
        c = vsub(current, b)
        if b in basis_set and cone.contains(c):
            parts.append(b)
            flags.append(False)
            current = c
            continue
        for v in basis.vectors():
            c = vsub(current, v)
            if cone.contains(c):
                parts.append(v)
                flags.append(True)
                current = c
                break
        else:
            raise VerificationError(f"no basis element applies to {current}")
    return Decomposition(tuple(parts), tuple(flags))
