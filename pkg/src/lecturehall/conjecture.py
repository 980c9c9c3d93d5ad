"""Experimental harness: Sperner pairs, the braid cube triangulation,
minimal non-edges, and the search for a descent-compatible shelling.

The shelling clause is open, so the tools here only ever report what
happened for one concrete construction: a successful order is re-verified
by replay, a failed search is tagged as exhaustive or budget-limited, and
the report carries the construction id because a negative outcome for this
triangulation says nothing about other triangulations.
"""

from __future__ import annotations

import functools
import itertools
import math
import time
from collections import Counter
from dataclasses import dataclass
from typing import Optional

from .errors import BudgetError, DomainError, VerificationError
from .enumeration import descent_number
from .geometry import make_polytope_v
from .triangulation import (
    CONSTRUCTION_ID,
    REGULARITY_MAX_STRICT,
    Triangulation,
    check_covering,
    check_flag,
    check_unimodular,
    difference_regularity_certificate,
    make_triangulation,
    triangulate_difference_polytope,
    verify_lifting,
)

DEFAULT_SHELLING_BUDGET = 200_000
BRAID_MAX_K = 6


def sperner_pairs(k: int) -> int:
    """Unordered subset pairs of [k] with neither side contained in the other.

    Closed form: C(2^k, 2) - (3^k - 2^k), since ordered strict containments
    are counted by 3^k - 2^k.
    """
    if k < 0:
        raise DomainError("need k >= 0")
    if k > 20:
        raise BudgetError("k exceeds the closed-form guard")
    return math.comb(2 ** k, 2) - (3 ** k - 2 ** k)


@functools.lru_cache(maxsize=None)
def braid_triangulation(k: int) -> Triangulation:
    """Unit cube cut along all hyperplanes x_i = x_j.

    Maximal cells are indexed by permutations; the cell of pi consists of
    the indicator chains 0, e_{pi(k)}, e_{pi(k)} + e_{pi(k-1)}, ..., all-ones.
    """
    if k < 1:
        raise DomainError("need k >= 1")
    if k > BRAID_MAX_K:
        raise BudgetError(f"k={k} exceeds the guard (k<={BRAID_MAX_K})")
    vertices = sorted(itertools.product((0, 1), repeat=k))
    index = {v: i for i, v in enumerate(vertices)}
    facets = []
    for pi in itertools.permutations(range(k)):
        chain = [(0,) * k]
        cur = [0] * k
        for pos in range(k - 1, -1, -1):
            cur[pi[pos]] = 1
            chain.append(tuple(cur))
        facets.append(tuple(sorted(index[v] for v in chain)))
    target = make_polytope_v(
        vertices,
        name="cube",
        membership=lambda p: len(p) == k and all(0 <= x <= 1 for x in p),
        normalized_volume=math.factorial(k),
        check=False,
    )
    return make_triangulation(vertices, facets, target)


def minimal_nonedges(t: Triangulation):
    """Vertex pairs sharing no cell: (count, pairs as point sets).

    These are the minimal non-faces of size two; for a flag complex they are
    all of the minimal non-faces.
    """
    edges = set()
    for f in t.facets:
        edges.update(itertools.combinations(f, 2))
    pairs = []
    for a, b in itertools.combinations(range(len(t.vertices)), 2):
        if (a, b) not in edges:
            pairs.append((t.vertices[a], t.vertices[b]))
    return len(pairs), tuple(pairs)


def _walls(facet):
    return [tuple(v for v in facet if v != drop) for drop in facet]


def is_shelling_order(t: Triangulation, order):
    """Replay an order and recompute attachment counts.

    An order shells when each new cell meets the union of its predecessors
    in a nonempty union of its own walls; equivalently, for every earlier
    cell the intersection extends to a wall already covered.
    """
    facets = [t.facets[i] for i in order]
    if sorted(order) != list(range(len(t.facets))):
        return False, ()
    attach = []
    for i, f in enumerate(facets):
        fset = set(f)
        covered = []
        for w in _walls(f):
            wset = set(w)
            if any(wset <= set(facets[j]) for j in range(i)):
                covered.append(wset)
        attach.append(len(covered))
        if i == 0:
            continue
        if not covered:
            return False, ()
        for j in range(i):
            inter = fset & set(facets[j])
            if not any(inter <= w for w in covered):
                return False, ()
    return True, tuple(attach)


@dataclass(frozen=True)
class ShellingReport:
    found: bool
    order: tuple[int, ...]
    attach_counts: tuple[int, ...]
    descent_multiset_match: bool
    bijection: Optional[tuple[tuple[int, ...], ...]]
    budget_exhausted: bool
    search_complete: bool
    nodes: int


def find_descent_shelling(t: Triangulation, n: int, budget: int = DEFAULT_SHELLING_BUDGET) -> ShellingReport:
    """Backtracking search for a shelling whose attachment numbers realize the
    descent multiset of S_{n-1}.

    Deterministic: candidates are ordered by how scarce their attachment
    number is in the remaining multiset, ties by facet index, and the budget
    is counted in search nodes so reruns reproduce byte-identical reports.
    """
    nf = len(t.facets)
    if nf != math.factorial(n - 1):
        raise DomainError(f"expected {math.factorial(n - 1)} cells for n={n}, found {nf}")
    target = Counter(descent_number(p) for p in itertools.permutations(range(1, n)))
    wall_to_facets: dict[tuple, list[int]] = {}
    for fi, f in enumerate(t.facets):
        for w in _walls(f):
            wall_to_facets.setdefault(w, []).append(fi)
    facet_sets = [set(f) for f in t.facets]
    facet_walls = [[tuple(w) for w in _walls(f)] for f in t.facets]
    used: list[int] = []
    used_set: set[int] = set()
    remaining = Counter(target)
    nodes = 0
    exhausted = False

    def covered_walls(fi):
        out = []
        for w in facet_walls[fi]:
            if any(j in used_set for j in wall_to_facets[w] if j != fi):
                out.append(set(w))
        return out

    def admissible(fi):
        cov = covered_walls(fi)
        attach = len(cov)
        if remaining[attach] <= 0:
            return None
        if used and not cov:
            return None
        for j in used:
            inter = facet_sets[fi] & facet_sets[j]
            if not inter:
                continue
            if not any(inter <= w for w in cov):
                return None
        return attach

    def search():
        nonlocal nodes, exhausted
        nodes += 1
        if nodes > budget:
            exhausted = True
            return False
        if len(used) == nf:
            return True
        options = []
        for fi in range(nf):
            if fi in used_set:
                continue
            attach = admissible(fi)
            if attach is not None:
                options.append((remaining[attach], fi, attach))
        options.sort()
        for _, fi, attach in options:
            used.append(fi)
            used_set.add(fi)
            remaining[attach] -= 1
            if search():
                return True
            remaining[attach] += 1
            used_set.remove(fi)
            used.pop()
            if exhausted:
                return False
        return False

    found = search()
    if not found:
        return ShellingReport(False, (), (), False, None, exhausted, not exhausted, nodes)
    order = tuple(used)
    ok, attach = is_shelling_order(t, order)
    if not ok:
        raise VerificationError("search produced an order that fails replay")
    match = Counter(attach) == target
    bijection = None
    if match:
        by_descents: dict[int, list] = {}
        for p in sorted(itertools.permutations(range(1, n))):
            by_descents.setdefault(descent_number(p), []).append(p)
        bijection = tuple(by_descents[a].pop(0) for a in attach)
    return ShellingReport(True, order, attach, match, bijection, False, True, nodes)


def lex_shelling_attachments(t: Triangulation):
    """Attachment counts of the identity facet order (braid cells are built
    in lex order of their permutations)."""
    return is_shelling_order(t, tuple(range(len(t.facets))))


def conjecture_report(n: int, budget: int = DEFAULT_SHELLING_BUDGET, include_timing: bool = False) -> dict:
    """Structured per-clause verdict for one construction at one size.

    Never asserts the conjecture: clause verdicts are 'holds', 'fails', or
    'inconclusive' for *this* triangulation, identified by construction_id.
    """
    if n < 1:
        raise DomainError("need n >= 1")
    if n > 6:
        raise BudgetError("conjecture report guard is n <= 6")
    t0 = time.monotonic()
    tri = triangulate_difference_polytope(n)
    uni_ok, _ = check_unimodular(tri)
    flag = check_flag(tri)
    cov = check_covering(tri)
    n_strict = sum(len(tri.vertices) - len(f) for f in tri.facets)
    regular = None
    if n_strict <= REGULARITY_MAX_STRICT:
        cert = difference_regularity_certificate(n)
        regular = cert is not None and verify_lifting(tri, cert.heights)
    nonedge_count, _ = minimal_nonedges(tri)
    sperner = sperner_pairs(n - 1)
    shelling = find_descent_shelling(tri, n, budget)
    if shelling.found and shelling.descent_multiset_match:
        shelling_verdict = "holds"
    elif shelling.budget_exhausted:
        shelling_verdict = "inconclusive"
    else:
        shelling_verdict = "fails"
    report = {
        "schema": 1,
        "n": n,
        "construction_id": CONSTRUCTION_ID,
        "facets": len(tri.facets),
        "certificates": {
            "unimodular": uni_ok,
            "flag": flag.is_flag,
            "covering": cov.ok,
            "regular": regular,
        },
        "nonedges": nonedge_count,
        "sperner": sperner,
        "shelling": {
            "found": shelling.found,
            "order": list(shelling.order),
            "attach_counts": list(shelling.attach_counts),
            "budget_exhausted": shelling.budget_exhausted,
            "nodes": shelling.nodes,
        },
        "budget": budget,
        "clauses": {
            "descent_shelling": shelling_verdict,
            "nonedges_equal_sperner": "holds" if nonedge_count == sperner else "fails",
        },
    }
    if include_timing:
        report["wall_clock"] = time.monotonic() - t0
    return report
