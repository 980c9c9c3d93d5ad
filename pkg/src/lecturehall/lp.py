"""Exact rational linear programming.

A dense two-phase simplex over `fractions.Fraction` with Bland's pivoting
rule, so termination is guaranteed and every answer is exact. Strict
inequalities are certified by adding one shared slack variable, bounding it
by 1, and maximizing it: the system with strict constraints is feasible
exactly when the optimum is positive, and the optimal point is a witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError

GE = ">="
GT = ">"
EQ = "=="

_NORMALIZE = {">=": GE, ">": GT, "==": EQ, "=": EQ}


@dataclass(frozen=True)
class RationalLP:
    """Feasibility system over free rational variables.

    Constraints are (coefficients, relation, rhs) with relation one of
    '>=', '>', '=='. Use :func:`rational_lp` to build one; it also accepts
    '<=' and '<' and normalizes them by negation.
    """

    n_vars: int
    constraints: tuple[tuple[tuple[Fraction, ...], str, Fraction], ...]


def rational_lp(n_vars: int, constraints) -> RationalLP:
    normalized = []
    for coeffs, rel, rhs in constraints:
        cs = tuple(Fraction(c) for c in coeffs)
        if len(cs) != n_vars:
            raise DomainError("constraint vector length does not match variable count")
        r = Fraction(rhs)
        if rel in ("<=", "<"):
            cs = tuple(-c for c in cs)
            r = -r
            rel = ">=" if rel == "<=" else ">"
        if rel not in _NORMALIZE:
            raise DomainError(f"unknown relation {rel!r}")
        normalized.append((cs, _NORMALIZE[rel], r))
    return RationalLP(n_vars, tuple(normalized))


class _Tableau:
    """Simplex tableau in canonical form: basic columns are unit columns."""

    def __init__(self, rows, rhs, basis, ncols):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.ncols = ncols

    def pivot(self, i: int, j: int):
        piv = self.rows[i][j]
        inv = Fraction(1) / piv
        self.rows[i] = [x * inv for x in self.rows[i]]
        self.rhs[i] *= inv
        ri = self.rows[i]
        bi = self.rhs[i]
        for k in range(len(self.rows)):
            if k == i:
                continue
            f = self.rows[k][j]
            if f:
                self.rows[k] = [x - f * y for x, y in zip(self.rows[k], ri)]
                self.rhs[k] -= f * bi
        self.basis[i] = j

    def reduced_costs(self, cost):
        red = list(cost)
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb:
                row = self.rows[i]
                for j in range(self.ncols):
                    if row[j]:
                        red[j] -= cb * row[j]
        return red

    def maximize(self, cost, banned):
        """Bland's rule iteration; returns 'optimal' or 'unbounded'."""
        red = self.reduced_costs(cost)
        while True:
            enter = None
            for j in range(self.ncols):
                if j not in banned and red[j] > 0:
                    enter = j
                    break
            if enter is None:
                return "optimal"
            leave = None
            best_ratio = None
            for i, row in enumerate(self.rows):
                a = row[enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if (best_ratio is None or ratio < best_ratio
                            or (ratio == best_ratio and self.basis[i] < self.basis[leave])):
                        best_ratio = ratio
                        leave = i
            if leave is None:
                return "unbounded"
            self.pivot(leave, enter)
            f = red[enter]
            if f:
                row = self.rows[leave]
                for j in range(self.ncols):
                    if row[j]:
                        red[j] -= f * row[j]

    def value(self, cost):
        return sum(cost[b] * self.rhs[i] for i, b in enumerate(self.basis) if cost[b])

    def solution(self, ncols):
        x = [Fraction(0)] * ncols
        for i, b in enumerate(self.basis):
            if b < ncols:
                x[b] = self.rhs[i]
        return x


def _solve_standard(rows_eq, rhs, n_struct, objective):
    """Maximize objective over {A z = b, z >= 0} given as equality rows.

    Rows may have negative rhs; they are negated first. Artificial variables
    complete the initial basis wherever no unit slack column is available.
    Returns (status, z, value) with status in {'optimal','infeasible',
    'unbounded'}.
    """
    m = len(rows_eq)
    rows = [list(r) for r in rows_eq]
    b = list(rhs)
    for i in range(m):
        if b[i] < 0:
            rows[i] = [-x for x in rows[i]]
            b[i] = -b[i]
    # identify ready-made unit columns for the crash basis
    basis = [-1] * m
    used_cols = set()
    for j in range(n_struct):
        nonzero = [i for i in range(m) if rows[i][j] != 0]
        if len(nonzero) == 1 and rows[nonzero[0]][j] == 1 and basis[nonzero[0]] == -1 and j not in used_cols:
            basis[nonzero[0]] = j
            used_cols.add(j)
    art_cols = []
    ncols = n_struct
    for i in range(m):
        if basis[i] == -1:
            for r2 in range(m):
                rows[r2].append(Fraction(1 if r2 == i else 0))
            basis[i] = ncols
            art_cols.append(ncols)
            ncols += 1
    tab = _Tableau(rows, b, basis, ncols)
    banned: set[int] = set()
    if art_cols:
        cost1 = [Fraction(0)] * ncols
        for j in art_cols:
            cost1[j] = Fraction(-1)
        status = tab.maximize(cost1, banned)
        assert status == "optimal"  # phase 1 is always bounded
        if tab.value(cost1) != 0:
            return "infeasible", None, None
        art_set = set(art_cols)
        drop = []
        for i in range(len(tab.rows)):
            if tab.basis[i] in art_set:
                pivot_col = next((j for j in range(n_struct) if tab.rows[i][j] != 0), None)
                if pivot_col is None:
                    drop.append(i)
                else:
                    tab.pivot(i, pivot_col)
        for i in reversed(drop):
            del tab.rows[i]
            del tab.rhs[i]
            del tab.basis[i]
        banned |= art_set
    cost2 = list(objective) + [Fraction(0)] * (ncols - n_struct)
    status = tab.maximize(cost2, banned)
    if status == "unbounded":
        return "unbounded", None, None
    z = tab.solution(n_struct)
    return "optimal", z, tab.value(cost2)


def lp_optimize(n_vars: int, constraints, objective, maximize: bool = True):
    """Optimize a linear objective over free variables and {>=, ==} constraints.

    Returns (status, x, value). Free variables are split into nonnegative
    pairs before the standard-form solve.
    """
    obj = [Fraction(c) for c in objective]
    if not maximize:
        obj = [-c for c in obj]
    n_struct = 2 * n_vars
    rows = []
    rhs = []
    slack_count = sum(1 for _, rel, _ in constraints if rel != EQ)
    slack_idx = 0
    for coeffs, rel, r in constraints:
        if rel == GT:
            raise DomainError("lp_optimize does not accept strict constraints")
        # '>=' becomes '<=' by negation, then an equality via one slack
        if rel == GE:
            base = [-Fraction(c) for c in coeffs]
            rr = -Fraction(r)
        else:
            base = [Fraction(c) for c in coeffs]
            rr = Fraction(r)
        row = []
        for c in base:
            row.append(c)
            row.append(-c)
        row.extend(Fraction(0) for _ in range(slack_count))
        if rel == GE:
            row[n_struct + slack_idx] = Fraction(1)
            slack_idx += 1
        rows.append(row)
        rhs.append(rr)
    total_struct = n_struct + slack_count
    full_obj = []
    for c in obj:
        full_obj.append(c)
        full_obj.append(-c)
    full_obj.extend(Fraction(0) for _ in range(slack_count))
    if not rows:
        return "optimal", tuple(Fraction(0) for _ in range(n_vars)), Fraction(0)
    status, z, value = _solve_standard(rows, rhs, total_struct, full_obj)
    if status != "optimal":
        return status, None, None
    x = tuple(z[2 * i] - z[2 * i + 1] for i in range(n_vars))
    return "optimal", x, (value if maximize else -value)


def lp_feasible(n_vars: int, constraints):
    """Witness for a non-strict system, or None."""
    status, x, _ = lp_optimize(n_vars, constraints, [0] * n_vars)
    return x if status == "optimal" else None


def lp_feasible_strict(lp: RationalLP):
    """Exact witness satisfying every constraint of ``lp`` including strict ones.

    Strictness is realized by a single auxiliary slack maximized over all
    strict constraints and capped at 1, so an unbounded margin still yields a
    finite witness. Returns the witness vector, or None when infeasible.
    """
    n = lp.n_vars
    aug = []
    has_strict = False
    for coeffs, rel, rhs in lp.constraints:
        if rel == GT:
            has_strict = True
            aug.append((tuple(coeffs) + (Fraction(-1),), GE, rhs))
        else:
            aug.append((tuple(coeffs) + (Fraction(0),), rel, rhs))
    eps = tuple(Fraction(0) for _ in range(n)) + (Fraction(1),)
    aug.append((tuple(-c for c in eps), GE, Fraction(-1)))  # eps <= 1
    aug.append((eps, GE, Fraction(0)))
    objective = eps
    status, x, value = lp_optimize(n + 1, aug, objective)
    if status != "optimal":
        return None
    if has_strict and value <= 0:
        return None
    witness = x[:n]
    for coeffs, rel, rhs in lp.constraints:
        lhs = sum(c * w for c, w in zip(coeffs, witness))
        ok = lhs > rhs if rel == GT else (lhs == rhs if rel == EQ else lhs >= rhs)
        assert ok, "simplex returned a non-witness"
    return witness
