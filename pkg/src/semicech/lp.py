"""Exact rational linear programming: two-phase tableau simplex with Bland's rule.

Solves ::

    maximize    c · x
    subject to  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0

entirely in :class:`fractions.Fraction`.  Every result carries a dual
vector that certifies it: an optimal dual solution when ``status ==
"optimal"``, a Farkas ray when ``status == "infeasible"``.  Use
:func:`check_optimal` / :func:`check_farkas` to verify certificates
independently of the solver.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import solve_rational

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: str
    x: list[Fraction] | None = None
    objective: Fraction | None = None
    # one entry per original row: ub rows first, then eq rows
    dual: list[Fraction] | None = None
    pivots: int = 0

    @property
    def feasible(self) -> bool:
        return self.status in (OPTIMAL, UNBOUNDED)


class _Tableau:
    def __init__(self, rows: list[list[Fraction]], rhs: list[Fraction], basis: list[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.initial = [row[:] for row in rows]
        self.pivots = 0

    def pivot(self, r: int, c: int) -> None:
        row = self.rows[r]
        piv = row[c]
        if piv != 1:
            row = [x / piv for x in row]
            self.rows[r] = row
            self.rhs[r] /= piv
        rhs_r = self.rhs[r]
        nz = [j for j, x in enumerate(row) if x]
        for i, other in enumerate(self.rows):
            if i == r:
                continue
            f = other[c]
            if f:
                for j in nz:
                    other[j] -= f * row[j]
                self.rhs[i] -= f * rhs_r
        self.basis[r] = c
        self.pivots += 1

    def reduced_costs(self, cost: Sequence[Fraction], allowed: Sequence[int]) -> dict[int, Fraction]:
        cb = [cost[b] for b in self.basis]
        out = {}
        for j in allowed:
            z = sum((cb[i] * self.rows[i][j] for i in range(len(self.rows)) if cb[i] and self.rows[i][j]), Fraction(0))
            out[j] = cost[j] - z
        return out

    def run(self, cost: Sequence[Fraction], allowed: Sequence[int]) -> str:
        """Maximize ``cost`` over the columns in ``allowed`` (Bland's rule)."""
        allowed = sorted(allowed)
        while True:
            rc = self.reduced_costs(cost, allowed)
            basic = set(self.basis)
            entering = next((j for j in allowed if j not in basic and rc[j] > 0), None)
            if entering is None:
                return OPTIMAL
            best = None
            for i, row in enumerate(self.rows):
                a = row[entering]
                if a > 0:
                    ratio = self.rhs[i] / a
                    key = (ratio, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return UNBOUNDED
            self.pivot(best[1], entering)


def _as_fractions(rows):
    return [[Fraction(x) for x in row] for row in rows]


def solve_lp(
    c: Sequence,
    A_ub: Sequence[Sequence] | None = None,
    b_ub: Sequence | None = None,
    A_eq: Sequence[Sequence] | None = None,
    b_eq: Sequence | None = None,
) -> LPResult:
    c = [Fraction(x) for x in c]
    n = len(c)
    A_ub = _as_fractions(A_ub or [])
    b_ub = [Fraction(x) for x in (b_ub or [])]
    A_eq = _as_fractions(A_eq or [])
    b_eq = [Fraction(x) for x in (b_eq or [])]
    m_ub, m_eq = len(A_ub), len(A_eq)
    m = m_ub + m_eq

    # Standard form: columns = x (n) | slacks (m_ub) | artificials (as needed).
    rows, rhs, signs, basis = [], [], [], []
    n_slack = m_ub
    artificial_rows = []
    for i in range(m):
        if i < m_ub:
            coeffs = list(A_ub[i]) + [Fraction(int(k == i)) for k in range(n_slack)]
            b = b_ub[i]
        else:
            coeffs = list(A_eq[i - m_ub]) + [Fraction(0)] * n_slack
            b = b_eq[i - m_ub]
        sign = 1
        if b < 0:
            sign = -1
            coeffs = [-x for x in coeffs]
            b = -b
        rows.append(coeffs)
        rhs.append(b)
        signs.append(sign)
        if i < m_ub and sign == 1:
            basis.append(n + i)
        else:
            basis.append(None)
            artificial_rows.append(i)

    n_art = len(artificial_rows)
    width = n + n_slack + n_art
    for row in rows:
        row.extend([Fraction(0)] * n_art)
    for k, i in enumerate(artificial_rows):
        rows[i][n + n_slack + k] = Fraction(1)
        basis[i] = n + n_slack + k
    tab = _Tableau(rows, rhs, basis)
    real_cols = list(range(n + n_slack))
    art_cols = set(range(n + n_slack, width))

    if n_art:
        phase1 = [Fraction(0)] * (n + n_slack) + [Fraction(-1)] * n_art
        tab.run(phase1, list(range(width)))
        infeas = sum((tab.rhs[i] for i, b in enumerate(tab.basis) if b in art_cols), Fraction(0))
        if infeas > 0:
            y = _duals(tab, phase1)
            # Farkas ray for the original rows: y^T A >= 0, y_ub >= 0, y^T b < 0.
            farkas = [signs[i] * y[i] for i in range(m)]
            return LPResult(INFEASIBLE, dual=farkas, pivots=tab.pivots)
        # drive zero-level artificials out of the basis; drop redundant rows
        drop = []
        for i, b in enumerate(tab.basis):
            if b in art_cols:
                j = next((j for j in real_cols if tab.rows[i][j] != 0), None)
                if j is None:
                    drop.append(i)
                else:
                    tab.pivot(i, j)
        kept = [i for i in range(m) if i not in drop]
    else:
        kept = list(range(m))

    sub = _Tableau([tab.rows[i][: n + n_slack] for i in kept], [tab.rhs[i] for i in kept], [tab.basis[i] for i in kept])
    sub.pivots = tab.pivots
    cost = c + [Fraction(0)] * n_slack
    status = sub.run(cost, real_cols)
    if status == UNBOUNDED:
        return LPResult(UNBOUNDED, pivots=sub.pivots)

    x_full = [Fraction(0)] * (n + n_slack)
    for i, b in enumerate(sub.basis):
        x_full[b] = sub.rhs[i]
    x = x_full[:n]
    obj = sum((ci * xi for ci, xi in zip(c, x)), Fraction(0))

    # Duals against the unsigned original rows of the final basis.
    orig = [
        (list(A_ub[i]) + [Fraction(int(k == i)) for k in range(n_slack)]) if i < m_ub
        else list(A_eq[i - m_ub]) + [Fraction(0)] * n_slack
        for i in kept
    ]
    bt = [[orig[r][b] for r in range(len(kept))] for b in sub.basis]
    yk = solve_rational(bt, [cost[b] for b in sub.basis]) if kept else []
    dual = [Fraction(0)] * m
    for r, i in enumerate(kept):
        dual[i] = yk[r]
    return LPResult(OPTIMAL, x=x, objective=obj, dual=dual, pivots=sub.pivots)


def _duals(tab: _Tableau, cost: Sequence[Fraction]) -> list[Fraction]:
    """Simplex multipliers ``y`` with ``B^T y = c_B`` for the current basis."""
    m = len(tab.rows)
    bt = [[tab.initial[r][b] for r in range(m)] for b in tab.basis]
    return solve_rational(bt, [cost[b] for b in tab.basis])


def check_farkas(A_ub, b_ub, A_eq, b_eq, y) -> bool:
    """Verify an infeasibility ray: ``y_ub >= 0``, ``y^T A >= 0``, ``y^T b < 0``."""
    A_ub = A_ub or []
    A_eq = A_eq or []
    rows = list(A_ub) + list(A_eq)
    rhs = list(b_ub or []) + list(b_eq or [])
    if len(y) != len(rows):
        return False
    if any(yi < 0 for yi in y[: len(A_ub)]):
        return False
    n = len(rows[0]) if rows else 0
    for j in range(n):
        if sum((yi * Fraction(row[j]) for yi, row in zip(y, rows)), Fraction(0)) < 0:
            return False
    return sum((yi * Fraction(bi) for yi, bi in zip(y, rhs)), Fraction(0)) < 0


def check_optimal(c, A_ub, b_ub, A_eq, b_eq, x, y) -> bool:
    """Verify primal feasibility, dual feasibility and equal objectives."""
    A_ub = A_ub or []
    A_eq = A_eq or []
    b_ub = list(b_ub or [])
    b_eq = list(b_eq or [])
    if any(xi < 0 for xi in x):
        return False
    for row, bi in zip(A_ub, b_ub):
        if sum(Fraction(a) * xi for a, xi in zip(row, x)) > bi:
            return False
    for row, bi in zip(A_eq, b_eq):
        if sum(Fraction(a) * xi for a, xi in zip(row, x)) != bi:
            return False
    rows = list(A_ub) + list(A_eq)
    if any(yi < 0 for yi in y[: len(A_ub)]):
        return False
    for j, cj in enumerate(c):
        if sum((yi * Fraction(row[j]) for yi, row in zip(y, rows)), Fraction(0)) < cj:
            return False
    primal = sum(Fraction(ci) * xi for ci, xi in zip(c, x))
    dual = sum(yi * Fraction(bi) for yi, bi in zip(y, b_ub + b_eq))
    return primal == dual
