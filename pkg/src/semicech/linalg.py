"""Exact linear systems over Q (Gaussian elimination) and Z (Hermite reduction)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = list[list]


def rref(a: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q and the list of pivot columns."""
    m = [[Fraction(x) for x in row] for row in a]
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        p = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [x / piv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                row_r = m[r]
                m[i] = [x - f * y for x, y in zip(m[i], row_r)]
        pivots.append(c)
        r += 1
    return m, pivots


def rank(a: Sequence[Sequence]) -> int:
    return len(rref(a)[1]) if a else 0


def solve_rational(a: Sequence[Sequence], b: Sequence) -> list[Fraction] | None:
    """A basic solution of ``a x = b`` over Q (free variables zero), or ``None``."""
    n_cols = len(a[0]) if a else 0
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    m, pivots = rref(aug)
    if n_cols in pivots:
        return None
    x = [Fraction(0)] * n_cols
    for i, c in enumerate(pivots):
        x[c] = m[i][n_cols]
    return x


def mat_vec(a: Sequence[Sequence], x: Sequence) -> list:
    return [sum((aij * xj for aij, xj in zip(row, x) if aij), 0) for row in a]


def solve_integer(a: Sequence[Sequence[int]], b: Sequence[int]) -> list[int] | None:
    """An integer solution of ``a x = b``, or ``None`` if none exists.

    Column operations (extended Euclid) bring ``a`` to lower echelon form
    ``H = a U`` with ``U`` unimodular; ``H y = b`` is then solved by forward
    substitution, requiring exact divisibility, and ``x = U y``.
    """
    n_rows = len(a)
    n_cols = len(a[0]) if a else 0
    if any(Fraction(x).denominator != 1 for row in a for x in row):
        raise ValueError("solve_integer needs an integer matrix")
    if any(Fraction(x).denominator != 1 for x in b):
        return None
    h = [[int(x) for x in row] for row in a]
    u = [[int(i == j) for j in range(n_cols)] for i in range(n_cols)]

    def col_op(dst, src, q):
        # column dst -= q * column src
        for row in h:
            row[dst] -= q * row[src]
        for row in u:
            row[dst] -= q * row[src]

    def col_swap(i, j):
        for row in h:
            row[i], row[j] = row[j], row[i]
        for row in u:
            row[i], row[j] = row[j], row[i]

    pivot_of_row: list[int | None] = []
    p = 0
    for i in range(n_rows):
        if p == n_cols:
            pivot_of_row.append(None)
            continue
        row = h[i]
        while True:
            nz = [j for j in range(p, n_cols) if row[j] != 0]
            if len(nz) <= 1:
                break
            j_min = min(nz, key=lambda j: abs(row[j]))
            for j in nz:
                if j != j_min:
                    col_op(j, j_min, row[j] // row[j_min])
        nz = [j for j in range(p, n_cols) if row[j] != 0]
        if not nz:
            pivot_of_row.append(None)
            continue
        if nz[0] != p:
            col_swap(nz[0], p)
        pivot_of_row.append(p)
        p += 1

    y = [0] * n_cols
    for i in range(n_rows):
        s = int(b[i]) - sum(h[i][j] * y[j] for j in range(n_cols) if h[i][j] and j != pivot_of_row[i])
        piv = pivot_of_row[i]
        if piv is None:
            if s != 0:
                return None
            continue
        if s % h[i][piv]:
            return None
        y[piv] = s // h[i][piv]
    return [sum(u[i][j] * y[j] for j in range(n_cols)) for i in range(n_cols)]
