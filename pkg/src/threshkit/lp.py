"""Exact rational simplex for covering LPs.

The covering problem

    minimize   sum_j c_j w_j
    subject to sum_j A[i][j] w_j >= 1   for every row i
               w >= 0

is solved through its dual ``max sum_i y_i  s.t.  A^T y <= c, y >= 0``.  With
``c >= 0`` the all-slack basis is feasible, so a single phase suffices.  The
tableau is kept in compact (Tucker) form with Bland's rule against cycling.
All arithmetic is in :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .polynomial import Poly, poly


@dataclass(frozen=True)
class LPResult:
    value: Fraction
    primal: tuple[Fraction, ...]   # w, one entry per column of A
    dual: tuple[Fraction, ...]     # y, one entry per row of A
    basis: tuple[int, ...]         # basic variable labels of the dual tableau


def solve_covering_lp(A: Sequence[Sequence[int]], c: Sequence) -> LPResult:
    """Solve ``min c.w  s.t.  A w >= 1, w >= 0`` exactly.

    ``A`` is m x n with 0/1 entries; ``c`` has n nonnegative entries.  Dual
    variable ``y_i`` has label ``i``; the slack of dual constraint ``j`` has
    label ``m + j``.
    """
    m = len(A)
    n = len(c)
    c = [Fraction(x) for x in c]
    if any(x < 0 for x in c):
        raise ValueError("covering costs must be nonnegative")
    if any(not any(row) for row in A):
        raise ValueError("infeasible covering LP: a row has no covering column")

    # rows: dual constraints j (basic var initially slack m+j); cols: y_i
    T = [[Fraction(A[i][j]) for i in range(m)] for j in range(n)]
    b = list(c)
    d = [Fraction(1)] * m
    z = Fraction(0)
    row_label = [m + j for j in range(n)]
    col_label = list(range(m))

    while True:
        entering = None
        for s in range(m):
            if d[s] > 0 and (entering is None or col_label[s] < col_label[entering]):
                entering = s
        if entering is None:
            break
        s = entering
        r = None
        best = None
        for i in range(n):
            if T[i][s] > 0:
                ratio = b[i] / T[i][s]
                if best is None or ratio < best or (ratio == best and row_label[i] < row_label[r]):
                    best, r = ratio, i
        if r is None:
            raise ArithmeticError("dual LP unbounded: covering LP infeasible")
        p = T[r][s]
        prow = T[r]
        inv = 1 / p
        for i in range(n):
            if i == r:
                continue
            f = T[i][s]
            if f:
                row = T[i]
                for j in range(m):
                    if j != s and prow[j]:
                        row[j] -= f * prow[j] * inv
                b[i] -= f * b[r] * inv
                row[s] = -f * inv
        ds = d[s]
        if ds:
            for j in range(m):
                if j != s and prow[j]:
                    d[j] -= ds * prow[j] * inv
            z += ds * b[r] * inv
            d[s] = -ds * inv
        for j in range(m):
            if j != s:
                prow[j] *= inv
        prow[s] = inv
        b[r] *= inv
        row_label[r], col_label[s] = col_label[s], row_label[r]

    w = [Fraction(0)] * n
    y = [Fraction(0)] * m
    for s in range(m):
        lab = col_label[s]
        if lab >= m:
            w[lab - m] = -d[s]
    for i in range(n):
        lab = row_label[i]
        if lab < m:
            y[lab] = b[i]
    return LPResult(z, tuple(w), tuple(y), tuple(sorted(row_label)))


def solve_linear_system(M: list[list[Fraction]], rhs: list[list[Fraction]]) -> list[list[Fraction]]:
    """Solve ``M X = RHS`` for square nonsingular ``M`` (columns of RHS solved together)."""
    n = len(M)
    k = len(rhs[0]) if rhs else 0
    aug = [list(map(Fraction, M[i])) + list(map(Fraction, rhs[i])) for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ArithmeticError("singular basis matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:n + k] for row in aug]


def basic_solution_polys(A: Sequence[Sequence[int]], degrees: Sequence[int],
                         basis: Sequence[int]) -> list[Poly]:
    """Values of the dual basic variables as polynomials in q, for costs ``c_j = q**degrees[j]``.

    The dual objective row does not depend on ``c``, so a basis is optimal at
    q exactly when every returned polynomial is nonnegative at q.
    """
    m, n = len(A), len(degrees)
    top = max(degrees)

    def column(label):
        if label < m:
            return [A[label][j] for j in range(n)]
        return [1 if j == label - m else 0 for j in range(n)]

    cols = [column(lab) for lab in basis]
    M = [[cols[k][j] for k in range(n)] for j in range(n)]
    rhs = [[1 if degrees[j] == e else 0 for e in range(top + 1)] for j in range(n)]
    sol = solve_linear_system(M, rhs)
    return [poly(sol[k]) for k in range(n)]
