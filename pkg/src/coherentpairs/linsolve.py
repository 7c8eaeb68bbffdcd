"""Exact Gaussian elimination for the small per-index fitting systems.

Columns are eliminated left to right, so the caller's column order is the
pivot priority: variables meant to absorb gauge freedom go last and are
assigned their pinned value (default 0) when they end up free.
"""

from __future__ import annotations

from .scalars import ZERO


def solve_tall(rows, rhs, ncols, pins=None):
    """Solve an (overdetermined, possibly singular) exact linear system.

    rows     list of coefficient lists (length ncols)
    rhs      right-hand sides
    pins     values for free columns, keyed by column index

    Returns (solution, free_columns, residuals) where residuals[i] is the
    defect of input row i under the returned solution; all-zero residuals
    mean the system is exactly satisfied.
    """
    pins = pins or {}
    m = [list(row) + [r] for row, r in zip(rows, rhs)]
    nrows = len(m)
    pivot_of_col = {}
    r = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if m[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][col]
        m[r] = [v / pv for v in m[r]]
        for i in range(nrows):
            if i != r and m[i][col] != 0:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivot_of_col[col] = r
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivot_of_col]
    sol = [ZERO] * ncols
    for c in free:
        sol[c] = pins.get(c, ZERO)
    for c, i in pivot_of_col.items():
        acc = m[i][ncols]
        for cf in free:
            acc -= m[i][cf] * sol[cf]
        sol[c] = acc
    residuals = []
    for row, b in zip(rows, rhs):
        acc = -b
        for coef, x in zip(row, sol):
            acc += coef * x
        residuals.append(acc)
    return sol, free, residuals
