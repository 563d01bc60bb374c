"""Dense exact-rational simplex with Bland's rule.

Solves  max c.x  subject to  A x <= b, x >= 0  with all entries rational and
b >= 0 (so the slack basis is feasible and no phase 1 is needed).  Bland's
smallest-index pivoting rule prevents cycling.  Intended for the desk-scale
LPs in this package; everything is kept as Fractions, so the optimum is exact.
"""

from __future__ import annotations

from fractions import Fraction


def maximize(c, rows, rhs) -> tuple[Fraction, list[Fraction]]:
    """Return (optimal value, optimal x) for max c.x, rows.x <= rhs, x >= 0."""
    n = len(c)
    m = len(rows)
    c = [Fraction(x) for x in c]
    rhs = [Fraction(x) for x in rhs]
    if any(v < 0 for v in rhs):
        raise ValueError("right-hand sides must be nonnegative")

    # tableau: m constraint rows [A | I | b], then the objective row [-c | 0 | 0]
    tab = []
    for i in range(m):
        row = [Fraction(x) for x in rows[i]]
        row += [Fraction(1) if k == i else Fraction(0) for k in range(m)]
        row.append(rhs[i])
        tab.append(row)
    obj = [-x for x in c] + [Fraction(0)] * (m + 1)
    basis = list(range(n, n + m))
    width = n + m + 1

    while True:
        enter = -1
        for j in range(n + m):  # Bland: smallest index with negative reduced cost
            if obj[j] < 0:
                enter = j
                break
        if enter < 0:
            break

        leave = -1
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][width - 1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best = ratio
                    leave = i
        if leave < 0:
            raise ValueError("LP is unbounded")

        piv = tab[leave][enter]
        prow = tab[leave]
        if piv != 1:
            for k in range(width):
                prow[k] /= piv
        for i in range(m):
            if i == leave:
                continue
            f = tab[i][enter]
            if f:
                row = tab[i]
                for k in range(width):
                    if prow[k]:
                        row[k] -= f * prow[k]
        f = obj[enter]
        if f:
            for k in range(width):
                if prow[k]:
                    obj[k] -= f * prow[k]
        basis[leave] = enter

    x = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        if bv < n:
            x[bv] = tab[i][width - 1]
    return obj[width - 1], x
