"""Fraction-free Gauss-Jordan elimination over the integers (reference path)."""
from math import gcd


def _normalize(row):
    g = 0
    for v in row:
        if v:
            g = gcd(g, v)
            if g == 1:
                return row
    if g > 1:
        return [v // g for v in row]
    return row


def rref_int(rows, ncols):
    """Reduce an integer matrix in place-free fashion.

    Returns (rows, pivots) where rows is a list of the nonzero reduced rows.
    Each row is primitive, has a positive pivot, and all other rows vanish in
    its pivot column.
    """
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        piv = -1
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        m[r], m[piv] = m[piv], m[r]
        prow = m[r]
        if prow[c] < 0:
            prow = [-v for v in prow]
        prow = _normalize(prow)
        m[r] = prow
        p = prow[c]
        for i in range(nrows):
            if i != r:
                f = m[i][c]
                if f:
                    row = m[i]
                    m[i] = _normalize([p * a - f * b for a, b in zip(row, prow)])
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m[:r], pivots
