"""Exact rational linear algebra on lists of lists of Fractions."""
from fractions import Fraction
from math import lcm

from .kernel import rref_int


def zeros(r, c):
    return [[Fraction(0)] * c for _ in range(r)]


def identity(n):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def matmul(a, b, inner=None):
    """Product of an r x k and a k x c matrix; `inner` gives k when r == 0."""
    if not a:
        return []
    k = len(a[0]) if inner is None else inner
    c = len(b[0]) if b else 0
    if k == 0:
        return zeros(len(a), c)
    out = []
    for row in a:
        acc = [0] * c
        for j, v in enumerate(row):
            if v:
                bj = b[j]
                for t in range(c):
                    if bj[t]:
                        acc[t] += v * bj[t]
        out.append([Fraction(x) for x in acc])
    return out


def transpose(m, ncols=None):
    if not m:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*m)]


def is_zero(m):
    return all(v == 0 for row in m for v in row)


def _to_int_rows(rows):
    out = []
    for row in rows:
        den = 1
        for v in row:
            if v:
                den = lcm(den, Fraction(v).denominator)
        out.append([int(Fraction(v) * den) for v in row])
    return out


def rref(rows, ncols):
    """Reduced row echelon form with unit pivots; returns (rows, pivots)."""
    if not rows or ncols == 0:
        return [], []
    red, piv = rref_int(_to_int_rows(rows), ncols)
    out = []
    for row, c in zip(red, piv):
        p = row[c]
        out.append([Fraction(v, p) for v in row])
    return out, piv


def rank(rows, ncols=None):
    if not rows:
        return 0
    n = len(rows[0]) if ncols is None else ncols
    return len(rref(rows, n)[1])


def nullspace(rows, ncols):
    """Basis of {x : rows @ x = 0}, one vector per free column."""
    red, piv = rref(rows, ncols)
    pivset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, c in zip(red, piv):
            v[c] = -row[f]
        basis.append(v)
    return basis


def solve(rows, rhs, ncols):
    """One solution x of rows @ x = rhs, or None if inconsistent."""
    aug = [list(r) + [Fraction(b)] for r, b in zip(rows, rhs)]
    red, piv = rref(aug, ncols + 1)
    if piv and piv[-1] == ncols:
        return None
    x = [Fraction(0)] * ncols
    for row, c in zip(red, piv):
        x[c] = row[ncols]
    return x


def row_basis(vectors, ncols):
    """Indices of a maximal independent subfamily (greedy, in order)."""
    chosen = []
    cur = []
    r = 0
    for i, v in enumerate(vectors):
        trial = cur + [v]
        rk = rank(trial, ncols)
        if rk > r:
            cur = trial
            chosen.append(i)
            r = rk
    return chosen


def inverse(m):
    n = len(m)
    if n == 0:
        return []
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    red, piv = rref(aug, 2 * n)
    if piv[:n] != list(range(n)) or len(piv) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red[:n]]


def complement_coords(span, ncols):
    """Echelon data to reduce vectors modulo span(span).

    Returns a function mapping a vector to its reduced form (zero iff the
    vector lies in the span).
    """
    red, piv = rref(span, ncols) if span else ([], [])

    def reduce(v):
        w = list(v)
        for row, c in zip(red, piv):
            if w[c]:
                f = w[c]
                w = [a - f * b for a, b in zip(w, row)]
        return w

    return reduce, piv
