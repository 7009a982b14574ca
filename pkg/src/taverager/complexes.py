"""Bounded complexes of projectives over a Dynkin path algebra.

A term is a tuple of vertices, one P(v) per entry.  Because the quivers are
trees, Hom(P(j), P(i)) is either zero or spanned by the unique path i ~> j,
so every morphism between sums of projectives is a scalar matrix with a
fixed zero pattern and composition is ordinary matrix multiplication.
"""
from __future__ import annotations

from fractions import Fraction

from . import linalg as la

ZERO = Fraction(0)
ONE = Fraction(1)


def _zeros(r, c):
    return [[ZERO] * c for _ in range(r)]


def _mm(a, b, inner):
    return la.matmul(a, b, inner=inner) if a else []


def _neg(m):
    return [[-v for v in row] for row in m]


def _add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


class Cx:
    """Complex with terms[n] (tuple of vertices) and d[n]: terms[n] -> terms[n+1]."""

    __slots__ = ("terms", "d")

    def __init__(self, terms: dict, d: dict):
        self.terms = {n: tuple(t) for n, t in terms.items() if t}
        self.d = {}
        for n, m in d.items():
            if n in self.terms and n + 1 in self.terms:
                self.d[n] = m

    def size(self, n):
        return len(self.terms.get(n, ()))

    def diff(self, n):
        m = self.d.get(n)
        if m is None:
            return _zeros(self.size(n + 1), self.size(n))
        return m

    def degrees(self):
        return sorted(self.terms)

    def is_zero(self):
        return not self.terms

    def shift(self, k=1):
        """Sigma^k: (Sigma C)^n = C^{n+1} with differential -d."""
        sign = -1 if k % 2 else 1
        terms = {n - k: t for n, t in self.terms.items()}
        d = {n - k: (m if sign == 1 else _neg(m)) for n, m in self.d.items()}
        return Cx(terms, d)

    def __repr__(self):
        return f"Cx({self.terms})"


class Chain:
    """Chain map src -> tgt; comps[n] is tgt.size(n) x src.size(n)."""

    __slots__ = ("src", "tgt", "comps")

    def __init__(self, src: Cx, tgt: Cx, comps: dict):
        self.src, self.tgt = src, tgt
        self.comps = {}
        for n, m in comps.items():
            if src.size(n) and tgt.size(n):
                self.comps[n] = m

    def at(self, n):
        m = self.comps.get(n)
        if m is None:
            return _zeros(self.tgt.size(n), self.src.size(n))
        return m

    def shift(self, k=1):
        return Chain(self.src.shift(k), self.tgt.shift(k), {n - k: m for n, m in self.comps.items()})

    def scaled(self, c):
        return Chain(self.src, self.tgt, {n: [[c * v for v in row] for row in m] for n, m in self.comps.items()})

    def __add__(self, other):
        degs = set(self.comps) | set(other.comps)
        return Chain(self.src, self.tgt, {n: _add(self.at(n), other.at(n)) for n in degs})

    def __neg__(self):
        return self.scaled(-1)

    def __sub__(self, other):
        return self + (-other)


def compose(g: Chain, f: Chain) -> Chain:
    """g after f."""
    comps = {}
    for n in f.comps:
        if n in g.comps:
            comps[n] = _mm(g.comps[n], f.comps[n], f.tgt.size(n))
    return Chain(f.src, g.tgt, comps)


def identity(c: Cx) -> Chain:
    return Chain(c, c, {n: la.identity(c.size(n)) for n in c.terms})


def zero_map(a: Cx, b: Cx) -> Chain:
    return Chain(a, b, {})


def check_complex(c: Cx) -> bool:
    for n in c.d:
        if n + 1 in c.d:
            if not la.is_zero(_mm(c.d[n + 1], c.d[n], c.size(n + 1))):
                return False
    return True


def check_chain(f: Chain) -> bool:
    degs = set(f.src.terms) | set(f.tgt.terms)
    for n in degs:
        lhs = _mm(f.tgt.diff(n), f.at(n), f.tgt.size(n))
        rhs = _mm(f.at(n + 1), f.src.diff(n), f.src.size(n + 1))
        if lhs and not all(x == y for ra, rb in zip(lhs, rhs) for x, y in zip(ra, rb)):
            return False
    return True


# ---------------------------------------------------------------- sums

def direct_sum(cs):
    """Return (sum, injections, projections)."""
    cs = list(cs)
    degs = sorted({n for c in cs for n in c.terms})
    terms = {n: tuple(v for c in cs for v in c.terms.get(n, ())) for n in degs}
    d = {}
    for n in degs:
        if n + 1 not in terms:
            continue
        m = _zeros(len(terms[n + 1]), len(terms[n]))
        ro = co = 0
        for c in cs:
            blk = c.diff(n)
            for i, row in enumerate(blk):
                for j, v in enumerate(row):
                    m[ro + i][co + j] = v
            ro += c.size(n + 1)
            co += c.size(n)
        d[n] = m
    total = Cx(terms, d)
    incs, projs = [], []
    offs = {n: 0 for n in degs}
    for c in cs:
        ic, pc = {}, {}
        for n in c.terms:
            k = c.size(n)
            ic[n] = _zeros(total.size(n), k)
            pc[n] = _zeros(k, total.size(n))
            for t in range(k):
                ic[n][offs[n] + t][t] = ONE
                pc[n][t][offs[n] + t] = ONE
            offs[n] += k
        incs.append(Chain(c, total, ic))
        projs.append(Chain(total, c, pc))
    return total, incs, projs


def hstack_maps(maps, src_sum_incs, src_sum):
    """Map out of a direct sum given its components."""
    acc = zero_map(src_sum, maps[0].tgt) if maps else None
    for f, inc in zip(maps, src_sum_incs):
        proj = _projection_of(inc)
        acc = acc + compose(f, proj)
    return acc


def _projection_of(inc: Chain) -> Chain:
    return Chain(inc.tgt, inc.src, {n: la.transpose(m, inc.tgt.size(n)) for n, m in inc.comps.items()})


# ---------------------------------------------------------------- cones

def cone(f: Chain):
    """Cone(f)^n = A^{n+1} + B^n, d = [[-d_A, 0], [f, d_B]].

    Returns (cone, inclusion B -> cone, projection cone -> Sigma A).
    """
    A, B = f.src, f.tgt
    degs = sorted({n - 1 for n in A.terms} | set(B.terms))
    terms = {n: A.terms.get(n + 1, ()) + B.terms.get(n, ()) for n in degs}
    d = {}
    for n in degs:
        if n + 1 not in terms:
            continue
        a0, a1 = A.size(n + 1), A.size(n + 2)
        b0, b1 = B.size(n), B.size(n + 1)
        m = _zeros(a1 + b1, a0 + b0)
        dA = A.diff(n + 1)
        for i in range(a1):
            for j in range(a0):
                m[i][j] = -dA[i][j]
        fn = f.at(n + 1)
        for i in range(b1):
            for j in range(a0):
                m[a1 + i][j] = fn[i][j]
        dB = B.diff(n)
        for i in range(b1):
            for j in range(b0):
                m[a1 + i][a0 + j] = dB[i][j]
        d[n] = m
    C = Cx(terms, d)
    inc, proj = {}, {}
    for n in C.terms:
        a0, b0 = A.size(n + 1), B.size(n)
        if b0:
            inc[n] = [[ONE if r == a0 + j else ZERO for j in range(b0)] for r in range(a0 + b0)]
        if a0:
            proj[n] = [[ONE if c == i else ZERO for c in range(a0 + b0)] for i in range(a0)]
    return C, Chain(B, C, inc), Chain(C, A.shift(1), proj)


def cocone(f: Chain):
    """Cocone^n = A^n + B^{n-1}, d = [[d_A, 0], [-f, -d_B]].

    Returns (cocone, projection cocone -> A).
    """
    A, B = f.src, f.tgt
    degs = sorted(set(A.terms) | {n + 1 for n in B.terms})
    terms = {n: A.terms.get(n, ()) + B.terms.get(n - 1, ()) for n in degs}
    d = {}
    for n in degs:
        if n + 1 not in terms:
            continue
        a0, a1 = A.size(n), A.size(n + 1)
        b0, b1 = B.size(n - 1), B.size(n)
        m = _zeros(a1 + b1, a0 + b0)
        dA = A.diff(n)
        for i in range(a1):
            for j in range(a0):
                m[i][j] = dA[i][j]
        fn = f.at(n)
        for i in range(b1):
            for j in range(a0):
                m[a1 + i][j] = -fn[i][j]
        dB = B.diff(n - 1)
        for i in range(b1):
            for j in range(b0):
                m[a1 + i][a0 + j] = -dB[i][j]
        d[n] = m
    C = Cx(terms, d)
    proj = {}
    for n in C.terms:
        a0 = A.size(n)
        if a0:
            proj[n] = [[ONE if c == i else ZERO for c in range(C.size(n))] for i in range(a0)]
    return C, Chain(C, A, proj)


# ---------------------------------------------------------------- minimisation

def minimize(c: Cx):
    """Strip contractible summands P(v) --1--> P(v).

    Returns (m, p, i) with p: c -> m, i: m -> c, p . i = id_m and
    i . p homotopic to id_c.
    """
    cur = c
    p_tot = identity(c)
    i_tot = identity(c)
    while True:
        hit = None
        for n in cur.degrees():
            m = cur.d.get(n)
            if m is None:
                continue
            src, tgt = cur.terms[n], cur.terms[n + 1]
            for r, row in enumerate(m):
                for col, v in enumerate(row):
                    if v and src[col] == tgt[r]:
                        hit = (n, r, col)
                        break
                if hit:
                    break
            if hit:
                break
        if hit is None:
            return cur, p_tot, i_tot
        new, p, i = _eliminate(cur, *hit)
        p_tot = compose(p, p_tot)
        i_tot = compose(i_tot, i)
        cur = new


def _eliminate(c: Cx, n, r, col):
    dn = c.d[n]
    delta = dn[r][col]
    keep_n = [j for j in range(c.size(n)) if j != col]
    keep_n1 = [i for i in range(c.size(n + 1)) if i != r]
    alpha = [[dn[i][j] for j in keep_n] for i in keep_n1]
    beta = [dn[i][col] for i in keep_n1]          # B -> A'
    gamma = [dn[r][j] for j in keep_n]            # A -> B'
    new_dn = [[alpha[a][b] - beta[a] * gamma[b] / delta for b in range(len(keep_n))]
              for a in range(len(keep_n1))]
    terms = dict(c.terms)
    terms[n] = tuple(c.terms[n][j] for j in keep_n)
    terms[n + 1] = tuple(c.terms[n + 1][i] for i in keep_n1)
    d = dict(c.d)
    d[n] = new_dn
    if n - 1 in c.d:
        d[n - 1] = [c.d[n - 1][j] for j in keep_n]
    if n + 1 in c.d:
        d[n + 1] = [[row[i] for i in keep_n1] for row in c.d[n + 1]]
    new = Cx(terms, d)
    # p: c -> new, i: new -> c
    pc, ic = {}, {}
    for k in c.terms:
        if k == n:
            pc[k] = [[ONE if j == keep_n[a] else ZERO for j in range(c.size(n))] for a in range(len(keep_n))]
            ic[k] = [[ZERO] * len(keep_n) for _ in range(c.size(n))]
            for a, j in enumerate(keep_n):
                ic[k][j][a] = ONE
            for b in range(len(keep_n)):
                ic[k][col][b] = -gamma[b] / delta
        elif k == n + 1:
            pc[k] = [[ZERO] * c.size(n + 1) for _ in keep_n1]
            for a, i in enumerate(keep_n1):
                pc[k][a][i] = ONE
                pc[k][a][r] = -beta[a] / delta
            ic[k] = [[ONE if i == keep_n1[a] else ZERO for a in range(len(keep_n1))] for i in range(c.size(n + 1))]
        else:
            pc[k] = la.identity(c.size(k))
            ic[k] = la.identity(c.size(k))
    return new, Chain(c, new, pc), Chain(new, c, ic)


def is_minimal(c: Cx) -> bool:
    for n, m in c.d.items():
        src, tgt = c.terms[n], c.terms[n + 1]
        for r, row in enumerate(m):
            for col, v in enumerate(row):
                if v and src[col] == tgt[r]:
                    return False
    return True


def invert_chain(f: Chain) -> Chain:
    """Degreewise inverse of a chain isomorphism."""
    comps = {}
    for n in set(f.src.terms) | set(f.tgt.terms):
        if f.src.size(n) != f.tgt.size(n):
            raise ZeroDivisionError("not degreewise invertible")
        comps[n] = la.inverse(f.at(n))
    return Chain(f.tgt, f.src, comps)


# ---------------------------------------------------------------- Hom in K^b(proj)

class HomSpace:
    """Hom(C, D) modulo homotopy, with a basis of chain maps."""

    def __init__(self, allowed, C: Cx, D: Cx):
        self.src, self.tgt = C, D
        var = []
        for n in sorted(set(C.terms) & set(D.terms)):
            for r, u in enumerate(D.terms[n]):
                for c, v in enumerate(C.terms[n]):
                    if allowed(u, v):
                        var.append((n, r, c))
        self.var = var
        self.pos = {k: i for i, k in enumerate(var)}
        nv = len(var)
        rows = []
        for n in sorted(C.terms):
            if n + 1 not in D.terms:
                continue
            dD, dC = D.diff(n), C.diff(n)
            for r1, u in enumerate(D.terms[n + 1]):
                for c, v in enumerate(C.terms[n]):
                    if not allowed(u, v):
                        continue
                    row = [ZERO] * nv
                    for r in range(D.size(n)):
                        coef = dD[r1][r] if dD else ZERO
                        if coef:
                            k = self.pos.get((n, r, c))
                            if k is not None:
                                row[k] += coef
                    for c1 in range(C.size(n + 1)):
                        coef = dC[c1][c]
                        if coef:
                            k = self.pos.get((n + 1, r1, c1))
                            if k is not None:
                                row[k] -= coef
                    if any(row):
                        rows.append(row)
        cycles = la.nullspace(rows, nv) if nv else []
        bounds = []
        for n in sorted(C.terms):
            if n - 1 not in D.terms:
                continue
            for r, u in enumerate(D.terms[n - 1]):
                for c, v in enumerate(C.terms[n]):
                    if not allowed(u, v):
                        continue
                    vec = [ZERO] * nv
                    dD = D.diff(n - 1)
                    for r2 in range(D.size(n)):
                        coef = dD[r2][r]
                        if coef:
                            k = self.pos.get((n, r2, c))
                            if k is not None:
                                vec[k] += coef
                    dC = C.diff(n - 1)
                    for c0 in range(C.size(n - 1)):
                        coef = dC[c][c0]
                        if coef:
                            k = self.pos.get((n - 1, r, c0))
                            if k is not None:
                                vec[k] += coef
                    if any(vec):
                        bounds.append(vec)
        self._reduce, _ = la.complement_coords(bounds, nv)
        reduced = []
        basis = []
        for z in cycles:
            rz = self._reduce(z)
            if any(rz) and la.rank(reduced + [rz], nv) > len(reduced):
                reduced.append(rz)
                basis.append(z)
        self._basis_vecs = basis
        self._reduced = reduced
        self._red_rref = la.rref(reduced, nv) if reduced else ([], [])
        self.dim = len(basis)
        self.basis = [self.to_chain(z) for z in basis]

    def to_chain(self, vec) -> Chain:
        comps = {}
        for (n, r, c), val in zip(self.var, vec):
            if val:
                if n not in comps:
                    comps[n] = _zeros(self.tgt.size(n), self.src.size(n))
                comps[n][r][c] = val
        return Chain(self.src, self.tgt, comps)

    def to_vec(self, f: Chain):
        return [f.at(n)[r][c] for (n, r, c) in self.var]

    def coords(self, f: Chain):
        """Coordinates of the class of f in self.basis."""
        if self.dim == 0:
            return []
        v = self._reduce(self.to_vec(f))
        sol = la.solve(la.transpose(self._reduced, len(self.var)), v, self.dim)
        if sol is None:
            raise ValueError("map is not a chain map")
        return sol

    def is_null(self, f: Chain) -> bool:
        return not any(self._reduce(self.to_vec(f)))

    def from_coords(self, coeffs) -> Chain:
        vec = [ZERO] * len(self.var)
        for a, z in zip(coeffs, self._basis_vecs):
            if a:
                vec = [x + a * y for x, y in zip(vec, z)]
        return self.to_chain(vec)
