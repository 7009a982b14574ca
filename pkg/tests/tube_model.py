"""Brute-force model of a rank-rho tube: nilpotent representations of the cyclic quiver.

Vertex i carries V_i, and the arrow x_i: V_i -> V_{i-1} lowers the vertex.  The
uniserial module with socle a and length l has basis e_0..e_{l-1}, e_k at
vertex a+k, and x e_k = e_{k-1}.  Everything here is plain Gaussian
elimination over Fractions, written independently of the package.
"""
from __future__ import annotations

import random
from fractions import Fraction


# ---------------------------------------------------------------- tiny linear algebra

def _rank(rows):
    m = [list(map(Fraction, r)) for r in rows if r]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def _nullspace(rows, ncols):
    m = [list(map(Fraction, r)) for r in rows]
    piv = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        m[r] = [a / m[r][c] for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        piv.append(c)
        r += 1
    out = []
    for free in range(ncols):
        if free in piv:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for i, c in enumerate(piv):
            v[c] = -m[i][free]
        out.append(v)
    return out


def _mm(a, b, k):
    rows = len(a)
    cols = len(b[0]) if b else 0
    return [[sum((a[i][t] * b[t][j] for t in range(k)), Fraction(0)) for j in range(cols)]
            for i in range(rows)]


def _cols(m, ncols):
    return [[row[j] for row in m] for j in range(ncols)]


# ---------------------------------------------------------------- representations

class NilRep:
    def __init__(self, rho, dims, x):
        self.rho = rho
        self.dims = list(dims)
        self.x = x          # x[i]: dims[i-1] x dims[i]

    def path(self, i, k):
        """Matrix of x^k from V_i to V_{i-k}."""
        rho = self.rho
        n = self.dims[i % rho]
        m = [[Fraction(int(a == b)) for b in range(n)] for a in range(n)]
        cur = i % rho
        for _ in range(k):
            nxt = (cur - 1) % rho
            if self.dims[cur] == 0:
                m = [[Fraction(0)] * n for _ in range(self.dims[nxt])]
            else:
                m = _mm(self.x[cur], m, self.dims[cur])
            cur = nxt
        return m


def uniserial(rho, socle, length) -> NilRep:
    at = {i: [] for i in range(rho)}
    for k in range(length):
        at[(socle + k) % rho].append(k)
    dims = [len(at[i]) for i in range(rho)]
    x = {}
    for i in range(rho):
        j = (i - 1) % rho
        m = [[Fraction(0)] * dims[i] for _ in range(dims[j])]
        for c, k in enumerate(at[i]):
            if k >= 1:
                m[at[j].index(k - 1)][c] = Fraction(1)
        x[i] = m
    return NilRep(rho, dims, x)


def direct_sum(reps, rho=None):
    reps = list(reps)
    rho = reps[0].rho if reps else rho
    dims = [sum(r.dims[i] for r in reps) for i in range(rho)]
    x = {}
    for i in range(rho):
        j = (i - 1) % rho
        m = [[Fraction(0)] * dims[i] for _ in range(dims[j])]
        ro = co = 0
        for r in reps:
            for a, row in enumerate(r.x[i]):
                for b, v in enumerate(row):
                    m[ro + a][co + b] = v
            ro += r.dims[j]
            co += r.dims[i]
        x[i] = m
    return NilRep(rho, dims, x)


def _multiplicities(rho, rank_fn, maxlen):
    """Uniserial summands from r(i, k) = rank of x^k on V_i."""
    def D(i, k):
        return rank_fn(i % rho, k) - rank_fn(i % rho, k + 1)
    out = []
    for a in range(rho):
        for L in range(1, maxlen + 1):
            m = D(a + L - 1, L - 1) - D(a + L, L)
            out.extend([(a, L)] * m)
    return sorted(out)


def decompose(rep: NilRep):
    total = sum(rep.dims)

    def rk(i, k):
        if k == 0:
            return rep.dims[i]
        return _rank(rep.path(i, k)) if rep.dims[i] else 0
    return _multiplicities(rep.rho, rk, total)


def hom_basis(M: NilRep, N: NilRep):
    """Basis of module maps, each a dict i -> N_i x M_i matrix."""
    rho = M.rho
    offs, n = {}, 0
    for i in range(rho):
        offs[i] = n
        n += N.dims[i] * M.dims[i]

    def var(i, a, b):
        return offs[i] + a * M.dims[i] + b
    rows = []
    for i in range(rho):
        j = (i - 1) % rho
        # N.x_i f_i - f_j M.x_i = 0, entries (a, b) with a in N_j, b in M_i
        for a in range(N.dims[j]):
            for b in range(M.dims[i]):
                row = [Fraction(0)] * n
                for c in range(N.dims[i]):
                    if N.x[i][a][c]:
                        row[var(i, c, b)] += N.x[i][a][c]
                for c in range(M.dims[j]):
                    if M.x[i][c][b]:
                        row[var(j, a, c)] -= M.x[i][c][b]
                rows.append(row)
    basis = []
    for v in _nullspace(rows, n) if n else []:
        f = {}
        for i in range(rho):
            f[i] = [[v[var(i, a, b)] for b in range(M.dims[i])] for a in range(N.dims[i])]
        basis.append(f)
    return basis


def hom_dim(M, N):
    return len(hom_basis(M, N))


def euler(M, N):
    rho = M.rho
    s = sum(M.dims[i] * N.dims[i] for i in range(rho))
    s -= sum(M.dims[i] * N.dims[(i - 1) % rho] for i in range(rho))
    return s


def ext_dim(M, N):
    return hom_dim(M, N) - euler(M, N)


def extension(end: NilRep, start: NilRep, cocycle):
    """E with 0 -> start -> E -> end -> 0 glued by cocycle[i]: end_i -> start_{i-1}."""
    rho = end.rho
    dims = [start.dims[i] + end.dims[i] for i in range(rho)]
    x = {}
    for i in range(rho):
        j = (i - 1) % rho
        m = [[Fraction(0)] * dims[i] for _ in range(dims[j])]
        for a, row in enumerate(start.x[i]):
            for b, v in enumerate(row):
                m[a][b] = v
        for a, row in enumerate(cocycle[i]):
            for b, v in enumerate(row):
                m[a][start.dims[i] + b] = v
        for a, row in enumerate(end.x[i]):
            for b, v in enumerate(row):
                m[start.dims[j] + a][start.dims[i] + b] = v
        x[i] = m
    return NilRep(rho, dims, x)


def random_cocycle(end, start, rng):
    rho = end.rho
    return {i: [[Fraction(rng.choice((-1, 1)) * rng.randint(1, 10 ** 6)) for _ in range(end.dims[i])]
                for _ in range(start.dims[(i - 1) % rho])] for i in range(rho)}


def generic_map(M, N, rng):
    basis = hom_basis(M, N)
    f = {i: [[Fraction(0)] * M.dims[i] for _ in range(N.dims[i])] for i in range(M.rho)}
    for b in basis:
        c = rng.randint(1, 10 ** 6)
        for i in f:
            for a in range(N.dims[i]):
                for k in range(M.dims[i]):
                    f[i][a][k] += c * b[i][a][k]
    return f


def kernel_cokernel(M: NilRep, N: NilRep, f):
    """Uniserial decompositions of ker f and coker f."""
    rho = M.rho
    K = {i: _nullspace(f[i], M.dims[i]) if M.dims[i] else [] for i in range(rho)}
    imgs = {i: _cols(f[i], M.dims[i]) for i in range(rho)}

    def rk_ker(i, k):
        if k == 0:
            return len(K[i])
        if not K[i]:
            return 0
        P = M.path(i, k)
        vecs = [[sum(P[a][b] * v[b] for b in range(M.dims[i])) for a in range(len(P))] for v in K[i]]
        return _rank(vecs)

    def rk_cok(i, k):
        tgt = (i - k) % rho
        base = _rank(imgs[tgt]) if imgs[tgt] else 0
        if k == 0:
            return N.dims[i] - (_rank(imgs[i]) if imgs[i] else 0)
        if not N.dims[i]:
            return 0
        P = N.path(i, k)
        vecs = _cols(P, N.dims[i]) + imgs[tgt]
        return _rank(vecs) - base
    n = sum(M.dims) + sum(N.dims)
    return _multiplicities(rho, rk_ker, n), _multiplicities(rho, rk_cok, n)


def compose_maps(g, f, src_dims, mid_dims):
    out = {}
    for i in g:
        if mid_dims[i]:
            out[i] = _mm(g[i], f[i], mid_dims[i])
        else:
            out[i] = [[Fraction(0)] * src_dims[i] for _ in g[i]]
    return out


def cone_oracle(rho, t, rprime, r, seed=0):
    """Summands of Cone(Sigma^{-1} r' + r -> t) for generic maps.

    t, rprime, r use (socle, length) pairs.  Returns (degree-0 summands,
    degree-1 summands) as sorted (socle, length) lists.
    """
    rng = random.Random(seed)
    T = uniserial(rho, *t)
    if rprime:
        Rp = direct_sum([uniserial(rho, *x) for x in rprime])
        c = random_cocycle(Rp, T, rng)
        E = extension(Rp, T, c)
    else:
        Rp, E = None, T
    if not r:
        return decompose(E), []
    parts = [uniserial(rho, *x) for x in r]
    R = direct_sum(parts)
    # generic map R -> T, each component a generic map r_j -> t
    f = {i: [[Fraction(0)] * R.dims[i] for _ in range(T.dims[i])] for i in range(rho)}
    offs = [0] * rho
    for p in parts:
        g = generic_map(p, T, rng)
        for i in range(rho):
            for a in range(T.dims[i]):
                for b in range(p.dims[i]):
                    f[i][a][offs[i] + b] = g[i][a][b]
            offs[i] += p.dims[i]
    inc = {i: [[Fraction(int(a == b)) for b in range(T.dims[i])] for a in range(E.dims[i])]
           for i in range(rho)}
    h = compose_maps(inc, f, R.dims, T.dims)
    ker, cok = kernel_cokernel(R, E, h)
    return cok, ker


# ---------------------------------------------------------------- explicit decompositions

def _inverse(m):
    n = len(m)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(m)]
    for c in range(n):
        p = next(i for i in range(c, n) if aug[i][c] != 0)
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        aug[c] = [v / piv for v in aug[c]]
        for i in range(n):
            if i != c and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[c])]
    return [row[n:] for row in aug]


def _apply(m, v):
    return [sum((m[a][b] * v[b] for b in range(len(v))), Fraction(0)) for a in range(len(m))]


def chains(rep: NilRep):
    """Graded Jordan chains: list of (socle, length, incl, proj) with incl/proj per vertex."""
    rho = rep.rho
    maxL = sum(rep.dims)

    def kernel(i, j):
        if not rep.dims[i]:
            return []
        if j == 0:
            return []
        P = rep.path(i, j)
        if not P:
            return [[Fraction(int(a == b)) for a in range(rep.dims[i])] for b in range(rep.dims[i])]
        return _nullspace(P, rep.dims[i])

    tops = []
    for L in range(maxL, 0, -1):
        for i in range(rho):
            KL = kernel(i, L)
            if not KL:
                continue
            A = list(kernel(i, L - 1))
            for v in kernel((i + 1) % rho, L + 1):
                A.append(_apply(rep.x[(i + 1) % rho], v))
            base = _rank(A) if A else 0
            for v in KL:
                if _rank(A + [v]) > base:
                    A.append(v)
                    base += 1
                    tops.append((v, L, i))
    cols = {i: [] for i in range(rho)}
    info = []
    for v, L, i in tops:
        a = (i - L + 1) % rho
        vecs = []
        cur, w = i, v
        for _ in range(L):
            vecs.append((cur, w))
            w = _apply(rep.x[cur], w)
            cur = (cur - 1) % rho
        vecs.reverse()      # vecs[k] is e_k, at vertex a + k
        slots = []
        for vert, w in vecs:
            slots.append((vert, len(cols[vert])))
            cols[vert].append(w)
        info.append((a, L, slots))
    for i in range(rho):
        if len(cols[i]) != rep.dims[i]:
            raise AssertionError("Jordan chains do not span")
    Pinv = {i: _inverse([[c[r] for c in cols[i]] for r in range(rep.dims[i])]) if rep.dims[i] else []
            for i in range(rho)}
    out = []
    for a, L, slots in info:
        U = uniserial(rho, a, L)
        at = {i: [] for i in range(rho)}
        for k, (vert, idx) in enumerate(slots):
            at[vert].append((k, idx))
        incl, proj = {}, {}
        for i in range(rho):
            ks = [k for k in range(L) if (a + k) % rho == i]
            incl[i] = [[Fraction(0)] * U.dims[i] for _ in range(rep.dims[i])]
            proj[i] = [[Fraction(0)] * rep.dims[i] for _ in range(U.dims[i])]
            for c, k in enumerate(ks):
                vert, idx = slots[k]
                for r in range(rep.dims[i]):
                    incl[i][r][c] = cols[i][idx][r]
                proj[i][c] = list(Pinv[i][idx])
        out.append((a, L, incl, proj))
    return out


def ext_basis(M: NilRep, N: NilRep):
    """Cocycles c[i]: M_i -> N_{i-1} representing a basis of Ext^1(M, N)."""
    rho = M.rho
    coords = []
    for i in range(rho):
        j = (i - 1) % rho
        for a in range(N.dims[j]):
            for b in range(M.dims[i]):
                coords.append((i, a, b))
    n = len(coords)
    index = {c: k for k, c in enumerate(coords)}
    bounds = []
    for i in range(rho):
        for a in range(N.dims[i]):
            for b in range(M.dims[i]):
                # h = E_ab at vertex i; coboundary c = x_N h - h x_M
                vec = [Fraction(0)] * n
                j = (i - 1) % rho
                for r in range(N.dims[j]):
                    if N.x[i][r][a]:
                        vec[index[(i, r, b)]] += N.x[i][r][a]
                nxt = (i + 1) % rho
                for c in range(M.dims[nxt]):
                    if M.x[nxt][b][c]:
                        vec[index[(nxt, a, c)]] -= M.x[nxt][b][c]
                bounds.append(vec)
    rows = [v for v in bounds if any(v)]
    base = _rank(rows) if rows else 0
    out = []
    for k in range(n):
        e = [Fraction(int(t == k)) for t in range(n)]
        if _rank(rows + [e]) > base:
            rows.append(e)
            base += 1
            c = {i: [[Fraction(0)] * M.dims[i] for _ in range(N.dims[(i - 1) % rho])] for i in range(rho)}
            i, a, b = coords[k]
            c[i][a][b] = Fraction(1)
            out.append(c)
    return out


def cokernel(M: NilRep, N: NilRep, f):
    """(C, q) with q: N -> C the quotient by the image of f."""
    rho = N.rho
    comp, Q = {}, {}
    for i in range(rho):
        img = _cols(f[i], M.dims[i]) if M.dims[i] else []
        basis = [v for v in img if any(v)]
        indep = []
        for v in basis:
            if _rank(indep + [v]) > len(indep):
                indep.append(v)
        extra = []
        for k in range(N.dims[i]):
            e = [Fraction(int(t == k)) for t in range(N.dims[i])]
            if _rank(indep + extra + [e]) > len(indep) + len(extra):
                extra.append(e)
        B = indep + extra
        Binv = _inverse([[v[r_] for v in B] for r_ in range(N.dims[i])]) if N.dims[i] else []
        comp[i] = (len(indep), extra)
        Q[i] = Binv[len(indep):]
    dims = [len(comp[i][1]) for i in range(rho)]
    x = {}
    for i in range(rho):
        j = (i - 1) % rho
        m = [[Fraction(0)] * dims[i] for _ in range(dims[j])]
        for c, v in enumerate(comp[i][1]):
            w = _apply(N.x[i], v)
            y = _apply(Q[j], w) if dims[j] else []
            for r_ in range(dims[j]):
                m[r_][c] = y[r_]
        x[i] = m
    return NilRep(rho, dims, x), Q


def _hstack(blocks, rows):
    return [[v for b in blocks for v in b[r]] for r in range(rows)]


def _zero_map(M, N):
    return {i: [[Fraction(0)] * M.dims[i] for _ in range(N.dims[i])] for i in range(M.rho)}


# ---------------------------------------------------------------- wing aisles and the refined run

class WingAisle:
    """X = Sigma^{-1} S1 + S0 + Sigma^{>=1}(tube), S0 and S1 lists of (socle, length)."""

    def __init__(self, rho, s0, s1=()):
        self.rho = rho
        self.s0 = sorted(set(s0))
        self.s1 = sorted(set(s1))

    def in_coaisle(self, Y: NilRep):
        return all(hom_dim(uniserial(self.rho, *s), Y) == 0 for s in self.s0) and \
            all(ext_dim(uniserial(self.rho, *s), Y) == 0 for s in self.s1)

    def truncate(self, Y: NilRep):
        """(y_Y, q: Y -> y_Y, r, r') for a module Y in degree 0."""
        rho = self.rho
        reps, maps, rtypes = [], [], []
        for s in self.s0:
            U = uniserial(rho, *s)
            for h in hom_basis(U, Y):
                reps.append(U)
                maps.append(h)
                rtypes.append(s)
        cps, cocs, ptypes = [], [], []
        for s in self.s1:
            U = uniserial(rho, *s)
            for c in ext_basis(U, Y):
                cps.append(U)
                cocs.append(c)
                ptypes.append(s)
        if cps:
            Rp = direct_sum(cps)
            c = {i: _hstack([cc[i] for cc in cocs], Y.dims[(i - 1) % rho]) for i in range(rho)}
            E = extension(Rp, Y, c)
        else:
            E = Y
        inc = {i: [[Fraction(int(a == b)) for b in range(Y.dims[i])] for a in range(E.dims[i])]
               for i in range(rho)}
        if reps:
            R = direct_sum(reps)
            f = {i: _hstack([m[i] for m in maps], Y.dims[i]) for i in range(rho)}
            h = compose_maps(inc, f, R.dims, Y.dims)
            C, Q = cokernel(R, E, h)
            ker, _ = kernel_cokernel(R, E, h)
        else:
            C = E
            Q = {i: [[Fraction(int(a == b)) for b in range(E.dims[i])] for a in range(E.dims[i])]
                 for i in range(rho)}
            ker = []
        to_c = compose_maps(Q, inc, Y.dims, E.dims)
        parts = chains(C)
        keep = [(a, L, incl, proj) for a, L, incl, proj in parts if (a, L) not in self.s1]
        dropped = sorted((a, L) for a, L, _, _ in parts if (a, L) in self.s1)
        r_min = list(rtypes)
        for k in ker:
            r_min.remove(k)
        rp_min = list(ptypes)
        for k in dropped:
            rp_min.remove(k)
        if not keep:
            return None, None, r_min, rp_min
        y = direct_sum([uniserial(rho, a, L) for a, L, _, _ in keep])
        proj = {i: [row for _, _, _, pr in keep for row in pr[i]] for i in range(rho)}
        q = compose_maps(proj, to_c, Y.dims, C.dims)
        return y, q, r_min, rp_min


def _top_coeff(rho, a, L, endo):
    """Scalar by which an endomorphism of the uniserial (a, L) acts on its top."""
    i = (a + L - 1) % rho
    ks = [k for k in range(L) if (a + k) % rho == i]
    c = len(ks) - 1         # the top basis vector is the last one at vertex i
    return endo[i][c][c]


def strip_waste(t: NilRep, y: NilRep, alpha):
    """Split y into kept + waste (zero component from t); returns (kept rep, map, kept, waste)."""
    rho = y.rho
    parts = chains(y)
    types = {}
    for b, (a, L, incl, proj) in enumerate(parts):
        types.setdefault((a, L), []).append(b)
    kept_types, waste_types, rows = [], [], []
    for (a, L), idx in types.items():
        U = uniserial(rho, a, L)
        hb = hom_basis(y, U)
        comp = []
        for pi in hb:
            m = compose_maps(pi, alpha, t.dims, y.dims)
            comp.append([v for i in range(rho) for row in m[i] for v in row])
        ncomp = len(comp[0]) if comp else 0
        K = _nullspace([list(col) for col in zip(*comp)], len(hb)) if ncomp else \
            [[Fraction(int(i == j)) for i in range(len(hb))] for j in range(len(hb))]
        T = []
        for kv in K:
            pi = {i: [[sum((kv[s] * hb[s][i][r][c] for s in range(len(hb))), Fraction(0))
                       for c in range(y.dims[i])] for r in range(U.dims[i])] for i in range(rho)}
            T.append([_top_coeff(rho, a, L, compose_maps(pi, parts[b][2], U.dims, y.dims)) for b in idx])
        chosen = []
        for row in T:
            if _rank(chosen + [row]) > len(chosen):
                chosen.append(row)
                waste_types.append((a, L))
        for j, b in enumerate(idx):
            e = [Fraction(int(k == j)) for k in range(len(idx))]
            if _rank(chosen + [e]) > len(chosen):
                chosen.append(e)
                kept_types.append((a, L))
                rows.append(parts[b][3])
    if not kept_types:
        return None, None, [], sorted(waste_types)
    Y = direct_sum([uniserial(rho, a, L) for a, L in kept_types])
    proj = {i: [r for pr in rows for r in pr[i]] for i in range(rho)}
    return Y, compose_maps(proj, alpha, t.dims, y.dims), sorted(kept_types), sorted(waste_types)


def refined_tube_run(rho, t, aisles, budget):
    """Refined iteration in degree 0; returns (list of kept types per step, terminated)."""
    T = uniserial(rho, *t)
    cur = T
    alpha = {i: [[Fraction(int(a == b)) for b in range(T.dims[i])] for a in range(T.dims[i])]
             for i in range(rho)}
    history = []
    for n in range(budget):
        A = aisles[n % len(aisles)]
        y, q, _, _ = A.truncate(cur)
        if y is None:
            history.append(([], []))
            return history, True
        atil = compose_maps(q, alpha, T.dims, cur.dims)
        cur, alpha, kept, waste = strip_waste(T, y, atil)
        history.append((kept, waste))
        if cur is None:
            return history, True
        if all(B.in_coaisle(cur) for B in aisles):
            return history, True
    return history, False
