"""Quiver representations over Q and canonical indecomposable representatives."""
from __future__ import annotations

from fractions import Fraction

from . import linalg as la
from .errors import NotFiniteType
from .quiver import Mod, QuiverPreset


class Rep:
    """dims[v] = dimension at v; maps[(i, j)] is a dims[j] x dims[i] matrix."""

    def __init__(self, preset: QuiverPreset, dims: dict, maps: dict, arrows=None):
        self.preset = preset
        self.dims = dict(dims)
        self.arrows = tuple(arrows if arrows is not None else preset.arrows)
        self.maps = {a: maps.get(a, la.zeros(self.dims[a[1]], self.dims[a[0]])) for a in self.arrows}

    @property
    def dimvec(self):
        return tuple(self.dims[v] for v in self.preset.vertices)

    def path_map(self, path):
        """Matrix of the composite along a vertex path [v0, v1, ..., vk]."""
        m = la.identity(self.dims[path[0]])
        for a, b in zip(path, path[1:]):
            m = la.matmul(self.maps[(a, b)], m, inner=self.dims[a])
        return m

    def __repr__(self):
        return f"Rep({self.dimvec})"


def projective(preset: QuiverPreset, v) -> Rep:
    """P(v): basis of P(v)_j is the set of paths v ~> j (at most one on trees)."""
    paths = {u: [] for u in preset.vertices}
    stack = [(v, (v,))]
    while stack:
        u, p = stack.pop()
        paths[u].append(p)
        for a, b in preset.arrows:
            if a == u:
                stack.append((b, p + (b,)))
    for u in paths:
        paths[u].sort()
    dims = {u: len(paths[u]) for u in preset.vertices}
    maps = {}
    for a, b in preset.arrows:
        m = la.zeros(dims[b], dims[a])
        for c, p in enumerate(paths[a]):
            m[paths[b].index(p + (b,))][c] = Fraction(1)
        maps[(a, b)] = m
    return Rep(preset, dims, maps)


def reflect_source(rep: Rep, k) -> Rep:
    """Source reflection functor at k: W_k = coker(V_k -> sum of V_j over k -> j)."""
    outs = [a for a in rep.arrows if a[0] == k]
    if any(a[1] == k for a in rep.arrows):
        raise ValueError(f"{k} is not a source")
    blocks = [rep.maps[a] for a in outs]
    total = sum(rep.dims[a[1]] for a in outs)
    stacked = [row for blk in blocks for row in blk]
    # rows of L span the left null space of the stacked map
    coker = la.nullspace(la.transpose(stacked, total), total) if total else []
    new_dims = dict(rep.dims)
    new_dims[k] = len(coker)
    new_maps = {a: m for a, m in rep.maps.items() if a[0] != k}
    off = 0
    new_arrows = []
    for a in rep.arrows:
        if a[0] != k:
            new_arrows.append(a)
    for a in outs:
        j = a[1]
        n = rep.dims[j]
        new_maps[(j, k)] = [row[off:off + n] for row in coker]
        off += n
        new_arrows.append((j, k))
    return Rep(rep.preset, new_dims, new_maps, arrows=tuple(sorted(new_arrows)))


def coxeter_minus(rep: Rep) -> Rep:
    """tau^{-1} on non-injective indecomposables: source reflections in topological order."""
    r = rep
    for v in rep.preset.topo:
        r = reflect_source(r, v)
    return Rep(rep.preset, r.dims, r.maps)


def _orbit_position(preset: QuiverPreset, dv):
    for v in preset.vertices:
        x = preset.dim_P(v)
        m = 0
        while all(c >= 0 for c in x) and any(x):
            if x == tuple(dv):
                return v, m
            x = preset.tau_inv_dim(x)
            m += 1
    raise ValueError(f"{dv} is not a positive root of {preset.name}")


_REP_CACHE: dict = {}


def rep_of(preset: QuiverPreset, x) -> Rep:
    """Canonical indecomposable representation with the dimension vector of x."""
    if preset.extended or not isinstance(x, Mod):
        raise NotFiniteType("rep_of needs a finite-type module id")
    key = (preset, x.dv)
    if key not in _REP_CACHE:
        v, m = _orbit_position(preset, x.dv)
        r = projective(preset, v)
        for _ in range(m):
            r = coxeter_minus(r)
        assert r.dimvec == tuple(x.dv), (r.dimvec, x.dv)
        _REP_CACHE[key] = r
    return _REP_CACHE[key]


def direct_sum(reps) -> Rep:
    reps = list(reps)
    p = reps[0].preset
    dims = {v: sum(r.dims[v] for r in reps) for v in p.vertices}
    maps = {}
    for a, b in p.arrows:
        m = la.zeros(dims[b], dims[a])
        ro = co = 0
        for r in reps:
            blk = r.maps[(a, b)]
            for i, row in enumerate(blk):
                for j, val in enumerate(row):
                    m[ro + i][co + j] = val
            ro += r.dims[b]
            co += r.dims[a]
        maps[(a, b)] = m
    return Rep(p, dims, maps)
