"""Finite-type derived engine: objects as minimal complexes, explicit maps."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg as la
from .complexes import (
    Chain,
    Cx,
    HomSpace,
    compose,
    cocone,
    cone,
    direct_sum,
    invert_chain,
    is_minimal,
    minimize,
)
from .errors import NotFiniteType
from .quiver import ARWindow, Mod, Obj, QuiverPreset
from .reps import Rep, rep_of

MapHandle = Chain


@dataclass
class Decomposition:
    cx: Cx                # minimal complex
    factors: list         # IndecIds, one per summand
    inj: list             # Chain Y_b -> cx
    proj: list            # Chain cx -> Y_b, proj[a] . inj[b] = delta_ab
    to_min: Chain | None = None
    from_min: Chain | None = None

    @property
    def obj(self):
        return Obj(self.factors)


def _path(preset, src, dst):
    """Vertex path src ~> dst in a tree quiver, or None."""
    stack = [(src, [src])]
    while stack:
        u, p = stack.pop()
        if u == dst:
            return p
        for a, b in preset.arrows:
            if a == u:
                stack.append((b, p + [b]))
    return None


def presentation(rep: Rep) -> Cx:
    """Minimal projective presentation P1 -> P0 in degrees -1, 0."""
    p = rep.preset
    gens = []
    for v in p.vertices:
        n = rep.dims[v]
        if n == 0:
            continue
        image = []
        for a in rep.arrows:
            if a[1] == v:
                image.extend(la.transpose(rep.maps[a], n))
        red, piv = la.rref(image, n) if image else ([], [])
        for i in range(n):
            if i not in piv:
                g = [Fraction(int(t == i)) for t in range(n)]
                gens.append((v, g))
    reach = {}
    for j in p.vertices:
        reach[j] = [k for k, (v, _) in enumerate(gens) if _path(p, v, j) is not None]
    kernel = {}
    for j in p.vertices:
        cols = []
        for k in reach[j]:
            v, g = gens[k]
            m = rep.path_map(_path(p, v, j))
            cols.append([sum(m[r][c] * g[c] for c in range(len(g))) for r in range(rep.dims[j])])
        if not cols:
            kernel[j] = []
            continue
        pi = la.transpose(cols, len(cols)) if rep.dims[j] else []
        kernel[j] = la.nullspace(pi, len(cols)) if pi else [
            [Fraction(int(t == s)) for t in range(len(cols))] for s in range(len(cols))]
    rel = []
    for w in p.topo:
        Kw = kernel[w]
        if not Kw:
            continue
        Sw = reach[w]
        image = []
        for a in p.arrows:
            if a[1] == w:
                Su = reach[a[0]]
                for kv in kernel[a[0]]:
                    vec = [Fraction(0)] * len(Sw)
                    for idx, g in enumerate(Su):
                        vec[Sw.index(g)] = kv[idx]
                    image.append(vec)
        cur = list(image)
        r0 = la.rank(cur, len(Sw)) if cur else 0
        for kv in Kw:
            trial = cur + [kv]
            r1 = la.rank(trial, len(Sw))
            if r1 > r0:
                cur, r0 = trial, r1
                rel.append((w, {g: kv[idx] for idx, g in enumerate(Sw)}))
    terms = {0: tuple(v for v, _ in gens), -1: tuple(w for w, _ in rel)}
    d = [[Fraction(0)] * len(rel) for _ in gens]
    for c, (w, coeffs) in enumerate(rel):
        for g, val in coeffs.items():
            d[g][c] = val
    return Cx(terms, {-1: d} if rel and gens else {})


class Engine:
    """Exact derived-category computations for one Dynkin preset."""

    def __init__(self, preset: QuiverPreset):
        if preset.extended:
            raise NotFiniteType("the engine only handles Dynkin presets")
        self.preset = preset
        idx = preset.index
        paths = preset.paths
        self.allowed = lambda u, v: paths[idx[u]][idx[v]] > 0
        self._base = {}
        self._homdim = {}
        self._homspace = {}

    # ---- objects
    def rep_of(self, x):
        return rep_of(self.preset, x)

    def cx(self, x) -> Cx:
        if not isinstance(x, Mod):
            raise NotFiniteType(str(x))
        base = self._base.get(x.dv)
        if base is None:
            base = presentation(rep_of(self.preset, x))
            self._base[x.dv] = base
        return base.shift(x.deg) if x.deg else base

    def cx_obj(self, obj: Obj):
        if not obj:
            return Cx({}, {}), [], []
        return direct_sum([self.cx(s) for s in obj])

    # ---- hom
    def hom_space(self, C: Cx, D: Cx) -> HomSpace:
        return HomSpace(self.allowed, C, D)

    def hom_space_ids(self, a, b) -> HomSpace:
        key = (a, b)
        hs = self._homspace.get(key)
        if hs is None:
            hs = HomSpace(self.allowed, self.cx(a), self.cx(b))
            self._homspace[key] = hs
            self._homdim[(a.dv, b.dv, b.deg - a.deg)] = hs.dim
        return hs

    def hom_dim(self, a, b) -> int:
        delta = b.deg - a.deg
        if delta not in (0, 1):
            return 0
        key = (a.dv, b.dv, delta)
        v = self._homdim.get(key)
        if v is None:
            v = self.hom_space_ids(Mod(a.dv, 0), Mod(b.dv, delta)).dim
            self._homdim[key] = v
        return v

    def hom_dim_obj(self, A: Obj, B: Obj) -> int:
        return sum(self.hom_dim(a, b) for a in A for b in B)

    def hom_basis(self, A: Obj, B: Obj):
        CA, _, _ = self.cx_obj(A)
        CB, _, _ = self.cx_obj(B)
        return self.hom_space(CA, CB).basis

    # ---- triangles
    def cone(self, f: Chain):
        return cone(f)

    def cocone(self, f: Chain):
        return cocone(f)

    def minimize(self, c: Cx):
        return minimize(c)

    def is_null(self, f: Chain) -> bool:
        return self.hom_space(f.src, f.tgt).is_null(f)

    # ---- cohomology and decomposition
    def cohomology_dims(self, c: Cx):
        p = self.preset
        out = {}
        for n in c.degrees():
            dv = []
            for j in p.vertices:
                rows_here = [k for k, u in enumerate(c.terms[n]) if self.allowed(u, j)]
                dim = len(rows_here)
                if not dim:
                    dv.append(0)
                    continue
                nxt = [k for k, u in enumerate(c.terms.get(n + 1, ())) if self.allowed(u, j)]
                prv = [k for k, u in enumerate(c.terms.get(n - 1, ())) if self.allowed(u, j)]
                dn, dp = c.diff(n), c.diff(n - 1)
                r_out = la.rank([[dn[a][b] for b in rows_here] for a in nxt], dim) if nxt else 0
                r_in = la.rank([[dp[a][b] for b in prv] for a in rows_here], len(prv)) if prv else 0
                dv.append(dim - r_out - r_in)
            if any(dv):
                out[n] = tuple(dv)
        return out

    def decompose(self, c: Cx, splits: bool = True) -> Decomposition:
        to_min = from_min = None
        if not is_minimal(c):
            c, to_min, from_min = minimize(c)
        if c.is_zero():
            return Decomposition(c, [], [], [], to_min, from_min)
        H = self.cohomology_dims(c)
        factors, injs = [], []
        for n in sorted(H):
            h = H[n]
            for r in self.preset.roots:
                if any(a > b for a, b in zip(r, h)):
                    continue
                Y = Mod(r, -n)
                cy = self.cx(Y)
                hin = self.hom_space(cy, c)
                if not hin.dim:
                    continue
                hout = self.hom_space(c, cy)
                if not hout.dim:
                    continue
                n0 = cy.degrees()[0]
                qrows = [q.at(n0)[0] for q in hout.basis]
                pcols = [[row[0] for row in pb.at(n0)] for pb in hin.basis]
                G = [[sum(a * b for a, b in zip(qr, pc)) for pc in pcols] for qr in qrows]
                chosen = la.row_basis(la.transpose(G, len(pcols)), len(qrows))
                for b in chosen:
                    factors.append(Y)
                    injs.append(hin.basis[b])
        total = {}
        for Y in factors:
            tv = total.setdefault(-Y.deg, [0] * len(self.preset.vertices))
            for k, v in enumerate(Y.dv):
                tv[k] += v
        if {n: tuple(v) for n, v in total.items()} != H:
            raise AssertionError(f"decomposition mismatch: {factors} vs {H}")
        if not splits:
            return Decomposition(c, factors, injs, [], to_min, from_min)
        ysum, incs, projs = direct_sum([self.cx(Y) for Y in factors])
        P = None
        for f, pr in zip(injs, projs):
            term = compose(f, pr)
            P = term if P is None else P + term
        P = Chain(ysum, c, P.comps)
        Q = invert_chain(P)
        inj = [compose(P, ic) for ic in incs]
        proj = [compose(pr, Q) for pr in projs]
        return Decomposition(c, factors, inj, proj, to_min, from_min)

    def identify(self, c: Cx) -> Obj:
        return Obj(self.decompose(c, splits=False).factors)

    # ---- consistency probe
    def knit_check(self, w: ARWindow, x):
        """Meshes where y -> hom_dim(x, y) fails to be additive.

        Returns (unexpected, corrections): failures away from the meshes
        ending at x or Sigma x, and the defects observed at those two.
        """
        unexpected, corrections = [], []
        sx = x.shift(1)
        for mesh in w.meshes:
            lhs = self.hom_dim(x, mesh.start) + self.hom_dim(x, mesh.end)
            rhs = sum(self.hom_dim(x, m) for m in mesh.middles)
            if lhs != rhs:
                (corrections if mesh.end in (x, sx) else unexpected).append(mesh)
        return unexpected, corrections


_ENGINES: dict = {}


def engine_for(preset: QuiverPreset) -> Engine:
    eng = _ENGINES.get(preset)
    if eng is None:
        eng = Engine(preset)
        _ENGINES[preset] = eng
    return eng
