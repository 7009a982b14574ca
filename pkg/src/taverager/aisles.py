"""Aisles presented by generators: closure, orthogonals, truncation triangles.

Membership outside the window is extrapolated by clamping the degree to
[d_lo, d_hi].  Aisles are suspended, so membership is monotone in the degree
and the clamped extension is the natural one whenever the window covers the
region where membership changes.  Validation checks exactly that.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations_with_replacement

from . import linalg as la
from .complexes import Chain, Cx, compose, cocone, cone, direct_sum, identity, minimize
from .engine import Engine, engine_for
from .errors import NonAisle, WindowTooSmall
from .quiver import ARWindow, Mod, Obj

VALIDATED, UNVALIDATED, INVALID = "Validated", "Unvalidated", "Invalid"


def _clamp(d, lo, hi):
    return lo if d < lo else hi if d > hi else d


def window_ids(w: ARWindow, lo=None, hi=None):
    lo = w.d_lo if lo is None else lo
    hi = w.d_hi if hi is None else hi
    return [Mod(r, d) for d in range(lo, hi + 1) for r in w.preset.roots]


# ---------------------------------------------------------------- closure

def _generic_sum(maps, rng):
    acc = None
    for f in maps:
        c = rng.randint(1, 97)
        term = f.scaled(c)
        acc = term if acc is None else acc + term
    return acc


def extension_closure(S, w: ARWindow, eng: Engine | None = None, lo=None, hi=None, seed=0):
    """Least set containing S closed under extensions and summands.

    Middle terms come from cocones of basis and generic maps b -> Sigma a,
    where a and b are indecomposable or sums of two members whose parts all
    carry a nonzero extension.  Objects outside [lo, hi] are discarded.
    """
    eng = eng or engine_for(w.preset)
    lo = w.d_lo if lo is None else lo
    hi = w.d_hi if hi is None else hi
    cur = {x for x in S if lo <= x.deg <= hi}
    done = set()
    while True:
        items = sorted(cur, key=lambda x: x.key())
        ext = {}
        for a in items:
            for b in items:
                if eng.hom_dim(b, a.shift(1)):
                    ext.setdefault(b, []).append(a)
        ends = []
        for b, As in ext.items():
            for a in As:
                ends.append(((a,), (b,)))
            for a1, a2 in combinations_with_replacement(As, 2):
                ends.append(((a1, a2), (b,)))
        by_a = {}
        for b, As in ext.items():
            for a in As:
                by_a.setdefault(a, []).append(b)
        for a, Bs in by_a.items():
            for b1, b2 in combinations_with_replacement(sorted(Bs, key=lambda x: x.key()), 2):
                ends.append(((a,), (b1, b2)))
        new = set()
        for A, B in ends:
            if (A, B) in done:
                continue
            done.add((A, B))
            for s in _middle_terms(eng, A, B, seed):
                if lo <= s.deg <= hi and s not in cur:
                    new.add(s)
        if not new:
            return cur
        cur |= new


def _middle_terms(eng: Engine, A, B, seed):
    """Summands of cocones of basis and generic maps B -> Sigma A.

    Cached per engine up to a common shift; the generic coefficients are
    drawn from a generator seeded by the normalised pair.
    """
    m = min(x.deg for x in A + B)
    An = tuple(x.shift(-m) for x in A)
    Bn = tuple(x.shift(-m) for x in B)
    cache = eng.__dict__.setdefault("_middle_cache", {})
    key = (An, Bn, seed)
    out = cache.get(key)
    if out is None:
        rng = random.Random(repr(key))
        CA, _, _ = eng.cx_obj(Obj(An).shift(1))
        CB, _, _ = eng.cx_obj(Obj(Bn))
        hs = eng.hom_space(CB, CA)
        maps = list(hs.basis) if len(A) + len(B) == 2 else []
        if hs.dim:
            maps.append(_generic_sum(hs.basis, rng))
        found = set()
        for xi in maps:
            N, _ = cocone(xi)
            found.update(eng.identify(N))
        out = cache[key] = tuple(sorted(found, key=lambda x: x.key()))
    return [x.shift(m) for x in out]


def sigma_up(S, hi):
    out = set()
    for x in S:
        for d in range(x.deg, hi + 1):
            out.add(x.shift(d - x.deg))
    return out


def right_orthogonal(S, w: ARWindow, eng: Engine | None = None, candidates=None):
    eng = eng or engine_for(w.preset)
    cands = candidates if candidates is not None else window_ids(w)
    return {y for y in cands if all(eng.hom_dim(s, y) == 0 for s in S)}


def left_orthogonal(S, w: ARWindow, eng: Engine | None = None, candidates=None):
    eng = eng or engine_for(w.preset)
    cands = candidates if candidates is not None else window_ids(w)
    return {x for x in cands if all(eng.hom_dim(x, s) == 0 for s in S)}


# ---------------------------------------------------------------- t-structures

@dataclass
class Triangle:
    x: Obj
    t: Obj
    y: Obj
    x_to_t: Chain | None = None
    t_to_y: Chain | None = None
    steps: int = 0


@dataclass
class TStructure:
    """Aisle closure on the window plus clamped extrapolation."""
    name: str
    window: ARWindow
    aisle: frozenset
    validity: str = UNVALIDATED
    witness: object = None
    boundary_ok: bool = True
    _co: dict = field(default_factory=dict, repr=False)
    _co_override: frozenset | None = None

    @property
    def engine(self):
        return engine_for(self.window.preset)

    def clamp(self, x: Mod):
        return Mod(x.dv, _clamp(x.deg, self.window.d_lo, self.window.d_hi))

    def in_aisle(self, x) -> bool:
        return self.clamp(x) in self.aisle

    def aisle_at(self, d):
        dd = _clamp(d, self.window.d_lo, self.window.d_hi)
        return [Mod(x.dv, d) for x in self.aisle_sorted if x.deg == dd]

    @property
    def aisle_sorted(self):
        return sorted(self.aisle, key=lambda x: x.key())

    def in_coaisle(self, y) -> bool:
        if self._co_override is not None:
            return self.clamp(y) in self._co_override
        v = self._co.get(y)
        if v is None:
            eng = self.engine
            v = all(eng.hom_dim(w, y) == 0 for d in (y.deg - 1, y.deg) for w in self.aisle_at(d))
            self._co[y] = v
        return v

    def coaisle(self):
        return frozenset(y for y in window_ids(self.window) if self.in_coaisle(y))

    def obj_in_aisle(self, obj: Obj):
        return all(self.in_aisle(s) for s in obj)

    def obj_in_coaisle(self, obj: Obj):
        return all(self.in_coaisle(s) for s in obj)

    def is_stable(self):
        return classify(self)["stable"]


def make_tstructure(name, w: ARWindow, generators, sigma_stable=False, closed=False):
    """Build a t-structure from generators; closure is computed with margins."""
    lo, hi = w.d_lo, w.d_hi
    gens = set()
    for g in generators:
        if sigma_stable:
            for d in range(lo, hi + 1):
                gens.add(Mod(g.dv, d))
        else:
            gens.add(g)
    gens = sigma_up(gens, hi)
    elo, ehi = lo - 2, hi + 2
    ext = set()
    for d in range(elo, ehi + 1):
        for g in gens:
            if g.deg == _clamp(d, lo, hi):
                ext.add(Mod(g.dv, d))
    eng = engine_for(w.preset)
    clo = ext
    while True:
        nxt = sigma_up(extension_closure(clo, w, eng, elo, ehi), ehi)
        if nxt == clo:
            break
        clo = nxt
    aisle = frozenset(x for x in clo if lo <= x.deg <= hi)
    # the outermost margin layers miss extensions from beyond the margin,
    # so only the inner ones are compared with their clamped counterparts
    boundary_ok = all(
        (Mod(r, d) in clo) == (Mod(r, _clamp(d, lo, hi)) in clo)
        for r in w.preset.roots for d in (elo + 1, ehi - 1)
    )
    ts = TStructure(name, w, aisle, boundary_ok=boundary_ok)
    if closed:
        given = frozenset(x for x in gens if lo <= x.deg <= hi)
        if given != aisle:
            extra = sorted(aisle - given, key=lambda x: x.key())[0]
            ts.validity = INVALID
            ts.witness = ("not extension closed", extra, _explain(extra, given, eng))
    return ts


def _explain(target, given, eng):
    """A pair (a, b) in `given` with target a summand of some extension of b by a."""
    for a in sorted(given, key=lambda x: x.key()):
        for b in sorted(given, key=lambda x: x.key()):
            if eng.hom_dim(b, a.shift(1)):
                hs = eng.hom_space(eng.cx(b), eng.cx(a.shift(1)))
                for xi in hs.basis:
                    if target in eng.identify(cocone(xi)[0]):
                        return (a, b)
    return None


# ---------------------------------------------------------------- truncation

def _object_degrees(c: Cx):
    ds = set()
    for n in c.degrees():
        ds.update((-n, -n - 1))
    return ds


def _approx_loop(eng: Engine, C: Cx, member, side, budget):
    """Iterated minimal approximation.

    side == "right": kill Hom(member, y); returns (y, f: C -> y).
    side == "left":  kill Hom(x, member); returns (x, g: x -> C).
    """
    cur, f = C, identity(C)
    steps = 0
    while True:
        cur, p, i = minimize(cur)
        f = compose(p, f) if side == "right" else compose(f, i)
        if cur.is_zero():
            return cur, f, steps
        ds = _object_degrees(cur)
        near = ds | ({d - 1 for d in ds} if side == "right" else {d + 1 for d in ds})
        cands = [Mod(r, d) for d in sorted(near) for r in eng.preset.roots if member(Mod(r, d))]
        spaces = {}
        for wv in cands:
            hs = eng.hom_space(eng.cx(wv), cur) if side == "right" else eng.hom_space(cur, eng.cx(wv))
            if hs.dim:
                spaces[wv] = hs
        if not spaces:
            return cur, f, steps
        steps += 1
        if steps > budget:
            raise NonAisle("approximation loop exceeded its budget", witness=eng.identify(cur))
        chosen = []
        for wv, hs in spaces.items():
            rad = []
            for w2, hs2 in spaces.items():
                if w2 == wv:
                    continue
                if side == "right":
                    link = eng.hom_space(eng.cx(wv), eng.cx(w2))
                    for rho in link.basis:
                        for h in hs2.basis:
                            rad.append(hs.coords(compose(h, rho)))
                else:
                    link = eng.hom_space(eng.cx(w2), eng.cx(wv))
                    for rho in link.basis:
                        for h in hs2.basis:
                            rad.append(hs.coords(compose(rho, h)))
            basis_ids = [[int(k == j) for k in range(hs.dim)] for j in range(hs.dim)]
            r0 = la.rank(rad, hs.dim) if rad else 0
            cur_rows = list(rad)
            for j, e in enumerate(basis_ids):
                trial = cur_rows + [e]
                r1 = la.rank(trial, hs.dim)
                if r1 > r0:
                    cur_rows, r0 = trial, r1
                    chosen.append((wv, hs.basis[j]))
        U, incs, projs = direct_sum([eng.cx(wv) for wv, _ in chosen])
        if side == "right":
            u = None
            for (wv, g), pr in zip(chosen, projs):
                term = compose(g, pr)
                u = term if u is None else u + term
            u = Chain(U, cur, u.comps)
            nxt, inc, _ = cone(u)
            f = compose(inc, f)
        else:
            u = None
            for (wv, g), ic in zip(chosen, incs):
                term = compose(ic, g)
                u = term if u is None else u + term
            u = Chain(cur, U, u.comps)
            nxt, pr = cocone(u)
            f = compose(f, pr)
        cur = nxt


def default_budget(w: ARWindow):
    return 4 * w.count()


def truncate_cx(eng: Engine, C: Cx, ts: TStructure, budget=None):
    """Return (y, alpha: C -> y, x, beta: x -> C) for the truncation of C."""
    budget = default_budget(ts.window) if budget is None else budget
    y, alpha, steps = _approx_loop(eng, C, ts.in_aisle, "right", budget)
    xc, beta = cocone(alpha)
    xm, p, i = minimize(xc)
    return y, alpha, xm, compose(beta, i), steps


def truncate(t: Obj, ts: TStructure, budget=None) -> Triangle:
    """Truncation triangle x -> t -> y of t with x in the aisle and y in the co-aisle."""
    eng = ts.engine
    if isinstance(t, Mod):
        t = Obj.of(t)
    C, _, _ = eng.cx_obj(t)
    y, alpha, xm, beta, steps = truncate_cx(eng, C, ts, budget)
    X = eng.identify(xm)
    Y = eng.identify(y)
    bad = [s for s in X if not ts.in_aisle(s)]
    if bad:
        raise NonAisle("truncation produced x outside the aisle", witness=bad[0])
    return Triangle(X, t, Y, beta, alpha, steps)


def dual_truncate(t: Obj, coaisle_member, eng: Engine, budget: int) -> Triangle:
    """Truncation against a co-aisle given by membership (left approximations)."""
    if isinstance(t, Mod):
        t = Obj.of(t)
    C, _, _ = eng.cx_obj(t)
    x, beta, steps = _approx_loop(eng, C, coaisle_member, "left", budget)
    yc, inc, _ = cone(beta)
    ym, p, _ = minimize(yc)
    return Triangle(eng.identify(x), t, eng.identify(ym), beta, compose(p, inc), steps)


# ---------------------------------------------------------------- validation

def validate(ts: TStructure, budget=None):
    """Check boundary consistency, orthogonality and truncations on the window."""
    if ts.validity == INVALID:
        return ts
    w = ts.window
    if not ts.boundary_ok:
        raise WindowTooSmall(f"{ts.name}: aisle membership changes at the window boundary")
    eng = ts.engine
    for x in sorted(ts.aisle, key=lambda z: z.key()):
        sx = x.shift(1)
        if sx.deg <= w.d_hi and sx not in ts.aisle:
            ts.validity, ts.witness = INVALID, ("not suspended", x, sx)
            return ts
    for x in sorted(ts.aisle, key=lambda z: z.key()):
        for y in window_ids(w):
            if ts.in_coaisle(y) and eng.hom_dim(x, y):
                ts.validity, ts.witness = INVALID, ("orthogonality", x, y)
                return ts
    for t in window_ids(w):
        try:
            truncate(Obj.of(t), ts, budget)
        except NonAisle as e:
            ts.validity, ts.witness = INVALID, ("no truncation", t, e.witness)
            return ts
    ts.validity = VALIDATED
    return ts


def classify(ts: TStructure):
    w = ts.window
    lo, hi = w.d_lo, w.d_hi
    roots = w.preset.roots
    stable = all((Mod(r, d) in ts.aisle) == (Mod(r, d + 1) in ts.aisle)
                 for r in roots for d in range(lo, hi))
    co = ts.coaisle()
    bounded = all(any(Mod(r, d) in ts.aisle for d in range(lo, hi + 1)) and
                  any(Mod(r, d) in co for d in range(lo, hi + 1)) for r in roots)
    all_x = any(all(Mod(r, d) in ts.aisle for d in range(lo, hi + 1)) for r in roots)
    all_y = any(all(Mod(r, d) in co for d in range(lo, hi + 1)) for r in roots)
    return {"stable": stable, "bounded": bounded,
            "nondegenerate_on_window": not (all_x or all_y), "window_relative": True}
