"""Quiver presets, canonical indecomposable ids, and AR-quiver windows.

Conventions: an arrow i -> j of Q acts V_i -> V_j.  P(i)_j is spanned by the
paths from i to j, so an arrow i -> j gives an irreducible map P(j) -> P(i).
An id with degree d denotes the d-fold suspension of a module, so nonzero
morphisms only run from degree d to degrees d and d + 1.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .errors import (
    BoundaryUndefined,
    NotComparableDomain,
    UnsupportedPreset,
    WindowTooSmall,
)

DYNKIN = ("A", "D", "E")
EXTENDED = ("Atilde", "Dtilde", "Etilde")


# ---------------------------------------------------------------- presets

def _dynkin_edges(family, n):
    if family == "A":
        if n < 1:
            raise UnsupportedPreset("A(n) needs n >= 1")
        return list(range(1, n + 1)), [(i, i + 1) for i in range(1, n)]
    if family == "D":
        if n < 4:
            raise UnsupportedPreset("D(n) needs n >= 4")
        # leaves 1, 2 on the branch vertex n; tail 3 - 4 - ... - n
        edges = [(1, n), (2, n)] + [(i, i + 1) for i in range(3, n)]
        return list(range(1, n + 1)), edges
    if family == "E":
        if n not in (6, 7, 8):
            raise UnsupportedPreset("E(n) needs n in 6, 7, 8")
        edges = [(i, i + 1) for i in range(1, n - 1)] + [(3, n)]
        return list(range(1, n + 1)), edges
    raise UnsupportedPreset(family)


def _extended_edges(family, params):
    if family == "Atilde":
        p, q = params
        if p < 1 or q < 1 or p + q < 3:
            raise UnsupportedPreset("Atilde(p,q) needs p, q >= 1 and p + q >= 3")
        sink = p + q - 1
        upper = [0] + list(range(1, p)) + [sink]
        lower = [0] + list(range(p, p + q - 1)) + [sink]
        edges = list(zip(upper, upper[1:])) + list(zip(lower, lower[1:]))
        return list(range(p + q)), edges, [p, q]
    if family == "Dtilde":
        (n,) = params
        if n < 4:
            raise UnsupportedPreset("Dtilde(n) needs n >= 4")
        edges = [(0, 2), (1, 2)] + [(i, i + 1) for i in range(2, n - 2)]
        edges += [(n - 2, n - 1), (n - 2, n)]
        return list(range(n + 1)), edges, [2, 2, n - 2]
    if family == "Etilde":
        (n,) = params
        arms = {6: (2, 2, 2), 7: (1, 3, 3), 8: (1, 2, 5)}
        ranks = {6: [2, 3, 3], 7: [2, 3, 4], 8: [2, 3, 5]}
        if n not in arms:
            raise UnsupportedPreset("Etilde(n) needs n in 6, 7, 8")
        edges, nxt = [], 1
        for arm in arms[n]:
            prev = 0
            for _ in range(arm):
                edges.append((prev, nxt))
                prev, nxt = nxt, nxt + 1
        return list(range(nxt)), edges, ranks[n]
    raise UnsupportedPreset(family)


def _orient_default(vertices, edges, extended):
    if extended:
        return [(min(a, b), max(a, b)) for a, b in edges]
    # point every edge towards vertex 1 so that vertex 1 is a sink
    adj = {v: [] for v in vertices}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    dist = {vertices[0]: 0}
    dq = deque([vertices[0]])
    while dq:
        u = dq.popleft()
        for w in adj[u]:
            if w not in dist:
                dist[w] = dist[u] + 1
                dq.append(w)
    return [(a, b) if dist[a] > dist[b] else (b, a) for a, b in edges]


@dataclass(frozen=True)
class QuiverPreset:
    family: str
    params: tuple
    vertices: tuple
    arrows: tuple
    tube_ranks: tuple | None = None

    @property
    def name(self):
        if self.family in DYNKIN:
            return f"{self.family}{self.params[0]}"
        return f"{self.family}({','.join(map(str, self.params))})"

    @property
    def extended(self):
        return self.family in EXTENDED

    @cached_property
    def index(self):
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def topo(self):
        """Vertices ordered so that every arrow goes forward."""
        indeg = {v: 0 for v in self.vertices}
        for _, b in self.arrows:
            indeg[b] += 1
        out, ready = [], sorted(v for v in self.vertices if indeg[v] == 0)
        while ready:
            v = ready.pop(0)
            out.append(v)
            for a, b in self.arrows:
                if a == v:
                    indeg[b] -= 1
                    if indeg[b] == 0:
                        ready.append(b)
            ready.sort()
        if len(out) != len(self.vertices):
            raise UnsupportedPreset("orientation has an oriented cycle")
        return tuple(out)

    @cached_property
    def neighbours(self):
        nb = {v: [] for v in self.vertices}
        for a, b in self.arrows:
            nb[a].append(b)
            nb[b].append(a)
        return nb

    @cached_property
    def paths(self):
        """paths[i][j] = number of paths i ~> j (0 or 1 on trees)."""
        n = len(self.vertices)
        cnt = [[0] * n for _ in range(n)]
        for v in reversed(self.topo):
            iv = self.index[v]
            cnt[iv][iv] = 1
            for a, b in self.arrows:
                if a == v:
                    ib = self.index[b]
                    for k in range(n):
                        cnt[iv][k] += cnt[ib][k]
        return cnt

    def dim_P(self, v):
        return tuple(self.paths[self.index[v]])

    def dim_I(self, v):
        iv = self.index[v]
        return tuple(row[iv] for row in self.paths)

    def euler(self, x, y):
        """<x, y> = sum x_i y_i - sum over arrows a: i -> j of x_i y_j."""
        s = sum(a * b for a, b in zip(x, y))
        for a, b in self.arrows:
            s -= x[self.index[a]] * y[self.index[b]]
        return s

    def _reflect(self, x, order):
        x = list(x)
        for v in order:
            iv = self.index[v]
            x[iv] = sum(x[self.index[w]] for w in self.neighbours[v]) - x[iv]
        return tuple(x)

    def tau_inv_dim(self, x):
        return self._reflect(x, self.topo)

    def tau_dim(self, x):
        return self._reflect(x, tuple(reversed(self.topo)))

    @cached_property
    def roots(self):
        """Positive roots, i.e. dimension vectors of indecomposable modules."""
        if self.extended:
            raise UnsupportedPreset("infinitely many roots in extended type")
        seen = []
        for v in self.vertices:
            x = self.dim_P(v)
            while all(c >= 0 for c in x) and any(x):
                if x not in seen:
                    seen.append(x)
                x = self.tau_inv_dim(x)
        return tuple(sorted(seen, key=lambda r: (sum(r), r)))

    @cached_property
    def proj_of(self):
        return {self.dim_P(v): v for v in self.vertices}

    @cached_property
    def inj_of(self):
        return {self.dim_I(v): v for v in self.vertices}


_PRESET_RE = re.compile(r"^\s*([A-Za-z]+)\s*\(?\s*([\d,\s]+?)\s*\)?\s*$")


def make_preset(name: str, orientation: Iterable | None = None) -> QuiverPreset:
    """Parse names like "A2", "D(4)", "E6", "Atilde(2,2)", "Dtilde(5)"."""
    m = _PRESET_RE.match(name.replace("~", "tilde"))
    if not m:
        raise UnsupportedPreset(f"cannot parse preset {name!r}")
    family = m.group(1)
    fam_norm = {f.lower(): f for f in DYNKIN + EXTENDED}.get(family.lower())
    if fam_norm is None:
        raise UnsupportedPreset(f"unknown family {family!r}")
    params = tuple(int(t) for t in m.group(2).replace(" ", "").split(",") if t)
    if fam_norm in DYNKIN:
        if len(params) != 1:
            raise UnsupportedPreset(name)
        vertices, edges = _dynkin_edges(fam_norm, params[0])
        ranks = None
    else:
        want = 2 if fam_norm == "Atilde" else 1
        if len(params) != want:
            raise UnsupportedPreset(name)
        vertices, edges, ranks = _extended_edges(fam_norm, params)
    if orientation is None or orientation == "default":
        arrows = _orient_default(vertices, edges, fam_norm in EXTENDED)
    else:
        arrows = [tuple(a) for a in orientation]
        if sorted(tuple(sorted(a)) for a in arrows) != sorted(tuple(sorted(e)) for e in edges):
            raise UnsupportedPreset("orientation does not match the underlying graph")
    qp = QuiverPreset(fam_norm, params, tuple(vertices), tuple(sorted(arrows)),
                      tuple(ranks) if ranks is not None else None)
    qp.topo  # validates acyclicity
    return qp


# ---------------------------------------------------------------- ids

@dataclass(frozen=True)
class Mod:
    """Finite-type indecomposable: suspension of the module with this dimvec."""
    dv: tuple
    deg: int = 0

    def key(self):
        return (0, self.deg, sum(self.dv), self.dv)

    def shift(self, n=1):
        return Mod(self.dv, self.deg + n)

    def __str__(self):
        return f"M[dv={','.join(map(str, self.dv))}]@d{self.deg}"


@dataclass(frozen=True)
class Tub:
    """Tube object: quasi-socle residue s, quasi-length l."""
    tube: str
    s: int
    l: int
    deg: int = 0

    def key(self):
        return (1, self.deg, self.tube, self.l, self.s)

    def shift(self, n=1):
        return Tub(self.tube, self.s, self.l, self.deg + n)

    def __str__(self):
        return f"T[{self.tube};s={self.s};l={self.l}]@d{self.deg}"


@dataclass(frozen=True)
class NonReg:
    """Non-regular object tau^{-k} P(v) (side P) or tau^k I(v) (side I)."""
    side: str
    v: int
    k: int
    deg: int = 0

    def key(self):
        return (2, self.deg, self.side, self.k, self.v)

    def shift(self, n=1):
        return NonReg(self.side, self.v, self.k, self.deg + n)

    def __str__(self):
        return f"{self.side}[v={self.v};k={self.k}]@d{self.deg}"


IndecId = Mod | Tub | NonReg

_ID_RES = [
    (re.compile(r"^M\[dv=([\d,\s]+)\]@d(-?\d+)$"),
     lambda m: Mod(tuple(int(t) for t in m.group(1).split(",")), int(m.group(2)))),
    (re.compile(r"^T\[([^;\]]+);s=(\d+);l=(\d+)\]@d(-?\d+)$"),
     lambda m: Tub(m.group(1), int(m.group(2)), int(m.group(3)), int(m.group(4)))),
    (re.compile(r"^([PI])\[v=(\d+);k=(\d+)\]@d(-?\d+)$"),
     lambda m: NonReg(m.group(1), int(m.group(2)), int(m.group(3)), int(m.group(4)))),
]
_NAMED_RE = re.compile(r"^([SPI])\((\d+)\)(?:@d(-?\d+))?$")


def parse_id(text: str, preset: QuiverPreset | None = None):
    """Parse the canonical text form; S(i), P(i), I(i) need a Dynkin preset."""
    t = text.strip()
    for rx, mk in _ID_RES:
        m = rx.match(t)
        if m:
            return mk(m)
    m = _NAMED_RE.match(t)
    if m and preset is not None and not preset.extended:
        kind, v, d = m.group(1), int(m.group(2)), int(m.group(3) or 0)
        if v not in preset.index:
            raise ValueError(f"no vertex {v} in {preset.name}")
        if kind == "S":
            dv = tuple(int(u == v) for u in preset.vertices)
        elif kind == "P":
            dv = preset.dim_P(v)
        else:
            dv = preset.dim_I(v)
        return Mod(dv, d)
    raise ValueError(f"cannot parse indecomposable {text!r}")


def sort_key(x):
    return x.key()


class Obj:
    """Finite direct sum of indecomposables, kept in canonical order."""

    __slots__ = ("summands",)

    def __init__(self, summands: Iterable = ()):
        self.summands = tuple(sorted(summands, key=sort_key))

    @classmethod
    def of(cls, *ids):
        return cls(ids)

    def __add__(self, other):
        return Obj(self.summands + other.summands)

    def __eq__(self, other):
        return isinstance(other, Obj) and self.summands == other.summands

    def __hash__(self):
        return hash(self.summands)

    def __len__(self):
        return len(self.summands)

    def __iter__(self):
        return iter(self.summands)

    def __bool__(self):
        return bool(self.summands)

    def shift(self, n=1):
        return Obj(s.shift(n) for s in self.summands)

    def distinct(self):
        out = []
        for s in self.summands:
            if not out or out[-1] != s:
                out.append(s)
        return out

    def count(self, x):
        return self.summands.count(x)

    def __str__(self):
        return " + ".join(map(str, self.summands)) if self.summands else "0"

    __repr__ = __str__


# ---------------------------------------------------------------- windows

@dataclass
class Mesh:
    start: object
    middles: tuple
    end: object


@dataclass
class ARWindow:
    preset: QuiverPreset
    d_lo: int
    d_hi: int
    vertices: list
    arrows: set
    meshes: list = field(default_factory=list)
    caps: dict = field(default_factory=dict)
    _tau: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.index = {v: i for i, v in enumerate(self.vertices)}
        self.succ = {v: [] for v in self.vertices}
        self.pred = {v: [] for v in self.vertices}
        for a, b in sorted(self.arrows, key=lambda e: (e[0].key(), e[1].key())):
            self.succ[a].append(b)
            self.pred[b].append(a)
        self._reach = {}

    def __contains__(self, x):
        return x in self.index

    def degree(self, d):
        return [v for v in self.vertices if v.deg == d]

    def count(self):
        return len(self.vertices)

    def reach_from(self, a):
        if a not in self._reach:
            seen = {a}
            dq = deque([a])
            while dq:
                u = dq.popleft()
                for w in self.succ[u]:
                    if w not in seen:
                        seen.add(w)
                        dq.append(w)
            self._reach[a] = seen
        return self._reach[a]


def tau(w: ARWindow, x):
    """AR translate inside the window."""
    if x not in w:
        raise BoundaryUndefined(f"{x} is not in the window")
    if isinstance(x, Tub):
        rho = w.caps["ranks"][x.tube]
        return Tub(x.tube, (x.s - 1) % rho, x.l, x.deg)
    y = w._tau.get(x)
    if y is None or y not in w:
        raise BoundaryUndefined(f"tau({x}) leaves the window")
    return y


def sigma(w: ARWindow, x, n=1):
    y = x.shift(n)
    if y not in w:
        raise BoundaryUndefined(f"suspension of {x} leaves the window")
    return y


def leq(w: ARWindow, a, b):
    """a <= b iff b is reachable from a along arrows (reflexive)."""
    if w.preset.extended and (isinstance(a, Tub) or isinstance(b, Tub)):
        raise NotComparableDomain("regular objects are not ordered")
    if a not in w or b not in w:
        raise BoundaryUndefined("both objects must lie in the window")
    return b in w.reach_from(a)


def _module_tau_inv(p: QuiverPreset, x: Mod):
    if x.dv in p.inj_of:
        return Mod(p.dim_P(p.inj_of[x.dv]), x.deg + 1)
    return Mod(p.tau_inv_dim(x.dv), x.deg)


def _module_tau(p: QuiverPreset, x: Mod):
    if x.dv in p.proj_of:
        return Mod(p.dim_I(p.proj_of[x.dv]), x.deg - 1)
    return Mod(p.tau_dim(x.dv), x.deg)


def module_tau(p: QuiverPreset, x: Mod):
    """tau on finite-type ids, valid in every degree."""
    return _module_tau(p, x)


def module_tau_inv(p: QuiverPreset, x: Mod):
    return _module_tau_inv(p, x)


def build_window(preset: QuiverPreset, d_lo: int, d_hi: int, caps: dict | None = None) -> ARWindow:
    """Vertices, arrows and meshes of the AR quiver in degrees d_lo..d_hi."""
    if d_lo >= d_hi:
        raise WindowTooSmall("need d_lo < d_hi")
    caps = dict(caps or {})
    if preset.extended:
        return _build_extended(preset, d_lo, d_hi, caps)
    # ZQ^op chart: (v, m) = tau^{-m} P(v) in degree 0
    coord = {}
    for v in preset.vertices:
        x = Mod(preset.dim_P(v), 0)
        m = 0
        while x.deg <= d_hi:
            coord[(v, m)] = x
            x, m = _module_tau_inv(preset, x), m + 1
        x, m = Mod(preset.dim_P(v), 0), 0
        while x.deg >= d_lo:
            coord[(v, m)] = x
            x, m = _module_tau(preset, x), m - 1
    inside = {c: x for c, x in coord.items() if d_lo <= x.deg <= d_hi}
    at = {x: c for c, x in inside.items()}
    arrows = set()
    for (i, j) in preset.arrows:
        for (v, m), x in inside.items():
            if v == j and (i, m) in inside:
                arrows.add((x, inside[(i, m)]))
            if v == i and (j, m + 1) in inside:
                arrows.add((x, inside[(j, m + 1)]))
    vertices = sorted(inside.values(), key=lambda x: (x.deg, at[x][1], x.key()))
    taus = {}
    for (v, m), x in inside.items():
        if (v, m - 1) in coord:
            taus[x] = coord[(v, m - 1)]
    w = ARWindow(preset, d_lo, d_hi, vertices, arrows, caps=caps, _tau=taus)
    for z in vertices:
        tz = taus.get(z)
        if tz is None or tz not in w:
            continue
        mids = tuple(sorted(w.pred[z], key=sort_key))
        w.meshes.append(Mesh(tz, mids, z))
    return w


def nonreg_coord(x: NonReg):
    """(v, m) on the component N_d with d = x.deg (P side) or x.deg + 1 (I side)."""
    if x.side == "P":
        return x.v, x.k, x.deg
    return x.v, -x.k - 1, x.deg + 1


def nonreg_from_coord(v, m, comp_deg):
    if m >= 0:
        return NonReg("P", v, m, comp_deg)
    return NonReg("I", v, -m - 1, comp_deg - 1)


def nonreg_succ(preset: QuiverPreset, v, m):
    """Arrow targets of (v, m) in the non-regular component chart.

    The component is a copy of ZQ^op: each arrow i -> j of Q gives
    (j, m) -> (i, m) and (i, m) -> (j, m + 1) for every m.
    """
    out = set()
    for (i, j) in preset.arrows:
        if v == j:
            out.add((i, m))
        if v == i:
            out.add((j, m + 1))
    return sorted(out)


def tube_labels(preset: QuiverPreset):
    labels = {}
    for idx, rho in enumerate(preset.tube_ranks or ()):
        labels[f"λ{idx}"] = rho
    labels["h"] = 1
    return labels


def _build_extended(preset, d_lo, d_hi, caps):
    kcap = caps.setdefault("k", 64)
    lcap = caps.setdefault("l", 8)
    ranks = caps.setdefault("ranks", tube_labels(preset))
    vertices, arrows, taus = [], set(), {}
    for d in range(d_lo, d_hi + 1):
        for side in ("P", "I"):
            for k in range(kcap):
                for v in preset.vertices:
                    vertices.append(NonReg(side, v, k, d))
        for lab, rho in ranks.items():
            for l in range(1, lcap + 1):
                for s in range(rho):
                    vertices.append(Tub(lab, s, l, d))
    vset = set(vertices)
    for x in vertices:
        if isinstance(x, NonReg):
            v, m, cd = nonreg_coord(x)
            for (u, mm) in nonreg_succ(preset, v, m):
                y = nonreg_from_coord(u, mm, cd)
                if y in vset:
                    arrows.add((x, y))
            t = nonreg_from_coord(v, m - 1, cd)
            if t in vset:
                taus[x] = t
        else:
            rho = ranks[x.tube]
            up = Tub(x.tube, x.s, x.l + 1, x.deg)
            if up in vset:
                arrows.add((x, up))
            if x.l > 1:
                arrows.add((x, Tub(x.tube, (x.s + 1) % rho, x.l - 1, x.deg)))
    vertices.sort(key=sort_key)
    w = ARWindow(preset, d_lo, d_hi, vertices, arrows, caps=caps, _tau=taus)
    for z in vertices:
        if isinstance(z, NonReg) and z in taus and taus[z] in vset:
            w.meshes.append(Mesh(taus[z], tuple(sorted(w.pred[z], key=sort_key)), z))
    return w
