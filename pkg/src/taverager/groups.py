"""Finite groups acting on a window by AR-quiver symmetries, and averaging over them."""
from __future__ import annotations

from dataclasses import dataclass

from .aisles import VALIDATED, TStructure, classify, make_tstructure, window_ids
from .averaging import average_aisles
from .errors import NotASymmetry, OrderCapExceeded
from .quiver import ARWindow, Mod, sort_key

ORDER_CAP = 64


@dataclass
class GroupAction:
    """Generators are dicts id -> id on window indecomposables."""
    generators: list
    name: str = "G"

    def apply(self, perm, x):
        if x in perm:
            return perm[x]
        # outside the window: transport along the suspension
        for s in range(1, 64):
            for sign in (1, -1):
                y = x.shift(-sign * s)
                if y in perm:
                    return perm[y].shift(sign * s)
        raise NotASymmetry(f"{x} is not covered by the action", witness=x)


def from_vertex_permutation(w: ARWindow, pi: dict, name="G") -> GroupAction:
    """Action induced by a quiver automorphism: permute dimension vector entries."""
    p = w.preset
    for a, b in p.arrows:
        if (pi.get(a, a), pi.get(b, b)) not in p.arrows:
            raise NotASymmetry(f"arrow {a}->{b} is not preserved", witness=(a, b))
    idx = p.index
    perm = {}
    for x in window_ids(w):
        dv = [0] * len(x.dv)
        for v in p.vertices:
            dv[idx[pi.get(v, v)]] = x.dv[idx[v]]
        perm[x] = Mod(tuple(dv), x.deg)
    return GroupAction([perm], name)


def _compose(f, g):
    return {x: f[g[x]] for x in g}


def group_elements(g: GroupAction, cap=ORDER_CAP):
    ident = {x: x for x in g.generators[0]} if g.generators else {}
    key = lambda p: tuple(sorted(((sort_key(a), sort_key(b)) for a, b in p.items())))
    seen = {key(ident): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for e in frontier:
            for s in g.generators:
                c = _compose(s, e)
                k = key(c)
                if k not in seen:
                    seen[k] = c
                    nxt.append(c)
                    if len(seen) > cap:
                        raise OrderCapExceeded(f"group order exceeds {cap}")
        frontier = nxt
    return list(seen.values())


def validate_action(g: GroupAction, w: ARWindow, cap=ORDER_CAP):
    """Check that every generator is a symmetry of the window; returns a report."""
    ids = set(window_ids(w))
    for n, perm in enumerate(g.generators):
        if set(perm) != ids:
            missing = sorted(ids - set(perm), key=sort_key)
            raise NotASymmetry(f"generator {n} does not map every window object",
                               witness=missing[0] if missing else None)
        if set(perm.values()) != ids:
            raise NotASymmetry(f"generator {n} is not a bijection of the window")
        for x in ids:
            gx = perm[x]
            if gx.deg != x.deg:
                raise NotASymmetry(f"generator {n} does not commute with the suspension", witness=x)
            sx = x.shift(1)
            if sx in ids and perm[sx] != gx.shift(1):
                raise NotASymmetry(f"generator {n} does not commute with the suspension", witness=x)
            tx = w._tau.get(x)
            if tx in ids and w._tau.get(gx) != perm[tx]:
                raise NotASymmetry(f"generator {n} does not commute with tau", witness=x)
        for a, b in w.arrows:
            if (perm[a], perm[b]) not in w.arrows:
                raise NotASymmetry(f"generator {n} breaks the arrow {a} -> {b}", witness=(a, b))
    return {"valid": True, "order": len(group_elements(g, cap))}


def act(perm, ts: TStructure, g: GroupAction, name=None) -> TStructure:
    return make_tstructure(name or f"g.{ts.name}", ts.window, [g.apply(perm, x) for x in ts.aisle])


def is_invariant(ts: TStructure, g: GroupAction):
    return all(frozenset(g.apply(p, x) for x in ts.aisle) == ts.aisle for p in g.generators)


def average_aisle_over_group(ts: TStructure, g: GroupAction, budget=None):
    """Average ts over its G-orbit; report records validity and invariance."""
    orbit, seen = [], set()
    for n, e in enumerate(group_elements(g)):
        t = ts if n == 0 else act(e, ts, g, f"g{n}.{ts.name}")
        if t.aisle not in seen:
            seen.add(t.aisle)
            orbit.append(t)
    if len(orbit) == 1:
        report = {"status": ts.validity, "witness": None, "orbit": 1}
        avg = ts
    else:
        avg, report = average_aisles(orbit, budget)
        report = dict(report, orbit=len(orbit))
    report["invariant"] = is_invariant(avg, g)
    return avg, report


def check_preservation(ts_list, averaged: TStructure):
    """Stable and bounded pass to the average; non-degeneracy is only reported."""
    flags = [classify(t) for t in ts_list]
    res = classify(averaged)
    out = {"averaged": res}
    if all(f["stable"] for f in flags):
        out["stable_preserved"] = res["stable"]
        assert res["stable"], "averaging lost stability"
    if all(f["bounded"] for f in flags):
        out["bounded_preserved"] = res["bounded"]
        assert res["bounded"], "averaging lost boundedness"
    out["nondegenerate_reported"] = res["nondegenerate_on_window"]
    return out


__all__ = ["GroupAction", "from_vertex_permutation", "group_elements", "validate_action",
           "act", "is_invariant", "average_aisle_over_group", "check_preservation", "VALIDATED"]
