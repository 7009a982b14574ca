"""Shared t-structure systems for the test suite (built once per session)."""
import random
from functools import lru_cache

from taverager.aisles import VALIDATED, make_tstructure, validate
from taverager.quiver import Mod, build_window, make_preset, parse_id


@lru_cache(maxsize=None)
def a2_cycle():
    p = make_preset("A2")
    w = build_window(p, -2, 2)
    P = lambda s: parse_id(s, p)
    ts = [make_tstructure(n, w, [P(g)], sigma_stable=True)
          for n, g in (("ts1", "P(2)"), ("ts2", "S(2)"), ("ts3", "S(1)"))]
    for t in ts:
        validate(t)
    return p, w, ts


@lru_cache(maxsize=None)
def a2_suite():
    p, w, cyc = a2_cycle()
    P = lambda s: parse_id(s, p)
    std = make_tstructure("std", w, [P("S(1)"), P("S(2)")])
    tilt = make_tstructure("tilt", w, [P("S(2)"), P("S(1)@d1")])
    for t in (std, tilt):
        validate(t)
    return p, w, list(cyc) + [std, tilt]


@lru_cache(maxsize=None)
def a3_window():
    p = make_preset("A3")
    return p, build_window(p, -2, 2)


def random_tstructure(rng, name, stable=None):
    p, w = a3_window()
    roots = list(p.roots)
    stable = rng.random() < 0.4 if stable is None else stable
    k = rng.randint(1, 3)
    gens = [Mod(r, 0 if stable else rng.choice((-1, 0, 1))) for r in rng.sample(roots, k)]
    ts = make_tstructure(name, w, gens, sigma_stable=stable)
    validate(ts)
    return ts


@lru_cache(maxsize=None)
def a3_suite():
    p, w = a3_window()
    S = [parse_id(f"S({i})", p) for i in (1, 2, 3)]
    std = make_tstructure("std", w, S)
    sh = make_tstructure("shift", w, [s.shift(1) for s in S])
    st = make_tstructure("stab", w, [parse_id("P(2)", p)], sigma_stable=True)
    rng = random.Random(7)
    extra = [random_tstructure(rng, f"r{i}") for i in range(3)]
    out = [std, sh, st] + extra
    for t in out:
        validate(t)
    assert all(t.validity == VALIDATED for t in out)
    return p, w, out


@lru_cache(maxsize=None)
def a3_random_systems(n=20, seed=11):
    rng = random.Random(seed)
    out = []
    for i in range(n):
        d = rng.randint(2, 3)
        out.append([random_tstructure(rng, f"q{i}_{j}") for j in range(d)])
    return out
