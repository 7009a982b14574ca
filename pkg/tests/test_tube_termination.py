"""Refined runs inside a tube, computed on explicit nilpotent representations."""
import random

import tube_model as tm
from taverager import tubes as tb


def _wing(rho, a, L):
    return [((a + i) % rho, l) for i in range(L) for l in range(1, L - i + 1)]


def _random_aisle(rng, rho):
    L = rng.randint(1, rho - 1)
    a = rng.randrange(rho)
    s1 = []
    if rng.random() < 0.6:
        L1 = rng.randint(1, L)
        s1 = _wing(rho, (a + rng.randint(0, L - L1)) % rho, L1)
    return tm.WingAisle(rho, _wing(rho, a, L), s1)


def _cases(n, seed):
    rng = random.Random(seed)
    for _ in range(n):
        rho = rng.choice([2, 3, 4])
        t = (rng.randrange(rho), rng.randint(1, 2 * rho + 1))
        yield rho, t, [_random_aisle(rng, rho) for _ in range(rng.randint(1, 3))]


def test_refined_runs_terminate_within_the_bound():
    for rho, t, aisles in _cases(150, 1):
        hist, done = tm.refined_tube_run(rho, t, aisles, 40)
        assert done, (rho, t)
        cap = rho * -(-t[1] // rho)
        for kept, _ in hist:
            assert all(l <= cap for _, l in kept), (rho, t, kept)


def test_wing_truncation_agrees_with_chains():
    compared = 0
    for rho, t, aisles in _cases(150, 1):
        if t[1] >= rho:
            continue
        y, _, r, rp = aisles[0].truncate(tm.uniserial(rho, *t))
        T = tb.TubeObj(rho, *t)
        rpo = sorted((tb.TubeObj(rho, *s) for s in rp), key=lambda o: -((o.top - T.top) % rho))
        ro = sorted((tb.TubeObj(rho, *s) for s in r), key=lambda o: -((o.socle - T.socle) % rho))
        got = sorted((o.socle, o.length) for o in tb.truncation_summands(T, rpo, ro) if o.degree == 0)
        assert got == (tm.decompose(y) if y else []), (rho, t, rp, r)
        compared += 1
    assert compared >= 20


def test_truncation_lands_in_coaisle():
    for rho, t, aisles in _cases(40, 7):
        A = aisles[0]
        y, *_ = A.truncate(tm.uniserial(rho, *t))
        if y:
            assert A.in_coaisle(y)
