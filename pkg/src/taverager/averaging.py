"""Averaging a finite family of t-structures: naive and refined runs."""
from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg as la
from .aisles import (
    INVALID,
    VALIDATED,
    TStructure,
    Triangle,
    _clamp,
    dual_truncate,
    extension_closure,
    make_tstructure,
    truncate_cx,
    window_ids,
)
from .complexes import Chain, Cx, compose, cocone, direct_sum, identity, minimize, zero_map
from .quiver import Mod, Obj


@dataclass(frozen=True)
class Terminated:
    n: int

    def __str__(self):
        return f"Terminated({self.n})"


@dataclass(frozen=True)
class CertifiedNonTerminating:
    period: int
    shift: int

    def __str__(self):
        return f"CertifiedNonTerminating(period={self.period}, shift={self.shift})"


@dataclass(frozen=True)
class Exhausted:
    steps: int

    def __str__(self):
        return "BudgetExhausted"


@dataclass
class Step:
    n: int
    phase: int
    x: Obj
    y: Obj
    waste: Obj

    def line(self):
        return f"{self.n}; phase={self.phase}; x={self.x}; y={self.y}; waste={self.waste}"


@dataclass
class RunTrace:
    input: Obj
    order: list
    steps: list = field(default_factory=list)
    status: object = None
    triangle: Triangle | None = None
    mode: str = "refined"

    def lines(self):
        return [s.line() for s in self.steps]

    @property
    def terminated(self):
        return isinstance(self.status, Terminated)

    def y(self, n):
        return self.steps[n].y


def default_budget(order):
    return 8 * len(order) * order[0].window.count()


def _in_all_coaisles(obj: Obj, order):
    return all(ts.in_coaisle(s) for ts in order for s in obj)


def _start(t, order):
    eng = order[0].engine
    if isinstance(t, Mod):
        t = Obj.of(t)
    C, _, _ = eng.cx_obj(t)
    return eng, t, C


def naive_run(t, order, budget=None, start_phase=0) -> RunTrace:
    """Iterated left truncations y_n = (y_{n-1})_{Y_n}; objects are tracked exactly."""
    budget = default_budget(order) if budget is None else budget
    eng, t, C = _start(t, order)
    d = len(order)
    trace = RunTrace(t, [ts.name for ts in order], mode="naive")
    stable = all(ts.is_stable() for ts in order)
    cur, alpha = C, None
    seen = []
    for n in range(budget):
        phase = (start_phase + n) % d
        y, a, _, _, _ = truncate_cx(eng, cur, order[phase])
        alpha = a if alpha is None else compose(a, alpha)
        Y = eng.identify(y)
        X = eng.identify(minimize(cocone(alpha)[0])[0])
        trace.steps.append(Step(n, phase, X, Y, Obj()))
        cur = y
        if _in_all_coaisles(Y, order):
            trace.status = Terminated(n)
            trace.triangle = Triangle(X, t, Y)
            return trace
        if stable and Y:
            for m, Ym in seen:
                if (n - m) % d == 0:
                    s = _shift_between(Ym, Y)
                    if s is not None:
                        trace.status = CertifiedNonTerminating(n - m, s)
                        return trace
        seen.append((n, Y))
    trace.status = Exhausted(budget)
    return trace


def _shift_between(a: Obj, b: Obj):
    """s with b = Sigma^s a, or None."""
    if not a or len(a) != len(b):
        return None
    s = b.summands[0].deg - a.summands[0].deg
    return s if a.shift(s) == b else None


def _lam(eng, f: Chain, Y):
    """Scalar part of an endomorphism of an indecomposable."""
    hs = eng.hom_space_ids(Y, Y)
    return hs.coords(f)[0] / hs.coords(identity(eng.cx(Y)))[0]


def _strip_waste(eng, Ct, ytil, atil):
    """Split ytil = kept + waste with t -> waste null and kept maximal.

    Returns (kept factors, waste factors, chain t -> sum of kept).
    """
    dec = eng.decompose(ytil)
    if dec.to_min is not None:
        raise AssertionError("truncation output is expected to be minimal")
    types = {}
    for b, Y in enumerate(dec.factors):
        types.setdefault(Y, []).append(b)
    kept, waste, rows = [], [], []
    for Y, idx in types.items():
        hs = eng.hom_space(ytil, eng.cx(Y))
        target = eng.hom_space(Ct, eng.cx(Y))
        comp = [target.coords(compose(h, atil)) for h in hs.basis]
        K = la.nullspace(la.transpose(comp, target.dim), hs.dim) if target.dim else [
            [int(i == j) for i in range(hs.dim)] for j in range(hs.dim)]
        Kmaps = [hs.from_coords(k) for k in K]
        T = [[_lam(eng, compose(pi, dec.inj[b]), Y) for b in idx] for pi in Kmaps]
        sel = la.row_basis(T, len(idx)) if T else []
        chosen_rows = [T[i] for i in sel]
        for i in sel:
            waste.append(Y)
        r0 = len(sel)
        for j, b in enumerate(idx):
            e = [int(k == j) for k in range(len(idx))]
            if la.rank(chosen_rows + [e], len(idx)) > r0:
                chosen_rows.append(e)
                r0 += 1
                kept.append(Y)
                rows.append(dec.proj[b])
    if not kept:
        return [], waste, None
    Ysum, incs, _ = direct_sum([eng.cx(Y) for Y in kept])
    alpha = None
    for q, ic in zip(rows, incs):
        term = compose(ic, compose(q, atil))
        alpha = term if alpha is None else alpha + term
    return kept, waste, Chain(Ct, Ysum, alpha.comps)


def refined_run(t, order, budget=None, start_phase=0, check=False) -> RunTrace:
    """Truncate, then strip summands receiving a null component of t."""
    budget = default_budget(order) if budget is None else budget
    eng, t, C = _start(t, order)
    d = len(order)
    trace = RunTrace(t, [ts.name for ts in order])
    cur, alpha = C, None
    for n in range(budget):
        phase = (start_phase + n) % d
        y, a, _, _, _ = truncate_cx(eng, cur, order[phase])
        atil = a if alpha is None else compose(a, alpha)
        if y.is_zero():
            kept, waste, alpha = [], [], None
        else:
            kept, waste, alpha = _strip_waste(eng, C, y, atil)
        Y = Obj(kept)
        if alpha is None:
            cur = Cx({}, {})
            alpha = zero_map(C, cur)
        else:
            cur = alpha.tgt
        xc, beta = cocone(alpha)
        X = eng.identify(xc)
        trace.steps.append(Step(n, phase, X, Y, Obj(waste)))
        if check:
            _check_step(eng, C, alpha, kept)
        if _in_all_coaisles(Y, order):
            trace.status = Terminated(n)
            trace.triangle = Triangle(X, t, Y, beta, alpha, n)
            return trace
    trace.status = Exhausted(budget)
    return trace


def _check_step(eng, C, alpha, kept):
    if not kept:
        return
    _, _, projs = direct_sum([eng.cx(Y) for Y in kept])
    for pr, Y in zip(projs, kept):
        comp = compose(Chain(alpha.tgt, pr.tgt, pr.comps), alpha)
        if eng.is_null(comp):
            raise AssertionError(f"summand {Y} receives a null component")


# ---------------------------------------------------------------- averaged pairs

def _margin_sets(order, member):
    w = order[0].window
    return {x for x in window_ids(w, w.d_lo - 2, w.d_hi + 2) if member(x)}


def average_aisles(order, budget=None):
    """(X^I, Y^I) with a report: Validated iff every refined run terminates."""
    if len(order) == 1:
        return order[0], {"status": order[0].validity, "witness": None}
    w = order[0].window
    gens = set()
    for ts in order:
        gens |= set(ts.aisle)
    avg = make_tstructure("avg(" + ",".join(ts.name for ts in order) + ")", w, gens)
    co = frozenset(y for y in window_ids(w) if all(ts.in_coaisle(y) for ts in order))
    if co != avg.coaisle():
        raise AssertionError("right orthogonal of the averaged aisle differs from the co-aisle meet")
    for t in window_ids(w):
        tr = refined_run(Obj.of(t), order, budget)
        if not tr.terminated:
            avg.validity, avg.witness = INVALID, t
            return avg, {"status": "Unvalidated", "witness": t, "trace": tr}
        x = tr.triangle.x
        if not avg.obj_in_aisle(x):
            avg.validity, avg.witness = INVALID, t
            return avg, {"status": "Invalid", "witness": t, "trace": tr}
    avg.validity = VALIDATED
    return avg, {"status": VALIDATED, "witness": None}


def intersect_aisles(order, budget=None):
    """(X_I, Y_I): meet of aisles, extension closure of co-aisles."""
    if len(order) == 1:
        return order[0], {"status": order[0].validity, "witness": None}
    w = order[0].window
    eng = order[0].engine
    aisle = frozenset(x for x in order[0].aisle if all(x in ts.aisle for ts in order))
    union = _margin_sets(order, lambda y: any(ts.in_coaisle(y) for ts in order))
    co = extension_closure(union, w, eng, w.d_lo - 2, w.d_hi + 2)
    co_win = frozenset(y for y in co if w.d_lo <= y.deg <= w.d_hi)
    ts = TStructure("meet(" + ",".join(t.name for t in order) + ")", w, aisle)
    ts._co_override = co_win
    budget = 4 * w.count() if budget is None else budget
    for t in window_ids(w):
        tri = dual_truncate(Obj.of(t), lambda v: Mod(v.dv, _clamp(v.deg, w.d_lo, w.d_hi)) in co_win,
                            eng, budget)
        if not ts.obj_in_aisle(tri.x):
            ts.validity, ts.witness = INVALID, t
            return ts, {"status": "Invalid", "witness": t}
    ts.validity = VALIDATED
    return ts, {"status": VALIDATED, "witness": None}


def _y_at(tr: RunTrace, n):
    """y_n of a run; after termination the sequence is constant."""
    return tr.steps[min(n, len(tr.steps) - 1)].y


def check_shift_lemma(t, order, k, n, start_phase=None):
    """refinedY(t, k+n) is a summand of refinedY(t_k, n), t_k = refinedY(t, k).

    By default the run on t_k starts at phase k mod d, so that both sides
    truncate against the same t-structure at every step; start_phase=0
    restarts the cycle instead.  n may be an int or an iterable of ints;
    the result is a bool or a list of bools accordingly.
    """
    ns = [n] if isinstance(n, int) else list(n)
    top = max(ns, default=0)
    tr = refined_run(t, order, budget=k + top + 1)
    tk = _y_at(tr, k)
    start = k % len(order) if start_phase is None else start_phase
    tr2 = refined_run(tk, order, budget=top + 1, start_phase=start)
    out = [m == 0 or _is_summand(_y_at(tr, k + m), _y_at(tr2, m)) for m in ns]
    return out[0] if isinstance(n, int) else out


def _is_summand(a: Obj, b: Obj):
    rest = list(b.summands)
    for s in a:
        if s not in rest:
            return False
        rest.remove(s)
    return True
