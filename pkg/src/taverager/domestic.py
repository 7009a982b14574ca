"""Tame-domestic co-aisle traces and the combinatorial averaging criterion.

A trace on a non-regular component is a finite explicit set together with an
eventually periodic tail: for every (v, r) in the pattern, the objects
tau^{-k} v with k >= threshold and k = r mod period.  Component ids are
(preset name, d); the component N_d holds P-side objects in degree d and
I-side objects in degree d - 1 (see quiver.nonreg_coord).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm

from .errors import ComponentMismatch, NotNonRegular, UnknownBuiltin
from .quiver import NonReg, QuiverPreset, make_preset, nonreg_coord, nonreg_succ


@dataclass(frozen=True)
class EventuallyPeriodicSet:
    component: tuple
    explicit: frozenset = frozenset()      # chart coordinates (v, m)
    pattern: frozenset = frozenset()       # pairs (v, residue mod period)
    threshold: int = 0
    period: int = 1

    def __post_init__(self):
        pat = frozenset((v, r % self.period) for v, r in self.pattern)
        object.__setattr__(self, "pattern", pat)
        object.__setattr__(self, "explicit", frozenset(self.explicit))

    def in_tail(self, v, m):
        return m >= self.threshold and (v, m % self.period) in self.pattern

    def __contains__(self, c):
        if isinstance(c, NonReg):
            v, m, d = nonreg_coord(c)
            if d != self.component[1]:
                return False
            c = (v, m)
        return c in self.explicit or self.in_tail(*c)

    def with_period(self, p):
        """Same set with the pattern rewritten for a multiple p of the period."""
        if p % self.period:
            raise ValueError("new period must be a multiple of the old one")
        pat = {(v, r + self.period * j) for v, r in self.pattern for j in range(p // self.period)}
        return EventuallyPeriodicSet(self.component, self.explicit, frozenset(pat), self.threshold, p)

    def tail_vertices(self):
        return sorted({v for v, _ in self.pattern})

    def __str__(self):
        pat = ",".join(f"{v}:{r}" for v, r in sorted(self.pattern))
        return (f"N{self.component[1]}[explicit={len(self.explicit)};pattern={{{pat}}};"
                f"k0={self.threshold};period={self.period}]")


@dataclass
class DomesticTSTrace:
    name: str
    preset: QuiverPreset
    components: dict                        # d -> EventuallyPeriodicSet
    tubes: dict = field(default_factory=dict)   # (label, d) -> "cofinite" | description
    aisle_traces: dict = field(default_factory=dict)  # d -> EventuallyPeriodicSet (optional)


def _check_nonregular(preset: QuiverPreset, s: EventuallyPeriodicSet):
    if not preset.extended:
        raise NotNonRegular(f"{preset.name} has no non-regular components")
    if s.component[0] != preset.name:
        raise NotNonRegular(f"component {s.component} does not belong to {preset.name}")
    bad = [v for v, _ in s.pattern if v not in preset.index]
    if bad:
        raise NotNonRegular(f"pattern vertex {bad[0]} is not a vertex of {preset.name}")


def _reachable(preset, a, b, slack=None):
    """Chart path a -> b in ZQ^op; the search stays within the m-range [a.m, b.m]."""
    if a == b:
        return True
    hi = b[1]
    seen, stack = {a}, [a]
    while stack:
        u = stack.pop()
        for w in nonreg_succ(preset, *u):
            if w == b:
                return True
            if w[1] <= hi and w not in seen:
                seen.add(w)
                stack.append(w)
    return False


def increasing_chain(preset: QuiverPreset, s: EventuallyPeriodicSet, length=10):
    """A strictly increasing chain of members (chart coordinates), or None."""
    _check_nonregular(preset, s)
    if not s.pattern:
        return None
    v, r = min(s.pattern)
    m0 = s.threshold + ((r - s.threshold) % s.period)
    chain = [(v, m0 + s.period * j) for j in range(length)]
    for a, b in zip(chain, chain[1:]):
        if not _reachable(preset, a, b):
            raise AssertionError(f"no path {a} -> {b} in the component chart")
    return chain


def has_increasing_chain(preset: QuiverPreset, s: EventuallyPeriodicSet) -> bool:
    return increasing_chain(preset, s) is not None


def intersect_traces(traces) -> EventuallyPeriodicSet:
    traces = list(traces)
    if not traces:
        raise ValueError("need at least one trace")
    comp = traces[0].component
    for t in traces:
        if t.component != comp:
            raise ComponentMismatch(f"{t.component} != {comp}")
    p = lcm(*(t.period for t in traces))
    lifted = [t.with_period(p) for t in traces]
    k0 = max(t.threshold for t in traces)
    pattern = frozenset.intersection(*(t.pattern for t in lifted))
    # finite part: everything below the common threshold, plus explicit
    # members above it that the common tail misses
    cands = set()
    for t in traces:
        cands |= t.explicit
        for v, r in t.pattern:
            for m in range(t.threshold, k0 + p):
                if m % t.period == r:
                    cands.add((v, m))
    explicit = set()
    for c in cands:
        if all(c in t for t in traces):
            if not (c[1] >= k0 and (c[0], c[1] % p) in pattern):
                explicit.add(c)
    return EventuallyPeriodicSet(comp, frozenset(explicit), pattern, k0, p)


@dataclass(frozen=True)
class Verdict:
    holds: bool
    component: tuple | None = None

    def __str__(self):
        if self.holds:
            return "holds"
        return f"fails(N{self.component[1]})"


def criterion_c(traces) -> Verdict:
    """Every component with chains in all traces needs a chain in the meet."""
    traces = list(traces)
    if not traces:
        return Verdict(True)
    preset = traces[0].preset
    degs = sorted(set.intersection(*(set(t.components) for t in traces)))
    for d in degs:
        sets = [t.components[d] for t in traces]
        if all(has_increasing_chain(preset, s) for s in sets):
            if not has_increasing_chain(preset, intersect_traces(sets)):
                return Verdict(False, sets[0].component)
    return Verdict(True)


def consistency_warnings(traces):
    """Warn when the meet has a chain on N but some aisle trace there is non-empty."""
    out = []
    traces = list(traces)
    if not traces:
        return out
    preset = traces[0].preset
    for d in sorted(set.intersection(*(set(t.components) for t in traces))):
        meet = intersect_traces([t.components[d] for t in traces])
        if has_increasing_chain(preset, meet):
            for t in traces:
                a = t.aisle_traces.get(d)
                if a is not None and (a.explicit or a.pattern):
                    out.append(f"{t.name}: aisle meets N{d} although the co-aisle meet is cofinal there")
    return out


def sigma_closed(trace: DomesticTSTrace, kmax=24):
    """Co-aisles are closed under Sigma^{-1}: the trace on N_d sits inside N_{d-1}."""
    for d, s in trace.components.items():
        below = trace.components.get(d - 1)
        if below is None:
            continue
        for v in trace.preset.vertices:
            for m in range(-kmax, kmax):
                if (v, m) in s and (v, m) not in below:
                    return False
    return True


# ---------------------------------------------------------------- traces from Euler forms

def chart_dimvec(preset: QuiverPreset, v, m):
    """Dimension vector of the module underlying chart point (v, m)."""
    if m >= 0:
        x = preset.dim_P(v)
        for _ in range(m):
            x = preset.tau_inv_dim(x)
        return x
    x = preset.dim_I(v)
    for _ in range(-m - 1):
        x = preset.tau_dim(x)
    return x


def _fit_periodic(member, vertices, kmin, kmax, max_period=6):
    """Smallest (period, threshold) making member(v, k) periodic on [threshold, kmax)."""
    for p in range(1, max_period + 1):
        for k0 in range(0, kmax - 3 * p):
            if all(member(v, k) == member(v, k + p) for v in vertices for k in range(k0, kmax - p)):
                pattern = {(v, k % p) for v in vertices for k in range(k0, k0 + p) if member(v, k)}
                explicit = {(v, k) for v in vertices for k in range(kmin, k0) if member(v, k)}
                return p, k0, pattern, explicit
    raise AssertionError("trace is not eventually periodic on the sampled range")


def trace_orthogonal_to_regular(preset: QuiverPreset, d, regulars, kcap=24):
    """Trace on N_d of {y : Hom(s@0, y) = 0 for s in regulars} (dimension vectors).

    Only N_0 and N_1 can receive maps from degree-0 regular modules: into
    preinjectives of degree 0 through Hom = <s, y>, into preprojectives of
    degree 1 through Ext = -<s, y>.
    """
    comp = (preset.name, d)

    def member(v, m):
        y = chart_dimvec(preset, v, m)
        if d == 1:
            return all(preset.euler(s, y) == 0 for s in regulars)
        return True

    p, k0, pattern, explicit = _fit_periodic(member, preset.vertices, -kcap, kcap)
    return EventuallyPeriodicSet(comp, frozenset(explicit), frozenset(pattern), k0, p)


def _empty(preset, d):
    return EventuallyPeriodicSet((preset.name, d))


def load_builtin(name: str):
    """(preset, traces) for a named built-in example."""
    if name != "X22-example":
        raise UnknownBuiltin(name)
    preset = make_preset("Atilde(2,2)")
    s1 = tuple(int(v == 1) for v in preset.vertices)    # quasi-simple at the mouth of a rank-2 tube
    s2 = preset.tau_dim(s1)
    traces = []
    for pname, s in (("X1", s1), ("X2", s2)):
        comps = {}
        for d in (0, 1):
            comps[d] = trace_orthogonal_to_regular(preset, d, [s])
        comps[2] = _empty(preset, 2)
        tubes = {("λ0", 0): f"complement of {{{pname[1]}}} at the mouth", ("λ0", 1): "empty"}
        aisle = {1: _empty(preset, 1)}
        traces.append(DomesticTSTrace(pname, preset, comps, tubes, aisle))
    return preset, traces
