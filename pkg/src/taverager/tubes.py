"""Coordinates and hammock rules in a standard stable tube of rank rho.

An object is (rho, socle, length, degree).  Its composition factors, read
from the top down, are s_{socle+length-1}, ..., s_{socle} with indices mod
rho.  tau lowers the socle by one, so the almost split sequence ending at
s_i starts at s_{i-1}.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import DifferentTube, InvalidSetup, NoExtension


@dataclass(frozen=True, order=True)
class TubeObj:
    rho: int
    socle: int
    length: int
    degree: int = 0

    def __post_init__(self):
        if self.rho < 1 or self.length < 1:
            raise ValueError(f"bad tube object rho={self.rho} length={self.length}")
        object.__setattr__(self, "socle", self.socle % self.rho)

    @property
    def top(self):
        return (self.socle + self.length - 1) % self.rho

    def factors(self):
        """Composition factors from the top down."""
        return [(self.socle + i) % self.rho for i in range(self.length - 1, -1, -1)]

    def shift(self, n=1):
        return TubeObj(self.rho, self.socle, self.length, self.degree + n)

    def __str__(self):
        s = f"T[s={self.socle};l={self.length}]"
        return s if self.degree == 0 else f"{s}@d{self.degree}"


_TXT = re.compile(r"^T\[s=(-?\d+);l=(\d+)\](?:@d(-?\d+))?$")


def parse_tube(text: str, rho: int) -> TubeObj:
    m = _TXT.match(text.strip())
    if not m:
        raise ValueError(f"cannot parse tube object {text!r}")
    return TubeObj(rho, int(m.group(1)), int(m.group(2)), int(m.group(3) or 0))


def tau(a: TubeObj, n=1) -> TubeObj:
    return TubeObj(a.rho, a.socle - n, a.length, a.degree)


def bound(t: TubeObj) -> int:
    """rho * ceil(l(t) / rho)."""
    return t.rho * (-(-t.length // t.rho))


def _same(a, b, degrees=True):
    if a.rho != b.rho:
        raise DifferentTube(f"{a} and {b} lie in tubes of rank {a.rho} and {b.rho}")
    if degrees and a.degree != b.degree:
        raise DifferentTube(f"{a} and {b} lie in different degrees")


def hom_offsets(a: TubeObj, b: TubeObj):
    """The k with a / rad^{l(a)-k}... : quotient of a of length l(a)-k embeds in b."""
    return [k for k in range(a.length)
            if (a.socle + k - b.socle) % a.rho == 0 and 1 <= a.length - k <= b.length]


def tube_hom_dim(a: TubeObj, b: TubeObj) -> int:
    _same(a, b)
    return len(hom_offsets(a, b))


def tube_hom_nonzero(a: TubeObj, b: TubeObj) -> bool:
    return tube_hom_dim(a, b) > 0


def tube_ext_dim(a: TubeObj, b: TubeObj) -> int:
    _same(a, b)
    return tube_hom_dim(b, tau(a))


def tube_ext_nonzero(a: TubeObj, b: TubeObj) -> bool:
    return tube_ext_dim(a, b) > 0


# ---------------------------------------------------------------- regions

def in_ray(x: TubeObj, anchor: TubeObj) -> bool:
    """Same socle: x is reached from the mouth of anchor's ray by monomorphisms."""
    _same(x, anchor, degrees=False)
    return x.socle == anchor.socle


def in_coray(x: TubeObj, anchor: TubeObj) -> bool:
    _same(x, anchor, degrees=False)
    return x.top == anchor.top


def in_wing(x: TubeObj, anchor: TubeObj) -> bool:
    _same(x, anchor, degrees=False)
    if anchor.length >= anchor.rho:
        raise InvalidSetup("wing anchors must be shorter than the rank", witness=anchor)
    off = (x.socle - anchor.socle) % x.rho
    return off + x.length <= anchor.length


@dataclass(frozen=True)
class TubeRegion:
    kind: str   # "ray" | "coray" | "wing"
    anchor: TubeObj

    def __post_init__(self):
        if self.kind not in ("ray", "coray", "wing"):
            raise ValueError(self.kind)
        if self.kind == "wing" and self.anchor.length >= self.anchor.rho:
            raise InvalidSetup("wing anchors must be shorter than the rank", witness=self.anchor)

    def __contains__(self, x):
        return {"ray": in_ray, "coray": in_coray, "wing": in_wing}[self.kind](x, self.anchor)


def wing_members(anchor: TubeObj):
    out = []
    for off in range(anchor.length):
        for ln in range(1, anchor.length - off + 1):
            out.append(TubeObj(anchor.rho, anchor.socle + off, ln, anchor.degree))
    return out


# ---------------------------------------------------------------- extensions

def ext_middle_terms(t: TubeObj, tp: TubeObj):
    """Middle term e1 + e2 of the non-split extension 0 -> tp -> E -> t -> 0.

    e1 is the shortest object of C(t) n R(tp) longer than tp, e2 the longest
    object of R(t) n C(tp) shorter than t (None when there is none).  Lengths
    add up: l(e1) + l(e2) = l(t) + l(tp).
    """
    _same(t, tp)
    rho = t.rho
    if t.length >= rho:
        raise InvalidSetup("the ending term must be shorter than the rank", witness=t)
    if not tube_ext_nonzero(t, tp):
        raise NoExtension(f"Ext^1({t}, {tp}) = 0")
    res1 = (t.top - tp.socle + 1) % rho
    l1 = tp.length + (res1 - tp.length - 1) % rho + 1
    e1 = TubeObj(rho, tp.socle, l1, t.degree)
    l2 = t.length + tp.length - l1
    e2 = TubeObj(rho, t.socle, l2, t.degree) if l2 >= 1 else None
    return e1, e2


def ext_middle_terms_literal(t: TubeObj, tp: TubeObj):
    """Variant whose e2 is the longest object of R(t) n C(tp) shorter than tp.

    Kept only to report where this reading breaks length conservation; use
    ext_middle_terms for computations.
    """
    e1, _ = ext_middle_terms(t, tp)
    rho = t.rho
    res = (tp.top - t.socle + 1) % rho or rho
    l2 = res + rho * ((tp.length - 1 - res) // rho) if res < tp.length else 0
    return e1, (TubeObj(rho, t.socle, l2, t.degree) if l2 >= 1 else None)


# ---------------------------------------------------------------- truncation chains

def _coray_distance(t, x):
    """s in [0, rho) with tau^{-s} t on the coray of x."""
    return (x.top - t.top) % t.rho


def _ray_distance(t, x):
    """s in [0, rho) with tau^{-s} t on the ray of x."""
    return (x.socle - t.socle) % t.rho


def validate_rprime(t: TubeObj, rprime):
    """Preconditions on the desuspended part Sigma^{-1} r' of a truncation."""
    rho = t.rho
    for r in rprime:
        _same(r, t)
        if r.length >= rho:
            raise InvalidSetup("summands of r' must be shorter than the rank", witness=r)
        if not tube_ext_nonzero(r, t):
            raise InvalidSetup("r' summand outside the Ext-hammock of t", witness=r)
    for i, a in enumerate(rprime):
        for b in rprime[i + 1:]:
            if a.top == b.top:
                raise InvalidSetup("two r' summands on one coray", witness=(a, b))
            if tube_hom_nonzero(a, b) or tube_hom_nonzero(b, a):
                raise InvalidSetup("Hom between r' summands", witness=(a, b))
    dist = [_coray_distance(t, r) for r in rprime]
    if any(x <= y for x, y in zip(dist, dist[1:])):
        raise InvalidSetup("r' must be ordered by decreasing coray distance", witness=dist)
    for a, b in zip(rprime, rprime[1:]):
        if not in_wing(b, a) or in_ray(b, a) or in_coray(b, a):
            raise InvalidSetup("r' summand outside the wing of its predecessor", witness=(a, b))


def v_chain(t: TubeObj, rprime, check=True):
    """Summands v'_1, ..., v'_m, v''_m of Cone(Sigma^{-1} r' -> t)."""
    if check:
        validate_rprime(t, rprime)
    if not rprime:
        return [t]
    out = []
    prev = t
    for j, r in enumerate(rprime):
        if prev is None:
            raise InvalidSetup("no room for the next r' summand", witness=r)
        if j and not tube_ext_nonzero(r, prev):
            raise InvalidSetup("r' summand does not extend the previous remainder", witness=r)
        e1, e2 = ext_middle_terms(r, prev)
        out.append(e1)
        prev = e2
    if prev is not None:
        out.append(prev)
    return out


def v1_length(t: TubeObj, r1: TubeObj) -> int:
    """Length of the longest summand v'_1, by the case formula."""
    rho = t.rho
    if r1.length >= rho or not tube_ext_nonzero(r1, t):
        raise InvalidSetup("r1 must be short and in the Ext-hammock of t", witness=r1)
    lo, hi = t.length // rho, -(-t.length // rho)
    if not tube_hom_nonzero(r1, t):
        i = (r1.socle - t.socle) % rho
        return rho * lo + r1.length + i
    k = (t.socle - r1.socle) % rho
    if k >= r1.length:
        raise InvalidSetup("coray offset out of range", witness=(t, r1))
    l = t.length % rho
    if l < r1.length:
        return rho * lo + r1.length - k
    return rho * hi + r1.length - k


def validate_r(v1: TubeObj, r):
    rho = v1.rho
    for x in r:
        _same(x, v1)
        if x.length >= rho:
            raise InvalidSetup("summands of r must be shorter than the rank", witness=x)
    for i, a in enumerate(r):
        for b in r[i + 1:]:
            if a.socle == b.socle:
                raise InvalidSetup("two r summands on one ray", witness=(a, b))
            if tube_hom_nonzero(a, b) or tube_hom_nonzero(b, a):
                raise InvalidSetup("Hom between r summands", witness=(a, b))
    dist = [_ray_distance(v1, x) for x in r]
    if any(x <= y for x, y in zip(dist, dist[1:])):
        raise InvalidSetup("r must be ordered by decreasing ray distance", witness=dist)


def _image_length(a: TubeObj, b: TubeObj) -> int:
    """Length of the image of the (unique up to scalar) map a -> b, 0 if none."""
    ks = hom_offsets(a, b)
    if len(ks) > 1:
        raise InvalidSetup("map is not unique up to scalar", witness=(a, b))
    return a.length - ks[0] if ks else 0


def w_prime_sequence(v1: TubeObj, r, check=True):
    """(w'_0 = v1, w'_1, ..., w'_p) and the kernels w''_1, ..., w''_p.

    Zero objects are None; w'_j vanishes once the images of r_1..r_j cover v1.
    """
    if check:
        validate_r(v1, r)
    rho = v1.rho
    seq, kers = [v1], []
    cut = 0
    for x in r:
        img = min(_image_length(x, v1), v1.length)
        if img > cut:
            klen = x.length - (img - cut)
            cut = img
        else:
            klen = x.length
        kers.append(TubeObj(rho, x.socle, klen, x.degree) if klen else None)
        rest = v1.length - cut
        seq.append(TubeObj(rho, v1.socle + cut, rest, v1.degree) if rest else None)
    return seq, kers


def w_chain(v1: TubeObj, r, check=True):
    """w'_p followed by the shifted kernels Sigma w''_j (zero terms dropped)."""
    seq, kers = w_prime_sequence(v1, r, check)
    head = [seq[-1]] if seq[-1] is not None else []
    return head + [k.shift(1) for k in kers if k is not None]


def compose_nonzero(a: TubeObj, b: TubeObj, c: TubeObj) -> bool:
    """Whether a -> b -> c is non-zero for the (unique up to scalar) maps, all short."""
    img = _image_length(a, b)
    if not img or not tube_hom_nonzero(b, c):
        return False
    ks = hom_offsets(b, c)
    return img > ks[0]


def validate_setup(t: TubeObj, rprime, r):
    """Both chain preconditions, plus: a map r'_i -> t factors through some r_j."""
    validate_rprime(t, rprime)
    v = v_chain(t, rprime, check=False)
    validate_r(v[0], r)
    for a in rprime:
        for b in r:
            if tube_ext_nonzero(a, b):
                raise InvalidSetup("Hom from Sigma^{-1} r' to r", witness=(a, b))
        if tube_hom_nonzero(a, t) and not any(compose_nonzero(a, b, t) for b in r):
            raise InvalidSetup("map r' -> t does not factor through r", witness=a)
    return v


def length_bound_check(t: TubeObj, rprime, r) -> bool:
    """Every summand in the tube of t_Y is at most rho * ceil(l(t)/rho) long."""
    validate_setup(t, rprime, r)
    v = v_chain(t, rprime)
    w = w_chain(v[0], r)
    tube_part = [x for x in v[1:] + w if x.degree == t.degree]
    return all(x.length <= bound(t) for x in tube_part)


def truncation_summands(t: TubeObj, rprime, r):
    """All summands of Cone(Sigma^{-1} r' + r -> t) predicted by the chains."""
    v = v_chain(t, rprime)
    return sorted(v[1:] + w_chain(v[0], r))
