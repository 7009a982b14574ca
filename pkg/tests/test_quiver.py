import pytest

from oracles import roots_bruteforce
from taverager.errors import (
    BoundaryUndefined,
    NotComparableDomain,
    UnsupportedPreset,
    WindowTooSmall,
)
from taverager.quiver import (
    Mod,
    NonReg,
    Obj,
    Tub,
    build_window,
    leq,
    make_preset,
    parse_id,
    sigma,
    tau,
)


@pytest.mark.parametrize("name,count", [("A1", 1), ("A2", 3), ("A3", 6), ("A5", 15),
                                        ("D4", 12), ("D5", 20), ("E6", 36)])
def test_root_counts_match_tits_form_enumeration(name, count):
    p = make_preset(name)
    assert len(p.roots) == count
    assert sorted(p.roots) == sorted(roots_bruteforce(p))


def test_bad_presets():
    for bad in ("A0", "D3", "E9", "Q4", "Atilde(1,1)"):
        with pytest.raises(UnsupportedPreset):
            make_preset(bad)
    with pytest.raises(UnsupportedPreset):
        make_preset("A3", [(1, 2), (3, 1)])


def test_default_orientation_makes_vertex_one_a_sink():
    p = make_preset("A3")
    assert all(a != 1 for a, _ in p.arrows)
    assert p.dim_P(1) == (1, 0, 0)
    assert p.dim_P(3) == (1, 1, 1)


def test_window_counts_and_meshes():
    p = make_preset("A2")
    w = build_window(p, -2, 2)
    assert w.count() == 15
    # every vertex with a translate inside the window carries a mesh
    assert all(m.end in w and m.start in w for m in w.meshes)
    with pytest.raises(WindowTooSmall):
        build_window(p, 0, 0)


def test_tau_and_sigma_on_a2():
    p = make_preset("A2")
    w = build_window(p, -1, 1)
    S1, S2, P2 = (parse_id(s, p) for s in ("S(1)", "S(2)", "P(2)"))
    # arrows 2 -> 1: P(1) = S(1) simple projective, I(2) = S(2) simple injective
    assert tau(w, S2) == S1
    assert tau(w, P2) == Mod(S2.dv, -1)
    assert sigma(w, S1) == S1.shift(1)
    with pytest.raises(BoundaryUndefined):
        sigma(w, S1.shift(1))
    with pytest.raises(BoundaryUndefined):
        tau(w, Mod(S1.dv, -1))


def test_leq_follows_arrows():
    p = make_preset("A2")
    w = build_window(p, -1, 1)
    S1, S2, P2 = (parse_id(s, p) for s in ("S(1)", "S(2)", "P(2)"))
    assert leq(w, S1, P2) and leq(w, P2, S2) and leq(w, S1, S2)
    assert not leq(w, S2, S1)
    assert leq(w, S2, S1.shift(1))


def test_parse_round_trip():
    p = make_preset("D4")
    for r in p.roots:
        x = Mod(r, -1)
        assert parse_id(str(x)) == x
    t = Tub("λ0", 1, 3, 2)
    assert parse_id(str(t)) == t
    n = NonReg("I", 2, 5, -1)
    assert parse_id(str(n)) == n
    with pytest.raises(ValueError):
        parse_id("S(9)", make_preset("A3"))


def test_obj_is_canonical_multiset():
    a, b = Mod((1, 0), 0), Mod((0, 1), 1)
    assert Obj([b, a]) == Obj([a, b])
    assert Obj([a, a]).count(a) == 2
    assert str(Obj()) == "0"
    assert Obj.of(a).shift(1) == Obj.of(Mod((1, 0), 1))


def test_extended_window_regular_objects_are_unordered():
    p = make_preset("Atilde(2,2)")
    w = build_window(p, 0, 1, caps={"k": 6, "l": 3})
    t = Tub("λ0", 0, 1, 0)
    n = NonReg("P", 0, 0, 0)
    assert t in w and n in w
    with pytest.raises(NotComparableDomain):
        leq(w, t, n)
    assert tau(w, Tub("λ0", 0, 2, 0)) == Tub("λ0", 1, 2, 0)
    assert leq(w, NonReg("P", 0, 0, 0), NonReg("P", 0, 2, 0))
