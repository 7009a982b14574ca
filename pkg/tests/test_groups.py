import pytest

from taverager.aisles import VALIDATED, make_tstructure, window_ids
from taverager.errors import NotASymmetry, OrderCapExceeded
from taverager.groups import (
    GroupAction,
    act,
    average_aisle_over_group,
    check_preservation,
    from_vertex_permutation,
    group_elements,
    is_invariant,
    validate_action,
)
from taverager.quiver import Mod, build_window, make_preset, parse_id

SWAP = {1: 3, 3: 1}


@pytest.fixture(scope="module")
def a3sym():
    p = make_preset("A3", [(1, 2), (3, 2)])
    return p, build_window(p, -1, 1)


@pytest.fixture(scope="module")
def a5():
    p = make_preset("A5", [(1, 2), (2, 3), (5, 4), (4, 3)])
    w = build_window(p, -1, 1)
    return p, w, from_vertex_permutation(w, {1: 5, 5: 1, 2: 4, 4: 2})


def test_swap_is_valid_of_order_two(a3sym):
    p, w = a3sym
    g = from_vertex_permutation(w, SWAP)
    assert validate_action(g, w) == {"valid": True, "order": 2}


def test_identity_has_order_one(a3sym):
    p, w = a3sym
    g = from_vertex_permutation(w, {})
    assert validate_action(g, w)["order"] == 1


def test_non_symmetries_are_rejected(a3sym):
    p, w = a3sym
    with pytest.raises(NotASymmetry):
        from_vertex_permutation(w, {1: 2, 2: 1})
    ids = window_ids(w)
    shifted = {x: x.shift(1) if x.deg < w.d_hi else x.shift(-2) for x in ids}
    with pytest.raises(NotASymmetry):
        validate_action(GroupAction([shifted]), w)
    partial = dict(list(from_vertex_permutation(w, SWAP).generators[0].items())[1:])
    with pytest.raises(NotASymmetry):
        validate_action(GroupAction([partial]), w)


def test_order_cap(a3sym):
    p, w = a3sym
    with pytest.raises(OrderCapExceeded):
        group_elements(from_vertex_permutation(w, SWAP), cap=1)


def test_standard_structure_is_invariant(a3sym):
    p, w = a3sym
    g = from_vertex_permutation(w, SWAP)
    std = make_tstructure("std", w, [Mod(dv, 0) for dv in p.roots])
    avg, rep = average_aisle_over_group(std, g)
    assert avg is std and rep["orbit"] == 1 and rep["invariant"]


def test_closure_is_equivariant(a3sym):
    p, w = a3sym
    g = from_vertex_permutation(w, SWAP)
    perm = g.generators[0]
    for gen in ["S(1)", "P(1)", "S(2)"]:
        x = parse_id(gen, p)
        ts = make_tstructure("t", w, [x])
        assert act(perm, ts, g).aisle == frozenset(perm[y] for y in ts.aisle)


def _orbit_union(ts, g):
    gens = set()
    for e in group_elements(g):
        gens |= {g.apply(e, x) for x in ts.aisle}
    return make_tstructure("u", ts.window, sorted(gens, key=str)).aisle


@pytest.mark.parametrize("gen", ["S(1)", "P(1)", "S(3)"])
def test_average_is_smallest_invariant_aisle_above_orbit(a3sym, gen):
    p, w = a3sym
    g = from_vertex_permutation(w, SWAP)
    ts = make_tstructure(gen, w, [parse_id(gen, p)], sigma_stable=True)
    avg, rep = average_aisle_over_group(ts, g)
    assert rep["status"] == VALIDATED and rep["invariant"]
    assert avg.aisle == _orbit_union(ts, g)
    check_preservation([ts], avg)


def test_a5_reflection_average(a5):
    p, w, g = a5
    assert validate_action(g, w)["order"] == 2
    left = make_tstructure("left", w, [parse_id("S(1)", p)], sigma_stable=True)
    avg, rep = average_aisle_over_group(left, g)
    assert rep["status"] == VALIDATED and rep["invariant"] and rep["orbit"] == 2
    assert check_preservation([left], avg)["averaged"]["stable"]
    top = make_tstructure("top", w, [parse_id("P(1)", p), parse_id("S(2)", p)])
    avg2, rep2 = average_aisle_over_group(top, g)
    assert rep2["status"] == VALIDATED and is_invariant(avg2, g)
    assert top.aisle <= avg2.aisle
    check_preservation([top], avg2)
