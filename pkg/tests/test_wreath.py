import random

import pytest
from hypothesis import given, strategies as st

from beauville_wreath import permcore as pc
from beauville_wreath import quotient as Q
from beauville_wreath import wreath as W
from beauville_wreath.wreath import GroupParams, InvalidParams, WreathElement


def elements(params):
    return st.tuples(
        st.lists(st.integers(0, params.q - 1), min_size=params.r, max_size=params.r),
        st.integers(0, params.r - 1),
    ).map(lambda t: WreathElement(params, t[0], t[1]))


P33, P55, P39, P93 = (GroupParams.from_qr(q, r) for q, r in [(3, 3), (5, 5), (3, 9), (9, 3)])


@pytest.mark.parametrize("args", [(2, 4, 4), (4, 4, 4), (3, 6, 3), (5, 5, 15), (3, 1, 3), (9, 9, 9)])
def test_invalid_params(args):
    with pytest.raises(InvalidParams):
        GroupParams(*args)


def test_param_properties():
    P = GroupParams(3, 27, 9)
    assert (P.b, P.a, P.mid, P.degree) == (3, 2, 5, 243)
    assert P.quotient_order == 27 ** 8 * 9
    assert not P33.supports_structure() and P39.supports_structure() and P55.supports_structure()


def test_generators():
    x, y = W.gen_x(P55), W.gen_y(P55)
    assert x.base == (0, 0, 1, 0, 0) and x.shift == 0
    assert y.base == (0,) * 5 and y.shift == 1
    assert W.element_order(x) == 5 and W.element_order(y) == 5
    assert W.element_order(x * y) == 25


@pytest.mark.parametrize("params", [P55, P39])
def test_conjugates_of_x_are_shifted_units(params):
    x, y = W.gen_x(params), W.gen_y(params)
    for k in range(-params.r, params.r):
        pos = (params.mid + k - 1) % params.r + 1
        assert W.conj(x, W.power(y, k)) == W.unit(params, pos)


@given(elements(P39), elements(P39), elements(P39))
def test_group_axioms(a, b, c):
    e = W.identity(P39)
    assert (a * b) * c == a * (b * c)
    assert a * ~a == e == ~a * a
    assert a ** 3 == a * a * a
    assert a ** -2 == ~(a * a)


def test_permutation_homomorphism_exhaustive():
    els = list(W.all_elements(P33))
    perms = {e: W.to_permutation(e) for e in els}
    assert len(set(perms.values())) == 81
    for a in els:
        for b in els:
            assert perms[a * b] == perms[a] * perms[b]


@given(elements(P55), elements(P55))
def test_permutation_homomorphism_random(a, b):
    assert W.to_permutation(a * b) == W.to_permutation(a) * W.to_permutation(b)
    assert W.from_permutation(W.to_permutation(a), P55) == a


def test_generators_map_to_xi_upsilon():
    assert W.to_permutation(W.gen_x(P55)) == W.xi(P55)
    assert W.to_permutation(W.gen_y(P55)) == W.upsilon(P55)


def test_from_permutation_rejects_outsiders():
    with pytest.raises(W.NotInImage):
        W.from_permutation(pc.Permutation.from_cycles(9, [(1, 2)]), P33)


@pytest.mark.parametrize("params", [P33, P55, P39, P93])
def test_relations(params):
    rel = W.verify_relations(params)
    assert rel["order"] == params.group_order
    assert W.relations_hold(params)


@pytest.mark.parametrize("params", [P33, P55, P39, P93])
def test_involution(params):
    t, X, Y = W.involution_t(params), W.xi(params), W.upsilon(params)
    assert (t * t).is_identity() and not t.is_identity()
    assert pc.conjugate(X, t) == ~X
    assert pc.conjugate(Y, t) == ~Y


@given(elements(P55), elements(P55))
def test_apply_t_is_an_automorphism(a, b):
    assert W.apply_t(a) == W.apply_t_via_permutation(a)
    assert W.apply_t(a * b) == W.apply_t(a) * W.apply_t(b)
    assert W.apply_t(W.apply_t(a)) == a


def test_center():
    G = Q.enumerate_group(P33)
    brute = {Q.from_code(P33, c, False) for c in Q.brute_center(G)}
    assert brute == set(W.center_elements(P33))
    assert all(W.is_central(z) for z in brute)


def test_conjugacy_invariant_exhaustive_c3_wr_c3():
    els = list(W.all_elements(P33))
    classes = []
    seen = set()
    for e in els:
        if e not in seen:
            orbit = W.conjugacy_orbit(e)
            seen |= orbit
            classes.append(orbit)
    assert len(classes) == 17
    label = {e: i for i, c in enumerate(classes) for e in c}
    for a in els:
        for b in els:
            assert (W.conj_invariant(a) == W.conj_invariant(b)) == (label[a] == label[b])


def test_are_conjugate_methods_agree():
    rng = random.Random(7)
    els = list(W.all_elements(P33))
    for _ in range(300):
        a, b = rng.choice(els), rng.choice(els)
        assert W.are_conjugate(a, b) == W.are_conjugate(a, b, method="oracle")
    with pytest.raises(ValueError):
        W.are_conjugate(a, b, method="guess")


@given(elements(P39), elements(P39))
def test_find_conjugator(a, g):
    b = W.conj(a, g)
    c = W.find_conjugator(a, b)
    assert W.conj(a, c) == b


def test_find_conjugator_none():
    assert W.find_conjugator(W.gen_x(P55), W.gen_y(P55)) is None


@given(elements(P55), elements(P55))
def test_element_order_matches_permutation(a, b):
    assert W.element_order(a) == pc.order(W.to_permutation(a))
    assert W.element_order(W.commutator(a, b)) == pc.order(pc.commutator(W.to_permutation(a), W.to_permutation(b)))


def test_frattini_generation_exhaustive_c3_wr_c3():
    G = Q.enumerate_group(P33)
    els = list(W.all_elements(P33))
    for a in els:
        for b in els:
            assert W.generates(a, b) == Q.brute_generates(G, Q.to_code(a), Q.to_code(b))


def test_parameter_mismatch():
    with pytest.raises(W.ParameterMismatch):
        W.multiply(W.gen_x(P33), W.gen_x(P39))
