import random

import pytest

from beauville_wreath import beauville as B
from beauville_wreath import quotient as Q
from beauville_wreath import wreath as W
from beauville_wreath.beauville import Word
from beauville_wreath.quotient import SmallGroup
from beauville_wreath.wreath import GroupParams, InvalidParams

P33, P55, P39, P77 = (GroupParams.from_qr(q, r) for q, r in [(3, 3), (5, 5), (3, 9), (7, 7)])


def cyclic_product(m, n):
    els = tuple((i, j) for i in range(m) for j in range(n))
    return SmallGroup(
        elements=els,
        mul=lambda a, b: ((a[0] + b[0]) % m, (a[1] + b[1]) % n),
        inv=lambda a: (-a[0] % m, -a[1] % n),
        identity=(0, 0),
        generators=((1, 0), (0, 1)),
    )


# -- structure ---------------------------------------------------------------------

def test_variant_resolution():
    assert B.resolve_variant(P55) == "short"
    assert B.resolve_variant(P39) == "long"
    assert B.resolve_variant(P39, "short") == "short"
    with pytest.raises(ValueError):
        B.resolve_variant(P55, "medium")
    with pytest.raises(InvalidParams):
        B.build_structure(P33, "long")


def test_witness_words():
    ws = B.build_structure(P55)
    x, y = W.gen_x(P55), W.gen_y(P55)
    assert ws.x2 == x * y * x
    assert ws.y2 == W.conj(x, y) * x * W.conj(x, ~y)
    assert ws.y2 == W.unit(P55, 4) * W.unit(P55, 3) * W.unit(P55, 2)
    long = B.build_structure(P39)
    assert long.y2.base == (0, 0, 1, 1, 1, 1, 1, 0, 0)
    assert long.step == 5 and ws.step == 3


def test_negative_control_three_term_word_fails_for_p3():
    ws = B.build_structure(P33, "short")
    assert not W.generates(ws.x2, ws.y2)
    G = Q.enumerate_quotient(P33)
    assert not Q.brute_generates(G, G.key(Q.project(ws.x2)), G.key(Q.project(ws.y2)))


def test_no_beauville_structure_of_order_27():
    G = Q.enumerate_quotient(P33)
    assert G.order == 27
    assert B.exhaustive_beauville_scan(G) is None


def test_scan_finds_structure_on_c5_x_c5():
    # positive control: C_5 x C_5 is a Beauville group
    G = cyclic_product(5, 5)
    found = B.exhaustive_beauville_scan(G)
    assert found is not None
    (a1, b1), (a2, b2) = found
    assert Q.brute_generates(G, a1, b1) and Q.brute_generates(G, a2, b2)
    assert B.check_dagger(B.sigma(a1, b1, G), B.sigma(a2, b2, G))


def test_scan_rejects_c3_x_c3():
    assert B.exhaustive_beauville_scan(cyclic_product(3, 3)) is None


# -- sigma sets --------------------------------------------------------------------

def test_sigma_invariant_matches_brute_in_g():
    G = Q.enumerate_group(P55)
    rng = random.Random(1)
    els = list(W.all_elements(P55))
    for _ in range(40):
        a, b = rng.choice(els), rng.choice(els)
        fast = B.sigma(a, b)
        brute = B.sigma(Q.to_code(a), Q.to_code(b), G)
        assert len(fast) == len(brute)
        assert fast.kind == "group" and brute.kind == "brute"


def test_sigma_matches_literal_definition():
    G = Q.enumerate_quotient(P33)
    for a in G.elements:
        for b in G.elements[::4]:
            assert B.sigma(a, b, G) == B.sigma_literal(a, b, G)


def test_coset_sigma_matches_brute_in_quotient():
    G = Q.enumerate_quotient(P39)
    rng = random.Random(2)
    for _ in range(20):
        a, b = rng.randrange(G.order), rng.randrange(G.order)
        ca, cb = Q.from_code(P39, a, True), Q.from_code(P39, b, True)
        assert len(B.sigma(ca, cb)) == len(B.sigma(a, b, G))


def test_dagger_predicates():
    s1 = B.SigmaSet(frozenset({0, 1, 2}), 0, "brute")
    s2 = B.SigmaSet(frozenset({0, 3}), 0, "brute")
    s3 = B.SigmaSet(frozenset({0, 2, 3}), 0, "brute")
    assert B.check_dagger(s1, s2)
    assert not B.check_dagger(s1, s3)
    assert B.check_double_dagger(s1, s3, {0, 2})
    assert not B.check_double_dagger(s1, s3, {0})


# -- reconstruction ------------------------------------------------------------------

def test_word_reduction():
    A, Bw = Word.letter("A"), Word.letter("B")
    assert (A * A.inverse()) == Word()
    assert len(A * Bw * Bw.inverse() * A) == 2
    assert str(A ** 3) == "A^3"
    assert (A * Bw).inverse() == Bw.inverse() * A.inverse()
    assert str(Word()) == "1"


@pytest.mark.parametrize("qr", [(5, 5), (5, 25), (3, 9), (7, 7), (25, 5), (9, 27)])
def test_reconstruction(qr):
    P = GroupParams.from_qr(*qr)
    rec = B.reconstruct_x(P)
    assert rec.recovers_x and rec.recovers_y
    assert all(rec.identities.values()), rec.identities
    assert rec.recipe["printed_inverse_form_holds"] is False


def test_reconstruction_requires_unit_step():
    with pytest.raises(B.StepNotCoprime):
        B.reconstruct_x(P39, "short")


# -- the lemma ----------------------------------------------------------------------

def test_lemma_passes_for_c7_wr_c7():
    rep = B.check_lemma(B.build_structure(P77))
    for name in ("generation-pair-1", "generation-pair-2", "reconstruction", "double-dagger",
                 "trace-certificate", "star-star", "coset-dagger"):
        assert rep.get(name).passed is True, name
    # the quotient has 7^7 elements: brute checks are skipped at the default budget
    assert rep.get("quotient-dagger").passed is None
    assert rep.passed  # skipped checks are not mandatory


def test_lemma_c5_wr_c5_collision_is_certified():
    rep = B.check_lemma(B.build_structure(P55))
    assert rep.get("generation-pair-1").passed and rep.get("generation-pair-2").passed
    assert rep.get("star-star").passed and rep.get("reconstruction").passed
    dd = rep.get("double-dagger")
    assert dd.passed is False
    hits = dd.details["noncentral_collisions"]
    assert all(h["verified"] for h in hits)
    assert {"left": "(y1)^1", "right": "(x2y2)^1"}.items() <= hits[0].items()
    assert hits[0]["conjugator"] == {"base": [0, 1, 3, 0, 0], "shift": 0}
    # brute force in G/Z agrees
    assert rep.get("quotient-dagger").passed is False
    assert rep.get("invariant-validation").passed is True


def test_lemma_c3_wr_c9_collision_is_certified():
    rep = B.check_lemma(B.build_structure(P39))
    assert rep.get("generation-pair-2").passed
    assert rep.get("double-dagger").passed is False
    assert all(h["verified"] for h in rep.get("double-dagger").details["noncentral_collisions"])
    assert rep.get("quotient-dagger").passed is False
    assert rep.get("quotient-generation").passed and rep.get("quotient-star").passed


def test_hypotheses_in_g_do_not_control_quotient_for_q25_r5():
    P = GroupParams.from_qr(25, 5)
    rep = B.check_lemma(B.build_structure(P), quotient_checks=False)
    assert rep.get("double-dagger").passed is True
    cd = rep.get("coset-dagger")
    assert cd.passed is False
    assert all(h["verified"] for h in cd.details["collisions"])


def test_quotient_brute_force_q25_r5():
    P = GroupParams.from_qr(25, 5)
    rep = B.oracle_report(B.build_structure(P), budget=2 * 10 ** 6)
    assert rep.get("quotient-generation").passed
    assert rep.get("quotient-dagger").passed is False


def test_quotient_brute_force_c7_wr_c7():
    rep = B.oracle_report(B.build_structure(P77), budget=10 ** 6)
    assert rep.passed


def test_oracle_agrees_with_lemma_quotient_checks():
    for P in (P55, P39):
        ws = B.build_structure(P)
        lemma = B.check_lemma(ws)
        oracle = B.oracle_report(ws)
        for name in ("quotient-generation", "quotient-dagger", "quotient-star"):
            assert lemma.get(name).passed == oracle.get(name).passed
        assert lemma.get("coset-dagger").passed == oracle.get("quotient-dagger").passed


def test_oracle_budget():
    with pytest.raises(Q.BudgetExceeded):
        B.oracle_report(B.build_structure(P77))


def test_star_in_quotient():
    for P in (P55, P39, P77):
        ws = B.build_structure(P)
        assert B.center_preserved_by_t(P)
        assert B.check_star_star(ws)
        assert B.check_star_in_quotient(ws)
