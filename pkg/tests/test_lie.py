import pytest
from gmpy2 import mpq

from mouldkit.lie import (A, B, NCSeries, NotLieError, base_points, ber_series, bracket,
                          c_letter, derivation_apply, derivation_bracket, epsilon_2i,
                          extend_from_t02, from_cpoly, from_lyndon, ihara_bracket, is_lie,
                          lie_normal_form, lyndon_words, ma_ab, partner_derivation,
                          poly_partner, to_cpoly)
from mouldkit.mould import CPoly, b_mould, ma, mould_partner, push
from mouldkit.symmetries import check, is_push_invariant

from helpers import random_lie


def S(d, W=None):
    return NCSeries(d, W)


def br(x, y):
    return bracket(x, y)


def test_lie_normal_form():
    coords, res = lie_normal_form(S({"ab": 1, "ba": -1}))
    assert coords == {"ab": 1} and res.is_zero()
    assert not is_lie(S({"ab": 1, "ba": 1}))
    for seed in range(6):
        p = random_lie(seed, weights=(2, 3, 4, 5, 6), terms=4)
        coords, res = lie_normal_form(p)
        assert res.is_zero()
        assert from_lyndon(coords) == p


def test_lyndon_counts():
    # necklace counts for two letters
    assert [len(lyndon_words(n)) for n in range(1, 8)] == [2, 1, 2, 3, 6, 9, 18]


def test_ber_series():
    t02 = ber_series(-1, 5)
    ba = br(B, A)
    want = A + ba * mpq(1, 2) + br(B, ba) * mpq(1, 12) - br(B, br(B, br(B, ba))) * mpq(1, 720)
    assert t02 == want.truncate(5)
    assert t02.part(1) == A
    assert ber_series(1, 5).part(1) == A * -1
    with pytest.raises(ValueError):
        ber_series(0, 3)


def test_base_points():
    W = 9
    t01, t02, t12 = base_points(W)
    assert t12 == S({"ab": 1, "ba": -1})
    assert t02.part(2) == br(B, A) * mpq(1, 2)
    assert t01 + t02 == br(B, A).with_W(W)
    assert (t01 + t02 + t12).is_zero()


def test_poly_partner():
    assert poly_partner(B).is_zero()
    p = poly_partner(c_letter(3))
    assert p == S({"bab": 2, "bba": -1, "abb": -1})
    assert p == br(c_letter(1), c_letter(2))
    assert ma_ab(p) == mould_partner(b_mould(2))
    # the partner of a non-push-invariant element need not be Lie
    assert poly_partner(br(A, B)) == S({"bb": 1})


def test_poly_partner_matches_mould_partner():
    # push-invariant polynomial inputs: the ds elements and the C_{odd}
    from mouldkit.ds import solve_ds
    for p in [c_letter(5), c_letter(7), from_cpoly(solve_ds(3)[0].f)]:
        M = ma_ab(p)
        assert is_push_invariant(M).ok or len(p.terms) > 0
        if is_push_invariant(M).ok:
            assert ma_ab(poly_partner(p)) == mould_partner(M)


def test_derivation_apply():
    W = 10
    _, t02, t12 = base_points(W)
    e0 = epsilon_2i(0, W)
    assert derivation_apply(e0, t02, W) == B.with_W(W)
    x, y = random_lie(1), random_lie(2)
    D = partner_derivation(c_letter(3, W))
    assert D(x + y, W) == D(x, W) + D(y, W)
    for i in range(3):
        assert derivation_apply(epsilon_2i(i, W), t12, W).is_zero()


def test_derivation_bracket_and_ihara():
    D = epsilon_2i(1, 8)
    assert derivation_bracket(D, D, 8).is_zero()
    assert ihara_bracket(c_letter(1), c_letter(3)).is_zero()
    with pytest.raises(NotLieError):
        ihara_bracket(S({"ab": 1}), c_letter(3))
    f, g = random_lie(3, (2, 3)), random_lie(4, (2, 3))
    assert ihara_bracket(f, g) == -ihara_bracket(g, f)


def test_ma_vs_ihara_sign():
    from mouldkit.flexion import ari
    for seed in range(3):
        f, g = random_lie(seed + 30, (2, 3)), random_lie(seed + 40, (2, 3))
        assert ma_ab(ihara_bracket(f, g)) == -ari(ma_ab(f), ma_ab(g))


def test_c_alphabet_roundtrip():
    for seed in range(5):
        p = random_lie(seed, (2, 3, 4, 5))
        assert from_cpoly(to_cpoly(p)) == p
    with pytest.raises(NotLieError):
        to_cpoly(A)


def test_extend_from_t02_simple():
    W = 8
    assert extend_from_t02(S({}, W), W).is_zero()
    e0 = extend_from_t02(B.with_W(W), W)
    assert e0.va == B.with_W(W) and e0.vb.is_zero()
    with pytest.raises(ValueError):
        extend_from_t02(A, W)


def test_extend_from_t02_roundtrip():
    W = 10
    _, t02, _ = base_points(W)
    for i in (0, 1, 2):
        E = epsilon_2i(i, W)
        D = extend_from_t02(derivation_apply(E, t02, W), W)
        assert D.va == E.va.truncate(W)
        assert D.vb == E.vb.truncate(W)


def test_epsilons_in_dsell():
    for i in range(3):
        M = ma(CPoly.word(2 * i + 1)).with_depth(3)
        assert check(M, "dsell").ok
        assert epsilon_2i(i, 10).check_no_linear_a()


def test_partner_derivation_from_record(rec3):
    # a derivation killing [a, b] has push-invariant ma(D(a)) and ma(D(b)) = its partner
    W = 9
    m = rec3.m_series(W)
    D = partner_derivation(m)
    _, _, t12 = base_points(W)
    assert derivation_apply(D, t12, W).is_zero()
    Ma = ma_ab(D.va)
    assert push(Ma) == Ma
    depth = W - rec3.weight - 1
    assert ma_ab(D.vb).truncate(depth + 1) == mould_partner(Ma.truncate(depth))
