import pytest
from gmpy2 import mpq

from mouldkit.dari import (AExt, dari, darit, delta_star, dgari, dgarit_apply, exp_dari,
                           log_dari, lu_ext, mu_dilator)
from mouldkit.flexion import ari, gari
from mouldkit.lie import base_points
from mouldkit.mould import Mould, MouldError, b_mould, dar, delta, dur, lu, mu
from mouldkit.pipeline import ma_ext
from mouldkit.ratfrac import RatFrac
from mouldkit.randmould import random_mould

from helpers import generic_mould

B0, B1, B2 = b_mould(0), b_mould(1), b_mould(2)


def test_darit_kills_B1():
    for seed in range(10):
        P = random_mould(seed, 4, rational=seed % 2 == 1)
        assert darit(P, B1.with_depth(4)) == Mould.zero(4)


def test_darit_B2_B0():
    assert darit(B2, B0.with_depth(2))[2] == RatFrac.var(2, 0) - RatFrac.var(2, 1)


def test_darit_B0_closed_form():
    for seed in range(5):
        P = generic_mould(seed, 4)
        X = darit(P, B0.with_depth(4))
        for r in range(2, 5):
            x = P[r - 1]
            assert X[r] == (x.embed(r, 0) - x.embed(r, 1)).div_form((1,) * r)


def test_darit_polynomial_iff_push_invariant():
    assert darit(B2, B0.with_depth(3)).is_polynomial()
    assert not darit(B1, B0.with_depth(3)).is_polynomial()


def test_darit_is_lu_derivation():
    P, Q, S = generic_mould(1), generic_mould(2), generic_mould(3)
    assert darit(P, lu(Q, S)) == lu(darit(P, Q), S) + lu(Q, darit(P, S))


def test_darit_respects_extension():
    P, Q = generic_mould(4), generic_mould(5)
    a = AExt.a(3)
    assert darit(P, a) == P
    lhs = darit(P, lu_ext(Q, a))
    rhs = lu_ext(darit(P, Q), a) + lu_ext(Q, darit(P, a))
    assert lhs == rhs
    assert lu_ext(Q, a) == dur(Q)


def test_dari_bracket():
    P, Q, S = generic_mould(6), generic_mould(7), generic_mould(8)
    assert dari(P, P) == Mould.zero(3)
    assert delta(ari(P, Q)) == dari(delta(P), delta(Q))
    dP, dQ, dS = delta(P), delta(Q), delta(S)
    assert dari(dP, dari(dQ, dS)) + dari(dQ, dari(dS, dP)) + dari(dS, dari(dP, dQ)) == \
        Mould.zero(3)


def test_exp_log_dari():
    assert exp_dari(Mould.zero(4)) == Mould.one(4)
    P = generic_mould(9, 4)
    E = exp_dari(P)
    assert E[1] == P[1]
    assert log_dari(E) == P
    with pytest.raises(MouldError):
        exp_dari(Mould.one(2))


def test_exp_derivation_on_a():
    P = generic_mould(10, 4)
    E = exp_dari(P)
    got = dgarit_apply(E, AExt.a(4))
    assert got == AExt(1, E - Mould.one(4))


def test_dgarit():
    Q = generic_mould(11, 4)
    assert dgarit_apply(Mould.one(4), Q) == Q
    P = exp_dari(generic_mould(12, 4))
    assert dgarit_apply(P, B1.with_depth(4)) == B1
    with pytest.raises(MouldError):
        dgarit_apply(Q, B1)


def test_delta_star_is_group_map():
    P = generic_mould(13, 3, constant=1)
    Q = generic_mould(14, 3, constant=1)
    assert delta_star(gari(P, Q)) == dgari(delta_star(P), delta_star(Q))


def test_dgari_group_law():
    x, y = generic_mould(7), generic_mould(8)
    P, Q, S = exp_dari(x), exp_dari(y), exp_dari(generic_mould(16))
    assert dgari(P, Q)[1] == P[1] + Q[1]
    Z = log_dari(dgari(P, Q))
    assert Z[2] == (x + y + dari(x, y) * mpq(1, 2))[2]
    assert dgari(dgari(P, Q), S) == dgari(P, dgari(Q, S))
    assert dgari(P, Mould.one(3)) == P and dgari(Mould.one(3), Q) == Q


def test_darit_is_lie_morphism():
    x, y, z = generic_mould(17), generic_mould(18), generic_mould(19)
    assert darit(x, darit(y, z)) - darit(y, darit(x, z)) == darit(dari(x, y), z)


def test_mu_dilator():
    assert mu_dilator(Mould.one(3)) == Mould.zero(3)
    P = generic_mould(15, 4, constant=1)
    assert mu(P, mu_dilator(P)) == dur(P).with_constant(0)


def test_mu_dilator_pal(table5):
    assert mu_dilator(table5.pal) == table5.dupal


def test_delta_star(table5):
    assert delta_star(Mould.one(3)) == Mould.one(3)
    ip = table5.invpal
    d1 = delta_star(ip)
    assert d1[1] == RatFrac.var(1, 0) * mpq(1, 2)
    assert d1 == delta_star(ip, method="diagram")
    assert d1 == Mould.one(5) - dar(table5.dupal)
    _, t02, _ = base_points(6)
    e = ma_ext(t02)
    assert e.coeff == 1
    assert d1 - Mould.one(5) == e.mould.truncate(5)


def test_dgarit_delta_star_on_a(table5):
    ds = delta_star(table5.invpal.truncate(4), 4)
    _, t02, _ = base_points(6)
    e = ma_ext(t02)
    assert dgarit_apply(ds, AExt.a(4)) == AExt(1, e.mould.truncate(4))
