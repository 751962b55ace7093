import pytest
from gmpy2 import mpq

from mouldkit.lie import NCSeries, bracket, substitute, to_cpoly
from mouldkit.mould import (CPoly, Mould, MouldError, b_mould, dar, delta, delta_inv, dur,
                            invmu, lu, ma, ma_inv, mould_partner, mu, push, scale_op,
                            swap)
from mouldkit.ratfrac import RatFrac
from mouldkit.randmould import random_mould

from helpers import generic_mould, random_cpoly, random_lie

B0, B1, B2 = b_mould(0), b_mould(1), b_mould(2)
C = CPoly.word


def u(r, *exps, c=1):
    return RatFrac.monomial(exps, c)


def test_mu_examples():
    assert mu(B0, B0)[2] == 1
    P = random_mould(1, 3)
    assert mu(P, Mould.one()) == P
    assert mu(ma(C(1)), ma(C(2)))[2] == ma(C(1, 2))[2] == -u(2, 0, 1)


def test_mu_alphabet_mismatch():
    with pytest.raises(MouldError):
        mu(B0, b_mould(0, "v"))


def test_mu_truncation_is_min():
    assert mu(random_mould(1, 3), random_mould(2, 2)).depth == 2


def test_invmu():
    assert invmu(Mould.one(4)) == Mould.one(4)
    P = (B0 + Mould.one()).with_depth(4)
    Q = invmu(P)
    assert Q[1] == -1 and Q[2] == 1
    assert mu(P, Q) == Mould.one(4)
    G = random_mould(3, 4, constant=1)
    assert invmu(invmu(G)) == G
    with pytest.raises(MouldError):
        invmu(random_mould(3, 2))


def test_lu():
    assert lu(B0, B1)[2] == u(2, 0, 1) - u(2, 1, 0)
    P = random_mould(4, 3)
    assert lu(P, P) == Mould.zero(3)
    Q, S = random_mould(5, 3), random_mould(6, 3)
    assert lu(P, lu(Q, S)) + lu(Q, lu(S, P)) + lu(S, lu(P, Q)) == Mould.zero(3)


def test_mu_associative():
    P, Q, S = (random_mould(s, 3, constant=c) for s, c in ((7, 1), (8, 0), (9, 2)))
    assert mu(mu(P, Q), S) == mu(P, mu(Q, S))


def test_scale_ops():
    assert delta(B0)[1] == u(1, 2)
    assert delta_inv(B0) == b_mould(-2)
    assert dur(ma(C(2)))[1] == -u(1, 2)
    from mouldkit.lie import c_letter
    assert to_cpoly(bracket(c_letter(2), NCSeries.gen("a"))) == -C(3)
    assert ma(-C(3))[1] == -u(1, 2)
    P = random_mould(10, 4, constant=3)
    for kind in ("dar", "dur", "delta"):
        Q = scale_op(kind, P)
        assert Q.constant == 3
        assert scale_op(kind + "_inv", Q) == P
    assert dar(dur(P)) == dur(dar(P)) == delta(P)


def test_dur_is_bracket_with_a():
    # ma([p, a]) = dur(ma(p)) on Lie polynomials
    a = NCSeries.gen("a")
    for seed in range(5):
        p = random_lie(seed)
        lhs = ma(to_cpoly(bracket(p, a)))
        assert lhs == dur(ma(to_cpoly(p)))


def test_dar_is_substitution():
    # dar(ma(p)) = ma(p with b -> [b, a])
    a, b = NCSeries.gen("a"), NCSeries.gen("b")
    for seed in range(5):
        p = random_lie(seed)
        q = substitute(p, {"a": a, "b": bracket(b, a)}, 12)
        assert ma(to_cpoly(q)) == dar(ma(to_cpoly(p)))


def test_scale_linearity():
    P, Q = random_mould(11, 3), random_mould(12, 3, rational=True)
    for op in (dar, dur, delta, push, swap):
        assert op(P + Q * 3) == op(P) + op(Q) * 3


def test_push():
    assert push(B2) == B2
    assert push(B1)[1] == -u(1, 1)
    for r in range(1, 5):
        P = Mould.concentrated(r, random_mould(13, r, rational=True)[r])
        Q = P
        for _ in range(r + 1):
            Q = push(Q)
        assert Q == P
    with pytest.raises(MouldError):
        push(swap(B2))


def test_swap():
    S = swap(ma(C(1, 2)))
    v = lambda *e: RatFrac.monomial(e, 1, "v")
    assert S.alphabet == "v" and S[2] == v(0, 1) - v(1, 0)
    assert swap(B2)[1] == v(2)
    P = random_mould(14, 4, rational=True)
    assert swap(swap(P)) == P


def test_ma_examples():
    assert ma(C(3))[1] == u(1, 2)
    assert ma(C(1, 2))[2] == -u(2, 0, 1)
    assert ma(C(1).bracket(C(2)))[2] == u(2, 1, 0) - u(2, 0, 1)
    for seed in range(5):
        p = random_cpoly(seed)
        assert ma_inv(ma(p)) == p
    with pytest.raises(MouldError):
        ma_inv(b_mould(-2))


def test_ma_is_multiplicative():
    for seed in range(6):
        f, g = random_cpoly(seed, 3), random_cpoly(seed + 50, 3)
        assert ma(f * g) == mu(ma(f), ma(g))


def test_mould_partner():
    assert mould_partner(B0) == Mould.zero()
    assert mould_partner(B2)[2] == u(2, 1, 0) - u(2, 0, 1)
    from mouldkit.lie import c_letter, poly_partner
    for k in (3, 5):
        assert mould_partner(ma(C(k))) == ma(to_cpoly(poly_partner(c_letter(k))))


def test_b_moulds():
    assert B0[1] == 1 and B0 == ma(C(1))
    assert B1 == ma(to_cpoly(bracket(NCSeries.gen("b"), NCSeries.gen("a"))))
    assert b_mould(-2) == delta_inv(B0)
    assert b_mould(-2)[1](mpq(2)) == mpq(1, 4)


def test_equality_respects_truncation():
    P = generic_mould(1, 3)
    Q = P + Mould.concentrated(4, RatFrac.monomial((1, 0, 0, 0))).with_depth(4)
    assert Q.depth == 3 and P == Q
    assert P.first_difference(P * 2)[0] == 1
