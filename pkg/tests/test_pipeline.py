import pytest
from gmpy2 import mpq

from mouldkit.lie import base_points, derivation_apply
from mouldkit.mould import CPoly, delta, ma
from mouldkit.pipeline import (CertificationError, PipelineRecord, build_E, gamma_s,
                               verify_prop221, verify_prop331, verify_roundtrip, verify_suite)
from mouldkit.ratfrac import RatFrac
from mouldkit import serialize as S


def test_record_certified(rec3, rec5):
    for rec in (rec3, rec5):
        assert rec.ok
        assert rec.M.is_polynomial()
        assert rec.m is not None


@pytest.mark.parametrize("name", ["rec3", "rec5"])
def test_lowest_depth(name, request):
    rec = request.getfixturevalue(name)
    n = rec.weight
    u1 = RatFrac.var(1, 0)
    want = u1
    for _ in range(n):
        want = want * u1
    assert rec.M[1] == want
    # m starts with C_{n+2}
    assert rec.m.terms.get((n + 2,)) == 1
    # a depth-r word of m has weight n + 1 + r
    assert all(sum(w) == n + 1 + len(w) for w in rec.m.terms)


def test_homogeneity(rec3):
    for r in rec3.M.comps:
        assert rec3.M[r].homogeneous_degree() == 4


def test_E_values(rec3):
    W = 9
    E = build_E(rec3, W)
    assert E.vb.coeff("a") == 0
    _, _, t12 = base_points(W)
    assert derivation_apply(E, t12, W).is_zero()
    assert E.va.min_weight() == 5


def test_build_E_needs_depth(rec3):
    with pytest.raises(ValueError):
        build_E(rec3, 12)


def test_prop221(rec3, rec5):
    for rec in (rec3, rec5):
        v = verify_prop221(rec, 9)
        assert v.holds, v.to_text()


def test_roundtrip(rec3):
    v = verify_roundtrip(rec3, 9)
    assert v.holds and all(d.holds for d in v.details)


def test_conjugation_identity(rec3, table5):
    v = verify_prop331(rec3, 3, table5)
    assert v.holds, v.to_text()


def test_linear_in_f(f3, table5):
    one = gamma_s(f3, 3, table5)
    two = gamma_s(CPoly({w: 2 * c for w, c in f3.f.terms.items()}), 3, table5)
    assert two.M == one.M * 2


def test_deterministic_bytes(f3, table5):
    a = S.serialize(gamma_s(f3, 4, table5))
    b = S.serialize(gamma_s(f3, 4, table5))
    assert a == b


def test_cpoly_input(table5):
    rec = gamma_s(CPoly({(3,): 1, (1, 2): -1, (2, 1): 1}), 3, table5)
    assert rec.ok and rec.weight == 3


def test_certification_failure(table5):
    with pytest.raises(CertificationError) as info:
        gamma_s(CPoly.word(3), 3, table5)
    assert info.value.witness is not None
    rec = gamma_s(CPoly.word(3), 3, table5, certify=False)
    assert not rec.ok
    assert any(not v.holds for v in rec.verdicts)


def test_inhomogeneous_input_rejected(table5):
    with pytest.raises(ValueError):
        gamma_s(CPoly({(3,): 1, (2,): 1}), 3, table5)


def test_suite_unknown():
    with pytest.raises(ValueError):
        verify_suite("nope", 3, 7)


def test_suite_small():
    out = verify_suite("prop221", 4, 8)
    assert out and all(v.holds for v in out)
    names = [v.name for v in out]
    assert any("weight 8" in n for n in names)


def test_record_to_text(rec3):
    txt = "\n".join(v.to_text() for v in rec3.verdicts)
    assert "FAIL" not in txt and txt.count("PASS") >= 6
    assert isinstance(rec3, PipelineRecord)
    assert delta(rec3.A) == rec3.M
    assert rec3.F == ma(rec3.f).with_depth(rec3.depth)
    assert rec3.F[1].homogeneous_degree() == 2
    assert mpq(1) == rec3.f.terms[(3,)]
