import json
import os

import pytest
from gmpy2 import mpq

from mouldkit.flexion import exp_ari, gari, log_ari
from mouldkit.mould import Mould, dur, mu
from mouldkit.pal import PalTable, bernoulli, dupal, dupal_component, invpal, pal
from mouldkit.ratfrac import RatFrac


def test_bernoulli():
    assert bernoulli(0) == 1
    assert bernoulli(1) == mpq(-1, 2)
    assert bernoulli(2) == mpq(1, 6)
    assert bernoulli(3) == 0
    assert bernoulli(12) == mpq(-691, 2730)
    with pytest.raises(ValueError):
        bernoulli(-1)


def test_dupal_low_depths():
    D = dupal(3)
    assert D[1] == mpq(-1, 2)
    u = RatFrac.var
    assert D[2] == (u(2, 0) - u(2, 1)).div_form((1, 0)).div_form((0, 1)) * mpq(1, 12)
    assert D[3].is_zero()


def test_dupal_structure():
    for r in range(1, 7):
        x = dupal_component(r)
        if x.num and r > 1:
            assert x.homogeneous_degree() == 1 - r
            assert sorted(x.den) == sorted((tuple(int(i == j) for j in range(r)), 1)
                                           for i in range(r))


def test_pal_low_depths():
    P = pal(3)
    u1, u2 = RatFrac.var(2, 0), RatFrac.var(2, 1)
    assert P[1] == RatFrac.const(1, mpq(-1, 2)).div_form((1,))
    want = (u1 + u2 * 2).div_form((1, 0)).div_form((0, 1)).div_form((1, 1)) * mpq(1, 12)
    assert P[2] == want
    for r in range(1, 4):
        assert P[r].homogeneous_degree() == -r


def test_pal_defining_identity(table6):
    assert dur(table6.pal).with_constant(0) == mu(table6.pal, table6.dupal)


def test_invpal(table5):
    ip = table5.invpal
    assert ip[1] == RatFrac.const(1, mpq(1, 2)).div_form((1,))
    assert gari(table5.pal, ip) == Mould.one(5)
    assert ip == exp_ari(-log_ari(table5.pal))


def test_invpal_two_methods():
    assert invpal(4) == invpal(4, method="solve")


def test_cache_roundtrip(tmp_path):
    t = PalTable.load(3, cache_dir=str(tmp_path))
    path = tmp_path / "pal-3.json"
    assert path.exists()
    again = PalTable.load(3, cache_dir=str(tmp_path))
    for k in PalTable.KEYS:
        assert getattr(again, k) == getattr(t, k)
    # a tampered cache is ignored and rebuilt
    doc = json.loads(path.read_text())
    doc["pal"]["constant"] = "2"
    path.write_text(json.dumps(doc))
    fixed = PalTable.load(3, cache_dir=str(tmp_path))
    assert fixed.pal.constant == 1
    assert os.listdir(tmp_path) == ["pal-3.json"]
