"""Bernoulli numbers, dupal, pal and invpal."""

import hashlib
import json
import os
from functools import lru_cache
from math import comb, factorial

from gmpy2 import mpq

from .flexion import inv_gari, log_ari
from .mould import Mould, MouldError
from .ratfrac import RatFrac, RatSum


@lru_cache(maxsize=None)
def bernoulli(n):
    """B_n with B_1 = -1/2."""
    if n < 0:
        raise ValueError("bernoulli index must be >= 0")
    if n == 0:
        return mpq(1)
    if n > 1 and n % 2:
        return mpq(0)
    s = mpq(0)
    for k in range(n):
        s += comb(n + 1, k) * bernoulli(k)
    return -s / (n + 1)


def dupal_component(r):
    """(B_r / r!) (sum_j (-1)^j C(r-1, j) u_{j+1}) / (u1..ur)."""
    c = bernoulli(r) / factorial(r)
    if not c:
        return RatFrac.zero(r)
    m = {}
    for j in range(r):
        e = [0] * r
        e[j] = 1
        m[tuple(e)] = c * (-1) ** j * comb(r - 1, j)
    den = []
    for i in range(r):
        v = [0] * r
        v[i] = 1
        den.append((tuple(v), 1))
    return RatFrac.from_exponents(r, m, den)


def dupal(depth):
    return Mould({r: dupal_component(r) for r in range(1, depth + 1)}, 0, depth)


def pal(depth, du=None):
    """pal(()) = 1 and dur(pal) = mu(pal, dupal), solved depth by depth."""
    du = du if du is not None else dupal(depth)
    comps = {}
    for r in range(1, depth + 1):
        s = RatSum(r)
        for i in range(r):
            d = du.comps.get(r - i)
            if d is None:
                continue
            if i == 0:
                s.add(d)
                continue
            p = comps.get(i)
            if p is None:
                continue
            s.add_product([p.embed(r, 0), d.embed(r, i)])
        x = s.result().div_form((1,) * r)
        if x.num:
            comps[r] = x
    return Mould(comps, 1, depth)


def invpal(depth, P=None, method="exp"):
    P = P if P is not None else pal(depth)
    return inv_gari(P.truncate(depth), depth, method=method)


def _cache_dir():
    base = os.environ.get("MOULDKIT_CACHE")
    if base:
        return base
    return os.path.join(os.path.expanduser("~"), ".cache", "mouldkit")


class PalTable:
    """dupal, pal, invpal and log_ari(invpal) to a fixed depth.

    Tables are written to a JSON cache keyed by depth after first use; the
    cache only saves time, recomputation gives identical values.
    """

    KEYS = ("dupal", "pal", "invpal", "log_invpal")

    def __init__(self, depth, dupal, pal, invpal, log_invpal=None):
        self.depth = depth
        self.dupal = dupal
        self.pal = pal
        self.invpal = invpal
        self._log = log_invpal

    @property
    def log_invpal(self):
        if self._log is None:
            self._log = log_ari(self.invpal, self.depth)
        return self._log

    @classmethod
    def compute(cls, depth):
        du = dupal(depth)
        p = pal(depth, du)
        ip = invpal(depth, p)
        return cls(depth, du, p, ip)

    @classmethod
    def load(cls, depth, cache=True, cache_dir=None):
        if depth < 1:
            raise MouldError("depth must be >= 1")
        if not cache:
            return cls.compute(depth)
        from . import serialize
        path = os.path.join(cache_dir or _cache_dir(), "pal-%d.json" % depth)
        if os.path.exists(path):
            try:
                with open(path) as fh:
                    doc = json.load(fh)
                return cls.from_document(doc)
            except (OSError, ValueError, KeyError, serialize.FormatError):
                pass
        table = cls.compute(depth)
        table.log_invpal
        try:
            os.makedirs(os.path.dirname(path), exist_ok=True)
            tmp = path + ".%d.tmp" % os.getpid()
            with open(tmp, "w") as fh:
                fh.write(serialize.dumps(table.to_document()))
            os.replace(tmp, path)
        except OSError:
            pass
        return table

    def to_document(self):
        from . import serialize
        doc = {"kind": "paltable", "depth": self.depth}
        for k in self.KEYS:
            doc[k] = serialize.mould_to_doc(getattr(self, k))
        body = serialize.dumps(doc)
        doc["digest"] = hashlib.sha256(body.encode()).hexdigest()
        return doc

    @classmethod
    def from_document(cls, doc):
        from . import serialize
        if doc.get("kind") != "paltable":
            raise serialize.FormatError("not a pal table")
        digest = doc.pop("digest", None)
        if digest is not None:
            body = serialize.dumps(doc)
            if hashlib.sha256(body.encode()).hexdigest() != digest:
                raise serialize.FormatError("pal table digest mismatch")
        ms = {k: serialize.mould_from_doc(doc[k]) for k in cls.KEYS}
        return cls(doc["depth"], ms["dupal"], ms["pal"], ms["invpal"], ms["log_invpal"])
