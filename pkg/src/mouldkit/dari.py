"""Darit, the Dari bracket, its exponential, Dgarit, the mu-dilator and Delta*.

The Lie algebra ARI_lu is extended by one generator ``a`` subject to
[Q, a] = dur(Q).  Every identity we need is linear in ``a``, so an element of
the extension is stored as ``AExt(coeff, mould)`` meaning coeff*a + mould.
"""

from math import factorial

from gmpy2 import mpq

from .flexion import _solve_by_depth, arit, inv_gari, log_ari
from .mould import (Mould, MouldError, _eff, _need_depth, dar, dar_inv, delta,
                    delta_inv, invmu, lu, mu, scale_op)
from .ratfrac import scalar


class AExt:
    """coeff * a + mould, an element of ARI extended by the generator a."""

    __slots__ = ("coeff", "mould")

    def __init__(self, coeff, mould):
        self.coeff = scalar(coeff)
        self.mould = mould

    @classmethod
    def a(cls, depth=None):
        return cls(1, Mould.zero(depth))

    def __add__(self, other):
        if isinstance(other, Mould):
            other = AExt(0, other)
        return AExt(self.coeff + other.coeff, self.mould + other.mould)

    def __neg__(self):
        return AExt(-self.coeff, -self.mould)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        return AExt(self.coeff * scalar(c), self.mould * c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, Mould):
            other = AExt(0, other)
        if not isinstance(other, AExt):
            return NotImplemented
        return self.coeff == other.coeff and self.mould == other.mould

    __hash__ = None

    def __repr__(self):
        return "AExt(%s*a + %r)" % (self.coeff, self.mould)


def lu_ext(X, Y):
    """lu bracket on ARI + Qa, using [Q, a] = dur(Q)."""
    from .mould import dur
    if isinstance(X, Mould):
        X = AExt(0, X)
    if isinstance(Y, Mould):
        Y = AExt(0, Y)
    # [x a + P, y a + Q] = [P, Q] + y [P, a] - x [Q, a]
    out = lu(X.mould, Y.mould)
    if Y.coeff:
        out = out + dur(X.mould) * Y.coeff
    if X.coeff:
        out = out - dur(Y.mould) * X.coeff
    return out


def _zero_const(P):
    return P.with_constant(0)


def darit(P, Q, depth=None):
    """Darit(P).Q = -dar(arit(N).dar^-1 Q - lu(N, dar^-1 Q)) with N = Delta^-1 P.

    On the extension, Darit(P).a = P.
    """
    if P.constant != 0:
        raise MouldError("darit needs P in ARI")
    if isinstance(Q, AExt):
        out = darit(P, Q.mould, depth)
        if Q.coeff:
            out = out + P.truncate(_eff(depth, out.depth)) * Q.coeff
        return out
    if Q.constant != 0:
        raise MouldError("darit acts on ARI (constant 0)")
    d = _eff(P.depth, Q.depth, depth)
    N = delta_inv(P).truncate(d)
    Y = dar_inv(Q).truncate(d)
    inner = arit(N, Y, d) - lu(N, Y)
    return -dar(inner).truncate(d)


def dari(P, Q, depth=None):
    return darit(P, Q, depth) - darit(Q, P, depth)


def exp_derivation(apply, X, depth):
    """exp(D).X for a depth-raising derivation given as a callable."""
    total = X
    term = X
    n = 0
    while True:
        n += 1
        term = apply(term) * mpq(1, n)
        if isinstance(term, Mould):
            if not term.comps:
                break
        elif not term.coeff and not term.mould.comps:
            break
        total = total + term
        if n > depth + 1:
            raise MouldError("derivation series did not terminate; not depth-raising")
    return total


def exp_dari(P, depth=None):
    """1 + sum_{n>=1} Darit(P)^{n-1}(P) / n!."""
    if P.constant != 0:
        raise MouldError("exp_dari needs constant term 0")
    d = _need_depth(depth, P)
    P = P.truncate(d)
    total = Mould.one(d) + P
    term = P
    n = 1
    while True:
        n += 1
        term = darit(P, term, d)
        if not term.comps:
            break
        total = total + term * mpq(1, factorial(n))
    return total


def log_dari(Q, depth=None):
    if Q.constant != 1:
        raise MouldError("log_dari needs constant term 1")
    d = _need_depth(depth, Q)
    return _solve_by_depth(Q, lambda X, r: exp_dari(X, r), d)


def dgarit_apply(P, X, depth=None, log=None):
    """Dgarit(P).X = exp(Darit(log_Dari P)).X; X is a mould in ARI or an AExt."""
    if P.constant != 1:
        raise MouldError("dgarit needs P in GARI")
    xm = X.mould if isinstance(X, AExt) else X
    d = _eff(P.depth, xm.depth, depth)
    if d is None:
        raise MouldError("dgarit needs a truncation depth")
    L = log if log is not None else log_dari(P, d)
    if isinstance(X, AExt):
        X = AExt(X.coeff, X.mould.truncate(d))
    else:
        X = X.truncate(d)
    return exp_derivation(lambda Y: darit(L, Y, d), X, d)


def dgari(P, Q, depth=None):
    """Group law transported by exp_Dari.

    Dgari(P, Q) is read off Dgarit(P) o Dgarit(Q) . a = Dgarit(P) . (a - 1 + Q),
    which by Dgarit(P) . a = a - 1 + P equals a - 1 + P + Dgarit(P) . (Q - 1).
    """
    d = _eff(P.depth, Q.depth, depth)
    rest = dgarit_apply(P, Q.with_constant(0), d)
    return P.truncate(d) + rest


def mu_dilator(P, depth=None):
    """du P = mu(invmu(P), dur(P)), where dur kills the constant term."""
    if P.constant != 1:
        raise MouldError("mu_dilator needs P in GARI")
    d = _need_depth(depth, P)
    P = P.truncate(d)
    return mu(invmu(P, d), _zero_const(scale_op("dur", P)))


def delta_star(Q, depth=None, method="formula"):
    """Delta*(Q) = 1 - dar(du inv_gari(Q)); ``method="diagram"`` computes
    exp_Dari(Delta(log_ari Q)) instead."""
    if Q.constant != 1:
        raise MouldError("delta_star needs Q in GARI")
    d = _need_depth(depth, Q)
    if method == "formula":
        inv = inv_gari(Q.truncate(d), d)
        return Mould.one(d) - dar(mu_dilator(inv, d))
    if method == "diagram":
        return exp_dari(delta(log_ari(Q.truncate(d), d)), d)
    raise MouldError("unknown method %r" % method)


__all__ = ["AExt", "lu_ext", "darit", "dari", "exp_dari", "log_dari", "dgarit_apply",
           "dgari", "mu_dilator", "delta_star", "exp_derivation"]
