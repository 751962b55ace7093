"""Flexion operators: arit, the ari bracket and its pre-Lie law, garit, gari,
the exponential and logarithm, inverses and the adjoint action.

Moulds here live on the u-alphabet.  A factorization of a sequence
u1..ur into consecutive chunks is described by chunk lengths; the flexion
marks add the letter sum of a neighbouring chunk to a boundary letter.
"""

from math import factorial

from gmpy2 import mpq

from .mould import Mould, MouldError, RatSum, _eff, _need_depth, invmu, mu

# linear forms as integer tuples ----------------------------------------


def _span(r, lo, hi):
    """The form u_{lo+1} + ... + u_{hi} (0-based half-open [lo, hi))."""
    v = [0] * r
    for t in range(lo, hi):
        v[t] = 1
    return tuple(v)


def _add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _top(d, *moulds):
    if d is not None:
        return d
    return sum(max(m.comps, default=0) for m in moulds)


def _check_u(*moulds):
    for m in moulds:
        if m.alphabet != "u":
            raise MouldError("flexion operators act on u-alphabet moulds")


def arit(P, M, depth=None):
    """arit(P).M: sum over u = abc, b nonempty, of
    M(a, c1+|b|, c2..) P(b) [c nonempty] - M(a1.., a_last+|b|, c) P(b) [a nonempty]."""
    if P.constant != 0:
        raise MouldError("arit needs P with constant term 0")
    _check_u(P, M)
    d = _eff(P.depth, M.depth, depth)
    top = _top(d, P, M)
    comps = {}
    for r in range(1, top + 1):
        s = RatSum(r, "u")
        for j in range(1, r):
            p = P.comps.get(j)
            m = M.comps.get(r - j)
            if p is None or m is None:
                continue
            for i in range(0, r - j + 1):
                k = r - j - i
                pb = p.embed(r, i)
                if k > 0:
                    imgs = [_span(r, t, t + 1) for t in range(i)]
                    imgs.append(_span(r, i, i + j + 1))
                    imgs += [_span(r, t, t + 1) for t in range(i + j + 1, r)]
                    s.add_product([m.subst(imgs, r), pb], 1)
                if i > 0:
                    imgs = [_span(r, t, t + 1) for t in range(i - 1)]
                    imgs.append(_span(r, i - 1, i + j))
                    imgs += [_span(r, t, t + 1) for t in range(i + j, r)]
                    s.add_product([m.subst(imgs, r), pb], -1)
        x = s.result()
        if x.num:
            comps[r] = x
    return Mould(comps, 0, d, "u")


def preari(P, Q, depth=None):
    """The pre-Lie law mu(P, Q) + arit(Q).P."""
    if P.constant != 0 or Q.constant != 0:
        raise MouldError("preari needs moulds in ARI (constant 0)")
    out = mu(P, Q) + arit(Q, P)
    return out.truncate(depth) if depth is not None else out


def ari(P, Q, depth=None):
    if P.constant != 0 or Q.constant != 0:
        raise MouldError("ari needs moulds in ARI (constant 0)")
    out = mu(P, Q) - mu(Q, P) + arit(Q, P, depth) - arit(P, Q, depth)
    return out.truncate(depth) if depth is not None else out


def exp_ari(P, depth=None):
    """1 + sum_n preari(..(P, P).., P) / n!, composed from the left."""
    if P.constant != 0:
        raise MouldError("exp_ari needs constant term 0")
    d = _need_depth(depth, P)
    P = P.truncate(d)
    total = Mould.one(d) + P
    term = P
    n = 1
    while True:
        n += 1
        term = preari(term, P, d)
        if not term.comps:
            break
        total = total + term * mpq(1, factorial(n))
    return total.with_depth(d)


def _solve_by_depth(target, forward, depth):
    """Find X in ARI with forward(X) = target, one depth at a time.

    ``forward`` must satisfy forward(X)_r = X_r + (terms in X_{<r})."""
    comps = {}
    for r in range(1, depth + 1):
        trial = Mould(dict(comps), 0, r)
        got = forward(trial, r)
        diff = target[r] - got[r]
        x = comps.get(r)
        x = diff if x is None else x + diff
        if x.num:
            comps[r] = x
    X = Mould(comps, 0, depth)
    return X


def log_ari(Q, depth=None):
    """Inverse of exp_ari, solved depth by depth."""
    if Q.constant != 1:
        raise MouldError("log_ari needs constant term 1")
    d = _need_depth(depth, Q)
    return _solve_by_depth(Q, lambda X, r: exp_ari(X, r), d)


def _factorizations(r):
    """Chunk layouts (a_i, b_i, c_i) of r letters: b_i nonempty, interior gaps
    c_i a_{i+1} nonempty, a_1 and c_s possibly empty."""
    out = []

    def rec(pos, segs):
        for a in range(0, r - pos):
            if segs and a == 0 and segs[-1][2] == 0:
                continue
            for b in range(1, r - pos - a + 1):
                for c in range(0, r - pos - a - b + 1):
                    seg = segs + [(a, b, c)]
                    end = pos + a + b + c
                    if end == r:
                        out.append(tuple(seg))
                    else:
                        rec(end, seg)

    rec(0, [])
    return out


_FACT_CACHE = {}


def factorizations(r):
    f = _FACT_CACHE.get(r)
    if f is None:
        f = _FACT_CACHE[r] = _factorizations(r)
    return f


def garit(P, Q, depth=None, inverse=None):
    """garit(P).Q = sum Q(|b1|..|bs|) P(a1)..P(as) invmu(P)(c1)..invmu(P)(cs),
    where |b_i| carries the letter sum of a_i on its head and of c_i on its tail."""
    if P.constant != 1:
        raise MouldError("garit needs P with constant term 1")
    _check_u(P, Q)
    d = _eff(P.depth, Q.depth, depth)
    if d is None:
        raise MouldError("garit needs a truncation depth")
    X = inverse if inverse is not None else invmu(P, d)
    comps = {}
    for r in range(1, d + 1):
        s = RatSum(r, "u")
        for layout in factorizations(r):
            nb = sum(b for _, b, _ in layout)
            q = Q.comps.get(nb)
            if q is None:
                continue
            factors = []
            imgs = []
            pos = 0
            ok = True
            for a, b, c in layout:
                if a:
                    pa = P.comps.get(a)
                    if pa is None:
                        ok = False
                        break
                    factors.append(pa.embed(r, pos))
                head = pos + a
                tail = head + b
                if c:
                    xc = X.comps.get(c)
                    if xc is None:
                        ok = False
                        break
                    factors.append(xc.embed(r, tail))
                for t in range(head, tail):
                    v = _span(r, t, t + 1)
                    if t == head and a:
                        v = _add(v, _span(r, pos, head))
                    if t == tail - 1 and c:
                        v = _add(v, _span(r, tail, tail + c))
                    imgs.append(v)
                pos = tail + c
            if not ok:
                continue
            factors.append(q.subst(imgs, r))
            s.add_product(factors)
        x = s.result()
        if x.num:
            comps[r] = x
    return Mould(comps, Q.constant, d, "u")


def gari(P, Q, depth=None):
    """Group law mu(garit(Q).P, Q)."""
    if P.constant != 1 or Q.constant != 1:
        raise MouldError("gari needs moulds in GARI (constant 1)")
    d = _eff(P.depth, Q.depth, depth)
    if d is None:
        raise MouldError("gari needs a truncation depth")
    return mu(garit(Q, P, d), Q).truncate(d)


def inv_gari(P, depth=None, method="exp"):
    """Inverse in GARI_gari.

    ``method="exp"`` uses exp_ari(-log_ari(P)); ``method="solve"`` solves
    gari(P, X) = 1 depth by depth.
    """
    if P.constant != 1:
        raise MouldError("inv_gari needs constant term 1")
    d = _need_depth(depth, P)
    if method == "exp":
        return exp_ari(-log_ari(P, d), d)
    if method != "solve":
        raise MouldError("unknown method %r" % method)
    comps = {}
    for r in range(1, d + 1):
        X = Mould(dict(comps), 1, r)
        got = gari(P.truncate(r), X, r)
        x = comps.get(r)
        x = -got[r] if x is None else x - got[r]
        if x.num:
            comps[r] = x
    return Mould(comps, 1, d, "u")


def ad_ari_log(L, F, depth=None):
    """exp(ad_ari(L)).F for L in ARI."""
    if L.constant != 0 or F.constant != 0:
        raise MouldError("ad_ari needs moulds in ARI")
    d = _eff(L.depth, F.depth, depth)
    if d is None:
        raise MouldError("Ad_ari needs a truncation depth")
    L = L.truncate(d)
    total = F.truncate(d)
    term = total
    n = 0
    while True:
        n += 1
        term = ari(L, term, d) * mpq(1, n)
        if not term.comps:
            break
        total = total + term
    return total


def ad_ari(Q, F, depth=None, log=None):
    """Adjoint action Ad_ari(Q).F = exp(ad_ari(log_ari Q)).F."""
    if Q.constant != 1:
        raise MouldError("Ad_ari needs Q in GARI")
    d = _eff(Q.depth, F.depth, depth)
    if d is None:
        raise MouldError("Ad_ari needs a truncation depth")
    L = log if log is not None else log_ari(Q, d)
    return ad_ari_log(L, F, d)


ad_ari_adjoint = ad_ari
