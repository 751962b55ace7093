"""Pure-Python sparse polynomial kernels.

Polynomials are plain dicts mapping a packed exponent key to a nonzero
``gmpy2.mpq`` coefficient.  Variable ``i`` (0-based) occupies bits
``[WIDTH*i, WIDTH*(i+1))`` of the key, so multiplying monomials is integer
addition and moving a polynomial to later variables is a left shift.

This module is the reference backend.  ``_kernel.pyx`` implements the same
functions in Cython and is preferred when it is importable.
"""

from gmpy2 import mpq

NAME = "python"
WIDTH = 10
MASK = (1 << WIDTH) - 1
MAX_EXP = MASK

# evaluation coordinates for the vanishing pre-check in div_linear
_PROBE = (3, 7, 11, 19, 23, 31, 43, 47, 59, 67, 71, 79, 83, 103, 107, 127)


def pack(exps):
    key = 0
    for i, e in enumerate(exps):
        if e < 0 or e > MAX_EXP:
            raise OverflowError("exponent %d out of range" % e)
        key |= e << (WIDTH * i)
    return key


def unpack(key, n):
    return tuple((key >> (WIDTH * i)) & MASK for i in range(n))


def key_degree(key):
    d = 0
    while key:
        d += key & MASK
        key >>= WIDTH
    return d


def maxdeg(p):
    return max((key_degree(k) for k in p), default=0)


def prune(d):
    return {k: c for k, c in d.items() if c}


def mul(p, q):
    if not p or not q:
        return {}
    if maxdeg(p) + maxdeg(q) > MAX_EXP:
        raise OverflowError("product degree exceeds packed width")
    if len(p) > len(q):
        p, q = q, p
    out = {}
    get = out.get
    qi = list(q.items())
    for k1, c1 in p.items():
        for k2, c2 in qi:
            k = k1 + k2
            out[k] = get(k, 0) + c1 * c2
    return {k: c for k, c in out.items() if c}


def addmul(acc, p, c):
    """acc += c * p, in place; zeros are left for the caller to prune."""
    get = acc.get
    if c == 1:
        for k, v in p.items():
            acc[k] = get(k, 0) + v
    else:
        for k, v in p.items():
            acc[k] = get(k, 0) + c * v


def scale(p, c):
    if not c:
        return {}
    return {k: c * v for k, v in p.items()}


def shift(p, offset):
    if not offset:
        return dict(p)
    s = WIDTH * offset
    return {k << s: c for k, c in p.items()}


def mul_monomial(p, key, c=1):
    return {k + key: c * v for k, v in p.items()}


def linear_poly(form):
    """Dict polynomial of the linear form sum(form[i] * u_i)."""
    return {1 << (WIDTH * i): mpq(c) for i, c in enumerate(form) if c}


def mul_linear(p, form):
    return mul(p, linear_poly(form))


def evaluate(p, point):
    n = len(point)
    pows = [[mpq(1)] for _ in range(n)]
    total = mpq(0)
    for key, c in p.items():
        t = c
        i = 0
        while key:
            e = key & MASK
            if e:
                pw = pows[i]
                while len(pw) <= e:
                    pw.append(pw[-1] * point[i])
                t = t * pw[e]
            key >>= WIDTH
            i += 1
        total += t
    return total


def _pivot(form):
    k = -1
    for i, c in enumerate(form):
        if c == 1 or c == -1:
            return i
        if c:
            k = i
    return k


def vanishes_on(p, form):
    """Cheap necessary test for divisibility of p by the linear form."""
    k = _pivot(form)
    point = [mpq(_PROBE[i % len(_PROBE)] + i // len(_PROBE)) for i in range(len(form))]
    rest = sum(form[i] * point[i] for i in range(len(form)) if i != k)
    point[k] = mpq(-rest, form[k])
    return evaluate(p, point) == 0


def div_linear(p, form):
    """Exact quotient p / sum(form[i] u_i), or None when it does not divide."""
    if not p:
        return {}
    if not vanishes_on(p, form):
        return None
    k = _pivot(form)
    ck = form[k]
    sk = WIDTH * k
    groups = {}
    for key, c in p.items():
        e = (key >> sk) & MASK
        g = groups.get(e)
        if g is None:
            groups[e] = g = {}
        g[key - (e << sk)] = c
    d = max(groups)
    if d == 0:
        return None
    rho = [(1 << (WIDTH * i), mpq(-c, ck)) for i, c in enumerate(form) if i != k and c]
    inv = mpq(1, ck)
    out = {}
    cur = groups[d]
    for j in range(d - 1, -1, -1):
        ukey = j << sk
        for key, c in cur.items():
            out[key + ukey] = c * inv
        nxt = dict(groups.get(j, ()))
        get = nxt.get
        for key, c in cur.items():
            for rk, rc in rho:
                kk = key + rk
                nxt[kk] = get(kk, 0) + c * rc
        cur = {kk: c for kk, c in nxt.items() if c}
    if cur:
        return None
    return out


def subst(p, images):
    """Substitute variable i by the linear dict polynomial images[i]."""
    simple = []
    general = []
    for i, img in enumerate(images):
        if len(img) == 1:
            (k, c), = img.items()
            simple.append((i, k, c))
        elif img:
            general.append((i, img))
        else:
            simple.append((i, None, 0))
    buckets = {}
    gidx = [i for i, _ in general]
    for key, c in p.items():
        nk = 0
        coef = c
        for i, k, sc in simple:
            e = (key >> (WIDTH * i)) & MASK
            if e:
                if k is None:
                    coef = 0
                    break
                nk += e * k
                if sc != 1:
                    coef = coef * sc ** e
        if not coef:
            continue
        ge = tuple((key >> (WIDTH * i)) & MASK for i in gidx)
        b = buckets.get(ge)
        if b is None:
            buckets[ge] = b = {}
        b[nk] = b.get(nk, 0) + coef
    if not general:
        return {k: c for k, c in buckets.get((), {}).items() if c}
    pows = {}

    def power(j, e):
        hit = pows.get((j, e))
        if hit is None:
            if e == 0:
                hit = {0: mpq(1)}
            elif e == 1:
                hit = general[j][1]
            else:
                hit = mul(power(j, e - 1), general[j][1])
            pows[(j, e)] = hit
        return hit

    out = {}
    for ge, b in buckets.items():
        prod = {0: mpq(1)}
        for j, e in enumerate(ge):
            if e:
                prod = mul(prod, power(j, e))
        addmul(out, mul(prod, b), 1)
    return {k: c for k, c in out.items() if c}
