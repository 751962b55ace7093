"""Truncated noncommutative series on {a, b} and derivations of Lie[a, b].

Words are plain strings over "ab".  An ``NCSeries`` maps words to nonzero
rationals and knows its truncation weight ``W`` (``None`` for an exact
polynomial); products drop every word longer than ``W``.
"""

from functools import lru_cache
from math import factorial

from gmpy2 import mpq

from .mould import CPoly, ma, ma_inv
from .pal import bernoulli
from .ratfrac import ZERO, scalar


def _eff(*ws):
    ws = [w for w in ws if w is not None]
    return min(ws) if ws else None


class NotLieError(ValueError):
    pass


class NCSeries:
    __slots__ = ("terms", "W")

    def __init__(self, terms=None, W=None):
        self.W = W
        t = {}
        for w, c in (terms or {}).items():
            if W is not None and len(w) > W:
                continue
            c = scalar(c)
            if c:
                t[w] = t.get(w, ZERO) + c
        self.terms = {w: c for w, c in t.items() if c}

    @classmethod
    def _raw(cls, terms, W):
        s = cls.__new__(cls)
        s.terms = terms
        s.W = W
        return s

    @classmethod
    def word(cls, w, c=1, W=None):
        return cls({w: c}, W)

    @classmethod
    def gen(cls, letter, W=None):
        return cls({letter: 1}, W)

    # structure --------------------------------------------------------

    def items(self):
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))

    def by_weight(self):
        out = {}
        for w, c in self.terms.items():
            out.setdefault(len(w), {})[w] = c
        return out

    def part(self, n):
        return NCSeries._raw({w: c for w, c in self.terms.items() if len(w) == n}, None)

    def weights(self):
        return sorted({len(w) for w in self.terms})

    def min_weight(self):
        return min((len(w) for w in self.terms), default=None)

    def truncate(self, W):
        if W is None:
            return self
        W2 = _eff(W, self.W)
        return NCSeries._raw({w: c for w, c in self.terms.items() if len(w) <= W2}, W2)

    def with_W(self, W):
        return NCSeries(self.terms, W)

    def is_zero(self):
        return not self.terms

    def coeff(self, w):
        return self.terms.get(w, ZERO)

    # arithmetic -------------------------------------------------------

    def __add__(self, other):
        W = _eff(self.W, other.W)
        t = {w: c for w, c in self.terms.items() if W is None or len(w) <= W}
        for w, c in other.terms.items():
            if W is not None and len(w) > W:
                continue
            v = t.get(w, ZERO) + c
            if v:
                t[w] = v
            else:
                t.pop(w, None)
        return NCSeries._raw(t, W)

    def __neg__(self):
        return NCSeries._raw({w: -c for w, c in self.terms.items()}, self.W)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, NCSeries):
            return concat(self, other)
        c = scalar(other)
        if not c:
            return NCSeries._raw({}, self.W)
        return NCSeries._raw({w: c * v for w, v in self.terms.items()}, self.W)

    def __rmul__(self, c):
        return self * c

    def bracket(self, other, W=None):
        return concat(self, other, W) - concat(other, self, W)

    def __eq__(self, other):
        if not isinstance(other, NCSeries):
            return NotImplemented
        W = _eff(self.W, other.W)
        a = self.truncate(W).terms if W is not None else self.terms
        b = other.truncate(W).terms if W is not None else other.terms
        return a == b

    __hash__ = None

    def first_difference(self, other):
        """(weight, word, self coeff, other coeff) of the first mismatch or None."""
        d = (self - other).items()
        if not d:
            return None
        w, _ = d[0]
        return (len(w), w, self.coeff(w), other.coeff(w))

    def __repr__(self):
        if not self.terms:
            return "NCSeries(0, W=%s)" % self.W
        body = " + ".join("%s*%s" % (c, w or "1") for w, c in self.items()[:12])
        more = " + ..." if len(self.terms) > 12 else ""
        return "NCSeries(%s%s, W=%s)" % (body, more, self.W)


def concat(x, y, W=None):
    W = _eff(W, x.W, y.W)
    t = {}
    ys = list(y.terms.items())
    for w1, c1 in x.terms.items():
        room = None if W is None else W - len(w1)
        if room is not None and room < 0:
            continue
        for w2, c2 in ys:
            if room is not None and len(w2) > room:
                continue
            w = w1 + w2
            t[w] = t.get(w, ZERO) + c1 * c2
    return NCSeries._raw({w: c for w, c in t.items() if c}, W)


def bracket(x, y, W=None):
    return x.bracket(y, W)


def ad_power(x, y, n, W=None):
    """ad(x)^n (y)."""
    for _ in range(n):
        y = bracket(x, y, W)
    return y


A = NCSeries.gen("a")
B = NCSeries.gen("b")


# Lyndon words and Lie membership ----------------------------------------------


def is_lyndon(w):
    n = len(w)
    if not n:
        return False
    return all(w < w[i:] + w[:i] for i in range(1, n))


@lru_cache(maxsize=None)
def lyndon_words(n, alphabet="ab"):
    """Lyndon words of length n in lexicographic order (Duval)."""
    out = []
    k = len(alphabet)
    w = [-1]
    while w:
        w[-1] += 1
        m = len(w)
        if m == n:
            out.append("".join(alphabet[i] for i in w))
        while len(w) < n:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
    return tuple(out)


@lru_cache(maxsize=None)
def standard_factorization(w):
    """w = uv with v the longest proper Lyndon suffix."""
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError("not a Lyndon word of length >= 2: %r" % w)


@lru_cache(maxsize=None)
def _lyndon_bracket_terms(w):
    if len(w) == 1:
        return ((w, mpq(1)),)
    u, v = standard_factorization(w)
    x = NCSeries(dict(_lyndon_bracket_terms(u)))
    y = NCSeries(dict(_lyndon_bracket_terms(v)))
    return tuple(bracket(x, y).terms.items())


def lyndon_bracket(w):
    """The standard bracketing P(w); its smallest word is w itself."""
    return NCSeries(dict(_lyndon_bracket_terms(w)))


def lie_normal_form(s):
    """(Lyndon coordinates, residual): s = sum c_w P(w) + residual, and the
    residual is zero exactly when s is a Lie element (no constant term)."""
    coords = {}
    work = dict(s.terms)
    residual = {}
    if "" in work:
        residual[""] = work.pop("")
    while work:
        w = min(work, key=lambda x: (len(x), x))
        c = work[w]
        if not is_lyndon(w):
            # collect everything of this weight that cannot be reduced
            n = len(w)
            for x in [x for x in work if len(x) == n]:
                residual[x] = work.pop(x)
            continue
        coords[w] = c
        for x, v in _lyndon_bracket_terms(w):
            nv = work.get(x, ZERO) - c * v
            if nv:
                work[x] = nv
            else:
                work.pop(x, None)
    return coords, NCSeries(residual, s.W)


def is_lie(s):
    return lie_normal_form(s)[1].is_zero()


def from_lyndon(coords, W=None):
    out = NCSeries({}, W)
    for w, c in coords.items():
        out = out + lyndon_bracket(w) * c
    return out


# the C-alphabet -----------------------------------------------------------------


@lru_cache(maxsize=None)
def _c_letter(k):
    return tuple(ad_power(A, B, k - 1).terms.items())


@lru_cache(maxsize=None)
def _c_word(word):
    out = {"": mpq(1)}
    for k in word:
        nxt = {}
        for w1, c1 in out.items():
            for w2, c2 in _c_letter(k):
                w = w1 + w2
                nxt[w] = nxt.get(w, ZERO) + c1 * c2
        out = {w: c for w, c in nxt.items() if c}
    return tuple(out.items())


def from_cpoly(p, W=None):
    """Expand C_i = ad(a)^(i-1)(b) into {a, b}-words."""
    t = {}
    for word, c in p.terms.items():
        for w, v in _c_word(word):
            t[w] = t.get(w, ZERO) + c * v
    return NCSeries(t, W)


def _ab_key(w):
    # lexicographic with a > b
    return tuple(1 if ch == "a" else 0 for ch in w)


def to_cpoly(s):
    """Write s as a C-polynomial; raises if s is outside Q<C_1, C_2, ...>."""
    work = dict(s.terms)
    out = {}
    if "" in work:
        out[()] = work.pop("")
    while work:
        n = min(len(w) for w in work)
        w = max((x for x in work if len(x) == n), key=_ab_key)
        if w[-1] != "b":
            raise NotLieError("not in the algebra generated by the C_i (word %r)" % w)
        word = tuple(len(chunk) + 1 for chunk in w.split("b")[:-1])
        c = work[w]
        out[word] = out.get(word, ZERO) + c
        for x, v in _c_word(word):
            nv = work.get(x, ZERO) - c * v
            if nv:
                work[x] = nv
            else:
                work.pop(x, None)
    return CPoly(out)


def ma_ab(s, alphabet="u"):
    return ma(to_cpoly(s), alphabet)


def ma_inv_ab(M, W=None):
    return from_cpoly(ma_inv(M), W)


# Bernoulli operator series and base points ------------------------------------


def ber_apply(x, y, W):
    """Ber_x(y) = sum_n (B_n / n!) ad(x)^n (y), to weight W."""
    total = NCSeries({}, W)
    term = y.truncate(W)
    n = 0
    while not term.is_zero():
        c = bernoulli(n) / factorial(n)
        if c:
            total = total + term * c
        n += 1
        term = bracket(x, term, W)
    return total


def ber_series(sign, W):
    """Ber_{sign*b}(-sign*a): sign=-1 gives t02 = Ber_{-b}(a), sign=+1 gives t01."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return ber_apply(B * sign, A * (-sign), W)


def base_points(W):
    t01 = ber_series(1, W)
    t02 = ber_series(-1, W)
    t12 = bracket(A, B, W).with_W(W)
    return t01, t02, t12


def substitute(s, images, W):
    """Replace the letters a, b by the series images["a"], images["b"]."""
    W = _eff(W, s.W)
    cache = {"": NCSeries({"": 1}, W)}

    def prefix(w):
        hit = cache.get(w)
        if hit is None:
            hit = cache[w] = concat(prefix(w[:-1]), images[w[-1]], W)
        return hit

    total = NCSeries({}, W)
    for w, c in s.terms.items():
        total = total + prefix(w) * c
    return total


# partner ------------------------------------------------------------------------


def _d_a(terms):
    """The derivation with a -> 1, b -> 0 on words."""
    out = {}
    for w, c in terms.items():
        for i, ch in enumerate(w):
            if ch == "a":
                x = w[:i] + w[i + 1:]
                out[x] = out.get(x, ZERO) + c
    return {w: c for w, c in out.items() if c}


def poly_partner(p):
    """p' = sum_{i>=0} ((-1)^(i-1)/i!) a^i b d_a^i(p_a), where p = p_a a + p_b b."""
    pa = {}
    for w, c in p.terms.items():
        if w.endswith("a"):
            pa[w[:-1]] = c
    out = {}
    cur = pa
    i = 0
    while cur:
        k = mpq(1 if i % 2 else -1, factorial(i))
        pre = "a" * i + "b"
        for w, c in cur.items():
            x = pre + w
            out[x] = out.get(x, ZERO) + k * c
        i += 1
        cur = _d_a(cur)
    return NCSeries(out, p.W)


# derivations ----------------------------------------------------------------------


class Derivation2:
    """Derivation of Lie[a, b] given by its values on a and b."""

    __slots__ = ("va", "vb")

    def __init__(self, va, vb):
        self.va = va
        self.vb = vb

    @property
    def W(self):
        return _eff(self.va.W, self.vb.W)

    def check_no_linear_a(self):
        return not self.va.coeff("a") and not self.vb.coeff("a")

    def __call__(self, s, W=None):
        return derivation_apply(self, s, W)

    def __add__(self, other):
        return Derivation2(self.va + other.va, self.vb + other.vb)

    def __sub__(self, other):
        return Derivation2(self.va - other.va, self.vb - other.vb)

    def __mul__(self, c):
        return Derivation2(self.va * c, self.vb * c)

    def __eq__(self, other):
        return isinstance(other, Derivation2) and self.va == other.va and self.vb == other.vb

    __hash__ = None

    def is_zero(self):
        return self.va.is_zero() and self.vb.is_zero()

    def __repr__(self):
        return "Derivation2(a -> %r, b -> %r)" % (self.va, self.vb)


def derivation_apply(D, s, W=None):
    """Leibniz extension of a -> D.va, b -> D.vb, truncated to weight W."""
    W = _eff(W, s.W, D.va.W if D.va.W is None else D.va.W + 1, D.vb.W if D.vb.W is None else D.vb.W + 1)
    vals = {"a": list(D.va.terms.items()), "b": list(D.vb.terms.items())}
    mins = {k: min((len(w) for w, _ in v), default=None) for k, v in vals.items()}
    t = {}
    for w, c in s.terms.items():
        n = len(w)
        for i, ch in enumerate(w):
            m = mins[ch]
            if m is None or (W is not None and n - 1 + m > W):
                continue
            pre, post = w[:i], w[i + 1:]
            room = None if W is None else W - n + 1
            for x, v in vals[ch]:
                if room is not None and len(x) > room:
                    continue
                y = pre + x + post
                t[y] = t.get(y, ZERO) + c * v
    return NCSeries._raw({w: c for w, c in t.items() if c}, W)


def derivation_bracket(D, E, W=None):
    """[D, E] = D E - E D, given by its values on a and b."""
    va = derivation_apply(D, E.va, W) - derivation_apply(E, D.va, W)
    vb = derivation_apply(D, E.vb, W) - derivation_apply(E, D.vb, W)
    return Derivation2(va, vb)


def ihara_derivation(f):
    """D_f: a -> 0, b -> [f, b]."""
    return Derivation2(NCSeries({}, f.W), bracket(f, B, f.W))


def ihara_bracket(f, g, W=None, check=True):
    """{f, g} = D_f(g) - D_g(f) - [f, g]."""
    if check and not (is_lie(f) and is_lie(g)):
        raise NotLieError("ihara_bracket needs Lie inputs")
    W = _eff(W, f.W, g.W)
    Df, Dg = ihara_derivation(f), ihara_derivation(g)
    return derivation_apply(Df, g, W) - derivation_apply(Dg, f, W) - bracket(f, g, W)


def partner_derivation(p):
    """a -> p, b -> partner of p."""
    return Derivation2(p, poly_partner(p))


def c_letter(k, W=None):
    return NCSeries(dict(_c_letter(k)), W)


def epsilon_2i(i, W=None):
    """a -> ad(a)^(2i)(b), b -> partner of ad(a)^(2i)(b)."""
    return partner_derivation(c_letter(2 * i + 1, W))


def extend_from_t02(T, W):
    """The unique D with D(t02) = T, D(b) the partner of D(a) and no linear a.

    Solved weight by weight: D(a)_k = T_k - sum_{w<k} D_w(t02_{k-w+1}), where
    D_w is the homogeneous derivation a -> D(a)_w, b -> partner(D(a)_w).
    """
    if T.coeff("a"):
        raise ValueError("T has a linear term in a")
    T = T.truncate(W)
    t02 = ber_series(-1, W)
    t02w = t02.by_weight()
    parts = {}
    va = {}
    for k in range(1, W + 1):
        acc = dict(T.part(k).terms)
        for w, Dw in parts.items():
            piece = t02w.get(k - w + 1)
            if not piece:
                continue
            img = derivation_apply(Dw, NCSeries._raw(piece, None), k)
            for x, c in img.terms.items():
                if len(x) == k:
                    acc[x] = acc.get(x, ZERO) - c
        Ak = NCSeries(acc)
        if not Ak.is_zero():
            parts[k] = partner_derivation(Ak)
            va.update(Ak.terms)
    D_a = NCSeries(va, W)
    return Derivation2(D_a, poly_partner(D_a))
