"""Moulds and the elementary operators on them.

A mould is a family of rational functions P(u1..ur), one for every depth r,
plus the constant P(()).  Here a ``Mould`` stores the constant and a map
r -> RatFrac for the nonzero components.  ``depth`` is the truncation: every
component with r <= depth is exact and nothing is known beyond it.  A depth
of ``None`` means the mould is exact in every depth and has finite support,
which is the case for ma of a polynomial or for the B_i moulds.

Binary operations work to the smaller of the two truncations.  Operations
whose output has infinite support (invmu, exponentials, pal) need a depth,
taken from the input or passed explicitly.
"""

from .ratfrac import ONE, RatFrac, RatSum, ZERO, format_scalar, scalar

INF = float("inf")


def _eff(*depths):
    ds = [d for d in depths if d is not None]
    return min(ds) if ds else None


def _rng(depth, support=()):
    """Depths 1..depth, or the support when the depth is unbounded."""
    if depth is None:
        top = max(support, default=0)
    else:
        top = depth
    return range(1, top + 1)


class MouldError(ValueError):
    pass


class Mould:
    __slots__ = ("alphabet", "depth", "constant", "comps")

    def __init__(self, comps=None, constant=0, depth=None, alphabet="u"):
        self.alphabet = alphabet
        self.depth = depth
        self.constant = scalar(constant)
        cs = {}
        for r, x in (comps or {}).items():
            if depth is not None and r > depth:
                continue
            if x.nvars != r:
                raise MouldError("component at depth %d has %d variables" % (r, x.nvars))
            if x.alphabet != alphabet:
                raise MouldError("component alphabet %r != %r" % (x.alphabet, alphabet))
            if x.num:
                cs[r] = x
        self.comps = cs

    # construction -----------------------------------------------------

    @classmethod
    def zero(cls, depth=None, alphabet="u"):
        return cls({}, 0, depth, alphabet)

    @classmethod
    def one(cls, depth=None, alphabet="u"):
        return cls({}, 1, depth, alphabet)

    @classmethod
    def concentrated(cls, r, x, depth=None):
        return cls({r: x}, 0, depth, x.alphabet)

    # access -----------------------------------------------------------

    def __getitem__(self, r):
        if r == 0:
            return RatFrac.const(0, self.constant, self.alphabet)
        if self.depth is not None and r > self.depth:
            raise MouldError("depth %d beyond truncation %d" % (r, self.depth))
        x = self.comps.get(r)
        return x if x is not None else RatFrac.zero(r, self.alphabet)

    def __call__(self, *point):
        if not point:
            return self.constant
        return self[len(point)].evaluate(point)

    def support(self):
        return sorted(self.comps)

    def top(self):
        """Largest depth that must be looked at."""
        return self.depth if self.depth is not None else max(self.comps, default=0)

    def truncate(self, depth):
        if depth is None:
            return self
        d = depth if self.depth is None else min(depth, self.depth)
        return Mould({r: x for r, x in self.comps.items() if r <= d}, self.constant, d, self.alphabet)

    def with_depth(self, depth):
        """Declare a truncation depth; components beyond it are dropped."""
        return Mould(self.comps, self.constant, depth, self.alphabet)

    def with_constant(self, c):
        return Mould(self.comps, c, self.depth, self.alphabet)

    def is_polynomial(self):
        return all(x.is_polynomial() for x in self.comps.values())

    def lowest_depth(self):
        return min(self.comps, default=None)

    def map(self, fn, constant=None, depth="same", alphabet=None):
        """Apply fn(r, component) to each stored component."""
        alpha = self.alphabet if alphabet is None else alphabet
        d = self.depth if depth == "same" else depth
        comps = {}
        for r, x in self.comps.items():
            y = fn(r, x)
            if y is not None:
                comps[r] = y
        c = self.constant if constant is None else constant
        return Mould(comps, c, d, alpha)

    # linear structure ---------------------------------------------------

    def _check(self, other):
        if self.alphabet != other.alphabet:
            raise MouldError("alphabet mismatch: %s vs %s" % (self.alphabet, other.alphabet))

    def __add__(self, other):
        self._check(other)
        d = _eff(self.depth, other.depth)
        comps = {}
        for r in set(self.comps) | set(other.comps):
            if d is not None and r > d:
                continue
            x, y = self.comps.get(r), other.comps.get(r)
            comps[r] = x if y is None else (y if x is None else x + y)
        return Mould(comps, self.constant + other.constant, d, self.alphabet)

    def __neg__(self):
        return Mould({r: -x for r, x in self.comps.items()}, -self.constant, self.depth, self.alphabet)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        if isinstance(c, Mould):
            raise TypeError("use mu() for the mould product")
        c = scalar(c)
        return Mould({r: x * c for r, x in self.comps.items()}, self.constant * c,
                     self.depth, self.alphabet)

    __rmul__ = __mul__

    def __eq__(self, other):
        """Agreement in every depth both moulds know exactly."""
        if not isinstance(other, Mould):
            return NotImplemented
        if self.alphabet != other.alphabet or self.constant != other.constant:
            return False
        d = _eff(self.depth, other.depth)
        for r in set(self.comps) | set(other.comps):
            if d is not None and r > d:
                continue
            if self[r] != other[r]:
                return False
        return True

    __hash__ = None

    def first_difference(self, other):
        """(depth, self component, other component) of the first mismatch, or None."""
        if self.constant != other.constant:
            return (0, self.constant, other.constant)
        d = _eff(self.depth, other.depth)
        for r in sorted(set(self.comps) | set(other.comps)):
            if d is not None and r > d:
                break
            if self[r] != other[r]:
                return (r, self[r], other[r])
        return None

    def __repr__(self):
        parts = ["const=%s" % format_scalar(self.constant)]
        for r in sorted(self.comps):
            parts.append("%d: %s" % (r, self.comps[r].to_string()))
        return "Mould[%s, R=%s](%s)" % (self.alphabet, self.depth, "; ".join(parts))


def b_mould(i, alphabet="u"):
    """B_i: concentrated in depth 1 with value u1^i (i may be negative)."""
    if i >= 0:
        x = RatFrac.monomial((i,), 1, alphabet)
    else:
        x = RatFrac.build(1, {0: ONE}, [((1,), -i)], alphabet)
    return Mould({1: x}, 0, None, alphabet)


# products --------------------------------------------------------------


def _comp_or_const(P, i):
    """Component of P at depth i as (num, den), with depth 0 the constant."""
    if i == 0:
        return P.constant
    return P.comps.get(i)


def _need_depth(depth, *moulds):
    d = _eff(depth, *[m.depth for m in moulds])
    if d is None:
        raise MouldError("an explicit depth is needed for this operation")
    return d


def mu(*moulds, depth="auto"):
    """The mould product, associative, of two or more moulds."""
    if not moulds:
        raise MouldError("mu needs at least one mould")
    out = moulds[0]
    for m in moulds[1:]:
        out = _mu2(out, m, depth)
    return out


def _mu2(P, Q, depth="auto"):
    P._check(Q)
    d = _eff(P.depth, Q.depth)
    if depth != "auto":
        d = _eff(d, depth)
    if d is None:
        top = max(P.comps, default=0) + max(Q.comps, default=0)
    else:
        top = d
    alpha = P.alphabet
    comps = {}
    for r in range(1, top + 1):
        s = RatSum(r, alpha)
        for i in range(0, r + 1):
            a = _comp_or_const(P, i)
            b = _comp_or_const(Q, r - i)
            if a is None or b is None or (i == 0 and not a) or (i == r and not b):
                continue
            if i == 0:
                s.add(b, a)
            elif i == r:
                s.add(a, b)
            else:
                s.add_product([a.embed(r, 0), b.embed(r, i)])
        x = s.result()
        if x.num:
            comps[r] = x
    return Mould(comps, P.constant * Q.constant, d, alpha)


def invmu(P, depth=None):
    """Inverse for mu; needs P(()) = 1."""
    if P.constant != 1:
        raise MouldError("invmu needs constant term 1")
    d = _need_depth(depth, P)
    alpha = P.alphabet
    X = {}
    for r in range(1, d + 1):
        s = RatSum(r, alpha)
        for i in range(1, r + 1):
            a = P.comps.get(i)
            if a is None:
                continue
            if i == r:
                s.add(a, -1)
                continue
            b = X.get(r - i)
            if b is None:
                continue
            s.add_product([a.embed(r, 0), b.embed(r, i)], -1)
        x = s.result()
        if x.num:
            X[r] = x
    return Mould(X, 1, d, alpha)


def lu(P, Q):
    return mu(P, Q) - mu(Q, P)


# scaling operators -------------------------------------------------------


def _unit(r, i):
    v = [0] * r
    v[i] = 1
    return tuple(v)


def _scale_component(kind, r, x):
    if kind in ("dar", "delta"):
        for i in range(r):
            x = x.mul_form(_unit(r, i))
    if kind in ("dur", "delta"):
        x = x.mul_form((1,) * r)
    if kind in ("dar_inv", "delta_inv"):
        for i in range(r):
            x = x.div_form(_unit(r, i))
    if kind in ("dur_inv", "delta_inv"):
        x = x.div_form((1,) * r)
    return x


SCALE_KINDS = ("dar", "dur", "delta", "dar_inv", "dur_inv", "delta_inv")


def scale_op(kind, P):
    """Multiply (or divide) depth r by u1..ur, by u1+..+ur, or by both.

    The constant term is left unchanged.
    """
    if kind not in SCALE_KINDS:
        raise MouldError("unknown scale operator %r" % kind)
    return P.map(lambda r, x: _scale_component(kind, r, x))


def dar(P):
    return scale_op("dar", P)


def dur(P):
    return scale_op("dur", P)


def delta(P):
    return scale_op("delta", P)


def dar_inv(P):
    return scale_op("dar_inv", P)


def dur_inv(P):
    return scale_op("dur_inv", P)


def delta_inv(P):
    return scale_op("delta_inv", P)


# reindexings --------------------------------------------------------------


def push_images(r):
    neg = tuple([-1] * r)
    return [neg] + [_unit(r, j) for j in range(r - 1)]


def push(P):
    if P.alphabet != "u":
        raise MouldError("push is defined on the u-alphabet")
    return P.map(lambda r, x: x.subst(push_images(r), r))


def swap_images(r, to):
    if to == "v":
        # A(v_r, v_{r-1}-v_r, ..., v_1-v_2)
        imgs = [_unit(r, r - 1)]
        for k in range(2, r + 1):
            v = [0] * r
            v[r - k] = 1
            v[r - k + 1] = -1
            imgs.append(tuple(v))
        return imgs
    # B(u1+..+ur, u1+..+u_{r-1}, ..., u1)
    return [tuple([1] * (r - k + 1) + [0] * (k - 1)) for k in range(1, r + 1)]


def swap(P):
    """The dimorphy involution; toggles the alphabet between u and v."""
    to = "v" if P.alphabet == "u" else "u"
    return P.map(lambda r, x: x.subst(swap_images(r, to), r, alphabet=to), alphabet=to)


def mould_partner(P):
    """(P(u2..u_{r-1}, -u1-..-u_{r-1}) - P(u2..ur)) / (u1+..+ur), zero in depth 1."""
    if P.constant != 0:
        raise MouldError("mould_partner needs constant term 0")
    alpha = P.alphabet
    comps = {}
    for k, x in P.comps.items():
        r = k + 1
        imgs = [_unit(r, j + 1) for j in range(k - 1)]
        imgs.append(tuple([-1] * (r - 1) + [0]))
        y = x.subst(imgs, r) - x.embed(r, 1)
        comps[r] = y.div_form((1,) * r)
    d = None if P.depth is None else P.depth + 1
    return Mould(comps, 0, d, alpha)


# the ma encoding ------------------------------------------------------------


class CPoly:
    """Finite Q-combination of words in C_1, C_2, ...; a word is a tuple of indices."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {}
        for w, c in (terms or {}).items():
            c = scalar(c)
            if c:
                self.terms[tuple(w)] = c

    @classmethod
    def word(cls, *ks):
        return cls({tuple(ks): 1})

    def items(self):
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))

    def weight_set(self):
        return {sum(w) for w in self.terms}

    def __add__(self, other):
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t.get(w, ZERO) + c
        return CPoly(t)

    def __neg__(self):
        return CPoly({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, CPoly):
            t = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    t[w] = t.get(w, ZERO) + c1 * c2
            return CPoly(t)
        c = scalar(other)
        return CPoly({w: c * v for w, v in self.terms.items()})

    def __rmul__(self, c):
        c = scalar(c)
        return CPoly({w: c * v for w, v in self.terms.items()})

    def bracket(self, other):
        return self * other - other * self

    def __eq__(self, other):
        return isinstance(other, CPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "CPoly(0)"
        return "CPoly(%s)" % " + ".join(
            "%s*%s" % (c, "".join("C%d" % k for k in w) or "1") for w, c in self.items())


def ma(p, alphabet="u"):
    """C_{k1}..C_{kr} -> (-1)^(k1+..+kr-r) u1^(k1-1)..ur^(kr-1)."""
    by_depth = {}
    const = ZERO
    for w, c in p.terms.items():
        if not w:
            const += c
            continue
        if min(w) < 1:
            raise MouldError("C-indices start at 1")
        r = len(w)
        exps = tuple(k - 1 for k in w)
        sign = -1 if (sum(w) - r) % 2 else 1
        acc = by_depth.setdefault(r, {})
        acc[exps] = acc.get(exps, ZERO) + sign * c
    comps = {r: RatFrac.from_exponents(r, m, (), alphabet) for r, m in by_depth.items()}
    return Mould(comps, const, None, alphabet)


def ma_inv(P):
    """Read back the C-polynomial of a polynomial mould."""
    terms = {}
    if P.constant:
        terms[()] = P.constant
    for r, x in P.comps.items():
        if not x.is_polynomial():
            raise MouldError("ma_inv needs polynomial components (depth %d is %s)"
                             % (r, x.to_string()))
        for exps, c in x.numerator.items():
            w = tuple(e + 1 for e in exps)
            sign = -1 if (sum(exps)) % 2 else 1
            terms[w] = sign * c
    return CPoly(terms)
