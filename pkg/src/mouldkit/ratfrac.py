"""Exact rational functions whose denominators are products of linear forms.

Every mould component met in flexion calculus has the shape N / prod(L_i^m_i)
with N a polynomial over Q and the L_i integer linear forms.  Keeping the
denominator factored means addition only needs an lcm of multisets and
cancellation is an exact division by a linear form, so no multivariate gcd
is ever required.

A ``RatFrac`` is canonical: each linear form is primitive with positive
leading coefficient, no denominator factor divides the numerator, and the
numerator carries all rational coefficients.  Equal functions therefore have
equal representations.
"""

from fractions import Fraction
from functools import lru_cache
from math import gcd

from gmpy2 import mpq

from . import kernel as K

Scalar = type(mpq())
ZERO = mpq(0)
ONE = mpq(1)


def scalar(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return mpq(x.strip())
    return mpq(x)


def format_scalar(c):
    return str(scalar(c))


def canonical_form(coeffs):
    """Split integer coefficients as factor * form with form primitive and
    its first nonzero entry positive."""
    coeffs = tuple(coeffs)
    if any(isinstance(c, Scalar) and c.denominator != 1 for c in coeffs):
        den = 1
        for c in coeffs:
            den = den * c.denominator // gcd(den, c.denominator)
        scaled = canonical_form(tuple(int(c * den) for c in coeffs))
        return scaled[0], mpq(scaled[1], den)
    coeffs = tuple(int(c) for c in coeffs)
    g = 0
    lead = 0
    for c in coeffs:
        if c:
            g = gcd(g, c)
            if not lead:
                lead = c
    if not g:
        raise ZeroDivisionError("zero linear form")
    if lead < 0:
        g = -g
    return tuple(c // g for c in coeffs), g


@lru_cache(maxsize=4096)
def _form_power(form, m):
    lin = K.linear_poly(form)
    p = {0: ONE}
    for _ in range(m):
        p = K.mul(p, lin)
    return p


def _reduce(num, den):
    """Cancel linear factors of den (a dict form -> mult) out of num."""
    if not num:
        return {}, ()
    out = []
    for form, m in sorted(den.items()):
        while m:
            q = K.div_linear(num, form)
            if q is None:
                break
            num = q
            m -= 1
        if m:
            out.append((form, m))
    return num, tuple(out)


def _merge_den(d1, d2):
    if not d1:
        return d2
    if not d2:
        return d1
    acc = dict(d1)
    for f, m in d2:
        acc[f] = acc.get(f, 0) + m
    return tuple(sorted(acc.items()))


def _grlex_key(exps):
    return (sum(exps), exps[::-1])


class MPoly:
    """Polynomial over Q in variables u1..un (or v1..vn)."""

    __slots__ = ("nvars", "terms", "alphabet")

    def __init__(self, nvars, terms=None, alphabet="u"):
        self.nvars = nvars
        self.terms = {} if terms is None else terms
        self.alphabet = alphabet

    @classmethod
    def from_exponents(cls, nvars, mapping, alphabet="u"):
        terms = {}
        for exps, c in mapping.items():
            if len(exps) != nvars:
                raise ValueError("exponent vector length %d != %d" % (len(exps), nvars))
            c = scalar(c)
            if c:
                k = K.pack(exps)
                terms[k] = terms.get(k, ZERO) + c
        return cls(nvars, K.prune(terms), alphabet)

    def items(self):
        """Terms as (exponents, coefficient), highest in graded-lex order first."""
        pairs = [(K.unpack(k, self.nvars), c) for k, c in self.terms.items()]
        pairs.sort(key=lambda t: _grlex_key(t[0]), reverse=True)
        return pairs

    def _check(self, other):
        if self.nvars != other.nvars or self.alphabet != other.alphabet:
            raise ValueError("alphabet/arity mismatch")

    def __add__(self, other):
        self._check(other)
        acc = dict(self.terms)
        K.addmul(acc, other.terms, 1)
        return MPoly(self.nvars, K.prune(acc), self.alphabet)

    def __neg__(self):
        return MPoly(self.nvars, {k: -c for k, c in self.terms.items()}, self.alphabet)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, MPoly):
            self._check(other)
            return MPoly(self.nvars, K.mul(self.terms, other.terms), self.alphabet)
        return MPoly(self.nvars, K.scale(self.terms, scalar(other)), self.alphabet)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, MPoly) and self.nvars == other.nvars
                and self.alphabet == other.alphabet and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, self.alphabet, frozenset(self.terms.items())))

    def is_zero(self):
        return not self.terms

    def degree(self):
        return K.maxdeg(self.terms) if self.terms else -1

    def __call__(self, *point):
        return K.evaluate(self.terms, [scalar(x) for x in point])

    def __repr__(self):
        return "MPoly(%s)" % _poly_str(self.terms, self.nvars, self.alphabet)


def _poly_str(terms, nvars, alphabet):
    if not terms:
        return "0"
    parts = []
    for exps, c in MPoly(nvars, terms, alphabet).items():
        mon = "*".join(
            "%s%d" % (alphabet, i + 1) + ("^%d" % e if e > 1 else "")
            for i, e in enumerate(exps) if e)
        if not mon:
            parts.append(str(c))
        elif c == 1:
            parts.append(mon)
        elif c == -1:
            parts.append("-" + mon)
        else:
            parts.append("%s*%s" % (c, mon))
    return " + ".join(parts).replace("+ -", "- ")


def _form_str(form, alphabet):
    parts = []
    for i, c in enumerate(form):
        if not c:
            continue
        v = "%s%d" % (alphabet, i + 1)
        if c == 1:
            parts.append("+" + v)
        elif c == -1:
            parts.append("-" + v)
        else:
            parts.append("%+d%s" % (c, v))
    s = "".join(parts)
    return s[1:] if s.startswith("+") else s


class RatFrac:
    """Canonical N / prod(L^m) in a fixed number of variables.

    ``num`` is a packed-key dict polynomial (see ``mouldkit.kernel``) and
    ``den`` a sorted tuple of (primitive integer form, multiplicity).
    """

    __slots__ = ("nvars", "num", "den", "alphabet", "_hash")

    def __init__(self, nvars, num, den=(), alphabet="u"):
        self.nvars = nvars
        self.num = num
        self.den = den
        self.alphabet = alphabet
        self._hash = None

    # construction -----------------------------------------------------

    @classmethod
    def build(cls, nvars, num, den=(), alphabet="u"):
        """Canonicalize an arbitrary numerator dict and denominator factors.

        ``den`` is an iterable of (integer coefficient vector, multiplicity).
        """
        num = K.prune(num)
        acc = {}
        for coeffs, m in den:
            if len(coeffs) != nvars:
                raise ValueError("linear form arity %d != %d" % (len(coeffs), nvars))
            if m <= 0:
                continue
            form, factor = canonical_form(coeffs)
            if factor != 1:
                num = K.scale(num, mpq(1) / mpq(factor) ** m)
            acc[form] = acc.get(form, 0) + m
        num, den = _reduce(num, acc)
        return cls(nvars, num, den, alphabet)

    @classmethod
    def zero(cls, nvars, alphabet="u"):
        return cls(nvars, {}, (), alphabet)

    @classmethod
    def const(cls, nvars, c, alphabet="u"):
        c = scalar(c)
        return cls(nvars, {0: c} if c else {}, (), alphabet)

    @classmethod
    def var(cls, nvars, i, alphabet="u"):
        """The variable u_{i+1} (0-based index i)."""
        return cls(nvars, {1 << (K.WIDTH * i): ONE}, (), alphabet)

    @classmethod
    def from_poly(cls, poly):
        return cls(poly.nvars, dict(poly.terms), (), poly.alphabet)

    @classmethod
    def from_exponents(cls, nvars, mapping, den=(), alphabet="u"):
        poly = MPoly.from_exponents(nvars, mapping, alphabet)
        return cls.build(nvars, poly.terms, den, alphabet)

    @classmethod
    def monomial(cls, exps, c=1, alphabet="u"):
        c = scalar(c)
        return cls(len(exps), {K.pack(exps): c} if c else {}, (), alphabet)

    # inspection -------------------------------------------------------

    def is_zero(self):
        return not self.num

    def is_polynomial(self):
        return not self.den

    def is_constant(self):
        return not self.den and (not self.num or set(self.num) == {0})

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.get(0, ZERO)

    @property
    def numerator(self):
        return MPoly(self.nvars, self.num, self.alphabet)

    def den_degree(self):
        return sum(m for _, m in self.den)

    def homogeneous_degree(self):
        """Total degree if the function is homogeneous, else None (0 -> None)."""
        if not self.num:
            return None
        degs = {K.key_degree(k) for k in self.num}
        if len(degs) != 1:
            return None
        return degs.pop() - self.den_degree()

    def evaluate(self, point):
        point = [scalar(x) for x in point]
        d = ONE
        for form, m in self.den:
            d *= sum(c * x for c, x in zip(form, point)) ** m
        if d == 0:
            raise ZeroDivisionError("evaluation at a pole")
        return K.evaluate(self.num, point) / d

    __call__ = lambda self, *pt: self.evaluate(pt)

    # arithmetic -------------------------------------------------------

    def _check(self, other):
        if self.nvars != other.nvars or self.alphabet != other.alphabet:
            raise ValueError("alphabet/arity mismatch: %s%d vs %s%d" % (
                self.alphabet, self.nvars, other.alphabet, other.nvars))

    def __add__(self, other):
        if not isinstance(other, RatFrac):
            other = RatFrac.const(self.nvars, other, self.alphabet)
        self._check(other)
        if not other.num:
            return self
        if not self.num:
            return other
        s = RatSum(self.nvars, self.alphabet)
        s.add(self)
        s.add(other)
        return s.result()

    __radd__ = __add__

    def __neg__(self):
        return RatFrac(self.nvars, {k: -c for k, c in self.num.items()}, self.den, self.alphabet)

    def __sub__(self, other):
        if not isinstance(other, RatFrac):
            other = RatFrac.const(self.nvars, other, self.alphabet)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, RatFrac):
            c = scalar(other)
            if not c:
                return RatFrac.zero(self.nvars, self.alphabet)
            return RatFrac(self.nvars, K.scale(self.num, c), self.den, self.alphabet)
        self._check(other)
        if not self.num or not other.num:
            return RatFrac.zero(self.nvars, self.alphabet)
        num = K.mul(self.num, other.num)
        if not self.den and not other.den:
            return RatFrac(self.nvars, num, (), self.alphabet)
        acc = dict(self.den)
        for f, m in other.den:
            acc[f] = acc.get(f, 0) + m
        num, den = _reduce(num, acc)
        return RatFrac(self.nvars, num, den, self.alphabet)

    __rmul__ = __mul__

    def mul_form(self, coeffs, m=1):
        """Multiply by (sum coeffs[i] u_i)^m."""
        form, factor = canonical_form(coeffs)
        num = K.scale(self.num, mpq(factor) ** m)
        den = dict(self.den)
        have = den.pop(form, 0)
        cancel = min(have, m)
        if have - cancel:
            den[form] = have - cancel
        if m - cancel:
            num = K.mul(num, _form_power(form, m - cancel))
        return RatFrac(self.nvars, num, tuple(sorted(den.items())), self.alphabet)

    def div_form(self, coeffs, m=1):
        """Divide by (sum coeffs[i] u_i)^m."""
        if not self.num:
            return self
        form, factor = canonical_form(coeffs)
        num = K.scale(self.num, mpq(1) / mpq(factor) ** m)
        den = dict(self.den)
        k = 0
        while k < m:
            q = K.div_linear(num, form)
            if q is None:
                break
            num = q
            k += 1
        if m - k:
            den[form] = den.get(form, 0) + m - k
        return RatFrac(self.nvars, num, tuple(sorted(den.items())), self.alphabet)

    def subst(self, images, nvars=None, alphabet=None):
        """Replace variable i by the linear form images[i] (integer vectors of
        length ``nvars``, the target arity)."""
        if len(images) != self.nvars:
            raise ValueError("need %d images, got %d" % (self.nvars, len(images)))
        if nvars is None:
            nvars = len(images[0]) if images else 0
        if any(len(img) != nvars for img in images):
            raise ValueError("image arity inconsistent")
        alphabet = self.alphabet if alphabet is None else alphabet
        if not self.num:
            return RatFrac.zero(nvars, alphabet)
        num = K.subst(self.num, [K.linear_poly(img) for img in images])
        if not self.den:
            return RatFrac(nvars, num, (), alphabet)
        acc = {}
        for form, m in self.den:
            comp = [0] * nvars
            for c, img in zip(form, images):
                if c:
                    for j, x in enumerate(img):
                        comp[j] += c * x
            cf, factor = canonical_form(comp)
            if factor != 1:
                num = K.scale(num, mpq(1) / mpq(factor) ** m)
            acc[cf] = acc.get(cf, 0) + m
        num, den = _reduce(num, acc)
        return RatFrac(nvars, num, den, alphabet)

    def embed(self, nvars, offset):
        """View as a function of u_{offset+1}..u_{offset+n} inside nvars variables."""
        if offset == 0 and nvars == self.nvars:
            return self
        pad_r = nvars - offset - self.nvars
        if pad_r < 0:
            raise ValueError("embedding does not fit")
        num = K.shift(self.num, offset) if offset else self.num
        if self.den:
            lead = (0,) * offset
            tail = (0,) * pad_r
            den = tuple((lead + f + tail, m) for f, m in self.den)
        else:
            den = ()
        return RatFrac(nvars, num, den, self.alphabet)

    def with_alphabet(self, alphabet):
        return RatFrac(self.nvars, self.num, self.den, alphabet)

    # comparison -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, RatFrac):
            try:
                other = RatFrac.const(self.nvars, other, self.alphabet)
            except (TypeError, ValueError):
                return NotImplemented
        return (self.nvars == other.nvars and self.alphabet == other.alphabet
                and self.den == other.den and self.num == other.num)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, self.alphabet, self.den, frozenset(self.num.items())))
        return self._hash

    def __repr__(self):
        return "RatFrac(%s)" % self.to_string()

    def to_string(self):
        n = _poly_str(self.num, self.nvars, self.alphabet)
        if not self.den:
            return n
        d = "*".join(
            "(%s)" % _form_str(f, self.alphabet) + ("^%d" % m if m > 1 else "")
            for f, m in self.den)
        return "(%s)/(%s)" % (n, d)


class RatSum:
    """Accumulates many fractions, grouping by denominator, and normalizes once.

    Products added with ``add_product`` are not reduced individually; the
    final ``result`` cancels every denominator factor it can, which keeps the
    canonical form intact.
    """

    __slots__ = ("nvars", "alphabet", "groups")

    def __init__(self, nvars, alphabet="u"):
        self.nvars = nvars
        self.alphabet = alphabet
        self.groups = {}

    def add_raw(self, num, den, c=1):
        if not num:
            return
        g = self.groups.get(den)
        if g is None:
            self.groups[den] = g = {}
        K.addmul(g, num, c)

    def add(self, x, c=1):
        self.add_raw(x.num, x.den, c)

    def add_product(self, factors, c=1):
        num = None
        den = ()
        for f in factors:
            if not f.num:
                return
            num = f.num if num is None else K.mul(num, f.num)
            if f.den:
                den = _merge_den(den, f.den)
        if num is None:
            num = {0: ONE}
        self.add_raw(num, den, c)

    def result(self):
        groups = [(d, K.prune(n)) for d, n in self.groups.items()]
        groups = [(d, n) for d, n in groups if n]
        if not groups:
            return RatFrac.zero(self.nvars, self.alphabet)
        if len(groups) == 1:
            d, n = groups[0]
            if not d:
                return RatFrac(self.nvars, n, (), self.alphabet)
            num, den = _reduce(n, dict(d))
            return RatFrac(self.nvars, num, den, self.alphabet)
        lcm = {}
        for d, _ in groups:
            for f, m in d:
                if m > lcm.get(f, 0):
                    lcm[f] = m
        total = {}
        for d, n in groups:
            have = dict(d)
            for f, m in lcm.items():
                miss = m - have.get(f, 0)
                if miss:
                    n = K.mul(n, _form_power(f, miss))
            K.addmul(total, n, 1)
        total = K.prune(total)
        num, den = _reduce(total, lcm)
        return RatFrac(self.nvars, num, den, self.alphabet)


def ratsum(nvars, items, alphabet="u"):
    s = RatSum(nvars, alphabet)
    for x in items:
        s.add(x)
    return s.result()
