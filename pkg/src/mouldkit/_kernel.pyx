# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled sparse polynomial kernels.

Same interface and results as ``_kernel_py``.  Products, evaluation and the
linear-form division run on raw GMP rationals with 64-bit packed keys; inputs
whose keys do not fit in 64 bits go through the pure-Python code.
"""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector
from cython.operator cimport dereference as deref

from gmpy2 cimport (GMPy_MPQ_New, MPQ_Check, import_gmpy2, mpq, mpq_ptr,
                    mpq_srcptr, mpq_t, mpz_ptr, mpz_srcptr, mpz_t, __mpq_struct,
                    __mpz_struct)

from gmpy2 import mpq as _mpq
from . import _kernel_py as _py

import_gmpy2()

cdef extern from "gmp.h":
    void mpq_init(mpq_ptr)
    void mpq_clear(mpq_ptr)
    void mpq_set(mpq_ptr, mpq_srcptr)
    void mpq_swap(mpq_ptr, mpq_ptr)
    void mpq_add(mpq_ptr, mpq_srcptr, mpq_srcptr)
    void mpq_sub(mpq_ptr, mpq_srcptr, mpq_srcptr)
    void mpq_mul(mpq_ptr, mpq_srcptr, mpq_srcptr)
    void mpq_div(mpq_ptr, mpq_srcptr, mpq_srcptr)
    int mpq_sgn(mpq_srcptr)
    void mpq_set_si(mpq_ptr, long, unsigned long)
    int mpq_cmp_si(mpq_srcptr, long, unsigned long)
    void mpq_canonicalize(mpq_ptr)
    mpz_ptr mpq_numref(mpq_ptr)
    mpz_ptr mpq_denref(mpq_ptr)
    void mpz_init(mpz_ptr)
    void mpz_clear(mpz_ptr)
    void mpz_set(mpz_ptr, mpz_srcptr)
    void mpz_set_ui(mpz_ptr, unsigned long)
    void mpz_mul(mpz_ptr, mpz_srcptr, mpz_srcptr)
    void mpz_addmul(mpz_ptr, mpz_srcptr, mpz_srcptr)
    void mpz_lcm(mpz_ptr, mpz_srcptr, mpz_srcptr)
    void mpz_divexact(mpz_ptr, mpz_srcptr, mpz_srcptr)
    void mpz_swap(mpz_ptr, mpz_ptr)
    int mpz_sgn(mpz_srcptr)

NAME = "cython"
WIDTH = _py.WIDTH
MASK = _py.MASK
MAX_EXP = _py.MAX_EXP

DEF CWIDTH = 10
DEF CMASK = 1023
cdef object KEY_LIMIT = 1 << 64


cdef inline mpq _as_mpq(x):
    if MPQ_Check(x):
        return <mpq>x
    return <mpq>_mpq(x)


cdef bint _fits(dict p):
    for k in p:
        if k >= KEY_LIMIT or k < 0:
            return False
    return True


cdef uint64_t _maxkey(dict p):
    cdef uint64_t m = 0, k
    for key in p:
        k = key
        if k > m:
            m = k
    return m


cdef class _Acc:
    """Accumulator: packed key -> GMP rational, in insertion order."""
    cdef unordered_map[uint64_t, size_t] index
    cdef vector[uint64_t] keys
    cdef __mpq_struct *vals
    cdef size_t cap

    def __cinit__(self, size_t hint=16):
        self.cap = hint if hint > 0 else 16
        self.vals = <__mpq_struct *>malloc(self.cap * sizeof(__mpq_struct))
        if self.vals == NULL:
            raise MemoryError()

    def __dealloc__(self):
        cdef size_t i
        if self.vals != NULL:
            for i in range(self.keys.size()):
                mpq_clear(&self.vals[i])
            free(self.vals)

    cdef mpq_ptr slot(self, uint64_t key) except NULL:
        cdef size_t i, n
        cdef __mpq_struct *nv
        cdef unordered_map[uint64_t, size_t].iterator it = self.index.find(key)
        if it != self.index.end():
            return &self.vals[deref(it).second]
        n = self.keys.size()
        if n == self.cap:
            # GMP structs only hold pointers to their limbs, so a bitwise
            # move is safe
            nv = <__mpq_struct *>malloc(2 * self.cap * sizeof(__mpq_struct))
            if nv == NULL:
                raise MemoryError()
            for i in range(n):
                nv[i] = self.vals[i]
            free(self.vals)
            self.vals = nv
            self.cap *= 2
        mpq_init(&self.vals[n])
        self.index[key] = n
        self.keys.push_back(key)
        return &self.vals[n]

    cdef dict to_dict(self):
        cdef dict out = {}
        cdef size_t i
        cdef mpq x
        for i in range(self.keys.size()):
            if mpq_sgn(&self.vals[i]) != 0:
                x = GMPy_MPQ_New(NULL)
                mpq_swap(x.q, &self.vals[i])
                out[self.keys[i]] = x
        return out


cdef class _Terms:
    """A dict polynomial unpacked into parallel C arrays (borrowing coefficients)."""
    cdef vector[uint64_t] keys
    cdef vector[mpq_srcptr] coefs
    cdef list owners

    def __cinit__(self, dict p):
        cdef mpq c
        self.owners = []
        for k, v in p.items():
            c = _as_mpq(v)
            self.owners.append(c)
            self.keys.push_back(<uint64_t>k)
            self.coefs.push_back(c.q)


cdef class _IntTerms:
    """p written as (integer numerators) / (common denominator)."""
    cdef vector[uint64_t] keys
    cdef __mpz_struct *nums
    cdef mpz_t den
    cdef size_t n

    def __cinit__(self, dict p):
        cdef mpq c
        cdef size_t i = 0
        cdef mpz_t f
        self.n = len(p)
        self.nums = <__mpz_struct *>malloc((self.n + 1) * sizeof(__mpz_struct))
        if self.nums == NULL:
            raise MemoryError()
        mpz_init(self.den)
        mpz_set_ui(self.den, 1)
        vals = []
        for k, v in p.items():
            c = _as_mpq(v)
            vals.append(c)
            self.keys.push_back(<uint64_t>k)
            mpz_lcm(self.den, self.den, mpq_denref(c.q))
        mpz_init(f)
        for i in range(self.n):
            c = <mpq>vals[i]
            mpz_init(&self.nums[i])
            mpz_divexact(f, self.den, mpq_denref(c.q))
            mpz_mul(&self.nums[i], mpq_numref(c.q), f)
        mpz_clear(f)

    def __dealloc__(self):
        cdef size_t i
        if self.nums != NULL:
            for i in range(self.n):
                mpz_clear(&self.nums[i])
            free(self.nums)
        mpz_clear(self.den)


cdef int _cmaxdeg(dict p):
    cdef uint64_t key
    cdef int d, m = 0
    for k in p:
        key = k
        d = 0
        while key:
            d += key & CMASK
            key >>= CWIDTH
        if d > m:
            m = d
    return m


def maxdeg(dict p):
    if not _fits(p):
        return _py.maxdeg(p)
    return _cmaxdeg(p)


def mul(dict p, dict q):
    if not p or not q:
        return {}
    if not (_fits(p) and _fits(q)):
        return _py.mul(p, q)
    if _cmaxdeg(p) + _cmaxdeg(q) > MAX_EXP:
        raise OverflowError("product degree exceeds packed width")
    if <object>_maxkey(p) + <object>_maxkey(q) >= KEY_LIMIT:
        return _py.mul(p, q)
    cdef _IntTerms a = _IntTerms(p)
    cdef _IntTerms b = _IntTerms(q)
    cdef unordered_map[uint64_t, size_t] index
    cdef unordered_map[uint64_t, size_t].iterator it
    cdef vector[uint64_t] keys
    cdef size_t i, j, m, na = a.n, nb = b.n
    cdef uint64_t k
    # first pass: distinct output keys
    for i in range(na):
        for j in range(nb):
            k = a.keys[i] + b.keys[j]
            it = index.find(k)
            if it == index.end():
                index[k] = keys.size()
                keys.push_back(k)
    m = keys.size()
    cdef __mpz_struct *acc = <__mpz_struct *>malloc((m + 1) * sizeof(__mpz_struct))
    if acc == NULL:
        raise MemoryError()
    cdef mpz_t den
    cdef mpq x
    cdef dict out = {}
    for i in range(m):
        mpz_init(&acc[i])
    mpz_init(den)
    try:
        for i in range(na):
            for j in range(nb):
                mpz_addmul(&acc[index[a.keys[i] + b.keys[j]]], &a.nums[i], &b.nums[j])
        mpz_mul(den, a.den, b.den)
        for i in range(m):
            if mpz_sgn(&acc[i]) != 0:
                x = GMPy_MPQ_New(NULL)
                mpz_swap(mpq_numref(x.q), &acc[i])
                mpz_set(mpq_denref(x.q), den)
                mpq_canonicalize(x.q)
                out[keys[i]] = x
    finally:
        for i in range(m):
            mpz_clear(&acc[i])
        free(acc)
        mpz_clear(den)
    return out


def addmul(dict acc, dict p, c):
    """acc += c * p, in place; zeros are left for the caller to prune."""
    get = acc.get
    if c == 1:
        for k, v in p.items():
            acc[k] = get(k, 0) + v
    else:
        for k, v in p.items():
            acc[k] = get(k, 0) + c * v


def evaluate(dict p, point):
    if not _fits(p):
        return _py.evaluate(p, point)
    cdef int n = len(point), i, e, d
    cdef uint64_t key
    cdef list pts = [_as_mpq(x) for x in point]
    cdef int md = 0
    for k in p:
        key = k
        i = 0
        while key:
            e = key & CMASK
            if e > md:
                md = e
            key >>= CWIDTH
            i += 1
        if i > n:
            raise IndexError("polynomial has more variables than the point")
    # pows[i*(md+1) + e] = point[i]^e
    cdef size_t stride = md + 1
    cdef __mpq_struct *pows = <__mpq_struct *>malloc(n * stride * sizeof(__mpq_struct) + 1)
    if pows == NULL:
        raise MemoryError()
    cdef mpq_t t, total
    cdef mpq x, c
    for i in range(n):
        x = <mpq>pts[i]
        mpq_init(&pows[i * stride])
        mpq_set_si(&pows[i * stride], 1, 1)
        for d in range(1, md + 1):
            mpq_init(&pows[i * stride + d])
            mpq_mul(&pows[i * stride + d], &pows[i * stride + d - 1], x.q)
    mpq_init(t)
    mpq_init(total)
    try:
        for k, v in p.items():
            c = _as_mpq(v)
            mpq_set(t, c.q)
            key = k
            i = 0
            while key:
                e = key & CMASK
                if e:
                    mpq_mul(t, t, &pows[i * stride + e])
                key >>= CWIDTH
                i += 1
            mpq_add(total, total, t)
        out = GMPy_MPQ_New(NULL)
        mpq_swap((<mpq>out).q, total)
        return out
    finally:
        for i in range(n * stride):
            mpq_clear(&pows[i])
        free(pows)
        mpq_clear(t)
        mpq_clear(total)


def vanishes_on(dict p, form):
    k = _py._pivot(form)
    nprobe = len(_py._PROBE)
    point = [_mpq(_py._PROBE[i % nprobe] + i // nprobe) for i in range(len(form))]
    rest = sum(form[i] * point[i] for i in range(len(form)) if i != k)
    point[k] = _mpq(-rest, form[k])
    return evaluate(p, point) == 0


def div_linear(dict p, form):
    """Exact quotient p / sum(form[i] u_i), or None when it does not divide."""
    if not p:
        return {}
    if not _fits(p):
        return _py.div_linear(p, form)
    if not vanishes_on(p, form):
        return None
    cdef int k = _py._pivot(form)
    cdef int sk = CWIDTH * k
    cdef uint64_t key, ukey
    cdef int e, d = 0, j
    cdef dict groups = {}
    for kk, c in p.items():
        key = kk
        e = (key >> sk) & CMASK
        g = groups.get(e)
        if g is None:
            groups[e] = g = {}
        g[key - (<uint64_t>e << sk)] = c
        if e > d:
            d = e
    if d == 0:
        return None
    cdef vector[uint64_t] rkeys
    cdef list rcoefs = []
    for i, c in enumerate(form):
        if i != k and c:
            rkeys.push_back(<uint64_t>1 << (CWIDTH * i))
            rcoefs.append(_mpq(-c, form[k]))
    cdef size_t nr = rkeys.size(), r
    cdef vector[mpq_srcptr] rptr
    for x in rcoefs:
        rptr.push_back((<mpq>x).q)
    cdef mpq inv = _mpq(1, form[k])
    cdef dict out = {}
    cdef dict cur = groups[d]
    cdef _Acc nxt
    cdef _Terms ct
    cdef mpq_t tmp
    cdef mpq_ptr s
    cdef size_t a, na
    cdef mpq y
    mpq_init(tmp)
    try:
        for j in range(d - 1, -1, -1):
            ukey = <uint64_t>j << sk
            ct = _Terms(cur)
            na = ct.keys.size()
            nxt = _Acc(len(cur) * (nr + 1) + 1)
            for kk, c in groups.get(j, {}).items():
                s = nxt.slot(kk)
                mpq_set(s, (<mpq>_as_mpq(c)).q)
            for a in range(na):
                y = GMPy_MPQ_New(NULL)
                mpq_mul(y.q, ct.coefs[a], inv.q)
                out[ct.keys[a] + ukey] = y
                for r in range(nr):
                    s = nxt.slot(ct.keys[a] + rkeys[r])
                    mpq_mul(tmp, ct.coefs[a], rptr[r])
                    mpq_add(s, s, tmp)
            cur = nxt.to_dict()
    finally:
        mpq_clear(tmp)
    if cur:
        return None
    return out


def subst(dict p, images):
    """Substitute variable i by the linear dict polynomial images[i]."""
    simple = []
    general = []
    for i, img in enumerate(images):
        if len(img) == 1:
            (kk, c), = img.items()
            simple.append((i, kk, c))
        elif img:
            general.append((i, img))
        else:
            simple.append((i, None, 0))
    cdef dict buckets = {}
    gidx = [i for i, _ in general]
    for key, c in p.items():
        nk = 0
        coef = c
        for i, kk, sc in simple:
            e = (key >> (WIDTH * i)) & MASK
            if e:
                if kk is None:
                    coef = 0
                    break
                nk += e * kk
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
        return {kk: c for kk, c in buckets.get((), {}).items() if c}
    pows = {}

    def power(j, e):
        hit = pows.get((j, e))
        if hit is None:
            if e == 0:
                hit = {0: _mpq(1)}
            elif e == 1:
                hit = general[j][1]
            else:
                hit = mul(power(j, e - 1), general[j][1])
            pows[(j, e)] = hit
        return hit

    cdef dict out = {}
    for ge, b in buckets.items():
        prod = {0: _mpq(1)}
        for j, e in enumerate(ge):
            if e:
                prod = mul(prod, power(j, e))
        addmul(out, mul(prod, {kk: c for kk, c in b.items() if c}), 1)
    return {kk: c for kk, c in out.items() if c}
