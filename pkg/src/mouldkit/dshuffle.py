"""Double shuffle relations at the level of word coefficients.

This is an independent route to the weight-n double shuffle space: the
unknowns are the coefficients of all {x, y}-words of weight n (x = a,
y = b), constrained by

* (f | u sh v) = 0 for nonempty words u, v (f is a Lie element), and
* (pi_y f + t y^n | u * v) = 0 for nonempty words u, v in y_k = x^(k-1) y,
  where * is the stuffle and t is a free scalar.

No moulds are involved, so agreement with the mould-side solver checks the
alternility implementation.
"""

from functools import lru_cache
from itertools import product

from .lie import NCSeries, to_cpoly
from .linalg import nullspace


@lru_cache(maxsize=None)
def shuffle(u, v):
    """Shuffle product of two words as a dict word -> multiplicity."""
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    out = {}
    for w, c in shuffle(u[1:], v).items():
        out[u[0] + w] = out.get(u[0] + w, 0) + c
    for w, c in shuffle(u, v[1:]).items():
        out[v[0] + w] = out.get(v[0] + w, 0) + c
    return out


@lru_cache(maxsize=None)
def stuffle(u, v):
    """Stuffle of words given as tuples of positive integers (y_k indices)."""
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    out = {}

    def put(head, d):
        for w, c in d.items():
            k = (head,) + w
            out[k] = out.get(k, 0) + c

    put(u[0], stuffle(u[1:], v))
    put(v[0], stuffle(u, v[1:]))
    put(u[0] + v[0], stuffle(u[1:], v[1:]))
    return out


def compositions(n):
    if n == 0:
        return [()]
    out = []
    for k in range(1, n + 1):
        for rest in compositions(n - k):
            out.append((k,) + rest)
    return out


def y_word(comp):
    return "".join("a" * (k - 1) + "b" for k in comp)


def oracle_basis(n, even=False):
    """Basis of the weight-n double shuffle space as {a, b}-series."""
    words = ["".join(p) for p in product("ab", repeat=n)]
    index = {w: i for i, w in enumerate(words)}
    t_col = len(words)
    ncols = t_col + 1
    rows = []
    for k in range(1, n):
        for u in product("ab", repeat=k):
            for v in product("ab", repeat=n - k):
                u_, v_ = "".join(u), "".join(v)
                if u_ > v_:
                    continue
                row = {}
                for w, c in shuffle(u_, v_).items():
                    row[index[w]] = row.get(index[w], 0) + c
                rows.append(row)
    for k in range(1, n):
        for cu in compositions(k):
            for cv in compositions(n - k):
                if k > n - k or (k == n - k and cu > cv):
                    continue
                row = {}
                for w, c in stuffle(cu, cv).items():
                    if w == (1,) * n:
                        row[t_col] = row.get(t_col, 0) + c
                    i = index[y_word(w)]
                    row[i] = row.get(i, 0) + c
                rows.append(row)
    if even:
        # depth 1 is the coefficient of C_n, read off on the word a^(n-1) b
        if n % 2 == 0:
            rows.append({index["a" * (n - 1) + "b"]: 1})
    basis = []
    for v in nullspace(rows, ncols):
        s = NCSeries({w: v[i] for w, i in index.items() if v[i]})
        if not s.is_zero():
            basis.append(s)
    return basis


def oracle_cbasis(n, even=False):
    """The oracle basis rewritten in C-words, echelonized for comparison."""
    return [to_cpoly(s) for s in oracle_basis(n, even)]


def span_equal(xs, ys):
    """Whether two lists of C-polynomials span the same Q-space."""
    from .linalg import rank
    keys = sorted({w for p in xs + ys for w in p.terms})
    col = {w: i for i, w in enumerate(keys)}

    def rows(ps):
        return [{col[w]: c for w, c in p.terms.items()} for p in ps]

    rx = rank(rows(xs), len(keys))
    ry = rank(rows(ys), len(keys))
    rxy = rank(rows(xs + ys), len(keys))
    return rx == ry == rxy


