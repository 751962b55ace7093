"""Weight-graded solver for the double shuffle Lie algebra on the mould side.

For fixed weight n the unknowns are the coefficients x_w of the C-words w of
weight n and depth <= d, plus one constant c_r per depth.  With F = ma(sum
x_w C_w) we impose, linearly in the unknowns,

* every shuffle defect of F vanishes (F alternal),
* every contracting-shuffle defect of swap(F) at split (i, r-i) equals
  -C(r, i) c_r (swap(F) alternil up to a constant mould),
* F(u1) = F(-u1).
"""

from math import comb

from gmpy2 import mpq

from .linalg import nullspace, rref
from .mould import CPoly, ma, swap
from .dshuffle import compositions
from .symmetries import alternal_defect, alternil_defect


class DsElement:
    """A homogeneous ds element f of weight n, as a C-polynomial."""

    def __init__(self, weight, f, provenance="solver"):
        self.weight = weight
        self.f = f
        self.provenance = provenance

    @property
    def mould(self):
        return ma(self.f)

    def depth1(self):
        return self.f.terms.get((self.weight,), mpq(0))

    def __eq__(self, other):
        return isinstance(other, DsElement) and self.weight == other.weight and self.f == other.f

    __hash__ = None

    def __repr__(self):
        return "DsElement(weight=%d, %r, %s)" % (self.weight, self.f, self.provenance)


def ds_words(n, d=None):
    d = n if d is None else d
    ws = [c for c in compositions(n) if len(c) <= d]
    ws.sort(key=lambda w: (len(w), w))
    return ws


def _coeff_rows(defects_by_col, const_col=None, const_coef=0):
    """Rows of a system sum_j x_j * defect_j (+ const_coef * c) = 0 by monomial."""
    by_mon = {}
    for j, d in defects_by_col:
        if d.den:
            raise ValueError("polynomial defect expected")
        for k, c in d.num.items():
            by_mon.setdefault(k, {})[j] = c
    if const_col is not None and const_coef:
        by_mon.setdefault(0, {})[const_col] = mpq(const_coef)
    return [by_mon[k] for k in sorted(by_mon)]


def ds_system(n, d=None, even=True):
    """(rows, ncols, words) of the linear system cutting out ds in weight n."""
    if n < 1:
        raise ValueError("weight must be positive")
    d = n if d is None else d
    if d < 1:
        raise ValueError("infeasible depth cap %d" % d)
    words = ds_words(n, d)
    nw = len(words)
    ncols = nw + d + 1
    moulds = [ma(CPoly.word(*w)) for w in words]
    swapped = [swap(F) for F in moulds]
    rows = []
    for r in range(2, d + 1):
        for i in range(1, r // 2 + 1):
            al = [(j, alternal_defect(F[r], r, i)) for j, F in enumerate(moulds) if r in F.comps]
            rows += _coeff_rows(al)
            il = [(j, alternil_defect(S, r, i)) for j, S in enumerate(swapped)]
            rows += _coeff_rows(il, nw + r, comb(r, i))
    if even:
        for j, w in enumerate(words):
            if len(w) == 1 and (w[0] - 1) % 2:
                rows.append({j: mpq(1)})
    return rows, ncols, words


def solve_ds(n, d=None, even=True):
    """Basis of weight-n ds elements, depth-1 coefficient normalized to 1.

    The basis is put in reduced echelon form with the depth-1 word first, so
    at most one element has a depth-1 part.
    """
    if n < 3:
        raise ValueError("solve_ds needs weight >= 3")
    rows, ncols, words = ds_system(n, d, even)
    nw = len(words)
    vecs = [v[:nw] for v in nullspace(rows, ncols)]
    vecs = [v for v in vecs if any(v)]
    prows, _ = rref([{j: c for j, c in enumerate(v) if c} for v in vecs], nw)
    out = []
    for row in prows:
        f = CPoly({words[j]: c for j, c in row.items()})
        out.append(DsElement(n, f, "solver"))
    return out


def ds_dimension(n, d=None, even=True):
    return len(solve_ds(n, d, even))


__all__ = ["DsElement", "solve_ds", "ds_dimension", "ds_system", "ds_words"]
