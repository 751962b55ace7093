"""Exact sparse Gaussian elimination over Q with deterministic pivoting."""

from gmpy2 import mpq


def rref(rows, ncols):
    """Reduced row echelon form of sparse rows (dicts col -> mpq).

    Pivots are taken column by column in increasing order, each from the
    first remaining row with a nonzero entry, so the result only depends on
    the input order.  Returns (pivot rows, pivot columns).
    """
    pivots = {}
    for row in rows:
        r = {c: mpq(v) for c, v in row.items() if v}
        for pc in sorted(pivots):
            v = r.get(pc)
            if v:
                for c, pv in pivots[pc].items():
                    nv = r.get(c, 0) - v * pv
                    if nv:
                        r[c] = nv
                    else:
                        r.pop(c, None)
        if not r:
            continue
        pc = min(r)
        inv = 1 / r[pc]
        r = {c: v * inv for c, v in r.items()}
        for oc, orow in pivots.items():
            v = orow.get(pc)
            if v:
                for c, pv in r.items():
                    nv = orow.get(c, 0) - v * pv
                    if nv:
                        orow[c] = nv
                    else:
                        orow.pop(c, None)
        pivots[pc] = r
    cols = sorted(pivots)
    return [pivots[c] for c in cols], cols


def nullspace(rows, ncols):
    """Basis of {x : row . x = 0 for every row}, one vector per free column."""
    prow, pcols = rref(rows, ncols)
    pset = set(pcols)
    basis = []
    for free in range(ncols):
        if free in pset:
            continue
        v = [mpq(0)] * ncols
        v[free] = mpq(1)
        for pc, row in zip(pcols, prow):
            x = row.get(free)
            if x:
                v[pc] = -x
        basis.append(v)
    return basis


def rank(rows, ncols):
    return len(rref(rows, ncols)[1])
