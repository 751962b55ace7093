"""Seeded random moulds for property tests and benchmarks."""

import random

from gmpy2 import mpq

from .mould import Mould
from .ratfrac import RatFrac


def _exponents(r, deg, rng):
    cuts = sorted(rng.randint(0, deg) for _ in range(r - 1))
    bounds = [0] + cuts + [deg]
    return tuple(bounds[i + 1] - bounds[i] for i in range(r))


def random_poly(r, rng, degree=2, terms=3, coeff=5, homogeneous=True, alphabet="u"):
    m = {}
    for _ in range(terms):
        deg = degree if homogeneous else rng.randint(0, degree)
        e = _exponents(r, deg, rng)
        c = mpq(rng.randint(-coeff, coeff), rng.randint(1, 3))
        m[e] = m.get(e, 0) + c
    return RatFrac.from_exponents(r, m, (), alphabet)


def random_mould(seed, depth=3, degree=2, terms=3, constant=0, rational=False,
                 alphabet="u", homogeneous=True, truncate=True):
    """Polynomial (or, with ``rational``, u_i / sum-denominator) random mould."""
    rng = random.Random(seed)
    comps = {}
    for r in range(1, depth + 1):
        x = random_poly(r, rng, degree, terms, homogeneous=homogeneous, alphabet=alphabet)
        if rational and r > 1:
            i = rng.randrange(r)
            form = [0] * r
            form[i] = 1
            if rng.random() < 0.5:
                form = [1] * r
            x = x.div_form(tuple(form))
        comps[r] = x
    return Mould(comps, constant, depth if truncate else None, alphabet)
