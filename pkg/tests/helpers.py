"""Random inputs shared by the test modules."""

import random

from gmpy2 import mpq

from mouldkit.lie import NCSeries, from_lyndon, lyndon_words
from mouldkit.mould import CPoly
from mouldkit.randmould import random_mould


def random_lie(seed, weights=(2, 3, 4), terms=3):
    """Random Lie polynomial with no pure-a part, as an {a, b}-series."""
    rng = random.Random(seed)
    coords = {}
    for _ in range(terms):
        n = rng.choice(weights)
        w = rng.choice([x for x in lyndon_words(n) if "b" in x])
        coords[w] = mpq(rng.randint(-4, 4) or 1, rng.randint(1, 3))
    return from_lyndon(coords)


def random_cpoly(seed, max_weight=6, terms=4):
    rng = random.Random(seed)
    t = {}
    for _ in range(terms):
        n = rng.randint(1, max_weight)
        word = []
        while n:
            k = rng.randint(1, n)
            word.append(k)
            n -= k
        t[tuple(word)] = rng.randint(-3, 3)
    return CPoly(t)


def generic_mould(seed, depth=3, constant=0):
    """Non-homogeneous polynomial mould; avoids the degenerate low-degree cases."""
    return random_mould(seed, depth, degree=3, constant=constant, homogeneous=False)


def ab(s):
    return NCSeries(s) if isinstance(s, dict) else s
