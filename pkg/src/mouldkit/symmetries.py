"""Alternality, alternility, push-invariance and the dimorphy classes.

"Up to a constant mould" is tested strictly: a constant mould K with value
c_r in depth r contributes C(r, i) * c_r to the split-(i, r-i) defect of
either symmetry, so the defects of P must equal -C(r, i) * c_r for a single
c_r per depth.
"""

import json
from itertools import combinations
from math import comb

from .mould import MouldError, delta_inv, push, swap
from .ratfrac import RatFrac, RatSum, format_scalar

HOLDS = "holds"
FAILS = "fails"
UP_TO_CONSTANT = "holds-up-to-constant"


class SymmetryReport:
    """Verdict for one property with per-depth constants and a witness."""

    def __init__(self, prop, verdict, constants=None, witness=None, parts=None):
        self.property = prop
        self.verdict = verdict
        self.constants = constants or {}
        self.witness = witness
        self.parts = parts or []

    @property
    def ok(self):
        return self.verdict in (HOLDS, UP_TO_CONSTANT)

    def __bool__(self):
        return self.ok

    def to_dict(self):
        d = {"property": self.property, "verdict": self.verdict}
        if self.constants:
            d["constants"] = {str(r): format_scalar(c) for r, c in sorted(self.constants.items())}
        if self.witness:
            d["witness"] = self.witness
        if self.parts:
            d["parts"] = [p.to_dict() for p in self.parts]
        return d

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_text(self, indent=""):
        line = "%s%s: %s" % (indent, self.property, self.verdict)
        if self.constants:
            line += " (constants %s)" % ", ".join(
                "r=%d: %s" % (r, format_scalar(c)) for r, c in sorted(self.constants.items()))
        lines = [line]
        if self.witness:
            w = self.witness
            lines.append("%s  first failure: depth %s, split %s, defect %s"
                         % (indent, w.get("depth"), w.get("split"), w.get("defect")))
        for p in self.parts:
            lines.append(p.to_text(indent + "  "))
        return "\n".join(lines)

    def __repr__(self):
        return "SymmetryReport(%s: %s)" % (self.property, self.verdict)


def _perm_images(r, order):
    """Images so that P(w) with w the reordered letters becomes a substitution."""
    imgs = []
    for j in order:
        v = [0] * r
        v[j] = 1
        imgs.append(tuple(v))
    return imgs


def shuffles(i, r):
    """Orders of 0..r-1 interleaving (0..i-1) and (i..r-1)."""
    out = []
    for pos in combinations(range(r), i):
        pset = set(pos)
        first, second = iter(range(i)), iter(range(i, r))
        out.append(tuple(next(first) if k in pset else next(second) for k in range(r)))
    return out


def alternal_defect(x, r, i):
    """sum over shuffles w of (u1..ui) and (u_{i+1}..ur) of x(w)."""
    s = RatSum(r, x.alphabet)
    for order in shuffles(i, r):
        s.add(x.subst(_perm_images(r, order), r))
    return s.result()


def stuffles(i, r):
    """Contracting shuffles of (0..i-1) with (i..r-1): tuples of slots, a slot
    being (p,) or a merged pair (p, q) with p in the first word."""
    out = []

    def rec(a, b, acc):
        if a == i and b == r:
            out.append(tuple(acc))
            return
        if a < i:
            rec(a + 1, b, acc + [(a,)])
        if b < r:
            rec(a, b + 1, acc + [(b,)])
        if a < i and b < r:
            rec(a + 1, b + 1, acc + [(a, b)])

    rec(0, i, [])
    return out


def _contracted_value(P, slots, r, alphabet):
    """Value of a contracted word: iterated divided differences over merged slots."""
    m = len(slots)
    comp = P.comps.get(m) if m else None
    if comp is None:
        return None
    merged = [k for k, s in enumerate(slots) if len(s) == 2]
    s = RatSum(r, alphabet)
    for mask in range(1 << len(merged)):
        order = []
        sign = 1
        bit = 0
        for slot in slots:
            if len(slot) == 1:
                order.append(slot[0])
            else:
                if mask >> bit & 1:
                    order.append(slot[1])
                    sign = -sign
                else:
                    order.append(slot[0])
                bit += 1
        s.add(comp.subst(_perm_images(r, order), r), sign)
    val = s.result()
    for k in merged:
        p, q = slots[k]
        v = [0] * r
        v[p] = 1
        v[q] = -1
        val = val.div_form(tuple(v))
    return val


def alternil_defect(P, r, i):
    alphabet = P.alphabet
    s = RatSum(r, alphabet)
    for slots in stuffles(i, r):
        v = _contracted_value(P, slots, r, alphabet)
        if v is not None:
            s.add(v)
    return s.result()


def _collect(P, prop, defect_fn, up_to_constant):
    top = P.top()
    constants = {}
    for r in range(2, top + 1):
        c_r = None
        for i in range(1, r // 2 + 1):
            d = defect_fn(P, r, i)
            if not d.num:
                val = 0
            elif up_to_constant and d.is_constant():
                val = d.constant_value()
            else:
                return SymmetryReport(prop, FAILS, witness={
                    "depth": r, "split": [i, r - i], "defect": d.to_string()})
            c = -val / comb(r, i)
            if c_r is None:
                c_r = c
            elif c != c_r:
                return SymmetryReport(prop, FAILS, witness={
                    "depth": r, "split": [i, r - i],
                    "defect": "constant %s does not match %s from a shorter split"
                              % (format_scalar(-c * comb(r, i)), format_scalar(-c_r * comb(r, i)))})
        if c_r:
            constants[r] = c_r
    if constants:
        return SymmetryReport(prop, UP_TO_CONSTANT, constants)
    return SymmetryReport(prop, HOLDS)


def alternality_defects(P, up_to_constant=False):
    """Shuffle defects in every depth; splits (i, r-i) and (r-i, i) agree, so
    i <= r/2 suffices."""
    return _collect(P, "alternal", lambda M, r, i: alternal_defect(M[r], r, i)
                    if r in M.comps else RatFrac.zero(r, M.alphabet), up_to_constant)


def alternility_defects(P, up_to_constant=True):
    if P.alphabet != "v":
        raise MouldError("alternility is tested on v-alphabet (swapped) moulds")
    return _collect(P, "alternil", alternil_defect, up_to_constant)


def is_push_invariant(P):
    if P.alphabet != "u":
        raise MouldError("push-invariance is defined on the u-alphabet")
    Q = push(P)
    for r in range(1, P.top() + 1):
        d = P[r] - Q[r]
        if d.num:
            return SymmetryReport("push", FAILS, witness={
                "depth": r, "split": None, "defect": d.to_string()})
    return SymmetryReport("push", HOLDS)


def is_even_depth1(P):
    x = P[1] if P.top() >= 1 else RatFrac.zero(1, P.alphabet)
    d = x - x.subst([(-1,)], 1)
    if d.num:
        return SymmetryReport("even", FAILS, witness={"depth": 1, "split": None,
                                                     "defect": d.to_string()})
    return SymmetryReport("even", HOLDS)


def is_polynomial(P):
    for r in sorted(P.comps):
        if not P.comps[r].is_polynomial():
            return SymmetryReport("polynomial", FAILS, witness={
                "depth": r, "split": None, "defect": P.comps[r].to_string()})
    return SymmetryReport("polynomial", HOLDS)


def _bundle(prop, parts):
    ok = all(p.ok for p in parts)
    if not ok:
        first = next(p for p in parts if not p.ok)
        return SymmetryReport(prop, FAILS, witness=first.witness, parts=parts)
    consts = {}
    verdict = HOLDS
    for p in parts:
        if p.verdict == UP_TO_CONSTANT:
            verdict = UP_TO_CONSTANT
            consts.update(p.constants)
    return SymmetryReport(prop, verdict, consts, parts=parts)


def bialternality(P):
    """Alternal, with swap alternal up to a constant mould."""
    a = alternality_defects(P)
    s = alternality_defects(swap(P), up_to_constant=True)
    s.property = "swap-alternal"
    return _bundle("bialternal", [a, s])


def is_ds_mould(P):
    s = alternility_defects(swap(P))
    s.property = "swap-alternil"
    return _bundle("ds", [is_polynomial(P), alternality_defects(P), s, is_even_depth1(P)])


def is_dsell_mould(P):
    N = delta_inv(P)
    return _bundle("dsell", [is_polynomial(P), is_even_depth1(N), bialternality(N)])


PROPERTIES = ("alternal", "alternil", "push", "bialternal", "ds", "dsell", "even")


def check(P, prop):
    if prop == "alternal":
        return alternality_defects(P)
    if prop == "alternil":
        Q = P if P.alphabet == "v" else swap(P)
        return alternility_defects(Q)
    if prop == "push":
        return is_push_invariant(P)
    if prop == "bialternal":
        return bialternality(P)
    if prop == "ds":
        return is_ds_mould(P)
    if prop == "dsell":
        return is_dsell_mould(P)
    if prop == "even":
        return is_even_depth1(P)
    raise MouldError("unknown property %r" % prop)


def classify(P):
    """Reports for evenness, bialternality, ds and dsell membership."""
    return {
        "even": is_even_depth1(P),
        "bialternal": bialternality(P),
        "ds": is_ds_mould(P),
        "dsell": is_dsell_mould(P),
    }
