"""From a ds element f to the derivation E and the checks around it.

    F = ma(f),  A = Ad_ari(invpal).F,  M = Delta(A),  m = ma^-1(M),
    E: a -> m, b -> partner(m).

``gamma_s`` certifies A and M on the way; the ``verify_*`` functions return
``Verdict`` objects carrying a witness on failure.
"""

from .dari import AExt, darit, delta_star, dgarit_apply, exp_derivation, log_dari
from .ds import DsElement, solve_ds
from .flexion import ad_ari, gari
from .lie import (NCSeries, base_points, bracket, derivation_apply, extend_from_t02,
                  from_cpoly, partner_derivation, substitute, to_cpoly)
from .mould import (Mould, b_mould, dar, delta, dur, ma, ma_inv, mu)
from .pal import PalTable, dupal_component
from .symmetries import (alternality_defects, bialternality, is_polynomial,
                         is_push_invariant)

DEFAULT_DEPTH = 5
DEFAULT_WEIGHT = 9


class CertificationError(RuntimeError):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class Verdict:
    def __init__(self, name, holds, witness=None, details=None):
        self.name = name
        self.holds = bool(holds)
        self.witness = witness
        self.details = details or []

    def __bool__(self):
        return self.holds

    def to_dict(self):
        d = {"name": self.name, "holds": self.holds}
        if self.witness is not None:
            d["witness"] = self.witness
        if self.details:
            d["details"] = [x.to_dict() for x in self.details]
        return d

    @classmethod
    def from_dict(cls, d):
        return cls(d["name"], d["holds"], d.get("witness"),
                   [cls.from_dict(x) for x in d.get("details", [])])

    def to_text(self, indent=""):
        lines = ["%s%s: %s" % (indent, "PASS" if self.holds else "FAIL", self.name)]
        if self.witness is not None and not self.holds:
            lines.append("%s  witness: %s" % (indent, self.witness))
        for x in self.details:
            lines.append(x.to_text(indent + "  "))
        return "\n".join(lines)

    def __repr__(self):
        return "Verdict(%s: %s)" % (self.name, self.holds)


def _cmp(name, got, want):
    diff = got.first_difference(want)
    if diff is None:
        return Verdict(name, True)
    return Verdict(name, False, _witness(diff))


def _witness(diff):
    if diff is None:
        return None
    out = []
    for x in diff:
        if hasattr(x, "to_string"):
            out.append(x.to_string())
        elif hasattr(x, "mould"):
            out.append(repr(x))
        else:
            out.append(str(x))
    return out


def _sym_verdict(name, report):
    return Verdict(name, report.ok, report.witness,
                   [Verdict(p.property, p.ok, p.witness) for p in report.parts])


# the record ---------------------------------------------------------------


class PipelineRecord:
    """f, F, A, M, m and the verdicts obtained while computing them."""

    def __init__(self, f, weight, depth, F, A, M, m, verdicts=None):
        self.f = f
        self.weight = weight
        self.depth = depth
        self.F = F
        self.A = A
        self.M = M
        self.m = m
        self.verdicts = verdicts or []

    @property
    def ok(self):
        return all(v.holds for v in self.verdicts)

    def m_series(self, W=None):
        return from_cpoly(self.m, W)

    def to_doc(self):
        from . import serialize as S
        return {"kind": "pipeline-record", "version": S.VERSION, "weight": self.weight,
                "depth": self.depth, "f": S.cpoly_to_doc(self.f),
                "F": S.mould_to_doc(self.F), "A": S.mould_to_doc(self.A),
                "M": S.mould_to_doc(self.M), "m": S.cpoly_to_doc(self.m),
                "verdicts": [v.to_dict() for v in self.verdicts]}

    @classmethod
    def from_doc(cls, doc):
        from . import serialize as S
        S._check_header(doc, "pipeline-record")
        try:
            return cls(S.cpoly_from_doc(doc["f"]), int(doc["weight"]), int(doc["depth"]),
                       S.mould_from_doc(doc["F"]), S.mould_from_doc(doc["A"]),
                       S.mould_from_doc(doc["M"]), S.cpoly_from_doc(doc["m"]),
                       [Verdict.from_dict(v) for v in doc.get("verdicts", [])])
        except (KeyError, TypeError) as exc:
            raise S.FormatError("malformed pipeline record: %s" % exc) from exc


def gamma_s(elem, depth=DEFAULT_DEPTH, table=None, certify=True):
    """Run f -> F -> A -> M -> m to the given mould depth."""
    if isinstance(elem, DsElement):
        f, n = elem.f, elem.weight
    else:
        f = elem
        ws = f.weight_set()
        if len(ws) != 1:
            raise ValueError("f must be homogeneous in weight")
        n = ws.pop()
    table = table or PalTable.load(depth)
    F = ma(f).with_depth(depth)
    A = ad_ari(table.invpal, F, depth, log=table.log_invpal)
    M = delta(A)
    verdicts = [
        _sym_verdict("M polynomial", is_polynomial(M)),
        _sym_verdict("M alternal", alternality_defects(M)),
        _sym_verdict("M push-invariant", is_push_invariant(M)),
        _sym_verdict("A bialternal up to constant", bialternality(A)),
    ]
    bad = [(r, M[r].homogeneous_degree()) for r in M.comps if M[r].homogeneous_degree() != n + 1]
    verdicts.append(Verdict("M homogeneous of degree %d" % (n + 1), not bad,
                            None if not bad else {"depth": bad[0][0], "degree": bad[0][1]}))
    lowest = M[1] == ma(f)[1].mul_form((1,)).mul_form((1,))
    verdicts.append(Verdict("M(u1) = u1^2 F(u1)", lowest))
    failed = [v for v in verdicts if not v.holds]
    if failed and certify:
        raise CertificationError("certification failed: %s" % failed[0].name,
                                 failed[0].to_dict())
    m = ma_inv(M) if M.is_polynomial() else None
    return PipelineRecord(f, n, depth, F, A, M, m, verdicts)


def build_E(rec, W=DEFAULT_WEIGHT, check=True):
    """E: a -> m, b -> partner(m), asserting E([a, b]) = 0 to weight W."""
    if W - (rec.weight + 1) > rec.depth:
        raise ValueError("weight %d needs m to depth %d, record has %d"
                         % (W, W - rec.weight - 1, rec.depth))
    m = rec.m_series(W)
    E = partner_derivation(m)
    if check:
        t12 = bracket(NCSeries.gen("a"), NCSeries.gen("b"), W)
        img = derivation_apply(E, t12, W)
        if not img.is_zero():
            raise CertificationError("E([a,b]) != 0", img.first_difference(NCSeries({}, W)))
    return E


def psi_substituted(f, x, y, W):
    """psi(x, y) with psi(x, y) = f(x, -y)."""
    return substitute(from_cpoly(f), {"a": x, "b": -y}, W)


def verify_prop221(rec, W=DEFAULT_WEIGHT):
    """E(t02) = [psi(t02, t12), t02] to weight W."""
    E = build_E(rec, W)
    _, t02, t12 = base_points(W)
    lhs = derivation_apply(E, t02, W)
    rhs = bracket(psi_substituted(rec.f, t02, t12, W), t02, W)
    diff = lhs.first_difference(rhs)
    low = all(len(w) >= rec.weight + 2 for w in lhs.terms) and \
        all(len(w) >= rec.weight + 2 for w in rhs.terms)
    return Verdict("E(t02) = [psi(t02,t12), t02] to weight %d (f of weight %d)" % (W, rec.weight),
                   diff is None and low, _witness(diff),
                   [Verdict("both sides vanish below weight %d" % (rec.weight + 2), low)])


def verify_roundtrip(rec, W=DEFAULT_WEIGHT):
    """The derivation from M kills [a, b], and extending from E(t02) gives E back."""
    E = build_E(rec, W, check=False)
    t12 = bracket(NCSeries.gen("a"), NCSeries.gen("b"), W)
    kills = derivation_apply(E, t12, W).is_zero()
    _, t02, _ = base_points(W)
    D = extend_from_t02(derivation_apply(E, t02, W), W)
    same = D.va == E.va.truncate(W) and D.vb == E.vb.truncate(W)
    return Verdict("derivation roundtrip to weight %d" % W, kills and same, None,
                   [Verdict("E([a,b]) = 0", kills),
                    Verdict("extend_from_t02(E(t02)) = E", same)])


# the conjugation identity ---------------------------------------------------


def ma_ext(s):
    """ma on a series whose only pure-a word is the linear term a."""
    c = s.coeff("a")
    rest = s - NCSeries({"a": c}) if c else s
    return AExt(c, ma(to_cpoly(rest)))


def verify_prop331(rec, depth=4, table=None):
    """Darit(M) = G o Darit(Delta F) o G^-1 with G = Dgarit(Delta*(invpal)),
    tested on a, B0 and B2, plus the three-step chain on ma(t02)."""
    R = min(depth, rec.depth)
    table = table or PalTable.load(R)
    n = rec.weight
    M = rec.M.truncate(R)
    DF = delta(rec.F.truncate(R))
    ds = delta_star(table.invpal.truncate(R), R)
    L = log_dari(ds, R)

    def G(X):
        return dgarit_apply(ds, X, R, log=L)

    def G_inv(X):
        return exp_derivation(lambda Y: darit(-L, Y, R), X, R)

    def lhs(X):
        return darit(M, X, R)

    def rhs(X):
        return G(darit(DF, G_inv(X), R))

    def as_ext(X):
        return X if isinstance(X, AExt) else AExt(0, X)

    details = []
    tests = [("a", AExt.a(R)), ("B0", b_mould(0).with_depth(R)), ("B2", b_mould(2).with_depth(R))]
    for name, X in tests:
        got, want = as_ext(rhs(X)), as_ext(lhs(X))
        ok = got == want
        details.append(Verdict("Darit(M) = G Darit(Delta F) G^-1 on %s to depth %d" % (name, R), ok))

    W = R + n + 2
    _, t02, t12 = base_points(W)
    mt02 = ma_ext(t02)
    mt02 = AExt(mt02.coeff, mt02.mould.truncate(R))
    step1 = as_ext(G_inv(mt02)) == AExt.a(R)
    details.append(Verdict("G^-1 sends ma(t02) to a", step1))
    inner = bracket(psi_substituted(rec.f, NCSeries.gen("a"), t12, W), NCSeries.gen("a"), W)
    step2 = as_ext(darit(DF, AExt.a(R), R)) == ma_ext(inner)
    details.append(Verdict("Darit(Delta F).a = Delta F = ma([psi(a,t12), a])", step2))
    B1 = b_mould(1).with_depth(R)
    step3a = G(B1) == B1
    step3b = as_ext(G(AExt.a(R))) == mt02
    full = bracket(psi_substituted(rec.f, t02, t12, W), t02, W)
    step3c = as_ext(G(DF)) == ma_ext(full)
    details.append(Verdict("G fixes B1 = -ma(t12)", step3a))
    details.append(Verdict("G sends a to ma(t02)", step3b))
    details.append(Verdict("G(Delta F) = ma([psi(t02,t12), t02])", step3c))
    return Verdict("conjugation identity (f of weight %d, depth %d)" % (n, R),
                   all(d.holds for d in details), None, details)


# suites -------------------------------------------------------------------------


def verify_pal(depth=6, table=None):
    table = table or PalTable.load(depth)
    R = depth
    dup = table.dupal
    shape = all(dup[r] == dupal_component(r) for r in range(1, R + 1))
    odd = all(dup[r].is_zero() for r in range(3, R + 1, 2))
    ident = dur(table.pal).with_constant(0) == mu(table.pal, dup)
    inv = gari(table.pal, table.invpal, R) == Mould.one(R)
    return Verdict("pal kernel to depth %d" % R, shape and odd and ident and inv, None, [
        Verdict("dupal matches its closed form", shape),
        Verdict("dupal vanishes in odd depth >= 3", odd),
        Verdict("dur(pal) = mu(pal, dupal)", ident),
        Verdict("gari(pal, invpal) = 1", inv),
    ])


def verify_deltastar(depth=5, table=None):
    table = table or PalTable.load(depth)
    R = depth
    ip = table.invpal.truncate(R)
    by_formula = delta_star(ip, R, method="formula")
    by_diagram = delta_star(ip, R, method="diagram")
    _, t02, _ = base_points(R + 1)
    e = ma_ext(t02)
    closed = (Mould.one(R) + e.mould.truncate(R))
    v1 = _cmp("formula = exp_Dari(Delta(log_ari(invpal)))", by_formula, by_diagram)
    v2 = _cmp("formula = ma(1 - a + Ber_{-b}(a))", by_formula, closed)
    v3 = Verdict("1 - dar(dupal) = formula", Mould.one(R) - dar(table.dupal.truncate(R)) == by_formula)
    return Verdict("Delta*(invpal) to depth %d" % R, v1.holds and v2.holds and v3.holds, None,
                   [v1, v2, v3])


def default_elements(weights=(3, 5)):
    return [solve_ds(n)[0] for n in weights]


def verify_suite(suite, depth=DEFAULT_DEPTH, weight=DEFAULT_WEIGHT):
    """Run one named suite ('pal', 'deltastar', 'prop221', 'prop331', 'all')."""
    suites = ("pal", "deltastar", "prop221", "prop331") if suite == "all" else (suite,)
    out = []
    table = None
    recs = None

    def tab():
        nonlocal table
        if table is None:
            table = PalTable.load(depth)
        return table

    def records():
        nonlocal recs
        if recs is None:
            recs = [gamma_s(e, depth, tab(), certify=False) for e in default_elements()]
        return recs

    for s in suites:
        if s == "pal":
            out.append(verify_pal(depth))
        elif s == "deltastar":
            out.append(verify_deltastar(depth, tab()))
        elif s == "prop221":
            for rec in records():
                cert = Verdict("gamma_s certification (weight %d)" % rec.weight, rec.ok, None,
                               rec.verdicts)
                out.append(cert)
                if W_needed(rec, weight) <= rec.depth:
                    out.append(verify_prop221(rec, weight))
                    out.append(verify_roundtrip(rec, weight))
        elif s == "prop331":
            rec = records()[0]
            out.append(verify_prop331(rec, min(depth, 4), tab()))
        else:
            raise ValueError("unknown suite %r" % s)
    return out


def W_needed(rec, W):
    return W - rec.weight - 1
