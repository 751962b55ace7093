"""Canonical JSON documents for moulds, C-polynomials, series and records.

Equal canonical values serialize to identical bytes: keys are sorted,
separators are fixed, terms are in graded-lex order and rationals are
written as "p" or "p/q".
"""

import json

from .lie import NCSeries
from .mould import CPoly, Mould
from .ratfrac import RatFrac, format_scalar, scalar

VERSION = 1


class FormatError(ValueError):
    pass


def dumps(doc):
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=True)


def _parse_scalar(s):
    if not isinstance(s, str):
        raise FormatError("rationals are encoded as strings, got %r" % (s,))
    try:
        return scalar(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError("bad rational %r" % s) from exc


# moulds -----------------------------------------------------------------


def ratfrac_to_doc(x):
    num = [[format_scalar(c), list(e)] for e, c in x.numerator.items()]
    den = [[list(f), m] for f, m in x.den]
    return {"num": num, "den": den}


def ratfrac_from_doc(doc, r, alphabet):
    try:
        num = {}
        for c, e in doc["num"]:
            if len(e) != r or any((not isinstance(v, int)) or v < 0 for v in e):
                raise FormatError("bad exponent vector %r at depth %d" % (e, r))
            num[tuple(e)] = _parse_scalar(c)
        den = []
        for f, m in doc.get("den", []):
            if len(f) != r or not isinstance(m, int) or m < 1:
                raise FormatError("bad denominator factor %r" % (f,))
            den.append((tuple(int(v) for v in f), m))
    except (TypeError, KeyError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError("malformed component: %s" % exc) from exc
    return RatFrac.from_exponents(r, num, den, alphabet)


def mould_to_doc(M):
    comps = []
    for r in sorted(M.comps):
        d = ratfrac_to_doc(M.comps[r])
        d["depth"] = r
        comps.append(d)
    return {"kind": "mould", "version": VERSION, "alphabet": M.alphabet,
            "constant": format_scalar(M.constant), "depth": M.depth, "components": comps}


def mould_from_doc(doc):
    _check_header(doc, "mould")
    alphabet = doc.get("alphabet", "u")
    if alphabet not in ("u", "v"):
        raise FormatError("alphabet must be u or v")
    depth = doc.get("depth")
    if depth is not None and (not isinstance(depth, int) or depth < 0):
        raise FormatError("bad depth %r" % (depth,))
    comps = {}
    for c in doc.get("components", []):
        r = c.get("depth")
        if not isinstance(r, int) or r < 1:
            raise FormatError("bad component depth %r" % (r,))
        comps[r] = ratfrac_from_doc(c, r, alphabet)
    return Mould(comps, _parse_scalar(doc.get("constant", "0")), depth, alphabet)


def _check_header(doc, kind):
    if not isinstance(doc, dict):
        raise FormatError("document must be a JSON object")
    if doc.get("kind", kind) != kind:
        raise FormatError("expected a %s document, got %r" % (kind, doc.get("kind")))
    v = doc.get("version", VERSION)
    if v != VERSION:
        raise FormatError("unsupported version %r (this build reads %d)" % (v, VERSION))


# C-polynomials and series --------------------------------------------------


def cpoly_to_doc(p):
    return {"kind": "cpoly", "version": VERSION,
            "terms": [[list(w), format_scalar(c)] for w, c in p.items()]}


def cpoly_from_doc(doc):
    _check_header(doc, "cpoly")
    try:
        return CPoly({tuple(int(k) for k in w): _parse_scalar(c) for w, c in doc["terms"]})
    except (TypeError, KeyError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError("malformed cpoly: %s" % exc) from exc


def series_to_doc(s):
    groups = []
    for n, part in sorted(s.by_weight().items()):
        groups.append([n, [[w, format_scalar(c)] for w, c in sorted(part.items())]])
    return {"kind": "lieseries", "version": VERSION, "W": s.W, "terms": groups}


def series_from_doc(doc):
    _check_header(doc, "lieseries")
    t = {}
    try:
        for n, words in doc["terms"]:
            for w, c in words:
                if len(w) != n or set(w) - set("ab"):
                    raise FormatError("bad word %r at weight %r" % (w, n))
                t[w] = _parse_scalar(c)
    except (TypeError, KeyError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError("malformed series: %s" % exc) from exc
    return NCSeries(t, doc.get("W"))


# generic entry points ---------------------------------------------------------


def to_doc(x):
    from .ds import DsElement
    from .pipeline import PipelineRecord
    if isinstance(x, Mould):
        return mould_to_doc(x)
    if isinstance(x, CPoly):
        return cpoly_to_doc(x)
    if isinstance(x, NCSeries):
        return series_to_doc(x)
    if isinstance(x, DsElement):
        return ds_to_doc(x)
    if isinstance(x, PipelineRecord):
        return x.to_doc()
    raise TypeError("cannot serialize %s" % type(x).__name__)


def from_doc(doc):
    from .pipeline import PipelineRecord
    if not isinstance(doc, dict) or "kind" not in doc:
        raise FormatError("document has no kind")
    kind = doc["kind"]
    if kind == "mould":
        return mould_from_doc(doc)
    if kind == "cpoly":
        return cpoly_from_doc(doc)
    if kind == "lieseries":
        return series_from_doc(doc)
    if kind == "ds-element":
        return ds_from_doc(doc)
    if kind == "pipeline-record":
        return PipelineRecord.from_doc(doc)
    raise FormatError("unknown document kind %r" % kind)


def serialize(x):
    return dumps(to_doc(x))


def deserialize(text):
    try:
        doc = json.loads(text)
    except ValueError as exc:
        raise FormatError("not JSON: %s" % exc) from exc
    return from_doc(doc)


def ds_to_doc(e):
    return {"kind": "ds-element", "version": VERSION, "weight": e.weight,
            "provenance": e.provenance, "f": cpoly_to_doc(e.f)}


def ds_from_doc(doc):
    from .ds import DsElement
    _check_header(doc, "ds-element")
    try:
        return DsElement(int(doc["weight"]), cpoly_from_doc(doc["f"]), doc.get("provenance", "file"))
    except (KeyError, TypeError) as exc:
        raise FormatError("malformed ds element: %s" % exc) from exc


def load(path):
    with open(path) as fh:
        return deserialize(fh.read())


def save(x, path):
    with open(path, "w") as fh:
        fh.write(serialize(x))
        fh.write("\n")
