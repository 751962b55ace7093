"""Command line interface: ``mouldkit <verb> ...``.

Exit status is 0 when every verdict produced by the verb holds, 1 when some
verdict fails and 2 on bad input.
"""

import argparse
import json
import sys

from . import serialize as S
from .mould import CPoly, Mould
from .ratfrac import format_scalar


def _mould_text(M, name):
    lines = ["%s (alphabet %s, depth %s, constant %s)"
             % (name, M.alphabet, M.depth, format_scalar(M.constant))]
    for r in sorted(M.comps):
        lines.append("  r=%d: %s" % (r, M.comps[r].to_string()))
    return "\n".join(lines)


def _emit(args, doc, text):
    if args.format == "json":
        out = S.dumps(doc)
    else:
        out = text
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(S.dumps(doc) + "\n")
        if args.format == "text":
            print("wrote %s" % args.out)
    else:
        print(out)


def cmd_pal(args):
    from .pal import PalTable
    T = PalTable.load(args.depth, cache=not args.no_cache)
    _emit(args, S.mould_to_doc(T.pal), _mould_text(T.pal, "pal"))
    return 0


def cmd_dupal(args):
    from .pal import dupal
    D = dupal(args.depth)
    _emit(args, S.mould_to_doc(D), _mould_text(D, "dupal"))
    return 0


def cmd_solve_ds(args):
    from .ds import solve_ds
    els = solve_ds(args.weight, args.depth_cap)
    doc = {"kind": "ds-basis", "version": S.VERSION, "weight": args.weight,
           "elements": [S.ds_to_doc(e) for e in els]}
    lines = ["weight %d: dimension %d" % (args.weight, len(els))]
    lines += ["  f = %r" % e.f for e in els]
    _emit(args, doc, "\n".join(lines))
    return 0


def _read(path):
    """Load a document; a ds basis stands for its first element."""
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except ValueError as exc:
            raise S.FormatError("not JSON: %s" % exc) from exc
    if isinstance(doc, dict) and doc.get("kind") == "ds-basis":
        if not doc.get("elements"):
            raise S.FormatError("empty ds basis")
        doc = doc["elements"][0]
    return S.from_doc(doc)


def _read_f(path):
    from .ds import DsElement
    x = _read(path)
    if isinstance(x, CPoly):
        ws = x.weight_set()
        if len(ws) != 1:
            raise S.FormatError("f must be homogeneous in weight")
        x = DsElement(ws.pop(), x, "file")
    if not isinstance(x, DsElement):
        raise S.FormatError("expected a ds element or a C-polynomial")
    return x


def cmd_gamma_s(args):
    from .pipeline import CertificationError, gamma_s
    elem = _read_f(args.input)
    try:
        rec = gamma_s(elem, args.depth)
    except CertificationError as exc:
        print("certification failed: %s" % exc, file=sys.stderr)
        if exc.witness is not None:
            print(json.dumps(exc.witness, sort_keys=True, default=str), file=sys.stderr)
        return 1
    text = "\n".join(v.to_text() for v in rec.verdicts)
    text += "\nm = %r" % rec.m
    _emit(args, rec.to_doc(), text)
    return 0 if rec.ok else 1


def cmd_check(args):
    from .symmetries import check
    x = _read(args.input)
    if not isinstance(x, Mould):
        from .pipeline import PipelineRecord
        if isinstance(x, PipelineRecord):
            x = getattr(x, args.mould)
        elif hasattr(x, "mould"):
            x = x.mould
        else:
            raise S.FormatError("expected a mould document")
    rep = check(x, args.property)
    if args.format == "json":
        print(S.dumps(rep.to_dict()))
    else:
        print(rep.to_text())
    return 0 if rep.ok else 1


def cmd_verify(args):
    from .pipeline import verify_suite
    verdicts = verify_suite(args.suite, args.depth, args.weight)
    if args.format == "json":
        print(S.dumps({"suite": args.suite, "depth": args.depth, "weight": args.weight,
                       "verdicts": [v.to_dict() for v in verdicts]}))
    else:
        for v in verdicts:
            print(v.to_text())
    return 0 if all(v.holds for v in verdicts) else 1


def build_parser():
    p = argparse.ArgumentParser(prog="mouldkit", description="Exact mould calculus and the "
                                "elliptic double shuffle pipeline.")
    p.add_argument("--format", choices=("json", "text"), default="text")
    sub = p.add_subparsers(dest="verb", required=True)
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS)

    s = sub.add_parser("pal", parents=[fmt], help="the mould pal")
    s.add_argument("--depth", type=int, required=True)
    s.add_argument("--out")
    s.add_argument("--no-cache", action="store_true")
    s.set_defaults(func=cmd_pal)

    s = sub.add_parser("dupal", parents=[fmt], help="the mu-dilator of pal")
    s.add_argument("--depth", type=int, required=True)
    s.set_defaults(func=cmd_dupal)

    s = sub.add_parser("solve-ds", parents=[fmt], help="basis of ds in one weight")
    s.add_argument("--weight", type=int, required=True)
    s.add_argument("--depth-cap", type=int, default=None)
    s.add_argument("--out")
    s.set_defaults(func=cmd_solve_ds)

    s = sub.add_parser("gamma-s", parents=[fmt], help="run f -> M -> m and certify")
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--depth", type=int, default=5)
    s.add_argument("--out")
    s.set_defaults(func=cmd_gamma_s)

    s = sub.add_parser("check", parents=[fmt], help="test a symmetry of a stored mould")
    s.add_argument("--property", required=True,
                   choices=("alternal", "alternil", "push", "bialternal", "ds", "dsell"))
    s.add_argument("--in", dest="input", required=True)
    s.add_argument("--mould", choices=("F", "A", "M"), default="M",
                   help="which mould of a pipeline record to test")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("verify", parents=[fmt], help="run a verification suite")
    s.add_argument("--suite", required=True,
                   choices=("pal", "deltastar", "prop221", "prop331", "all"))
    s.add_argument("--depth", type=int, default=5)
    s.add_argument("--weight", type=int, default=9)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (S.FormatError, ValueError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
