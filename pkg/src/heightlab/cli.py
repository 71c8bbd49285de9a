"""Command-line front end: ``heightlab <command> ...``."""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction

from . import paperlab
from .errors import HeightlabError
from .exactpoly import (
    discriminant,
    is_squarefree,
    parse_poly,
    squarefree_part,
    sturm_count,
)
from .galois import centralizer, fixed_cosets, generate, is_simple
from .height import DEFAULT_EPS, garza_bound, height_report, mahler_measure
from .perms import Perm
from .roots import PREC_CAP, all_on_unit_circle

SCHEMA = paperlab.SCHEMA


def _bound(text: str):
    text = text.strip()
    t = text.lower()
    if t in ("inf", "+inf", "oo", "-inf", "-oo"):
        return None
    return Fraction(text)


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    kw = {"default": argparse.SUPPRESS} if suppress else {}
    parser.add_argument("--json", action="store_true", help="emit JSON", **kw)
    parser.add_argument("--prec-cap", type=int, metavar="BITS",
                        help=f"precision cap in bits (default {PREC_CAP})",
                        **(kw or {"default": PREC_CAP}))
    parser.add_argument("--eps", type=float, metavar="REL_TOL",
                        help=f"relative tolerance (default {DEFAULT_EPS})",
                        **(kw or {"default": DEFAULT_EPS}))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="heightlab", description="Exact and certified Weil heights.")
    _global_flags(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    for name, helptext in [("height", "Weil height of the root of a minimal polynomial"),
                           ("mahler", "Mahler measure"),
                           ("disc", "discriminant"),
                           ("circle", "decide whether all roots lie on |z| = 1")]:
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("poly")
        if name == "height":
            p.add_argument("--imaginary", action="store_true",
                           help="the field is totally imaginary (halves the bound)")

    p = sub.add_parser("sturm", parents=[common], help="count real roots in (lo, hi]")
    p.add_argument("poly")
    p.add_argument("lo", nargs="?", default="-inf")
    p.add_argument("hi", nargs="?", default="inf")

    p = sub.add_parser("garza", parents=[common], help="the lower bound for ratio C in (0, 1]")
    p.add_argument("C")

    p = sub.add_parser("group", parents=[common], help="permutation group from generators")
    p.add_argument("gens", nargs="+", help='generators in cycle notation, e.g. "(0 1 2)"')
    p.add_argument("--degree", type=int, help="number of points (default: largest point + 1)")
    p.add_argument("--centralizer", metavar="G")
    p.add_argument("--simple", action="store_true")
    p.add_argument("--fixed-cosets", nargs=2, metavar=("H", "C"),
                   help="H: ';'-separated generators of a subgroup; C: the acting element")

    paper = sub.add_parser("paper", parents=[common], help="worked scenarios")
    psub = paper.add_subparsers(dest="scenario", required=True)
    p = psub.add_parser("small-height", parents=[common])
    p.add_argument("--n", type=int, default=12)
    psub.add_parser("example1", parents=[common])
    p = psub.add_parser("example2", parents=[common])
    p.add_argument("--p", type=int, default=2)
    psub.add_parser("schinzel", parents=[common])
    p = psub.add_parser("bound", parents=[common])
    p.add_argument("poly")
    p.add_argument("--imaginary", action="store_true")
    return parser


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        out = {"schema": SCHEMA, **paperlab._jsonable(payload)}
        print(json.dumps(out, indent=2, sort_keys=True))
    else:
        print(text)


def _cmd_group(args) -> int:
    gens = [Perm.from_cycles(g) for g in args.gens]
    n = args.degree or max(g.n for g in gens)
    perm = lambda s: Perm.from_cycles(s, n)  # noqa: E731
    G = generate([perm(g) for g in args.gens], n)
    payload = {"group": G.to_json()}
    lines = [f"order {G.order} on {n} points, generators {' '.join(map(str, G.generators))}"]
    if args.centralizer:
        Z = centralizer(G, perm(args.centralizer))
        payload["centralizer"] = Z.to_json()
        lines.append(f"centralizer of {perm(args.centralizer)}: order {Z.order}")
    if args.simple:
        s = is_simple(G)
        payload["simple"] = s
        lines.append(f"simple: {s}")
    if args.fixed_cosets:
        h_text, c_text = args.fixed_cosets
        H = generate([perm(h) for h in h_text.split(";") if h.strip()] or [Perm.identity(n)], n)
        c = perm(c_text)
        k = fixed_cosets(G, H, c)
        payload["fixed_cosets"] = {"H": H.to_json(), "c": str(c), "count": k,
                                   "index": G.order // H.order}
        lines.append(f"cosets of H (index {G.order // H.order}) fixed by {c}: {k}")
    _emit(args, payload, "\n".join(lines))
    return 0


def _run(args) -> int:
    cmd = args.command
    if cmd == "paper":
        s = args.scenario
        if s == "small-height":
            t = paperlab.run_small_height_sequence(args.n, args.eps, args.prec_cap)
        elif s == "example1":
            t = paperlab.run_example1_pipeline(args.eps, args.prec_cap)
        elif s == "example2":
            t = paperlab.run_example2_pipeline(args.p, args.prec_cap)
        elif s == "schinzel":
            t = paperlab.run_schinzel_suite(None, args.eps, args.prec_cap)
        else:
            t = paperlab.run_bound_report(parse_poly(args.poly.strip()), args.imaginary)
        print(t.dumps() if args.json else t.render())
        return 0 if t.passed else 1

    if cmd == "group":
        return _cmd_group(args)
    if cmd == "garza":
        C = Fraction(args.C.strip())
        enc = garza_bound(C)
        _emit(args, {"C": C, "garza": enc.to_json()}, f"garza({C}) in [{enc.lo!r}, {enc.hi!r}]")
        return 0

    f = parse_poly(args.poly.strip())
    if cmd == "height":
        rep = height_report(f, args.imaginary, args.eps, args.prec_cap)
        h = rep["height"]
        text = f"h in [{h['lo']!r}, {h['hi']!r}]  (degree {rep['degree']}, r = {rep['r']})"
        if rep["bounds"]:
            fin = rep["bounds"]["final"]
            text += f"\nbound c in [{fin['lo']!r}, {fin['hi']!r}] with C = {rep['bounds']['C']}"
        _emit(args, rep, text)
    elif cmd == "mahler":
        m = mahler_measure(f, args.eps, args.prec_cap)
        text = f"M = {m.exact_log_arg}" if m.is_exact else f"M in [{m.lo!r}, {m.hi!r}]"
        _emit(args, {"input": f.to_list_text(), "mahler": m.to_json()}, text)
    elif cmd == "disc":
        d = discriminant(f)
        _emit(args, {"input": f.to_list_text(), "discriminant": d}, str(d))
    elif cmd == "sturm":
        g = f if is_squarefree(f) else squarefree_part(f)
        args.lo, args.hi = args.lo.strip(), args.hi.strip()
        lo, hi = _bound(args.lo), _bound(args.hi)
        n = sturm_count(g, lo, hi)
        text = f"{n} distinct real roots in ({args.lo}, {args.hi}]"
        _emit(args, {"input": f.to_list_text(), "lo": args.lo, "hi": args.hi, "count": n}, text)
    elif cmd == "circle":
        v = all_on_unit_circle(f, args.prec_cap)
        payload = {"input": f.to_list_text(), "on_circle": v.on_circle, "method": v.method}
        if v.witness is not None:
            payload["witness"] = {"index": v.witness.index, "separation": v.witness.separation}
        _emit(args, payload, f"all roots on the unit circle: {v.on_circle} ({v.method})")
    return 0


_NEGATIVE = re.compile(r"^-(\d|inf$|oo$|x|\()")


def _shield(argv):
    # a leading space keeps values like "-1/2" or "-x^2+1" from parsing as options
    return [" " + a if _NEGATIVE.match(a) else a for a in argv]


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_shield(argv))
    try:
        return _run(args)
    except (HeightlabError, ValueError, ArithmeticError) as exc:
        print(f"heightlab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
