"""Command line interface.

Exit codes: 0 success, 1 verification mismatch, 2 input error,
3 size limit exceeded.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import constructions
from .automata import format_dfa, kal_construct, minimize, parse_dfa
from .bpol import bpol1_bound, xi_image
from .errors import InputError, SizeLimitError
from .monoids import (green_summary, monoid_from_json, monoid_to_json,
                      syntactic_monoid, RecognizedLanguage, MonoidHom, language_of)
from .schutzenberger import SchutzProductContext, mu_image, schutz_enumerate
from .verify import verify_paper

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_SIZE = 0, 1, 2, 3


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _dump(obj) -> None:
    json.dump(obj, sys.stdout, separators=(",", ":"))
    sys.stdout.write("\n")


def cmd_minimize(args):
    sys.stdout.write(format_dfa(minimize(parse_dfa(_read(args.dfa)))))


def cmd_kal(args):
    dfa = kal_construct(parse_dfa(_read(args.dfa_k)), parse_dfa(_read(args.dfa_l)), args.marker)
    if args.minimize:
        dfa = minimize(dfa)
    sys.stdout.write(format_dfa(dfa))


def cmd_monoid(args):
    monoid, hom, accept = syntactic_monoid(parse_dfa(_read(args.dfa)))
    _dump(monoid_to_json(monoid, hom, accept=sorted(accept)))


def cmd_schutz(args):
    M, _ = monoid_from_json(_read(args.mon_m))
    N, _ = monoid_from_json(_read(args.mon_n))
    ctx = SchutzProductContext(M, N)
    if args.enumerate:
        _dump(monoid_to_json(schutz_enumerate(ctx, cap=args.cap)))
    else:
        _dump({"m": ctx.m, "n": ctx.n, "size": ctx.size})


def cmd_mu_image(args):
    K = language_of(parse_dfa(_read(args.dfa_k)))
    L = language_of(parse_dfa(_read(args.dfa_l)))
    img = mu_image(K, L, args.marker, cap=args.cap)
    n = img.ctx.n
    _dump(monoid_to_json(img.monoid, img.hom, accept=sorted(img.accept),
                         elements=[P.to_json(n) for P in img.elements]))


def cmd_green(args):
    monoid, _ = monoid_from_json(_read(args.monoid))
    _dump(green_summary(monoid).to_json())


def cmd_gen(args):
    fam = args.family
    if fam == "prop2k":
        dfa = constructions.prop2_K(args.k)
    elif fam == "prop2l":
        dfa = constructions.prop2_L(args.ell)
    elif fam == "modcount":
        dfa = constructions.mod_count_dfa(args.letter, args.mod, args.alphabet)
    elif fam == "star":
        dfa = constructions.star_dfa(args.letters, args.alphabet)
    else:
        dfa = constructions.content_dfa(args.letters, args.alphabet)
    sys.stdout.write(format_dfa(dfa))


def cmd_xi(args):
    if args.variety == "sl":
        F, h = constructions.sl_free_monoid(args.alphabet)
    else:
        F, h = constructions.trivial_free_monoid(args.alphabet)
    img = xi_image(F, h, cap=args.cap)
    R = RecognizedLanguage(h, frozenset())
    mu_sizes = {x: mu_image(R, R, x, cap=args.cap).monoid.size for x in h.alphabet}
    _dump({"variety": args.variety, "alphabet": "".join(h.alphabet), "free_size": F.size,
           "mu_image_sizes": mu_sizes, "xi_size": img.monoid.size,
           "bound": bpol1_bound(F.size, len(h.alphabet))})


def cmd_verify(args):
    overrides = None
    if args.expected:
        try:
            overrides = json.loads(_read(args.expected))
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid expected-values JSON: {exc}") from None
    report = verify_paper(overrides)
    if args.json:
        _dump(report.to_json())
    else:
        print(report.to_text())
    return EXIT_OK if report.overall else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kaltools", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("minimize", help="minimal complete DFA")
    p.add_argument("dfa")
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("kal", help="DFA for the marked concatenation K a L")
    p.add_argument("dfa_k")
    p.add_argument("dfa_l")
    p.add_argument("--marker", required=True)
    p.add_argument("--minimize", action="store_true")
    p.set_defaults(func=cmd_kal)

    p = sub.add_parser("monoid", help="syntactic monoid of a DFA as JSON")
    p.add_argument("dfa")
    p.set_defaults(func=cmd_monoid)

    p = sub.add_parser("schutz", help="Schützenberger product of two monoids")
    p.add_argument("mon_m")
    p.add_argument("mon_n")
    p.add_argument("--enumerate", action="store_true")
    p.add_argument("--cap", type=int, default=1 << 20)
    p.set_defaults(func=cmd_schutz)

    p = sub.add_parser("mu-image", help="image of A* in the product of the syntactic monoids")
    p.add_argument("dfa_k")
    p.add_argument("dfa_l")
    p.add_argument("--marker", required=True)
    p.add_argument("--cap", type=int, default=1 << 20)
    p.set_defaults(func=cmd_mu_image)

    p = sub.add_parser("green", help="Green's relation statistics of a monoid")
    p.add_argument("monoid")
    p.set_defaults(func=cmd_green)

    p = sub.add_parser("gen", help="emit a witness DFA")
    p.add_argument("family", choices=["prop2k", "prop2l", "modcount", "star", "content"])
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--ell", type=int, default=2)
    p.add_argument("--letter", default="b")
    p.add_argument("--mod", type=int, default=2)
    p.add_argument("--letters", default="")
    p.add_argument("--alphabet", default="abc")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("xi", help="free monoid of the first polynomial level")
    p.add_argument("--variety", choices=["sl", "trivial"], default="sl")
    p.add_argument("--alphabet", default="ab")
    p.add_argument("--cap", type=int, default=1 << 20)
    p.set_defaults(func=cmd_xi)

    p = sub.add_parser("verify", help="recompute all published values")
    p.add_argument("--json", action="store_true")
    p.add_argument("--expected", help="JSON object overriding expected values by check name")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code = args.func(args) or EXIT_OK
        sys.stdout.flush()
        return code
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SizeLimitError as exc:
        print(f"size limit: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except BrokenPipeError:
        # reader went away (e.g. `| head`); silence the flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
