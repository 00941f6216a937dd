"""Command-line interface."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import suites
from .dynkin import NotDynkinError, classify, dynkin_type, is_dynkin, positive_roots
from .flag import count_flag_bruteforce, count_flag_modq, enumerate_flag_points
from .geometry import codim_report, counting_polynomial_flag, geometry_report, tangent_dim
from .hall import HallElement, format_hall_table, hall_polynomial, hall_product, hall_table, u_word
from .linalg import NotPrimeError, check_prime
from .parsing import (
    ParseError,
    load_quiver,
    load_representation,
    parse_class,
    parse_filtration,
    parse_vector,
    parse_word,
)
from .poly import InterpolationError
from .quiver import QuiverError

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _emit(rows: list[tuple], fmt: str, header: tuple | None = None) -> None:
    if fmt == "tsv":
        if header:
            print("\t".join(header))
        for row in rows:
            print("\t".join(str(x) for x in row))
    else:
        for row in rows:
            print(" ".join(str(x) for x in row))


def _primes(text: str) -> list[int]:
    out = [int(x) for x in text.split(",") if x.strip()]
    for p in out:
        check_prime(p)
    return out


def _filtration_arg(args, q):
    if args.word:
        if args.filtration:
            raise InputError("give either --filtration or --word")
        return q.word_to_filtration(parse_word(q, args.word))
    if not args.filtration:
        raise InputError("a filtration is required (--filtration or --word)")
    return parse_filtration(args.filtration)


def cmd_count_flag(args) -> int:
    q = load_quiver(args.quiver)
    m = load_representation(q, args.rep, args.p)
    f = _filtration_arg(args, q)
    if f.top != m.dim:
        raise InputError(f"filtration ends at {f.top}, representation has dimension {m.dim}")
    if args.method == "brute":
        strata = None
        if args.strata:
            vertex, _, seq = args.strata.partition(":")
            strata = (parse_word(q, vertex)[0], parse_vector(seq))
        n = count_flag_bruteforce(m, f, strata)
        if args.format == "tsv":
            _emit([("brute", m.p, n, "yes" if n else "no")], "tsv", ("method", "p", "count", "nonempty"))
        else:
            print(n)
    else:
        if args.strata:
            raise InputError("--strata is only available with --method brute")
        r = count_flag_modq(m, f)
        if args.format == "tsv":
            _emit([("reflect", m.p, r.residue, "yes" if r.nonempty else "no")], "tsv",
                  ("method", "p", "count", "nonempty"))
        else:
            print(r)
    return EXIT_OK


def _element_rows(x: HallElement) -> list[tuple]:
    return [(x[c], c.label()) for c in x.support()]


def cmd_hall_mul(args) -> int:
    q = load_quiver(args.quiver)
    if args.word:
        if args.left or args.right:
            raise InputError("give either --word or --left/--right")
        x = u_word(q, parse_word(q, args.word), args.p)
    elif args.left and args.right:
        left = HallElement.basis(parse_class(q, args.left))
        right = HallElement.basis(parse_class(q, args.right))
        x = hall_product(left, right, args.p)
    else:
        raise InputError("hall-mul needs --word or both --left and --right")
    if args.format == "tsv":
        _emit(_element_rows(x), "tsv", ("coefficient", "class"))
    else:
        print(x)
    return EXIT_OK


def cmd_hall_poly(args) -> int:
    q = load_quiver(args.quiver)
    if args.table is not None:
        text = format_hall_table(hall_table(q, args.table))
        if args.check:
            stored = Path(args.check).read_text()
            if stored != text:
                print("table differs from the regenerated one", file=sys.stderr)
                return EXIT_FAILED
            print("table matches")
            return EXIT_OK
        if args.output:
            Path(args.output).write_text(text)
        else:
            sys.stdout.write(text)
        return EXIT_OK
    if not (args.xi and args.mu and args.nu):
        raise InputError("hall-poly needs --xi, --mu and --nu (or --table)")
    f = hall_polynomial(parse_class(q, args.xi), parse_class(q, args.mu), parse_class(q, args.nu), args.method)
    if args.format == "tsv":
        _emit([(args.xi, args.mu, args.nu, ",".join(map(str, f.coeffs)))], "tsv", ("xi", "mu", "nu", "coefficients"))
    else:
        print(f)
    return EXIT_OK


def cmd_roots(args) -> int:
    q = load_quiver(args.quiver)
    if not is_dynkin(q):
        raise NotDynkinError("not a Dynkin quiver")
    rows = [(k, ",".join(map(str, r)), sum(r)) for k, r in enumerate(positive_roots(q))]
    if args.format == "tsv":
        _emit(rows, "tsv", ("index", "root", "height"))
    else:
        print(f"type {dynkin_type(q)}, {len(rows)} positive roots")
        for _, root, _ in rows:
            print(f"({root})")
    return EXIT_OK


def cmd_classify(args) -> int:
    q = load_quiver(args.quiver)
    cls = classify(load_representation(q, args.rep, args.p))
    if args.format == "tsv":
        _emit([(",".join(map(str, r)), m) for r, m in cls.items()], "tsv", ("root", "multiplicity"))
    else:
        print(cls.label())
    return EXIT_OK


def cmd_tangent(args) -> int:
    q = load_quiver(args.quiver)
    m = load_representation(q, args.rep, args.p)
    f = _filtration_arg(args, q)
    rows = [(k, tangent_dim(m, pt)) for k, pt in enumerate(enumerate_flag_points(m, f))]
    if args.point is not None:
        if not 0 <= args.point < len(rows):
            raise InputError(f"point {args.point} out of range (there are {len(rows)})")
        rows = [rows[args.point]]
    _emit(rows, args.format, ("point", "tangent"))
    return EXIT_OK


def cmd_geometry_report(args) -> int:
    q = load_quiver(args.quiver)
    m = load_representation(q, args.rep, args.p)
    f = _filtration_arg(args, q)
    vertex = parse_word(q, args.vertex)[0] if args.vertex else None
    rows = [(r.point_id, ",".join(map(str, r.stratum)), r.tangent) for r in geometry_report(m, f, vertex)]
    summary = [("points", len(rows))]
    if is_dynkin(q):
        cp = counting_polynomial_flag(classify(m), f)
        summary += [("polynomial", cp.poly), ("P(0)", cp.p0), ("P(1)", cp.p1)]
        summary += codim_report(q, f, m.p).rows()
    if args.format == "tsv":
        _emit(rows, "tsv", ("point", "stratum", "tangent"))
        print()
        _emit(summary, "tsv", ("key", "value"))
    else:
        for pid, stratum, tangent in rows:
            print(f"point {pid}: stratum ({stratum}) tangent {tangent}")
        for key, value in summary:
            print(f"{key}: {value}")
    return EXIT_OK


def cmd_verify(args) -> int:
    primes = _primes(args.primes)
    q = load_quiver(args.quiver)
    if args.suite == "modq-equivalence":
        res = suites.modq_equivalence(q, args.max_word_len, primes)
    elif args.suite == "hall-associativity":
        res = suites.hall_associativity(q, primes)
    elif args.suite == "psi-iso":
        res = suites.psi_iso(q, args.max_word_len)
    elif args.suite == "fiber-formula":
        res = suites.fiber_formula(primes)
    else:
        extra = [load_quiver(x) for x in args.also] if args.also else []
        res = suites.euler_identity([q, *extra], args.pairs, primes[0], args.seed)
    for line in res.failures:
        print(line)
    print(res.summary())
    return EXIT_OK if res.ok else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quiverflags", description="Quiver flags, Hall numbers and reflections over GF(p).")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, rep=False, filt=False):
        sp.add_argument("--quiver", required=True, help="fixture name (a1, a2, a3, d4) or quiver JSON")
        sp.add_argument("--p", type=int, default=2)
        sp.add_argument("--format", choices=("text", "tsv"), default="text")
        if rep:
            sp.add_argument("--rep", required=True, help="fixture name, representation JSON or class token")
        if filt:
            sp.add_argument("--filtration", help="G, [[..],..] or levels joined by ';'")
            sp.add_argument("--word", help="comma separated vertices")

    sp = sub.add_parser("count-flag", help="count flags of a given type")
    common(sp, rep=True, filt=True)
    sp.add_argument("--method", choices=("brute", "reflect"), default="brute")
    sp.add_argument("--strata", help="VERTEX:r0,r1,... restricts to a stratum")
    sp.set_defaults(func=cmd_count_flag)

    sp = sub.add_parser("hall-mul", help="products in the Hall algebra")
    common(sp)
    sp.add_argument("--word")
    sp.add_argument("--left")
    sp.add_argument("--right")
    sp.set_defaults(func=cmd_hall_mul)

    sp = sub.add_parser("hall-poly", help="Hall polynomials")
    common(sp)
    sp.add_argument("--xi")
    sp.add_argument("--mu")
    sp.add_argument("--nu")
    sp.add_argument("--method", choices=("extensions", "brute"), default="extensions")
    sp.add_argument("--table", type=int, metavar="MAX_TOTAL", help="emit every polynomial up to this total dimension")
    sp.add_argument("--output", help="write the table here")
    sp.add_argument("--check", help="compare a stored table with a fresh one")
    sp.set_defaults(func=cmd_hall_poly)

    sp = sub.add_parser("roots", help="positive roots of a Dynkin quiver")
    common(sp)
    sp.set_defaults(func=cmd_roots)

    sp = sub.add_parser("classify", help="decompose a representation into indecomposables")
    common(sp, rep=True)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("tangent", help="tangent dimensions at flag points")
    common(sp, rep=True, filt=True)
    sp.add_argument("--point", type=int)
    sp.set_defaults(func=cmd_tangent)

    sp = sub.add_parser("geometry-report", help="per-point strata and tangent dimensions with a summary")
    common(sp, rep=True, filt=True)
    sp.add_argument("--vertex", help="sink used for strata (default: first sink)")
    sp.set_defaults(func=cmd_geometry_report)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--suite", required=True, choices=sorted(suites.SUITES))
    sp.add_argument("--quiver", default="a2")
    sp.add_argument("--also", action="append", help="extra quivers (euler-identity)")
    sp.add_argument("--max-word-len", type=int, default=3)
    sp.add_argument("--primes", default="2,3")
    sp.add_argument("--pairs", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_verify)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if hasattr(args, "p"):
            check_prime(args.p)
        return args.func(args)
    except InterpolationError as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except (InputError, ParseError, QuiverError, NotPrimeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run())
