"""``matvol`` command-line interface.

Exit codes: 0 on success, 2 on invalid input, 3 when an internal
consistency check fails.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from fractions import Fraction

from . import __version__
from .charpoly import char_poly, mu_vector, reduced_char_poly
from .chow import ChainMonomial, intersection_number, shifted_rank_volume, volume_polynomial
from .combinat import elements_of, fraction_str, mask_of, popcount
from .genperm import (
    ORACLE_MAX_N,
    gp_volume_chain_formula,
    gp_volume_polytope_oracle,
    gp_volume_postnikov,
    is_submodular,
    minkowski_weights,
    normalize_z,
    postnikov_applicable,
)
from .matroid import MatroidError, flat_lattice
from .serialize import (
    InputError,
    load_json_arg,
    matroid_from_spec,
    polynomial_to_json,
    subdivision_from_json,
    z_from_json,
)

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 2, 3


class InternalCheckFailed(RuntimeError):
    pass


def _num_text(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _poly_text(coeffs) -> str:
    """Integer coefficient list (lowest first) as e.g. ``t^2 - 3t + 2``."""
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if not c:
            continue
        mag = "" if abs(c) == 1 and k else str(abs(c))
        var = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
        parts.append(("-" if c < 0 else "+", mag + var))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    return out + "".join(f" {sign} {body}" for sign, body in parts[1:])


def _set_text(mask: int) -> str:
    return "{" + ",".join(map(str, elements_of(mask))) + "}"


def _emit(args, payload, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=False))
    else:
        print(text)


def _matroid(args):
    return matroid_from_spec(load_json_arg(args.matroid))


# -- subcommands ----------------------------------------------------------

def cmd_flats(args):
    m = _matroid(args)
    lat = flat_lattice(m)
    payload = {
        "rank": m.rank,
        "n": m.n,
        "flats": [[elements_of(f) for f in level] for level in lat.by_rank],
    }
    lines = [f"rank {k}: " + " ".join(_set_text(f) for f in level) for k, level in enumerate(lat.by_rank)]
    _emit(args, payload, "\n".join(lines))


def cmd_charpoly(args):
    m = _matroid(args)
    chi, red, mus = char_poly(m), reduced_char_poly(m), list(mu_vector(m))
    payload = {"char_poly": chi, "reduced_char_poly": red, "mu": mus}
    text = f"chi     {_poly_text(chi)}\nreduced {_poly_text(red)}\nmu      {' '.join(map(str, mus))}"
    _emit(args, payload, text)


def cmd_intersect(args):
    m = _matroid(args)
    chain = load_json_arg(args.chain)
    exps = load_json_arg(args.exps)
    if not isinstance(chain, list) or not isinstance(exps, list):
        raise InputError("--chain and --exps must be JSON arrays")
    try:
        flats = [mask_of(f) for f in chain]
        if any(not 0 <= e < m.n for f in chain for e in f):
            raise InputError("chain uses an element outside the ground set")
        mono = ChainMonomial.of(zip(flats, exps))
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad monomial: {exc}") from None
    if len(mono.chain) != len(flats):
        raise InputError("repeated flat in --chain")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        deg = intersection_number(m, mono)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    _emit(args, {"degree": fraction_str(deg)}, str(deg))


def cmd_volume_poly(args):
    m = _matroid(args)
    poly = volume_polynomial(m, jobs=args.jobs)
    if args.format == "json":
        print(json.dumps(polynomial_to_json(poly)))
        return
    for mono, c in poly.sorted_terms():
        sign = "-" if c < 0 else "+"
        print(f"{sign}{_num_text(abs(c))} {mono}")


def cmd_shrvol(args):
    m = _matroid(args)
    value = shifted_rank_volume(m, jobs=args.jobs)
    _emit(args, {"shrvol": fraction_str(value)}, _num_text(value))


def cmd_gp_volume(args):
    if args.z is not None:
        n, z = z_from_json(load_json_arg(args.z))
    elif args.preset:
        if args.n is None or args.n < 1:
            raise InputError("--preset needs a positive --n")
        n, z = z_from_json({"n": args.n, "preset": args.preset})
    else:
        raise InputError("give --z or --preset with --n")
    ok, witness = is_submodular(n, z)
    if not ok:
        a, b = witness
        raise InputError(
            f"z is not submodular: I={[e + 1 for e in elements_of(a)]}, J={[e + 1 for e in elements_of(b)]}"
        )
    zn = normalize_z(n, z)
    volume = gp_volume_chain_formula(n, zn, check=False)
    payload = {"n": n, "volume": fraction_str(volume)}
    text = [_num_text(volume)]
    if args.check:
        checks = {}
        if n <= ORACLE_MAX_N:
            checks["polytope"] = gp_volume_polytope_oracle(n, zn)
        y = minkowski_weights(n, z)
        if postnikov_applicable(y):
            checks["postnikov"] = gp_volume_postnikov(n, {s: v for s, v in y.items() if popcount(s) >= 2})
        payload["checks"] = {k: fraction_str(v) for k, v in checks.items()}
        text += [f"{k}: {_num_text(v)}" for k, v in checks.items()]
        if any(v != volume for v in checks.values()):
            _emit(args, payload, "\n".join(text))
            raise InternalCheckFailed("volume routes disagree")
    _emit(args, payload, "\n".join(text))


def cmd_valuation_check(args):
    from .valuation import check_valuation

    sub = subdivision_from_json(load_json_arg(args.subdivision))
    try:
        report = check_valuation(sub)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    payload = {
        "vp_difference": polynomial_to_json(report.difference),
        "vp_holds": report.vp_holds,
        "shrvol_parent": fraction_str(report.shrvol_parent),
        "shrvol_signed_sum": fraction_str(report.shrvol_signed_sum),
        "shrvol_holds": report.shrvol_holds,
    }
    text = (
        f"VP difference      {report.difference}\n"
        f"shRVol parent      {_num_text(report.shrvol_parent)}\n"
        f"shRVol signed sum  {_num_text(report.shrvol_signed_sum)}\n"
        f"identity           {'holds' if report.holds else 'FAILS'}"
    )
    _emit(args, payload, text)


def cmd_selftest(args):
    from .selftest import format_table, run_selftest

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        results = run_selftest(corrupt_binomial=args.corrupt_binomial, empty_catalog=args.empty_catalog)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    if args.format == "json":
        print(json.dumps([{"check": r.name, "passed": r.passed, "detail": r.detail} for r in results]))
    else:
        print(format_table(results))
    failed = [r.name for r in results if not r.passed]
    if failed:
        raise InternalCheckFailed("failed: " + ", ".join(failed))


# -- argument parsing -----------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "text"], default="text")
    common.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")

    parser = argparse.ArgumentParser(prog="matvol", description="Chow-ring invariants of matroids.")
    parser.add_argument("--version", action="version", version=f"matvol {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_text, needs_matroid=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if needs_matroid:
            p.add_argument("--matroid", required=True, help="matroid spec as JSON or a path to a JSON file")
        p.set_defaults(func=func)
        return p

    add("flats", cmd_flats, "list the flats by rank")
    add("charpoly", cmd_charpoly, "characteristic polynomial, reduced polynomial and mu vector")
    p = add("intersect", cmd_intersect, "degree of a chain monomial")
    p.add_argument("--chain", required=True, help="JSON list of flats, each a list of elements")
    p.add_argument("--exps", required=True, help="JSON list of positive exponents")
    add("volume-poly", cmd_volume_poly, "the volume polynomial")
    add("shrvol", cmd_shrvol, "the shifted rank volume")
    p = add("gp-volume", cmd_gp_volume, "volume of a generalized permutohedron", needs_matroid=False)
    p.add_argument("--z", help="submodular function as JSON or a path")
    p.add_argument("--preset", choices=["permutohedron"])
    p.add_argument("--n", type=int)
    p.add_argument("--check", action="store_true", help="also run the polytope and Postnikov routes")
    p = add("valuation-check", cmd_valuation_check, "check the valuation identity", needs_matroid=False)
    p.add_argument("--subdivision", required=True, help="subdivision JSON or a path")
    p = add("selftest", cmd_selftest, "run the built-in invariant suite", needs_matroid=False)
    p.add_argument("--corrupt-binomial", action="store_true", help=argparse.SUPPRESS)
    p.add_argument("--empty-catalog", action="store_true", help=argparse.SUPPRESS)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.jobs < 1:
        print("error: --jobs must be at least 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        args.func(args)
    except (InputError, MatroidError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InternalCheckFailed as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ArithmeticError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
