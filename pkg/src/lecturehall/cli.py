"""Command-line surface.

Every subcommand prints one JSON envelope on stdout:

    {"schema": 1, "command": ..., "params": {...}, "result": {...}, "exact": true}

Count-like and coefficient-like integers are serialized as decimal strings
(they are unbounded in principle), rationals as "p/q", and output is
byte-identical across reruns unless --timing is requested. Exit codes:
0 success, 2 precondition or domain error, 3 budget guard, 4 failed
verification, 64 usage.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from collections import Counter
from fractions import Fraction

from . import conjecture as cj
from . import enumeration as en
from . import geometry as ge
from . import hilbert as hb
from . import triangulation as tr
from .errors import BudgetError, DomainError, VerificationError
from .exact import IntPolynomial, series_expand_rational

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_BUDGET = 3
EXIT_VERIFICATION = 4
EXIT_USAGE = 64


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def _threads() -> int:
    """Parallelism cap from LHC_THREADS; the engine is deterministic and
    currently runs sequentially, which is the LHC_THREADS=1 behavior."""
    try:
        return max(1, int(os.environ.get("LHC_THREADS", "1")))
    except ValueError:
        return 1


def _s(v) -> str:
    return str(int(v))


def _frac(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"


def _envelope(command: str, params: dict, result: dict) -> dict:
    return {"schema": 1, "command": command, "params": params, "result": result, "exact": True}


def _emit(doc: dict, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")
        return
    sys.stdout.write(f"# {doc['command']}\n")
    for key, value in sorted(doc["result"].items()):
        sys.stdout.write(f"{key}: {_plain(value)}\n")


def _plain(value) -> str:
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}={_plain(v)}" for k, v in sorted(value.items())) + "}"
    if isinstance(value, list):
        return "[" + ", ".join(_plain(v) for v in value) + "]"
    return str(value)


def _add_global_flags(p, suppress: bool) -> None:
    kw = {"default": argparse.SUPPRESS} if suppress else {}
    p.add_argument("--format", choices=("json", "plain"),
                   **(kw or {"default": "json"}))
    p.add_argument("--unsafe-large", action="store_true",
                   help="lift the desk-scale guards (may take very long)",
                   **(kw or {"default": False}))


def _build_parser() -> _Parser:
    p = _Parser(prog="lhc", description="Exact constructions and checks for the lecture hall cone family")
    _add_global_flags(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("series", help="truncated Hilbert series under a grading, with identity check")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--grading", choices=("ones", "deg", "ceiling"), required=True)
    sp.add_argument("--terms", type=int, required=True)
    _add_global_flags(sp, suppress=True)

    sp = sub.add_parser("hstar", help="Ehrhart counts and numerator polynomial of a named polytope")
    sp.add_argument("--object", dest="obj", choices=("Pn", "Rn", "Rn-tilde"), required=True)
    sp.add_argument("--n", type=int, required=True)
    _add_global_flags(sp, suppress=True)

    sp = sub.add_parser("eulerian", help="descent polynomial of the symmetric group")
    sp.add_argument("--n", type=int, required=True)
    _add_global_flags(sp, suppress=True)

    sp = sub.add_parser("reflexive", help="reflexivity certificate for the pyramid base")
    sp.add_argument("--n", type=int, required=True)
    _add_global_flags(sp, suppress=True)

    sp = sub.add_parser("hilbert-basis", help="the subset-indexed Hilbert basis")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--verify-bruteforce", action="store_true")
    sp.add_argument("--tmax", type=int, default=3)
    _add_global_flags(sp, suppress=True)

    sp = sub.add_parser("decompose", help="write a cone point as a sum of basis elements")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--point", type=str, required=True, help="comma-separated coordinates")
    _add_global_flags(sp, suppress=True)

    sp = sub.add_parser("triangulate", help="build the recursive triangulation, optionally certify")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--check", choices=("all",), default=None)
    sp.add_argument("--out", type=str, default=None)
    _add_global_flags(sp, suppress=True)

    sp = sub.add_parser("braid", help="braid triangulation of the unit cube, with reference checks")
    sp.add_argument("--k", type=int, required=True)
    _add_global_flags(sp, suppress=True)

    sp = sub.add_parser("conjecture", help="per-clause experimental verdict for one size")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--budget", type=int, default=cj.DEFAULT_SHELLING_BUDGET)
    sp.add_argument("--timing", action="store_true", help="include a wall_clock field (non-deterministic)")
    _add_global_flags(sp, suppress=True)
    return p


def _run_series(args) -> tuple[dict, int]:
    n, T = args.n, args.terms
    unsafe = args.unsafe_large
    if args.grading == "ones":
        series = en.hilbert_series_trunc(ge.lecture_hall_cone(n), ge.ones_grading(n), T, unsafe=unsafe)
        reference = en.bme_rhs(n, T)
        key = "matches_bme"
    elif args.grading == "deg":
        series = en.hilbert_series_trunc(ge.lecture_hall_cone(n), ge.degree_grading(n), T, unsafe=unsafe)
        reference = series_expand_rational(en.eulerian(n - 1), [IntPolynomial.one_minus_z_power(n)], T)
        key = "matches_descent_identity"
    else:
        series = en.ceiling_series(n, T, unsafe=unsafe)
        reference = series_expand_rational(en.eulerian(n), [IntPolynomial.one_minus_z_power(n)], T)
        key = "matches_ceiling_identity"
    match = series == reference
    result = {"coefficients": [_s(c) for c in series.coeffs], key: match}
    return result, (EXIT_OK if match else EXIT_VERIFICATION)


def _run_hstar(args) -> tuple[dict, int]:
    data = en.ehrhart_data_for(args.obj, args.n, unsafe=args.unsafe_large)
    expected = en.eulerian(args.n if args.obj == "Pn" else args.n - 1)
    match = data.hstar == expected
    result = {
        "object": data.polytope_id,
        "dim": data.dim,
        "counts": [_s(c) for c in data.counts],
        "hstar": [_s(c) for c in data.hstar.coeffs],
        "palindromic": data.hstar.is_palindromic(),
        "matches_eulerian": match,
    }
    return result, (EXIT_OK if match else EXIT_VERIFICATION)


def _run_eulerian(args) -> tuple[dict, int]:
    poly = en.eulerian(args.n)
    return {"coefficients": [_s(c) for c in poly.coeffs]}, EXIT_OK


def _run_reflexive(args) -> tuple[dict, int]:
    cert = ge.is_reflexive_after_translation(ge.difference_pyramid_base(args.n))
    result = {
        "reflexive": cert.reflexive,
        "reason": cert.reason,
        "interior_point": list(cert.interior_point) if cert.interior_point else None,
        "facets": [{"normal": list(a), "rhs": _s(b)} for a, b in cert.facet_data],
    }
    return result, (EXIT_OK if cert.reflexive else EXIT_VERIFICATION)


def _run_hilbert_basis(args) -> tuple[dict, int]:
    basis = hb.construct_hilbert_basis(args.n)
    result = {
        "size": len(basis),
        "elements": [{"vector": list(v), "subset": list(a.elements)} for v, a in basis.elements],
    }
    code = EXIT_OK
    if args.verify_bruteforce:
        grading = ge.degree_grading(args.n) if args.n >= 2 else ge.ones_grading(1)
        oracle = hb.minimal_generators_bruteforce(ge.lecture_hall_cone(args.n), grading, args.tmax)
        result["bruteforce_matches"] = oracle == set(basis.vectors())
        if not result["bruteforce_matches"]:
            code = EXIT_VERIFICATION
    return result, code


def _run_decompose(args) -> tuple[dict, int]:
    try:
        point = tuple(int(x) for x in args.point.split(","))
    except ValueError as exc:
        raise DomainError(f"could not parse point {args.point!r}") from exc
    dec = hb.decompose(point, args.n)
    result = {
        "point": list(point),
        "degree": len(dec.parts),
        "parts": [list(p) for p in dec.parts],
        "used_fallback": list(dec.used_fallback),
    }
    return result, EXIT_OK


def _run_triangulate(args) -> tuple[dict, int]:
    t = tr.triangulate_difference_polytope(args.n)
    result = {"n": args.n, "construction_id": tr.CONSTRUCTION_ID, "facets": len(t.facets),
              "vertices": len(t.vertices)}
    code = EXIT_OK
    if args.check == "all":
        n_strict = sum(len(t.vertices) - len(f) for f in t.facets)
        if n_strict > tr.REGULARITY_MAX_STRICT and not args.unsafe_large:
            raise BudgetError(
                f"regularity LP needs {n_strict} strict rows; rerun with --unsafe-large")
        uni, offender = tr.check_unimodular(t)
        flag = tr.check_flag(t)
        cov = tr.check_covering(t)
        if args.unsafe_large:
            cert = tr.check_regular(t, max_strict=n_strict)
        else:
            cert = tr.difference_regularity_certificate(args.n)
        regular = cert is not None
        if regular:
            t = t.with_lifting(cert.heights)
        result.update({
            "unimodular": uni,
            "flag": flag.is_flag,
            "covering": cov.ok,
            "regular": regular,
            "nonedges": _s(len([nf for nf in flag.minimal_non_faces if len(nf) == 2])),
        })
        if not (uni and flag.is_flag and cov.ok and regular):
            code = EXIT_VERIFICATION
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(tr.triangulation_to_json(t) + "\n")
        result["out"] = args.out
    return result, code


def _run_braid(args) -> tuple[dict, int]:
    t = cj.braid_triangulation(args.k)
    uni, _ = tr.check_unimodular(t)
    flag = tr.check_flag(t)
    count, _ = cj.minimal_nonedges(t)
    sperner = cj.sperner_pairs(args.k)
    ok_shelling, attach = cj.lex_shelling_attachments(t)
    eulerian_multiset = {d: c for d, c in enumerate(en.eulerian(args.k).coeffs)}
    attach_multiset = dict(sorted(Counter(attach).items()))
    matches = (uni and flag.is_flag and count == sperner and ok_shelling
               and attach_multiset == {d: c for d, c in eulerian_multiset.items() if c})
    result = {
        "k": args.k,
        "facets": len(t.facets),
        "unimodular": uni,
        "flag": flag.is_flag,
        "nonedges": _s(count),
        "sperner": _s(sperner),
        "lex_shelling_valid": ok_shelling,
        "attach_multiset": {str(k): _s(v) for k, v in attach_multiset.items()},
        "matches_reference_properties": matches,
    }
    return result, (EXIT_OK if matches else EXIT_VERIFICATION)


def _run_conjecture(args) -> tuple[dict, int]:
    report = cj.conjecture_report(args.n, budget=args.budget, include_timing=args.timing)
    code = EXIT_BUDGET if report["shelling"]["budget_exhausted"] else EXIT_OK
    return report, code


_HANDLERS = {
    "series": _run_series,
    "hstar": _run_hstar,
    "eulerian": _run_eulerian,
    "reflexive": _run_reflexive,
    "hilbert-basis": _run_hilbert_basis,
    "decompose": _run_decompose,
    "triangulate": _run_triangulate,
    "braid": _run_braid,
    "conjecture": _run_conjecture,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _Usage as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    _threads()
    params = {k: v for k, v in vars(args).items() if k not in ("command", "format") and v is not None}
    try:
        result, code = _HANDLERS[args.command](args)
    except DomainError as exc:
        sys.stderr.write(f"domain error: {exc}\n")
        return EXIT_DOMAIN
    except BudgetError as exc:
        sys.stderr.write(f"budget error: {exc}\n")
        return EXIT_BUDGET
    except VerificationError as exc:
        sys.stderr.write(f"verification error: {exc}\n")
        return EXIT_VERIFICATION
    _emit(_envelope(args.command, params, result), args.format)
    return code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
