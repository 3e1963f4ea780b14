"""Command-line surface tying the pipeline together.

Every command reads and writes the JSON formats from hermicert.jsonio and
is deterministic for a fixed seed: repeated runs produce byte-identical
output.  Exit codes: 0 success or verdict True, 1 usage or parse error,
2 construction failure, 3 certification Fail, 4 verdict False.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import jsonio
from .certificates import (
    BallQuery,
    NonnegQuery,
    bezout_bound,
    certify_ball,
    certify_nonneg,
    real_root_count,
)
from .certify import DEFAULT_RETRIES, DEFAULT_SEED, certify_nonradical, certify_pipeline
from .hermite import (
    NonRadicalRankError,
    ReconstructionFailedError,
    build_extended_hermite,
    build_nonradical,
)
from .linalg import NoConnectedSelectionError, rank
from .numroots import (
    DivergedError,
    NoWellConditionedBasisError,
    SingularJacobianError,
    match_and_filter,
    newton_refine,
    select_basis,
)
from .polynomials import MonomialBasis, ParseError, parse_monomial, parse_poly
from .ratrecon import rational_reconstruct

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CONSTRUCTION = 2
EXIT_CERTIFY_FAIL = 3
EXIT_VERDICT_FALSE = 4

_CONSTRUCTION_ERRORS = (
    ReconstructionFailedError,
    NonRadicalRankError,
    NoWellConditionedBasisError,
    NoConnectedSelectionError,
    SingularJacobianError,
    DivergedError,
)


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_system(path: str):
    return jsonio.system_from_json(_load_json(path))


def _load_roots(path: str):
    return jsonio.roots_from_json(_load_json(path))


def _load_basis(path: str, variables) -> MonomialBasis:
    data = _load_json(path)
    return MonomialBasis([parse_monomial(s, variables) for s in data["monomials"]])


def _verdict_exit(verdict: str) -> int:
    return {"true": EXIT_OK, "false": EXIT_VERDICT_FALSE}.get(verdict, EXIT_CERTIFY_FAIL)


def _parse_center(text: str) -> tuple[Fraction, ...]:
    return tuple(Fraction(part.strip()) for part in text.split(","))


def _build_hermite(args, system, roots):
    """Shared by build and pipeline: full matrix, or the non-radical route
    when the basis block is singular."""
    if args.basis:
        basis = _load_basis(args.basis, system.variables)
    else:
        basis = select_basis(roots, system.variables)
    if len(basis) != len(roots):
        raise ValueError(
            f"basis size {len(basis)} must equal the number of points {len(roots)}"
        )
    hplus = build_extended_hermite(roots, basis)
    k = len(basis)
    h1 = hplus.matrix.submatrix(range(k), range(k))
    if rank(h1) == k:
        return hplus, None
    reduced = build_nonradical(roots, basis)
    return reduced.hplus, reduced


def cmd_build(args) -> tuple[int, dict]:
    system = _load_system(args.system)
    roots = _load_roots(args.roots)
    hplus, reduced = _build_hermite(args, system, roots)
    extra = {} if reduced is None else {"kbar": reduced.reduced_size}
    return EXIT_OK, jsonio.hermite_to_json(hplus, system.variables, **extra)


def _dispatch_certify(system, g, hplus, seed, retries):
    k_points = hplus.provenance.point_count
    kbar = len(hplus.labels.base)
    if k_points > kbar:
        return certify_nonradical(
            system,
            g,
            kbar,
            hplus.labels.base,
            hplus,
            total_multiplicity=k_points,
            seed=seed,
            retries=retries,
        )
    return certify_pipeline(system, g, hplus, seed=seed, retries=retries)


def cmd_certify(args) -> tuple[int, dict]:
    system = _load_system(args.system)
    hplus = jsonio.hermite_from_json(_load_json(args.hermite), system.variables)
    g = parse_poly(args.g, system.variables)
    outcome = _dispatch_certify(system, g, hplus, args.seed, args.retries)
    report = jsonio.report_to_json(outcome, system.variables)
    return (EXIT_OK if outcome.certified else EXIT_CERTIFY_FAIL), report


def cmd_ball(args) -> tuple[int, dict]:
    system = _load_system(args.system)
    hplus = jsonio.hermite_from_json(_load_json(args.hermite), system.variables)
    query = BallQuery(center=_parse_center(args.center), radius_squared=Fraction(args.eps2))
    cert = certify_ball(system, query, hplus, seed=args.seed, retries=args.retries)
    payload = {
        "verdict": cert.verdict,
        "sigma_H1": cert.sigma_h1,
        "sigma_Hg": cert.sigma_hg,
        "center": [jsonio.frac_str(c) for c in query.center],
        "eps2": jsonio.frac_str(query.radius_squared),
        "certificate": jsonio.report_to_json(cert.outcome, system.variables),
    }
    return _verdict_exit(cert.verdict), payload


def cmd_nonneg(args) -> tuple[int, dict]:
    system = _load_system(args.system)
    g = parse_poly(args.g, system.variables)
    roots = _load_roots(args.roots)
    query = NonnegQuery(system, g, assume_smooth_bounded=args.assume_smooth_bounded)
    basis = None
    if args.basis:
        lag_vars = [f"l{j + 1}" for j in range(len(system.polys))]
        basis = _load_basis(args.basis, list(system.variables) + lag_vars)
    cert = certify_nonneg(query, roots, seed=args.seed, retries=args.retries, basis=basis)
    payload = {
        "verdict": cert.verdict,
        "sigma_Hg": cert.sigma_hg,
        "sigma_Hg2": cert.sigma_hg2,
        "lagrange_system": jsonio.system_to_json(cert.lagrange),
        "bezout_bound": bezout_bound(system, g),
        "assume_smooth_bounded": cert.assume_smooth_bounded,
        "certificate": (
            jsonio.report_to_json(cert.outcome, cert.lagrange.variables)
            if cert.outcome is not None
            else {"status": "fail", "reason": cert.reason}
        ),
    }
    if cert.verdict == "fail" and cert.reason:
        payload["reason"] = cert.reason
    return _verdict_exit(cert.verdict), payload


def cmd_count_real(args) -> tuple[int, dict]:
    system = _load_system(args.system)
    hplus = jsonio.hermite_from_json(_load_json(args.hermite), system.variables)
    one = parse_poly("1", system.variables)
    outcome = _dispatch_certify(system, one, hplus, args.seed, args.retries)
    report = jsonio.report_to_json(outcome, system.variables)
    if not outcome.certified:
        return EXIT_CERTIFY_FAIL, {"real_root_count": None, "certificate": report}
    return EXIT_OK, {"real_root_count": real_root_count(outcome.h1), "certificate": report}


def cmd_refine(args) -> tuple[int, dict]:
    system = _load_system(args.system)
    roots = _load_roots(args.roots)
    refined = []
    residuals = []
    for idx, point in enumerate(roots.points):
        try:
            result = newton_refine(system, point, args.iters)
        except (SingularJacobianError, DivergedError) as exc:
            raise type(exc)(f"point {idx}: {exc}") from exc
        refined.append(result.point)
        residuals.append(result.residual)
    out_roots = type(roots)(
        points=tuple(refined),
        accuracy=roots.accuracy,
        coord_bound=roots.coord_bound,
        radii=roots.radii,
    )
    payload = jsonio.roots_to_json(out_roots)
    payload["residuals"] = [repr(r) for r in residuals]
    return EXIT_OK, payload


def cmd_filter_roots(args) -> tuple[int, dict]:
    if len(args.system) != 2 or len(args.roots) != 2:
        raise ValueError("filter-roots needs --system and --roots twice (list A, list B)")
    system_a = _load_system(args.system[0])
    system_b = _load_system(args.system[1])
    roots_a = _load_roots(args.roots[0])
    roots_b = _load_roots(args.roots[1])
    result = match_and_filter(roots_a, roots_b, system_a, system_b, max_rounds=args.max_rounds)
    kept_points = tuple(p for p, _ in result.kept)
    kept_radii = tuple(r for _, r in result.kept)
    out_roots = type(roots_a)(
        points=kept_points,
        accuracy=roots_a.accuracy,
        coord_bound=roots_a.coord_bound,
        radii=kept_radii,
    )
    payload = jsonio.roots_to_json(out_roots)
    payload["inconclusive"] = result.inconclusive
    return EXIT_OK, payload


def cmd_reconstruct_rational(args) -> tuple[int, dict]:
    value = Fraction(args.value)
    result = rational_reconstruct(value, args.bound)
    payload = {
        "value": args.value,
        "bound": args.bound,
        "result": None if result is None else jsonio.frac_str(result),
    }
    return (EXIT_OK if result is not None else EXIT_CONSTRUCTION), payload


def cmd_pipeline(args) -> tuple[int, dict]:
    system = _load_system(args.system)
    roots = _load_roots(args.roots)
    hplus, reduced = _build_hermite(args, system, roots)
    payload: dict = {
        "hermite": jsonio.hermite_to_json(
            hplus, system.variables, **({} if reduced is None else {"kbar": reduced.reduced_size})
        )
    }
    g = parse_poly(args.g, system.variables)
    outcome = _dispatch_certify(system, g, hplus, args.seed, args.retries)
    payload["certificate"] = jsonio.report_to_json(outcome, system.variables)
    if not outcome.certified:
        payload["verdict"] = "fail"
        return EXIT_CERTIFY_FAIL, payload
    payload["real_root_count"] = real_root_count(outcome.h1)
    if args.center is not None or args.eps2 is not None:
        if args.center is None or args.eps2 is None:
            raise ValueError("--center and --eps2 must be given together")
        if reduced is not None:
            raise ValueError("ball certificates require the radical route")
        query = BallQuery(center=_parse_center(args.center), radius_squared=Fraction(args.eps2))
        cert = certify_ball(system, query, hplus, seed=args.seed, retries=args.retries)
        payload["ball"] = {
            "verdict": cert.verdict,
            "sigma_H1": cert.sigma_h1,
            "sigma_Hg": cert.sigma_hg,
        }
        return _verdict_exit(cert.verdict), payload
    return EXIT_OK, payload


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hermicert",
        description="Exact Hermite matrices from approximate roots, certified.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, seeded=True):
        p.add_argument("--out", help="write the JSON result to this path instead of stdout")
        if seeded:
            p.add_argument("--seed", type=int, default=DEFAULT_SEED)
            p.add_argument("--retries", type=int, default=DEFAULT_RETRIES)

    p = sub.add_parser("build", help="reconstruct the extended Hermite matrix from roots")
    p.add_argument("--system", required=True)
    p.add_argument("--roots", required=True)
    p.add_argument("--basis", help="basis JSON; selected automatically when omitted")
    common(p)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("certify", help="symbolically certify a Hermite matrix")
    p.add_argument("--system", required=True)
    p.add_argument("--hermite", required=True)
    p.add_argument("--g", default="1", help="polynomial for the weighted matrix (default 1)")
    common(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("ball", help="certify whether a real root lies in a closed ball")
    p.add_argument("--system", required=True)
    p.add_argument("--hermite", required=True)
    p.add_argument("--center", required=True, help="comma-separated rational coordinates")
    p.add_argument("--eps2", required=True, help="squared radius, rational")
    common(p)
    p.set_defaults(func=cmd_ball)

    p = sub.add_parser("nonneg", help="certify non-negativity of g over the real variety")
    p.add_argument("--system", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--roots", required=True, help="approximate roots of the Lagrange system")
    p.add_argument("--basis", help="basis JSON over the extended ring")
    p.add_argument("--assume-smooth-bounded", action="store_true")
    common(p)
    p.set_defaults(func=cmd_nonneg)

    p = sub.add_parser("count-real", help="certified number of distinct real roots")
    p.add_argument("--system", required=True)
    p.add_argument("--hermite", required=True)
    common(p)
    p.set_defaults(func=cmd_count_real)

    p = sub.add_parser("refine", help="Newton-refine a roots file")
    p.add_argument("--system", required=True)
    p.add_argument("--roots", required=True)
    p.add_argument("--iters", type=int, default=3)
    common(p, seeded=False)
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser(
        "filter-roots", help="discard points of list A that cannot be roots of both systems"
    )
    p.add_argument("--system", action="append", required=True, help="give twice: A then B")
    p.add_argument("--roots", action="append", required=True, help="give twice: A then B")
    p.add_argument("--max-rounds", type=int, default=6)
    common(p, seeded=False)
    p.set_defaults(func=cmd_filter_roots)

    p = sub.add_parser("reconstruct-rational", help="rational number reconstruction")
    p.add_argument("value", help="decimal or rational string")
    p.add_argument("bound", type=int, help="denominator bound")
    common(p, seeded=False)
    p.set_defaults(func=cmd_reconstruct_rational)

    p = sub.add_parser("pipeline", help="build, certify, and report in one run")
    p.add_argument("--system", required=True)
    p.add_argument("--roots", required=True)
    p.add_argument("--basis")
    p.add_argument("--g", default="1")
    p.add_argument("--center")
    p.add_argument("--eps2")
    common(p)
    p.set_defaults(func=cmd_pipeline)

    return parser


def _emit(payload: dict, out_path: str | None):
    text = jsonio.canonical_dumps(payload)
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        code, payload = args.func(args)
    except _CONSTRUCTION_ERRORS as exc:
        payload = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        code = EXIT_CONSTRUCTION
    except (ParseError, json.JSONDecodeError, ValueError, KeyError, OSError) as exc:
        payload = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        code = EXIT_USAGE
    _emit(payload, args.out)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
