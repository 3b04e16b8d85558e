"""Command-line front end.  Every subcommand prints one JSON report.

Exit codes: 0 all checks passed, 1 a verification failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Any

from . import serialize
from .balls import Ball
from .errors import LocalSpectraError, SearchBudgetExceeded
from .field import FieldModel, Vector, is_prime
from .grammar import GrammarError, parse_points, parse_residues, parse_set

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class Outcome:
    report: Any
    passed: bool = True


def _model(args) -> FieldModel:
    if not is_prime(args.p):
        raise UsageError(f"p = {args.p} is not prime")
    return FieldModel.laurent(args.p) if args.field == "laurent" else FieldModel.padic(args.p)


def _measure(args, model):
    from .fourier import AtomicMeasure, SelfSimilarMeasure, UniformCompactOpen

    given = [x for x in (args.set, args.atoms, args.digits) if x]
    if len(given) != 1:
        raise UsageError("give exactly one of --set, --atoms, --digits")
    if args.set:
        return UniformCompactOpen(parse_set(args.set, model))
    if args.atoms:
        return AtomicMeasure.uniform(model, parse_points(args.atoms, model))
    return SelfSimilarMeasure(model, args.s, tuple(parse_residues(args.digits)))


# -- subcommands ----------------------------------------------------------------


def cmd_ft(args) -> Outcome:
    from .fourier import double_integral_identity, double_integral_numeric_check, fourier_transform, ft_ball_indicator

    model = _model(args)
    if args.double_integral:
        a, b = args.double_integral
        closed = double_integral_identity(a, b, args.p)
        cells = double_integral_numeric_check(a, b, args.p, model)
        return Outcome({"a": a, "b": b, "closed_form": closed, "cell_sum": cells, "equal": closed == cells}, closed == cells)
    if args.xi is None:
        raise UsageError("--xi is required")
    xis = parse_points(args.xi, model)
    if args.ball is not None:
        vals = [ft_ball_indicator(model, args.ball, x) for x in xis]
        what = {"ball_indicator_radius_exp": args.ball}
    else:
        mu = _measure(args, model)
        vals = [fourier_transform(mu, x) for x in xis]
        what = {"measure": type(mu).__name__}
    return Outcome({**what, "values": [{"xi": x, "value": v} for x, v in zip(xis, vals)]})


def cmd_qlattice(args) -> Outcome:
    from .quasilattice import QuasiLattice, density_profile, separation

    model = _model(args)
    lat = QuasiLattice(model, args.dimension)
    pts = lat.enumerate(args.radius)
    report: dict = {"radius_exp": args.radius, "count": len(pts), "expected": args.p ** (args.dimension * args.radius)}
    if len(pts) > 1:
        report["separation"] = separation(pts)
    zero = Vector(tuple(model.zero() for _ in range(args.dimension)))
    scales = range(0, args.radius) if args.scales is None else parse_residues(args.scales)
    prof = density_profile(pts, Ball(zero, args.radius), scales)
    report["density"] = prof
    if args.list:
        report["points"] = pts
    ok = len(pts) == report["expected"] and all(r.sup_count == r.inf_count == args.p ** (args.dimension * r.scale) for r in prof)
    report["uniform"] = ok
    return Outcome(report, ok)


def cmd_spectral_check(args) -> Outcome:
    from .spectra import check_jp_criterion, check_spectral_set, frame_bounds
    from .fourier import AtomicMeasure

    model = _model(args)
    lam = parse_points(args.spectrum, model)
    samples = parse_points(args.samples, model) if args.samples else None
    if args.set and not args.uniform:
        verdict = check_spectral_set(parse_set(args.set, model), lam, samples)
    else:
        mu = _measure(args, model)
        verdict = check_jp_criterion(mu, lam, samples)
    report = verdict.to_json()
    if args.frame:
        mu = _measure(args, model)
        if not isinstance(mu, AtomicMeasure):
            raise UsageError("--frame needs --atoms")
        A, B = frame_bounds(mu, lam)
        report["frame_bounds"] = [A, B]
    return Outcome(report, verdict.passed)


def cmd_hadamard(args) -> Outcome:
    from .spectra import hadamard_matrix, is_hadamard

    model = _model(args)
    S = parse_points(args.points, model)
    lam = parse_points(args.spectrum, model)
    if len(S) != len(lam):
        raise UsageError("need as many spectrum points as set points")
    ok = is_hadamard(S, lam, model)
    H = hadamard_matrix(S, lam, model)
    return Outcome({"hadamard": ok, "phases": [[str(h.turns) for h in row] for row in H]}, ok)


def cmd_triad(args) -> Outcome:
    if not is_prime(args.p):
        raise UsageError(f"p = {args.p} is not prime")
    if args.sweep:
        from . import _sweep

        sizes = parse_residues(args.sizes) if args.sizes else None
        r = _sweep.sweep(args.p, args.n, sizes, args.threads)
        r = {k: v for k, v in r.items() if k not in ("masks", "table")}
        return Outcome(r, r["discrepancies"] == 0)
    from .cyclic import triad

    if args.set is None:
        raise UsageError("--set or --sweep is required")
    rep = triad(parse_residues(args.set), args.p, args.n, args.budget)
    return Outcome(rep, rep.consistent)


def cmd_landau(args) -> Outcome:
    from .landau import LandauProblem, eigenvalues, verify_properties

    model = _model(args)
    problem = LandauProblem(parse_set(args.omega, model), parse_set(args.delta, model))
    rep = eigenvalues(problem, args.grid)
    report = rep.to_json()
    ok = rep.in_unit_interval() and rep.trace == problem.omega.measure() * problem.delta.measure()
    if args.properties:
        props = verify_properties(problem)
        report["properties"] = props.to_json()
        ok &= props.passed
    return Outcome(report, ok)


def cmd_selfsimilar(args) -> Outcome:
    from .selfsimilar import IfsSpec, dimension_ratio, run_depths

    if not is_prime(args.p):
        raise UsageError(f"p = {args.p} is not prime")
    spec = IfsSpec(args.p, args.s, tuple(parse_residues(args.digits)))
    ratio = dimension_ratio(spec)
    exact = ratio.exact()
    depths = run_depths(spec, args.depth, args.budget)
    report = {
        "p": args.p,
        "s": args.s,
        "digits": list(spec.digits),
        "dimension": float(ratio),
        "dimension_exact": None if exact is None else str(exact),
        "depths": [d.to_json(args.p ** (args.s * d.depth)) for d in depths],
    }
    return Outcome(report, all(d.passed for d in depths))


def cmd_acceptance(args) -> Outcome:
    from .acceptance import run_all

    only = set(parse_residues(args.only)) if args.only else None
    results = run_all(only, args.threads, echo=lambda s: print(s, file=sys.stderr))
    report = {"criteria": [r.to_json() for r in results], "passed": all(r.passed for r in results)}
    return Outcome(report, report["passed"])


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON (the default)")
    common.add_argument("--pretty", action="store_true", help="indent the JSON output")
    common.add_argument("--output", "-o", help="write the report to this file")
    common.add_argument("--threads", type=int, default=None, help="worker threads (default: LOCALSPECTRA_THREADS or CPU count)")
    common.add_argument("--budget", type=int, default=None, help="node budget for combinatorial searches")

    field_args = _Parser(add_help=False)
    field_args.add_argument("--p", type=int, required=True)
    field_args.add_argument("--field", choices=("qp", "laurent"), default="qp")

    measure = _Parser(add_help=False)
    measure.add_argument("--set", help='compact open set, e.g. "ball(0,1) ∪ ball(1/2,1)"')
    measure.add_argument("--atoms", help="points of a uniform atomic measure, comma separated")
    measure.add_argument("--digits", help="digit set of a self-similar measure")
    measure.add_argument("--s", type=int, default=1, help="ratio exponent for --digits")

    top = _Parser(prog="localspectra", description="Exact spectral computations over local fields.")
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("ft", parents=[common, field_args, measure], help="Fourier transform values")
    p.add_argument("--xi", help="evaluation points, comma separated")
    p.add_argument("--ball", type=int, help="transform of the ball B(0, p^k)")
    p.add_argument("--double-integral", type=int, nargs=2, metavar=("A", "B"))
    p.set_defaults(func=cmd_ft)

    p = sub.add_parser("qlattice", parents=[common, field_args], help="quasi-lattice points and densities")
    p.add_argument("--radius", type=int, default=3, help="enumerate inside B(0, p^radius)")
    p.add_argument("--dimension", type=int, default=1)
    p.add_argument("--scales", help="density scales (default 0..radius-1)")
    p.add_argument("--list", action="store_true", help="include the points")
    p.set_defaults(func=cmd_qlattice)

    p = sub.add_parser("spectral-check", parents=[common, field_args, measure], help="orthogonality and completeness")
    p.add_argument("--spectrum", required=True)
    p.add_argument("--samples", help="sample points (default: all residues)")
    p.add_argument("--uniform", action="store_true", help="normalize --set to a probability measure")
    p.add_argument("--frame", action="store_true", help="also report frame bounds (atomic measures)")
    p.set_defaults(func=cmd_spectral_check)

    p = sub.add_parser("hadamard", parents=[common, field_args], help="exact Hadamard test")
    p.add_argument("--points", required=True)
    p.add_argument("--spectrum", required=True)
    p.set_defaults(func=cmd_hadamard)

    p = sub.add_parser("triad", parents=[common], help="homogeneity, tile and spectrum of T in Z/p^nZ")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--set")
    p.add_argument("--sweep", action="store_true", help="classify all subsets (p^n <= 62)")
    p.add_argument("--sizes", help="restrict --sweep to these cardinalities")
    p.set_defaults(func=cmd_triad)

    p = sub.add_parser("landau", parents=[common, field_args], help="Landau operator spectrum")
    p.add_argument("--omega", required=True)
    p.add_argument("--delta", required=True)
    p.add_argument("--grid", type=int, default=None, help="cell scale m (default: smallest valid)")
    p.add_argument("--properties", action="store_true", help="run the property suite")
    p.set_defaults(func=cmd_landau)

    p = sub.add_parser("selfsimilar", parents=[common], help="self-similar measure truncations")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--digits", required=True)
    p.add_argument("--depth", type=int, default=2)
    p.set_defaults(func=cmd_selfsimilar)

    p = sub.add_parser("acceptance", parents=[common], help="run the acceptance suite")
    p.add_argument("--only", help="criterion numbers, comma separated")
    p.set_defaults(func=cmd_acceptance)
    return top


def run(argv: list[str] | None = None) -> tuple[int, str]:
    """Parse, execute and render; returns (exit code, output text)."""
    try:
        args = build_parser().parse_args(argv)
        outcome = args.func(args)
    except (UsageError, GrammarError) as exc:
        return EXIT_USAGE, serialize.dumps({"error": str(exc)})
    except SearchBudgetExceeded as exc:
        return EXIT_USAGE, serialize.dumps({"error": str(exc), "kind": "budget"})
    except (LocalSpectraError, ValueError) as exc:
        return EXIT_USAGE, serialize.dumps({"error": str(exc)})
    text = serialize.dumps(outcome.report, pretty=args.pretty)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return (EXIT_OK if outcome.passed else EXIT_FAILED), text


def main(argv: list[str] | None = None) -> int:
    code, text = run(argv)
    print(text, file=sys.stdout if code != EXIT_USAGE else sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
