"""Command-line front end: ``analyze``, ``sweep`` and ``threshold``."""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .errors import NumericalError, ValidationError
from .families import FAMILIES, get_family, parse_number, parse_params
from .statefile import load_state
from .states import LAMBDA_CONVENTIONS
from .sweep import (
    Axis,
    SweepSpec,
    ThresholdSpec,
    evaluate_scan,
    find_threshold,
    rows_to_csv,
    run_sweep,
    write_csv,
)
from .tripartite import (
    conditional_steering_scan,
    default_grid,
    facet15_L2,
    genuine_steering_ghz_symmetric,
    ghz_distillable,
    mermin_L1,
    negativities,
)

EXIT_OK, EXIT_VALIDATION, EXIT_NUMERICAL = 0, 1, 2


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise ValidationError(f"cannot write {out}: {exc}") from None


def _dump(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def analyze(args) -> dict:
    if args.state_file:
        if args.family:
            raise ValidationError("give either --family or --state-file, not both")
        if args.mode == "fixed":
            raise ValidationError("fixed mode needs a named --family")
        rho = load_state(args.state_file)
        if rho.dims != (2, 2, 2):
            raise ValidationError(f"expected a three-qubit state, got dims {list(rho.dims)}")
        verdict = conditional_steering_scan(rho, default_grid(args.grid_theta_steps))
        source = {"state_file": args.state_file}
        family = None
        params = {}
    else:
        if not args.family:
            raise ValidationError("one of --family or --state-file is required")
        family = get_family(args.family)
        params = family.resolve(parse_params(args.param))
        rho = family.state(params, args.lambda_convention)
        verdict = evaluate_scan(family, params, args.mode, args.grid_theta_steps, args.lambda_convention, state=rho)
        source = {"family": family.name, "params": params, "lambda_convention": args.lambda_convention}

    if not verdict.evaluated:
        raise NumericalError("every requested outcome has (near-)zero probability; no conditional state to analyze")
    witnesses = [w.as_dict() for w in verdict.witnesses]
    doc = {
        **source,
        "mode": args.mode,
        "negativity": negativities(rho),
        "ghz_distillable": ghz_distillable(rho),
        "conditional_steering": {
            "conditionally_steerable": verdict.conditionally_steerable,
            "s1_detects": verdict.s1_detects,
            "s2_detects": verdict.s2_detects,
            "min_s1": verdict.min_s1,
            "max_s2": verdict.max_s2,
            "max_M": verdict.max_M,
            "conditional_chsh_nonlocal": verdict.chsh_nonlocal,
            "evaluated": verdict.evaluated,
            "witness_count": len(witnesses),
            "witnesses": witnesses[: args.max_witnesses],
            "clamp_flags": verdict.clamp_flags,
            "skipped": verdict.skipped,
        },
    }
    if family is not None and family.name == "ghz-symmetric":
        p, q = params["p"], params["q"]
        L1, L2 = mermin_L1(p), facet15_L2(p, q)
        doc["ghz_symmetric"] = {
            "L1": L1,
            "L2": L2,
            "mermin_violated": L1 > 2,
            "facet15_violated": L2 > 4,
            "genuine_steering": genuine_steering_ghz_symmetric(p),
        }
    if family is not None and family.name == "psi-damped":
        doc["gamma"] = 1.0 - params["nu"]
    return doc


def cmd_analyze(args) -> None:
    _emit(_dump(analyze(args)), args.out)


def cmd_sweep(args) -> None:
    spec = SweepSpec(
        family=args.family,
        axes=[Axis.parse(s, parse_number) for s in args.sweep],
        fixed=parse_params(args.param),
        mode=args.mode,
        theta_steps=args.grid_theta_steps,
        convention=args.lambda_convention,
        out=args.out,
    )
    rows = run_sweep(spec, n_jobs=args.jobs)
    if args.out:
        write_csv(rows, args.out)
    else:
        sys.stdout.write(rows_to_csv(rows))


def cmd_threshold(args) -> None:
    spec = ThresholdSpec(
        family=args.family,
        noise_param=args.noise_param,
        lo=parse_number(args.bracket[0]),
        hi=parse_number(args.bracket[1]),
        predicate=args.predicate,
        fixed=parse_params(args.param),
        tol=args.tol,
        mode=args.mode,
        theta_steps=args.grid_theta_steps,
        convention=args.lambda_convention,
        prescan_step=args.prescan_step,
    )
    res = find_threshold(spec)
    doc = {
        "family": spec.family,
        "params": dict(spec.fixed),
        "noise_param": spec.noise_param,
        "bracket": [spec.lo, spec.hi],
        "predicate": spec.predicate,
        "mode": spec.mode,
        "lambda_convention": spec.convention,
        "tol": spec.tol,
        **res.as_dict(),
    }
    _emit(_dump(doc), args.out)


def _common(p: argparse.ArgumentParser, default_mode: str) -> None:
    p.add_argument("--family", choices=sorted(FAMILIES), help="named state family")
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE",
                   help="family parameter, repeatable; values may use pi and sqrt()")
    p.add_argument("--mode", choices=("grid", "fixed"), default=default_mode,
                   help=f"grid scan over all settings, or the family's fixed setting (default {default_mode})")
    p.add_argument("--grid-theta-steps", type=int, default=40, help="polar grid resolution (default 40)")
    p.add_argument("--lambda-convention", choices=LAMBDA_CONVENTIONS, default="sqrt",
                   help="how lambda0 is derived for the psi families (default sqrt)")
    p.add_argument("--out", help="output file (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="condsteer", description="Conditional steering of three-qubit states.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="JSON report for one state")
    _common(p, "grid")
    p.add_argument("--state-file", help="JSON state file {dims, re, im}")
    p.add_argument("--max-witnesses", type=int, default=25, help="witnesses listed in the report (default 25)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sweep", help="CSV of criteria over a parameter grid")
    _common(p, "fixed")
    p.add_argument("--sweep", action="append", required=True, metavar="NAME=START:STOP:STEP",
                   help="swept parameter, repeatable; first is slowest-varying")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers (default 1)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("threshold", help="bisect the noise value where a predicate switches")
    _common(p, "fixed")
    p.add_argument("--noise-param", required=True, help="parameter to bisect")
    p.add_argument("--bracket", nargs=2, required=True, metavar=("LO", "HI"))
    p.add_argument("--predicate", required=True,
                   help="s1-detects | s2-detects | any-steering | chsh-nonlocal | negativity-positive:<cut>")
    p.add_argument("--tol", type=float, default=1e-4, help="bisection tolerance (default 1e-4)")
    p.add_argument("--prescan-step", type=float, default=1e-3, help="monotonicity pre-scan step (default 1e-3)")
    p.set_defaults(func=cmd_threshold)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command in ("sweep", "threshold") and not args.family:
        parser.error("--family is required")
    try:
        args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except NumericalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK
