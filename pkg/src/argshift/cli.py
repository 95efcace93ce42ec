"""Command-line front end: campaigns, probes, and structural selftests.

Exit codes: 0 all checks passed, 1 a mathematical check failed (the
report is still written), 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .errors import (ConfigurationError, ModeMismatchError, NonRegularError,
                     RealizationError, SamplingError, SolverError)
from .invariants import eval_all, fundamental_invariants
from .liealg import FLOAT, build_algebra
from .shift import mf_family
from .slodowy import (ad_h_eigen_check, intersect_orbit, principal_sl2,
                      slodowy_slice)
from .verifier import (KINDS, TAG_SHIFT, TAG_SINGULAR, TAG_SLICE,
                       probe_singular_inclusion, probe_slice_regularity,
                       regular_sample, verify_completeness)

DEFAULT_SEED = 42
SEED_ENV = "ARGSHIFT_SEED"

TAG_SLICE_TARGET = 7
TAG_SLICE_NEWTON = 8

SUPPORTED_PAIRS = (("A", 1), ("A", 2), ("A", 3), ("A", 4),
                   ("B", 2), ("B", 3), ("C", 2), ("C", 3))

# Draft-07 schema for the `verify` JSON report.
JSONSCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "type": "object",
    "required": ["config", "algebra", "trials", "verdict", "elapsed_ms",
                 "version"],
    "additionalProperties": False,
    "properties": {
        "config": {
            "type": "object",
            "required": ["type", "rank", "shift", "orbit", "trials", "seed",
                         "tolerance", "mode"],
            "additionalProperties": False,
            "properties": {
                "type": {"enum": ["A", "B", "C"]},
                "rank": {"type": "integer", "minimum": 1, "maximum": 6},
                "shift": {"enum": list(KINDS)},
                "orbit": {"enum": list(KINDS)},
                "trials": {"type": "integer", "minimum": 1},
                "seed": {"type": "integer"},
                "tolerance": {"type": "number",
                              "exclusiveMinimum": 0, "maximum": 1e-2},
                "mode": {"enum": ["exact", "float"]},
            },
        },
        "algebra": {
            "type": "object",
            "required": ["type", "rank", "n", "r", "ell"],
            "additionalProperties": False,
            "properties": {
                "type": {"enum": ["A", "B", "C"]},
                "rank": {"type": "integer"},
                "n": {"type": "integer"},
                "r": {"type": "integer"},
                "ell": {"type": "integer"},
            },
        },
        "trials": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": ["rank", "expected", "drift",
                             "annihilator_residual"],
                "additionalProperties": False,
                "properties": {
                    "rank": {"type": "integer"},
                    "expected": {"type": "integer"},
                    "drift": {"type": "number"},
                    "annihilator_residual": {"type": "number"},
                },
            },
        },
        "verdict": {"enum": ["pass", "fail"]},
        "elapsed_ms": {"type": ["integer", "null"]},
        "version": {"type": "string"},
    },
}


def _json_default(o):
    if isinstance(o, complex):
        return [o.real, o.imag]
    if isinstance(o, np.complexfloating):
        return [float(o.real), float(o.imag)]
    if isinstance(o, np.floating):
        return float(o)
    if isinstance(o, np.integer):
        return int(o)
    raise TypeError(f"not JSON-serializable: {type(o)!r}")


def _emit(text: str, output: str | None) -> None:
    sys.stdout.write(text)
    if output:
        Path(output).write_text(text)


def _dump(report: dict, output: str | None) -> None:
    _emit(json.dumps(report, indent=2, default=_json_default) + "\n", output)


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise ConfigurationError(f"{SEED_ENV} must be an integer, got {raw!r}")


def _check_tolerance(tol: float) -> float:
    if not 0 < tol <= 1e-2:
        raise ConfigurationError(
            f"tolerance must lie in (0, 1e-2], got {tol!r}")
    return tol


def _add_algebra_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--type", required=True, dest="type_label",
                   metavar="{A,B,C}", help="algebra type")
    p.add_argument("--rank", required=True, type=int, help="rank, 1..6")


def _add_seed_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=None,
                   help=f"campaign seed (default: ${SEED_ENV} or "
                        f"{DEFAULT_SEED})")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="argshift",
        description="Rank verification for shifted invariant families on "
                    "regular adjoint orbits of classical Lie algebras.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run a restricted-rank campaign")
    _add_algebra_args(p)
    p.add_argument("--shift", choices=KINDS, default="semisimple",
                   help="kind of the shift element a")
    p.add_argument("--orbit", choices=KINDS, default="semisimple",
                   help="kind of the orbit base point")
    p.add_argument("--trials", type=int, default=20)
    _add_seed_arg(p)
    p.add_argument("--tolerance", type=float, default=1e-8)
    p.add_argument("--mode", choices=["float", "exact"], default="float")
    p.add_argument("--output", default=None, help="also write the report here")
    p.add_argument("--csv", action="store_true",
                   help="emit the trial table as CSV instead of JSON")
    p.add_argument("--jobs", type=int, default=1,
                   help="worker threads for trials (result is identical)")
    p.add_argument("--timing", action="store_true",
                   help="include wall time in the report (breaks "
                        "byte-for-byte comparison between runs)")

    p = sub.add_parser("sl2", help="print the principal triple and checks")
    _add_algebra_args(p)

    p = sub.add_parser("slice", help="intersect the slice with an orbit")
    _add_algebra_args(p)
    _add_seed_arg(p)
    p.add_argument("--zero", action="store_true",
                   help="target the zero-invariant orbit (expects xi)")
    p.add_argument("--output", default=None)

    p = sub.add_parser("probe-singular",
                       help="rank deficiency along singular + C*a")
    _add_algebra_args(p)
    p.add_argument("--samples", type=int, default=20)
    _add_seed_arg(p)
    p.add_argument("--tolerance", type=float, default=1e-8)
    p.add_argument("--output", default=None)

    p = sub.add_parser("probe-slice-regularity",
                       help="regularity of points of xi + b+")
    _add_algebra_args(p)
    p.add_argument("--samples", type=int, default=100)
    _add_seed_arg(p)
    p.add_argument("--output", default=None)

    p = sub.add_parser("selftest",
                       help="exact structural suite over supported algebras")
    return parser


def _csv_text(trials) -> str:
    lines = ["trial,rank,expected,drift,annihilator_residual"]
    for i, t in enumerate(trials):
        lines.append(f"{i},{t.restricted_rank},{t.expected},"
                     f"{t.drift!r},{t.annihilator_residual!r}")
    return "\n".join(lines) + "\n"


def _cmd_verify(args) -> int:
    seed = _resolve_seed(args)
    tol = _check_tolerance(args.tolerance)
    L = build_algebra(args.type_label, args.rank)
    rep = verify_completeness(L, args.shift, args.orbit, args.trials, seed,
                              tol, mode=args.mode, jobs=args.jobs)
    if args.csv:
        _emit(_csv_text(rep.trials), args.output)
    else:
        report = {
            "config": {
                "type": rep.type_label, "rank": rep.rank,
                "shift": rep.shift_kind, "orbit": rep.orbit_kind,
                "trials": args.trials, "seed": rep.seed,
                "tolerance": rep.tolerance, "mode": rep.mode,
            },
            "algebra": {"type": rep.type_label, "rank": rep.rank,
                        "n": rep.n, "r": rep.r, "ell": rep.ell},
            "trials": [{"rank": t.restricted_rank, "expected": t.expected,
                        "drift": t.drift,
                        "annihilator_residual": t.annihilator_residual}
                       for t in rep.trials],
            "verdict": "pass" if rep.passed else "fail",
            "elapsed_ms": int(round(rep.elapsed_s * 1000))
            if args.timing else None,
            "version": __version__,
        }
        _dump(report, args.output)
    return 0 if rep.passed else 1


def _cmd_sl2(args) -> int:
    L = build_algebra(args.type_label, args.rank)
    T = principal_sl2(L.chevalley)
    Sl = slodowy_slice(L, T)
    print(f"principal sl2 triple for {L.type_label}{L.rank} "
          f"(n={L.n}, r={L.r})")
    for alpha, c in T.coefficients.items():
        print(f"  c[{alpha}] = {c}")
    print("  [h,xi]=2xi, [h,eta]=-2eta, [xi,eta]=h: PASS (exact)")
    print(f"  ker(ad_eta): dimension {Sl.dimension} = r, inside b+: PASS")
    grading = ad_h_eigen_check(L, T)
    print(f"  ad_h non-positive on b+ and on the kernel: "
          f"{'PASS' if grading else 'FAIL'}")
    return 0 if grading else 1


def _cmd_slice(args) -> int:
    seed = _resolve_seed(args)
    L = build_algebra(args.type_label, args.rank)
    T = principal_sl2(L.chevalley)
    Sl = slodowy_slice(L, T)
    S = fundamental_invariants(L)
    if args.zero:
        targets = [0.0] * L.r
    else:
        x = regular_sample(L, "mixed", [seed, TAG_SLICE_TARGET])
        targets = eval_all(S, x)
    sol = intersect_orbit(L, Sl, targets, [seed, TAG_SLICE_NEWTON])
    got = np.array(eval_all(S, sol))
    residual = float(np.max(np.abs(got - np.array(targets, dtype=complex))))
    report = {
        "type": L.type_label, "rank": L.rank,
        "targets": [complex(t) for t in targets],
        "residual": residual,
        "point": [complex(v) for v in sol.coords],
    }
    if args.zero:
        report["xi_deviation"] = float(np.max(np.abs(
            sol.coords - T.xi.to_float().coords)))
    _dump(report, args.output)
    return 0


def _cmd_probe_singular(args) -> int:
    seed = _resolve_seed(args)
    tol = _check_tolerance(args.tolerance)
    L = build_algebra(args.type_label, args.rank)
    a = regular_sample(L, "mixed", [seed, TAG_SHIFT], tolerance=tol)
    F = mf_family(fundamental_invariants(L), a, tol)
    rep = probe_singular_inclusion(L, F, args.samples, [seed, TAG_SINGULAR],
                                   tol)
    _dump(rep, args.output)
    return 0 if rep["passed"] else 1


def _cmd_probe_slice(args) -> int:
    seed = _resolve_seed(args)
    L = build_algebra(args.type_label, args.rank)
    T = principal_sl2(L.chevalley)
    rep = probe_slice_regularity(L, L.chevalley, T, args.samples,
                                 [seed, TAG_SLICE])
    _dump(rep, args.output)
    return 0 if rep["passed"] else 1


def _cmd_selftest(args) -> int:
    ok = True
    for tl, rk in SUPPORTED_PAIRS:
        L = build_algebra(tl, rk)
        T = principal_sl2(L.chevalley)
        Sl = slodowy_slice(L, T)
        S = fundamental_invariants(L)
        good = (Sl.dimension == L.r
                and ad_h_eigen_check(L, T)
                and sum(S.degrees) == S.ell == (L.n + L.r) // 2)
        ok = ok and good
        print(f"{tl}{rk}: n={L.n} r={L.r} ell={S.ell} "
              f"degrees={list(S.degrees)} {'PASS' if good else 'FAIL'}")
    print("selftest:", "PASS" if ok else "FAIL")
    return 0 if ok else 1


_COMMANDS = {
    "verify": _cmd_verify,
    "sl2": _cmd_sl2,
    "slice": _cmd_slice,
    "probe-singular": _cmd_probe_singular,
    "probe-slice-regularity": _cmd_probe_slice,
    "selftest": _cmd_selftest,
}


def run(argv=None) -> int:
    """Parse argv, run the subcommand, and return the exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (ConfigurationError, SamplingError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (SolverError, NonRegularError, RealizationError,
            ModeMismatchError) as e:
        print(f"check failed: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
