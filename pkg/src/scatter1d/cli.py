"""Command-line front end.

Exit codes: 0 success (all applicable identities pass), 1 identity failure,
2 usage or parse error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import potential as pot
from .errors import NotConvergedError, ScatteringError, SpectralSingularityError
from .identities import RESIDUAL_NAMES, full_report
from .spectral import PotentialTemplate, Target, design_cpa, find_points
from .transfer import IntegratorConfig

EXIT_OK, EXIT_IDENTITY, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3

AMPLITUDE_COLUMNS = (
    "k",
    "r_l_re", "r_l_im",
    "r_r_re", "r_r_im",
    "t_l_re", "t_l_im",
    "t_r_re", "t_r_im",
    "d_re", "d_im", "d_abs",
)  # fmt: skip
SCAN_COLUMNS = AMPLITUDE_COLUMNS + RESIDUAL_NAMES


class UsageError(Exception):
    pass


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def read_potential(path: str) -> pot.Potential:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    try:
        return pot.from_dict(data)
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise UsageError(f"{path}: invalid potential description: {exc}") from None


def _k_grid(args) -> np.ndarray:
    if not (args.k_min > 0 and args.k_max > args.k_min):
        raise UsageError("need 0 < --k-min < --k-max")
    if args.points < 2:
        raise UsageError("--points must be at least 2")
    return np.linspace(args.k_min, args.k_max, args.points)


def _cfg(args) -> IntegratorConfig:
    try:
        return IntegratorConfig(h=args.step, method=args.method)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def scan_rows(p: pot.Potential, ks, cfg: IntegratorConfig) -> list[dict[str, float]]:
    rows = []
    for k in ks:
        try:
            rep = full_report(p, float(k), cfg)
        except SpectralSingularityError:
            rows.append({c: (float(k) if c == "k" else math.nan) for c in SCAN_COLUMNS})
            continue
        a = rep.amplitudes
        row = {"k": float(k)}
        for name in ("r_l", "r_r", "t_l", "t_r"):
            z = getattr(a, name)
            row[f"{name}_re"], row[f"{name}_im"] = z.real, z.imag
        row["d_re"], row["d_im"], row["d_abs"] = rep.d.real, rep.d.imag, abs(rep.d)
        row.update(rep.residuals)
        rows.append(row)
    return rows


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_scan(args) -> int:
    p = read_potential(args.potential)
    rows = scan_rows(p, _k_grid(args), _cfg(args))
    if args.format == "json":
        text = json.dumps(rows, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(SCAN_COLUMNS)
        for row in rows:
            writer.writerow([_fmt(row[c]) for c in SCAN_COLUMNS])
        text = buf.getvalue()
    _emit(text, args.out)
    return EXIT_OK


def _pretty(rep, sym: pot.SymmetryClass) -> str:
    lines = [
        f"k = {rep.k:g}   D = {rep.d:.6g}   |D| = {abs(rep.d):.6g}   tolerance = {rep.tolerance:.1e}",
        f"real: {sym.is_real}   PT-symmetric: {sym.is_pt_symmetric}",
    ]
    failures = set(rep.failures())
    for name in RESIDUAL_NAMES:
        status = rep.applicability[name]
        if name in failures:
            status = "FAIL"
        elif status == "applies":
            status = "ok"
        lines.append(f"  {name:<22s} {rep.residuals[name]:11.3e}  {status}")
    return "\n".join(lines) + "\n"


def cmd_check(args) -> int:
    if not args.k > 0:
        raise UsageError("--k must be positive")
    p = read_potential(args.potential)
    rep = full_report(p, args.k, _cfg(args), tolerance=args.tol)
    sym = pot.classify_symmetry(p)
    data = rep.to_dict()
    data["symmetry"] = sym._asdict()
    text = json.dumps(data, indent=2) + "\n"
    sys.stdout.write(text if args.format == "json" else _pretty(rep, sym))
    if args.out:
        Path(args.out).write_text(text)
    return EXIT_OK if rep.passed() else EXIT_IDENTITY


def cmd_find(args) -> int:
    p = read_potential(args.potential)
    ks = _k_grid(args)
    if args.points < 3:
        raise UsageError("--points must be at least 3 for a minimum search")
    target = Target(args.target)
    points = find_points(p, ks, target, _cfg(args), eps_accept=args.tol)
    if not points:
        print("no zeros found", file=sys.stderr)
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["kind", "k0", "residual", "a_minus_re", "a_minus_im", "b_plus_re", "b_plus_im"])
        for pt in points:
            a, b = pt.mode if pt.mode is not None else (math.nan, math.nan)
            writer.writerow(
                [pt.kind.value, _fmt(pt.k0), _fmt(pt.residual)]
                + [_fmt(complex(a).real), _fmt(complex(a).imag), _fmt(complex(b).real), _fmt(complex(b).imag)]
            )
        text = buf.getvalue()
    else:
        text = json.dumps([pt.to_dict() for pt in points], indent=2) + "\n"
    _emit(text, args.out)
    return EXIT_OK


def cmd_design_cpa(args) -> int:
    if not args.k > 0:
        raise UsageError("--k must be positive")
    base = read_potential(args.template)
    try:
        template = PotentialTemplate(base, real_only=args.real_only)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    eps = args.tol if args.tol is not None else 1e-8
    try:
        result = design_cpa(template, args.k, seed=args.seed, restarts=args.restarts, eps_accept=eps)
    except NotConvergedError as exc:
        print(f"not converged: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    print(f"|D({args.k:g})| = {result.d_abs:.3e}", file=sys.stderr)
    _emit(pot.dumps(result.potential) + "\n", args.out)
    return EXIT_OK


def _add_integrator(sp) -> None:
    sp.add_argument("--step", type=float, default=None, help="integrator step h (grids only)")
    sp.add_argument("--method", default="rk4", choices=["rk4"])


def _add_range(sp, points: int) -> None:
    sp.add_argument("--k-min", type=float, required=True)
    sp.add_argument("--k-max", type=float, required=True)
    sp.add_argument("--points", type=int, default=points)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="scatter1d", description="1D transfer-matrix scattering toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("scan", help="amplitudes, D(k) and identity residuals over a k range")
    sp.add_argument("potential")
    _add_range(sp, 50)
    sp.add_argument("--format", choices=["csv", "json"], default="csv")
    sp.add_argument("--tol", type=float, default=None, help="unused by scan; accepted for symmetry")
    sp.add_argument("--out")
    _add_integrator(sp)
    sp.set_defaults(func=cmd_scan)

    sp = sub.add_parser("check", help="identity report at one wavenumber")
    sp.add_argument("potential")
    sp.add_argument("--k", type=float, required=True)
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.add_argument("--tol", type=float, default=None, help="override the pass/fail tolerance")
    sp.add_argument("--out", help="also write the JSON report here")
    _add_integrator(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("find", help="locate CPA points or spectral singularities")
    sp.add_argument("potential")
    sp.add_argument("--target", choices=["cpa", "ss"], default="cpa")
    _add_range(sp, 200)
    sp.add_argument("--format", choices=["csv", "json"], default="json")
    sp.add_argument("--tol", type=float, default=None, help="acceptance threshold on |f(k0)|")
    sp.add_argument("--out")
    _add_integrator(sp)
    sp.set_defaults(func=cmd_find)

    sp = sub.add_parser("design-cpa", help="tune couplings so that D(k) vanishes")
    sp.add_argument("template")
    sp.add_argument("--k", type=float, required=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--restarts", type=int, default=8)
    sp.add_argument("--real-only", action="store_true", help="keep couplings real")
    sp.add_argument("--tol", type=float, default=None)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_design_cpa)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ScatteringError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
