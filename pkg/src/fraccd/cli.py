"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
3 output I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

from . import __version__
from ._errors import DomainError
from .calibration import DEFAULT_ALPHA_BOUNDS, DEFAULT_B_BOUNDS, fit_factor
from .caputo import abm_max_error, verify_eigenproperty
from .grid import TimeGrid, Trajectory
from .growth import GrowthFactor, level_at
from .invariants import EconomySpec, limit_convergence_probe, surface_sample, y_composite
from .mittag_leffler import ml_eval2

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2
EXIT_IO = 3

LIMIT_TOL = 1e-10
ABM_TOL = 1e-3
DEFECT_TOL = 1e-2
DEFECT_TOL_EXP = 1e-4


class CLIError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


def fmt(x: float) -> str:
    """Shortest decimal that round-trips to the same double."""
    return repr(float(x))


# --- config -----------------------------------------------------------------


def _factor_from(doc, name: str) -> GrowthFactor:
    if not isinstance(doc, dict):
        raise CLIError(f"config.{name}: expected an object with keys x0, b, alpha")
    values = {}
    for key in ("x0", "b", "alpha"):
        if key not in doc:
            raise CLIError(f"config.{name}.{key}: missing")
        v = doc[key]
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise CLIError(f"config.{name}.{key}: expected a number, got {v!r}")
        values[key] = float(v)
    try:
        return GrowthFactor(values["x0"], values["b"], values["alpha"])
    except DomainError as exc:
        raise CLIError(f"config.{name}: {exc}") from exc


def economy_from_config(doc) -> EconomySpec:
    """Build an :class:`EconomySpec` from a parsed JSON document."""
    if not isinstance(doc, dict):
        raise CLIError("config: expected a JSON object")
    factors = [_factor_from(doc.get(name), name) for name in ("labor", "capital", "output")]
    theta = doc.get("theta", 0.5)
    if isinstance(theta, bool) or not isinstance(theta, (int, float)):
        raise CLIError(f"config.theta: expected a number, got {theta!r}")
    try:
        return EconomySpec(*factors, theta=float(theta))
    except DomainError as exc:
        raise CLIError(f"config.theta: {exc}") from exc


def load_config(path: str) -> EconomySpec:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CLIError(f"cannot read config {path}: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CLIError(f"config {path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return economy_from_config(doc)


# --- I/O helpers --------------------------------------------------------------


def write_text(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise CLIError(f"cannot write {path}: {exc.strerror}", EXIT_IO) from exc


def rows_to_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def read_series_csv(path: str, column: str | None = None) -> Trajectory:
    """Read ``t,value`` (or ``t`` plus a named ``column``) into a trajectory."""
    try:
        with open(path, newline="") as fh:
            lines = list(csv.reader(fh))
    except OSError as exc:
        raise CLIError(f"cannot read {path}: {exc.strerror}") from exc
    if not lines:
        raise CLIError(f"{path}:1: empty file, expected a header row")
    header = [h.strip() for h in lines[0]]
    wanted = column or "value"
    if "t" not in header or wanted not in header:
        raise CLIError(f"{path}:1: header must contain 't' and '{wanted}', got {','.join(header)}")
    it, iv = header.index("t"), header.index(wanted)
    times, values = [], []
    for lineno, row in enumerate(lines[1:], start=2):
        if not row or all(not c.strip() for c in row):
            continue
        if len(row) != len(header):
            raise CLIError(f"{path}:{lineno}: expected {len(header)} fields, got {len(row)}")
        try:
            t, v = float(row[it]), float(row[iv])
        except ValueError as exc:
            raise CLIError(f"{path}:{lineno}: not a number ({exc})") from exc
        if not (math.isfinite(t) and math.isfinite(v)):
            raise CLIError(f"{path}:{lineno}: non-finite value")
        times.append(t)
        values.append(v)
    try:
        return Trajectory(times, values)
    except DomainError as exc:
        raise CLIError(f"{path}: {exc}") from exc


# --- commands -----------------------------------------------------------------


def cmd_ml_eval(args) -> int:
    print(fmt(ml_eval2(args.alpha, args.beta, args.x)))
    return EXIT_OK


def cmd_simulate(args) -> int:
    econ = load_config(args.config)
    grid = TimeGrid(args.t_end, args.steps)
    rows = [
        (t, level_at(econ.labor, t), level_at(econ.capital, t), level_at(econ.output, t))
        for t in grid.points
    ]
    write_text(args.out, rows_to_csv(["t", "L", "K", "Y"], rows))
    return EXIT_OK


def cmd_verify_oracle(args) -> int:
    grid = TimeGrid(args.t_end, args.steps)
    defect = verify_eigenproperty(args.b, args.alpha, grid)
    abm = abm_max_error(args.b, args.alpha, 1.0, grid)
    defect_tol = args.defect_tol
    if defect_tol is None:
        defect_tol = DEFECT_TOL_EXP if args.alpha == 1.0 else DEFECT_TOL
    ok = defect <= defect_tol and abm <= args.abm_tol
    print(f"max_relative_defect={fmt(defect)}")
    print(f"max_abm_error={fmt(abm)}")
    if args.refine:
        finer = abm_max_error(args.b, args.alpha, 1.0, grid.refined(2))
        ratio = abm / finer if finer > 0 else math.inf
        expected = 0.7 * 2.0 ** min(2.0, 1.0 + args.alpha)
        print(f"max_abm_error_half_step={fmt(finer)}")
        print(f"refinement_ratio={fmt(ratio)}")
        ok = ok and ratio >= expected
    print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_surface(args) -> int:
    econ = load_config(args.config)
    points = surface_sample(econ, TimeGrid(args.t_end, args.steps))
    header = ["L", "K", "Y"]
    if args.residual:
        header.append("residual")
        rows = [(p.L, p.K, p.Y, abs(y_composite(econ, p.L, p.K) - p.Y) / p.Y) for p in points]
    else:
        rows = [tuple(p) for p in points]
    write_text(args.out, rows_to_csv(header, rows))
    return EXIT_OK


def cmd_fit(args) -> int:
    series = read_series_csv(args.input, args.column)
    result = fit_factor(
        series,
        (args.alpha_lo, args.alpha_hi),
        (args.b_lo, args.b_hi),
        grid_size=args.grid_size,
    )
    doc = {
        "alpha": result.factor.alpha,
        "b": result.factor.b,
        "x0": result.factor.x0,
        "sse": result.sse,
        "converged": result.converged,
        "n_evals": result.n_evals,
    }
    write_text(args.out, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def _parse_eps(text: str) -> list[float]:
    try:
        return [float(p) for p in text.split(",") if p.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad eps list {text!r}") from exc


def cmd_limit_check(args) -> int:
    econ = load_config(args.config)
    errors = limit_convergence_probe(econ, args.L, args.K, args.eps)
    print("eps,rel_error")
    for eps, err in zip(args.eps, errors):
        print(f"{fmt(eps)},{fmt(err)}")
    monotone = all(b <= a for a, b in zip(errors, errors[1:]))
    ok = monotone and bool(errors) and errors[-1] <= LIMIT_TOL
    return EXIT_OK if ok else EXIT_VERIFY


# --- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fraccd",
        description="Fractional growth dynamics and generalized Cobb-Douglas invariants.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ml-eval", help="evaluate the Mittag-Leffler function")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--beta", type=float, default=1.0)
    p.set_defaults(func=cmd_ml_eval)

    p = sub.add_parser("simulate", help="write L, K, Y trajectories as CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--t-end", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify-oracle", help="check closed form against L1 and ABM schemes")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--steps", type=int, default=4000)
    p.add_argument("--t-end", type=float, default=1.0)
    p.add_argument("--defect-tol", type=float, default=None,
                   help="default 1e-2, or 1e-4 when alpha is 1")
    p.add_argument("--abm-tol", type=float, default=ABM_TOL)
    p.add_argument("--refine", action="store_true",
                   help="also halve the step and check the ABM convergence rate")
    p.set_defaults(func=cmd_verify_oracle)

    p = sub.add_parser("surface", help="write points of the invariant surface as CSV")
    p.add_argument("--config", required=True)
    p.add_argument("--t-end", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out", default="-")
    p.add_argument("--residual", action="store_true",
                   help="append |Y(L, K) - Y| / Y for each row")
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("fit", help="calibrate (alpha, b) from a CSV series")
    p.add_argument("--input", required=True)
    p.add_argument("--column", default=None,
                   help="value column name (default 'value'); e.g. L, K or Y of simulate output")
    p.add_argument("--alpha-lo", type=float, default=DEFAULT_ALPHA_BOUNDS[0])
    p.add_argument("--alpha-hi", type=float, default=DEFAULT_ALPHA_BOUNDS[1])
    p.add_argument("--b-lo", type=float, default=DEFAULT_B_BOUNDS[0])
    p.add_argument("--b-hi", type=float, default=DEFAULT_B_BOUNDS[1])
    p.add_argument("--grid-size", type=int, default=25)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("limit-check", help="probe convergence to Cobb-Douglas as orders tend to 1")
    p.add_argument("--config", required=True)
    p.add_argument("--L", type=float, required=True)
    p.add_argument("--K", type=float, required=True)
    p.add_argument("--eps", type=_parse_eps, default=[0.1, 0.01, 0.001, 0.0])
    p.set_defaults(func=cmd_limit_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (DomainError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
