"""Command-line interface: ``report``, ``curve`` and ``gen``.

Exit codes: 0 success, 2 validation failure, 3 unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from .distance import DistanceReport, distance_formula, full_report, walters_bound
from .errors import BadRange, BadSpec, ValidationError
from .halmos import canonical_decomposition
from .matrixfile import MatrixFileError, read_matrix, write_matrix
from .oracle import InstanceSpec, oracle_distance, random_instance
from .settings import DEFAULT

EXIT_OK, EXIT_INVALID, EXIT_PARSE = 0, 2, 3


def _sig(x: float) -> float:
    return float(f"{x:.9g}")


def _matrix_json(a):
    if a is None:
        return None
    return [[[_sig(z.real), _sig(z.imag)] for z in row] for row in np.asarray(a)]


def report_to_dict(rep: DistanceReport, oracle=None) -> dict:
    out = {
        "case": rep.case,
        "b": _sig(rep.b),
        "d": _sig(rep.d),
        "dims": dict(zip(("m00", "m01", "m10", "m11", "m"), rep.dims)),
        "spectrum": [{"value": _sig(t), "multiplicity": m} for t, m in rep.spectrum],
        "q0": _matrix_json(rep.q0),
        "witness_unique": rep.witness_unique,
        "residuals": {
            "projection": _sig(rep.residual_projection),
            "orthogonality": _sig(rep.residual_orthogonality),
            "distance": _sig(rep.residual_distance),
            "routes": None if rep.residual_routes is None else _sig(rep.residual_routes),
        },
    }
    if oracle is not None:
        out["oracle"] = {
            "min": _sig(oracle.min_value),
            "chi": list(oracle.argmin.chi),
            "omega": [_sig(a) for a in oracle.argmin.omega],
        }
    return out


def format_report(rep: DistanceReport, oracle=None) -> str:
    m00, m01, m10, m11, m = rep.dims
    spectrum = " ".join(f"{t:.6f}x{k}" for t, k in rep.spectrum) or "-"
    lines = [
        f"case={rep.case} b={rep.b:.6f} d={rep.d:.6f}",
        f"dims m00={m00} m01={m01} m10={m10} m11={m11} m={m}",
        f"spectrum {spectrum}",
        "minimizer " + ("q0 (canonical)" if rep.q0 is not None else "none; q=0 witness, not unique"),
        f"residuals projection={rep.residual_projection:.6e} orthogonality={rep.residual_orthogonality:.6e} "
        f"distance={rep.residual_distance:.6e}"
        + ("" if rep.residual_routes is None else f" routes={rep.residual_routes:.6e}"),
    ]
    if oracle is not None:
        chi = ",".join(str(c) for c in oracle.argmin.chi) or "-"
        omega = ",".join(f"{a:.6f}" for a in oracle.argmin.omega) or "-"
        lines.append(f"oracle min={oracle.min_value:.6f} chi={chi} omega={omega}")
    return "\n".join(lines) + "\n"


def cmd_report(args, settings) -> int:
    try:
        e = read_matrix(args.e)
        u = read_matrix(args.u)
    except MatrixFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        rep = full_report(e, u, settings)
        oracle = None
        if args.oracle and not rep.case_one:
            oracle = oracle_distance(canonical_decomposition(e, u, settings), args.omega_grid, settings)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if args.json:
        sys.stdout.write(json.dumps(report_to_dict(rep, oracle), indent=2) + "\n")
    else:
        sys.stdout.write(format_report(rep, oracle))
    return EXIT_OK


def curve_rows(b_min: float, b_max: float, steps: int) -> list[tuple[str, str, str]]:
    """Rows ``(b, formula, walters)`` at ``steps`` evenly spaced points, 9 significant digits."""
    if not (0.0 <= b_min < b_max <= 1.0) or steps < 1:
        raise BadRange(f"need 0 <= b_min < b_max <= 1 and steps >= 1, got {b_min}, {b_max}, {steps}")
    rows = []
    for b in np.linspace(b_min, b_max, steps):
        b = float(b)
        w = walters_bound(b)
        rows.append((f"{b:.9g}", f"{distance_formula(b, False):.9g}", "" if w is None else f"{w:.9g}"))
    return rows


def cmd_curve(args, settings) -> int:
    try:
        rows = curve_rows(args.b_min, args.b_max, args.steps)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(("b", "formula", "walters"))
        writer.writerows(rows)
    return EXIT_OK


def _parse_dims(text: str) -> tuple[int, int, int, int]:
    parts = text.split(",")
    if len(parts) != 4:
        raise BadSpec(f"--dims needs four comma-separated integers, got {text!r}")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise BadSpec(f"--dims needs integers, got {text!r}") from None


def _parse_spectrum(text: str | None) -> tuple[tuple[float, int], ...]:
    """``"0.3,0.7:2"`` -> ``((0.3, 1), (0.7, 2))``."""
    if not text:
        return ()
    out = []
    for item in text.split(","):
        value, _, mult = item.partition(":")
        try:
            out.append((float(value), int(mult) if mult else 1))
        except ValueError:
            raise BadSpec(f"bad spectrum entry {item!r}") from None
    return tuple(out)


def cmd_gen(args, settings) -> int:
    try:
        dims = _parse_dims(args.dims)
        spec = InstanceSpec(*dims, spectrum=_parse_spectrum(args.spectrum), seed=args.seed)
        e, u, _ = random_instance(spec)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    prefix = Path(args.out)
    e_path = prefix.with_name(prefix.name + "_e.json")
    u_path = prefix.with_name(prefix.name + "_u.json")
    write_matrix(e_path, e)
    write_matrix(u_path, u)
    print(e_path)
    print(u_path)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qudist",
        description="Distance from a projection to the projections orthogonal to a hermitian involution.")
    parser.add_argument("--tol", type=float, default=DEFAULT.input_tol,
                        help="tolerance for the projection/involution checks (default %(default)g)")
    sub = parser.add_subparsers(dest="command", required=True)

    rep = sub.add_parser("report", help="decompose (e, u) and report the distance")
    rep.add_argument("e", help="matrix file holding the projection e")
    rep.add_argument("u", help="matrix file holding the involution u")
    rep.add_argument("--oracle", action="store_true", help="append the brute-force minimum")
    rep.add_argument("--omega-grid", type=int, default=64, help="phase grid size for --oracle")
    rep.add_argument("--json", action="store_true", help="emit the report as JSON")
    rep.set_defaults(func=cmd_report)

    cur = sub.add_parser("curve", help="write the exact distance and the earlier bound as CSV")
    cur.add_argument("--b-min", type=float, default=0.0)
    cur.add_argument("--b-max", type=float, default=0.45)
    cur.add_argument("--steps", type=int, default=100)
    cur.add_argument("--out", required=True)
    cur.set_defaults(func=cmd_curve)

    gen = sub.add_parser("gen", help="write a random instance with a known canonical form")
    gen.add_argument("--dims", required=True, help="dim M00,M01,M10,M11, e.g. 0,1,1,0")
    gen.add_argument("--spectrum", default="", help="eigenvalues of H as t[:mult],...")
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True, help="output prefix; writes PREFIX_e.json and PREFIX_u.json")
    gen.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    settings = DEFAULT.with_input_tol(args.tol)
    return args.func(args, settings)


if __name__ == "__main__":
    sys.exit(main())
