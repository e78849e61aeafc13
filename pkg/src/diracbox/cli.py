"""Command-line front end.

Every subcommand prints one table of rows (CSV by default, ``--format json``
for a ``{"params": [...], "rows": [...]}`` document).  Exit status: 0 on
success, 1 on a usage error, 2 on a numerical or acceptance failure.
"""

from __future__ import annotations

import argparse
import math
import os
import sys
from dataclasses import replace
from typing import Optional, Sequence

import numpy as np

from . import box1d, box3d, dos, output, reference, spinor
from .errors import DiracBoxError
from .units import BoxGeometry, QuantumNumbers

VERIFY_THRESHOLD = 1e-9
FIG1_CLIP = 20.0


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _positive(flag):
    def parse(text):
        try:
            v = float(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{flag} expects a number, got {text!r}")
        if not (math.isfinite(v) and v > 0):
            raise argparse.ArgumentTypeError(f"{flag} must be positive and finite, got {text!r}")
        return v
    return parse


def _positive_list(flag):
    single = _positive(flag)

    def parse(text):
        items = [t for t in text.split(",") if t.strip()]
        if not items:
            raise argparse.ArgumentTypeError(f"{flag} needs at least one value")
        return [single(t) for t in items]
    return parse


def _count(flag, minimum=1):
    def parse(text):
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{flag} expects an integer, got {text!r}")
        if v < minimum:
            raise argparse.ArgumentTypeError(f"{flag} must be >= {minimum}, got {v}")
        return v
    return parse


def _triple(text):
    parts = text.split(",")
    try:
        n = tuple(int(p) for p in parts)
        return QuantumNumbers(n)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--qn expects three integers >= 1 like 1,1,2, got {text!r}")


def _workers() -> Optional[int]:
    raw = os.environ.get("DIRACBOX_THREADS")
    if raw is None or raw == "":
        return None
    try:
        v = int(raw)
    except ValueError:
        raise UsageError(f"DIRACBOX_THREADS must be an integer, got {raw!r}")
    if v < 1:
        raise UsageError(f"DIRACBOX_THREADS must be >= 1, got {v}")
    return v


def _geometry(args) -> BoxGeometry:
    edges = (args.lx, args.ly, args.lz)
    if args.cube is not None:
        if any(e is not None for e in edges):
            raise UsageError("--cube cannot be combined with --lx/--ly/--lz")
        return BoxGeometry.cube(args.cube)
    if any(e is None for e in edges):
        raise UsageError("give --cube or all of --lx, --ly, --lz")
    return BoxGeometry(edges)


def _geom_cols(geom: BoxGeometry) -> dict:
    return {"lx": geom.lam[0], "ly": geom.lam[1], "lz": geom.lam[2]}


def _mode_row(sol: box3d.ModeSolution) -> dict:
    row = {"n1": sol.qn[0], "n2": sol.qn[1], "n3": sol.qn[2]}
    for i, v in enumerate(sol.x_over_pi, 1):
        row[f"x{i}_over_pi"] = v
    row["epsilon"] = sol.epsilon
    row["kinetic"] = sol.kinetic
    for i, v in enumerate(sol.residuals, 1):
        row[f"residual{i}"] = v
    for i, v in enumerate(sol.phase_residuals, 1):
        row[f"phase_residual{i}"] = v
    row["sweeps"] = sol.sweeps
    return row


# -- subcommands ----------------------------------------------------------

def cmd_solve1d(args):
    params = {"lambda": args.lam, "n_max": args.n_max, "tol": args.tol}
    rows, code = [], 0
    for n in range(1, args.n_max + 1):
        base = {"lambda": args.lam, "tol": args.tol, "n": n}
        try:
            m = box1d.solve_1d_mode(args.lam, n, tol_x=args.tol)
        except DiracBoxError as exc:
            rows.append({**base, "status": "failed", "message": str(exc)})
            code = 2
            break
        rows.append({**base, "x": m.x, "x_over_pi": m.x / math.pi, "u": m.u,
                     "epsilon": m.epsilon, "residual": m.residual,
                     "phase_residual": m.phase_residual, "status": "ok"})
    return params, rows, code


def cmd_solve3d(args):
    geom = _geometry(args)
    if (args.qn is None) == (args.n_max is None):
        raise UsageError("give exactly one of --qn or --n-max")
    kw = {"tol": args.tol, "tol_f": args.tol_f}
    params = {**_geom_cols(geom), "qn": list(args.qn.n) if args.qn else None,
              "n_max": args.n_max, "tol": args.tol, "tol_f": args.tol_f}
    base = {**_geom_cols(geom), "tol": args.tol, "tol_f": args.tol_f}
    if args.qn is not None:
        try:
            sol = box3d.solve_mode(geom, args.qn, **kw)
        except DiracBoxError as exc:
            n = args.qn
            return params, [{**base, "n1": n[0], "n2": n[1], "n3": n[2],
                             "status": "failed", "message": str(exc)}], 2
        return params, [{**base, **_mode_row(sol), "status": "ok"}], 0
    try:
        table = box3d.enumerate_spectrum(geom, args.n_max, workers=_workers(), **kw)
    except DiracBoxError as exc:
        qn = getattr(exc, "context", {}).get("qn", ("", "", ""))
        return params, [{**base, "n1": qn[0], "n2": qn[1], "n3": qn[2],
                         "status": "failed", "message": str(exc)}], 2
    rows = []
    for idx, lev in enumerate(table, 1):
        for sol in lev.members:
            rows.append({**base, "n_max": args.n_max, "level": idx,
                         "degeneracy": lev.degeneracy, **_mode_row(sol), "status": "ok"})
    return params, rows, 0


def cmd_table1(args):
    rows, code = [], 0
    for ref in reference.TABLE1:
        geom = BoxGeometry.cube(ref.lam)
        self_dev = reference.self_check_deviation(ref)
        row = {"n1": ref.qn[0], "n2": ref.qn[1], "n3": ref.qn[2],
               "degeneracy": ref.degeneracy, "lambda": ref.lam}
        try:
            sol = box3d.solve_mode(geom, QuantumNumbers(ref.qn))
        except DiracBoxError as exc:
            rows.append({**row, "status": "failed", "message": str(exc)})
            code = 2
            continue
        for i, v in enumerate(sol.x_over_pi, 1):
            row[f"x{i}_over_pi"] = v
        row["epsilon"] = sol.epsilon
        for i, v in enumerate(ref.x_over_pi, 1):
            row[f"ref_x{i}_over_pi"] = v
        row["ref_epsilon"] = ref.epsilon
        dx = [abs(a - b) for a, b in zip(sol.x_over_pi, ref.x_over_pi)]
        for i, v in enumerate(dx, 1):
            row[f"dev_x{i}"] = v
        row["dev_epsilon"] = abs(sol.epsilon - ref.epsilon)
        row["rel_dev_epsilon"] = abs(sol.epsilon - ref.epsilon) / ref.epsilon
        row["ref_self_check"] = self_dev
        ok = (max(dx) <= reference.X_ATOL and row["rel_dev_epsilon"] <= reference.EPS_RTOL
              and self_dev <= reference.SELF_CHECK_RTOL)
        row["status"] = "ok" if ok else "deviation"
        if not ok:
            code = 2
        rows.append(row)
    params = {"x_atol": reference.X_ATOL, "epsilon_rtol": reference.EPS_RTOL,
              "self_check_rtol": reference.SELF_CHECK_RTOL}
    return params, rows, code


def _fig1_grid(points: int, x_max: float) -> list[float]:
    step = x_max / points
    xs = []
    for i in range(points):
        x = (i + 0.5) * step
        # skip samples right on an asymptote of tan
        if abs(math.cos(x)) < 1e-9:
            continue
        xs.append(x)
    return xs


def cmd_fig_data(args):
    if args.which == "fig1":
        ratios = args.ratios or [10.0, 1.0, 0.1]
        params = {"which": "fig1", "ratios": ratios, "points": args.points, "x_max": args.x_max}
        rows = []
        xs = _fig1_grid(args.points, args.x_max)
        for ratio in ratios:
            for x in xs:
                t = max(-FIG1_CLIP, min(FIG1_CLIP, math.tan(x)))
                rows.append({"ratio": ratio, "x": x, "tan_clipped": t, "line": -x * ratio})
        return params, rows, 0

    lams = args.lam or [0.1, 1.0, 10.0]
    params = {"which": "fig2", "lambda": lams, "n_max": 3}
    rows = []
    for lam in lams:
        table = box3d.enumerate_spectrum(BoxGeometry.cube(lam), 3, workers=_workers())
        idx = 0
        for lev_idx, lev in enumerate(table, 1):
            for sol in lev.members:
                idx += 1
                rows.append({"lambda": lam, "index": idx, "level": lev_idx,
                             "n1": sol.qn[0], "n2": sol.qn[1], "n3": sol.qn[2],
                             "epsilon": sol.epsilon, "kinetic": sol.kinetic,
                             "log10_kinetic": math.log10(sol.kinetic),
                             "degeneracy": lev.degeneracy})
    return params, rows, 0


def cmd_verify(args):
    geom = _geometry(args)
    params = {**_geom_cols(geom), "qn": list(args.qn.n), "samples": args.samples,
              "seed": args.seed, "grid": args.grid, "break_coeffs": args.break_coeffs,
              "threshold": VERIFY_THRESHOLD}
    base = {**_geom_cols(geom), "n1": args.qn[0], "n2": args.qn[1], "n3": args.qn[2],
            "seed": args.seed, "samples": args.samples}
    try:
        sol = box3d.solve_mode(geom, args.qn)
        field = spinor.build_field(sol)
    except DiracBoxError as exc:
        return params, [{**base, "status": "failed", "message": str(exc)}], 2
    if args.break_coeffs:
        field = field.with_coefficients(field.coefficients.B, -field.coefficients.C)

    rng = np.random.default_rng(args.seed)
    chis = [spinor.DEFAULT_CHI] + [spinor.random_unit_spinor(rng) for _ in range(args.samples)]
    rows = []
    totals = [0.0, 0.0, 0.0]
    for face in spinor.FACES:
        worst = [0.0, 0.0, 0.0]
        pts = spinor.face_grid(geom.lam, face, args.grid)
        for chi in chis:
            f = replace(field, chi=chi)
            for p in pts:
                psi = f(p)
                nrm = max(float(np.linalg.norm(psi)), np.finfo(float).tiny)
                jn, j0 = spinor.outward_current(f, face, p)
                worst[0] = max(worst[0], spinor.mit_residual(f, face, p) / nrm)
                worst[1] = max(worst[1], spinor.projected_mit_residual(f, face, p) / nrm)
                worst[2] = max(worst[2], abs(jn) / max(j0, np.finfo(float).tiny))
        totals = [max(a, b) for a, b in zip(totals, worst)]
        rows.append({**base, "axis": face[0] + 1, "side": "lo" if face[1] == 0 else "hi",
                     "max_mit_residual": worst[0], "max_projected_residual": worst[1],
                     "max_outward_current": worst[2]})
    passed = totals[0] <= VERIFY_THRESHOLD and totals[2] <= VERIFY_THRESHOLD
    rows.append({**base, "axis": "all", "side": "all", "max_mit_residual": totals[0],
                 "max_projected_residual": totals[1], "max_outward_current": totals[2],
                 "status": "ok" if passed else "violation"})
    return params, rows, 0 if passed else 2


def cmd_dos(args):
    lams = args.lam
    params = {"lambda": lams, "n_max": args.n_max, "n_max_3d": args.n_max_3d}
    rows = []
    for lam in lams:
        for n, dx in enumerate(dos.spacing_series(lam, args.n_max), 1):
            rows.append({"kind": "spacing", "lambda": lam, "n": n, "dx": dx,
                         "dx_over_pi": dx / math.pi})
        geom = BoxGeometry.cube(lam)
        cmp_ = dos.nr_comparison(geom, args.n_max_3d, workers=_workers())
        for idx, pair in enumerate(cmp_.pairs, 1):
            row = {"kind": "level", "lambda": lam, "n_max_3d": args.n_max_3d, "level": idx,
                   "n1": pair.qn[0], "n2": pair.qn[1], "n3": pair.qn[2],
                   "degeneracy": pair.degeneracy}
            for i, v in enumerate(pair.x_over_pi, 1):
                row[f"x{i}_over_pi"] = v
                row[f"nr_x{i}_over_pi"] = pair.qn[i - 1]
            row.update({"epsilon": pair.epsilon, "nr_epsilon": pair.nr_epsilon,
                        "kinetic": pair.kinetic, "nr_kinetic": pair.nr_kinetic})
            rows.append(row)
        for ind in cmp_.indicators:
            rows.append({"kind": "count", "lambda": lam, "n_max_3d": args.n_max_3d,
                         "threshold": ind.threshold, "count": ind.count,
                         "nr_count": ind.nr_count, "ratio": ind.ratio,
                         "complete": ind.complete})
    return params, rows, 0


# -- wiring -----------------------------------------------------------------

def _add_common(p):
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--output", metavar="PATH", help="write here instead of standard output")


def _add_box(p):
    p.add_argument("--cube", type=_positive("--cube"), metavar="L")
    p.add_argument("--lx", type=_positive("--lx"))
    p.add_argument("--ly", type=_positive("--ly"))
    p.add_argument("--lz", type=_positive("--lz"))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="diracbox", description="Dirac particle in an MIT bag box",
                     allow_abbrev=False)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser, required=True)

    p = sub.add_parser("solve1d", help="1-D spectrum", allow_abbrev=False)
    p.add_argument("--lambda", dest="lam", type=_positive("--lambda"), required=True)
    p.add_argument("--n-max", type=_count("--n-max"), default=5)
    p.add_argument("--tol", type=_positive("--tol"), default=1e-12)
    _add_common(p)
    p.set_defaults(func=cmd_solve1d)

    p = sub.add_parser("solve3d", help="3-D modes or enumerated spectrum", allow_abbrev=False)
    _add_box(p)
    p.add_argument("--qn", type=_triple)
    p.add_argument("--n-max", type=_count("--n-max"))
    p.add_argument("--tol", type=_positive("--tol"), default=box3d.TOL)
    p.add_argument("--tol-f", type=_positive("--tol-f"), default=box3d.TOL_F)
    _add_common(p)
    p.set_defaults(func=cmd_solve3d)

    p = sub.add_parser("table1", help="reproduce the cubic reference table", allow_abbrev=False)
    _add_common(p)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("fig-data", help="data behind the two figures", allow_abbrev=False)
    p.add_argument("--which", choices=("fig1", "fig2"), required=True)
    p.add_argument("--ratios", type=_positive_list("--ratios"),
                   help="L_C/L values for fig1 (default 10,1,0.1)")
    p.add_argument("--lambda", dest="lam", type=_positive_list("--lambda"),
                   help="cube edges for fig2 (default 0.1,1,10)")
    p.add_argument("--points", type=_count("--points", 2), default=2000)
    p.add_argument("--x-max", type=_positive("--x-max"), default=2 * math.pi)
    _add_common(p)
    p.set_defaults(func=cmd_fig_data)

    p = sub.add_parser("verify", help="check wall conditions on the spinor field", allow_abbrev=False)
    _add_box(p)
    p.add_argument("--qn", type=_triple, required=True)
    p.add_argument("--samples", type=_count("--samples", 0), default=10,
                   help="number of random unit chi draws")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--grid", type=_count("--grid"), default=5, help="face grid size per side")
    p.add_argument("--break-coeffs", action="store_true",
                   help="negate C_l before checking (debug)")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("dos", help="spacing and state-count comparisons", allow_abbrev=False)
    p.add_argument("--lambda", dest="lam", type=_positive_list("--lambda"), required=True)
    p.add_argument("--n-max", type=_count("--n-max", 2), default=20)
    p.add_argument("--n-max-3d", type=_count("--n-max-3d"), default=3)
    _add_common(p)
    p.set_defaults(func=cmd_dos)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        params, rows, code = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"diracbox {args.command}: error: {exc}", file=sys.stderr)
        return 1
    except (DiracBoxError, ValueError) as exc:
        print(f"diracbox {args.command}: {exc}", file=sys.stderr)
        return 2
    text = output.render(args.format, params, rows)
    if args.output:
        with open(args.output, "w", newline="\n", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        sys.stdout.flush()
    return code


if __name__ == "__main__":
    sys.exit(main())
