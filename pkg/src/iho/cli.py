"""Command-line entry point: ``iho {box-table,halfline,evolve,verify,beam}``.

Exit codes: 0 success, 2 usage error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import sys
import warnings
from pathlib import Path

import numpy as np

from . import freewave as fw
from . import io
from . import nonstationary as ns
from . import oracle as orc
from . import scaledyn as sd
from . import stationary as st
from . import verify
from .errors import ConvergenceError, CoverageWarning, DomainError, GridMismatchError, SingularityError
from .fields import GridSpec, WaveField, l2_norm

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC = 0, 2, 3


class UsageError(Exception):
    pass


def _params(args) -> sd.PhysicalParams:
    return sd.PhysicalParams(m=args.m, omega=args.omega, hbar=args.hbar)


def _emit(args, command, config, payload, header=None, rows=None):
    if args.format == "csv" and header is not None:
        text = io.write_csv(args.out, command, config, header, rows)
    else:
        text = io.write_json(args.out, command, config, payload)
    if args.out in (None, "-"):
        sys.stdout.write(text)


# --- commands ----------------------------------------------------------------


def cmd_box_table(args):
    if not args.dprime:
        raise UsageError("--dprime needs at least one value")
    config = {"dprime": args.dprime, "count": args.count}
    rows, table = [], []
    for d in args.dprime:
        sp = st.box_spectrum(st.BoxProblem(d), args.count)
        if not sp.complete:
            raise ConvergenceError(f"only {len(sp.eigenvalues)} levels found for d' = {d}")
        ev = sp.eigenvalues.real
        free = [st.free_box_approx(n, d) for n in range(1, args.count + 1)]
        table.append({"d_prime": d, "eigenvalues": ev.tolist(), "residuals": sp.residuals.tolist(), "free_box": free})
        rows.append([d, *ev])
    header = ["d_prime", *[f"E{n}" for n in range(1, args.count + 1)]]
    _emit(args, "box-table", config, {"rows": table}, header, rows)
    return EXIT_OK


def _dprime_values(args):
    vals = args.dprime
    if not vals or len(vals) > 2:
        raise UsageError("--dprime takes MIN [MAX]")
    lo = vals[0]
    hi = vals[-1]
    if hi < lo or args.step <= 0:
        raise UsageError("need MIN <= MAX and a positive --step")
    n = int(round((hi - lo) / args.step))
    return [round(lo + i * args.step, 12) for i in range(n + 1)] if n else [lo]


def cmd_halfline(args):
    ds = _dprime_values(args)
    config = {"dprime": args.dprime, "step": args.step, "bound_tol": args.bound_tol}
    entries, rows = [], []
    d_c = None
    for d in ds:
        sp = st.halfline_spectrum(st.HalfLineProblem(d), bound_tol=args.bound_tol)
        bnd = sp.bounded_eigenvalues
        if d_c is None and len(bnd):
            d_c = d
        entries.append({"d_prime": d, "n_bounded": len(bnd), "bounded": [{"re": e.real, "im": e.imag} for e in bnd],
                        "all_roots": [{"re": e.real, "im": e.imag} for e in sp.eigenvalues]})
        rows.append([d, len(bnd), bnd[0].real if len(bnd) else float("nan"), bnd[0].imag if len(bnd) else float("nan")])
    first = None
    if d_c is not None:
        first = next(e["bounded"][0] for e in entries if e["n_bounded"])
    payload = {"scan": entries, "d_prime_c": d_c, "first_eigenvalue": first}
    _emit(args, "halfline", config, payload, ["d_prime", "n_bounded", "E_re", "E_im"], rows)
    return EXIT_OK


def _evolve_initial(args, params, grid):
    kind = args.kind
    if kind == "nonstationary_n":
        analytic = lambda t: ns.eval_psi_n(args.n, sd.reference_scale(t, params), params, grid)  # noqa: E731
        return analytic(0.0), analytic, orc.PotentialSpec("inverted", params), "complex"
    if kind == "coherent":
        analytic = lambda t: ns.coherent_state(args.alpha, sd.reference_scale(t, params), params, grid, evolve=True)  # noqa: E731
        return analytic(0.0), analytic, orc.PotentialSpec("inverted", params), "complex"
    if kind == "airy":
        A = fw.AiryParams(args.alpha)
        f0 = WaveField(grid, fw.airy_packet(grid.x, 0.0, A, params))
        analytic = lambda t: WaveField(grid, fw.airy_packet_abs(grid.x, t, A, params), t)  # noqa: E731
        return f0, analytic, orc.PotentialSpec("inverted", params), "modulus"
    if kind == "beam":
        spec = fw.BeamSpec(args.epsilon, args.parity, args.branch)
        f0 = fw.self_focusing_beam(spec, sd.focusing_scale(spec.branch, 0.0, params), params, grid)
        f0 = fw.truncate_window(f0, args.half_width, args.order)
        return f0, None, orc.PotentialSpec("free", params), "none"
    if kind == "custom_file":
        if not args.input:
            raise UsageError("custom_file needs --input")
        f0 = WaveField.from_csv(args.input)
        return f0, None, orc.PotentialSpec(args.potential, params), "none"
    raise UsageError(f"unknown kind {kind!r}")


def cmd_evolve(args):
    params = _params(args)
    grid = GridSpec.symmetric(args.grid_halfwidth, args.grid_points)
    if args.snapshots < 1 or args.t_max <= 0:
        raise UsageError("need --t-max > 0 and --snapshots >= 1")
    f0, analytic, pot, compare = _evolve_initial(args, params, grid)
    grid = f0.grid
    times = np.linspace(0.0, args.t_max, args.snapshots + 1)
    if args.kind == "beam":
        snaps = [orc.free_propagate_fft(f0, t, params) for t in times]
    else:
        cfg = orc.PropagatorConfig(dt=args.dt)
        snaps = orc.propagate(f0, pot, cfg, args.t_max, snapshot_times=times)
    out = Path(args.out or "evolve_out")
    out.mkdir(parents=True, exist_ok=True)
    config = {k: v for k, v in vars(args).items() if k not in ("func", "out")}
    rows = []
    for i, s in enumerate(snaps):
        s.to_csv(out / f"oracle_{i:04d}.csv", {"source": "oracle", "kind": args.kind})
        peak, fwhm = fw.peak_and_fwhm(s)
        err = float("nan")
        if analytic is not None:
            a = analytic(s.t)
            a.to_csv(out / f"analytic_{i:04d}.csv", {"source": "analytic", "kind": args.kind})
            if compare == "complex":
                err = l2_norm(s.values - a.values, grid)
            else:
                err = l2_norm(np.abs(s.values) - np.abs(a.values), grid) / l2_norm(a.values, grid)
        rows.append([s.t, err, s.norm(), peak, fwhm])
    io.write_csv(out / "errors.csv", "evolve", config, ["t", "l2_error", "oracle_norm", "peak_intensity", "fwhm"], rows)
    summary = {"max_l2_error": float(np.nanmax([r[1] for r in rows])) if analytic is not None else None,
               "snapshots": len(rows), "directory": str(out)}
    sys.stdout.write(io.dumps({"provenance": io.provenance("evolve", config), **summary}) + "\n")
    return EXIT_OK


def cmd_beam(args):
    params = _params(args)
    spec = fw.BeamSpec(args.epsilon, args.parity, args.branch)
    grid = GridSpec.symmetric(args.grid_halfwidth, args.grid_points)
    times = np.linspace(0.0, args.t_max, args.samples)
    t, peak, fwhm = fw.focusing_trace(spec, times, params, grid, args.half_width, args.order)
    tc = sd.focal_time(spec.branch, params)
    config = {"epsilon": args.epsilon, "parity": spec.parity.value, "branch": spec.branch.value,
              "half_width": args.half_width, "order": args.order, "t_max": args.t_max, "samples": args.samples,
              "grid_points": args.grid_points, "grid_halfwidth": args.grid_halfwidth}
    payload = {"t_c": tc, "t_peak": float(t[np.argmax(peak)]),
               "trace": [{"t": a, "peak_intensity": b, "fwhm": c} for a, b, c in zip(t, peak, fwhm)]}
    _emit(args, "beam", config, payload, ["t", "peak_intensity", "fwhm"], list(zip(t, peak, fwhm)))
    return EXIT_OK


def cmd_verify(args):
    report = verify.run(args.suite)
    io_args = argparse.Namespace(format="json", out=args.out)
    _emit(io_args, "verify", {"suite": args.suite}, report)
    return EXIT_OK if report["passed"] else EXIT_NUMERIC


# --- parser ------------------------------------------------------------------


def _common(p, fmt=True):
    p.add_argument("--out", default=None, help="output path ('-' or omitted: stdout)")
    if fmt:
        p.add_argument("--format", choices=("csv", "json"), default="json")


def _units(p):
    p.add_argument("--m", type=float, default=1.0, help="mass (natural units by default)")
    p.add_argument("--omega", type=float, default=1.0)
    p.add_argument("--hbar", type=float, default=1.0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="iho", description="Inverted harmonic oscillator toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("box-table", help="lowest box eigenvalues for each d'")
    p.add_argument("--dprime", type=float, nargs="*", default=[])
    p.add_argument("--count", type=int, default=4)
    _common(p)
    p.set_defaults(func=cmd_box_table)

    p = sub.add_parser("halfline", help="bounded states behind a wall over a d' range")
    p.add_argument("--dprime", type=float, nargs="+", required=True, metavar="D", help="MIN [MAX]")
    p.add_argument("--step", type=float, default=0.02)
    p.add_argument("--bound-tol", type=float, default=st.BOUND_TOL)
    _common(p)
    p.set_defaults(func=cmd_halfline)

    p = sub.add_parser("evolve", help="analytic vs oracle snapshots")
    p.add_argument("kind", choices=("nonstationary_n", "coherent", "airy", "beam", "custom_file"))
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--epsilon", type=float, default=1.0)
    p.add_argument("--parity", choices=("even", "odd"), default="even")
    p.add_argument("--branch", choices=("F1", "F2"), default="F1")
    p.add_argument("--half-width", type=float, default=20.0)
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--input", default=None)
    p.add_argument("--potential", choices=("inverted", "harmonic", "free"), default="inverted")
    p.add_argument("--t-max", type=float, default=1.0)
    p.add_argument("--dt", type=float, default=1e-3)
    p.add_argument("--snapshots", type=int, default=10)
    p.add_argument("--grid-points", type=int, default=8192)
    p.add_argument("--grid-halfwidth", type=float, default=40.0)
    p.add_argument("--out", default=None, help="output directory")
    _units(p)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("verify", help="run invariant suites")
    p.add_argument("--suite", default="all")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("beam", help="peak-intensity trace of a truncated focusing beam")
    p.add_argument("--epsilon", type=float, default=1.0)
    p.add_argument("--parity", choices=("even", "odd"), default="even")
    p.add_argument("--branch", choices=("F1", "F2"), default="F1")
    p.add_argument("--half-width", type=float, default=20.0)
    p.add_argument("--order", type=int, default=8)
    p.add_argument("--t-max", type=float, default=1.2)
    p.add_argument("--samples", type=int, default=241)
    p.add_argument("--grid-points", type=int, default=16384)
    p.add_argument("--grid-halfwidth", type=float, default=80.0)
    _common(p)
    _units(p)
    p.set_defaults(func=cmd_beam)
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if args.command == "verify":
        if args.suite not in (*verify.SUITES, "all"):
            print(f"iho: unknown suite {args.suite!r}", file=sys.stderr)
            return EXIT_USAGE
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", CoverageWarning)
            return args.func(args)
    except (UsageError, GridMismatchError, DomainError, ValueError, FileNotFoundError) as exc:
        print(f"iho: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConvergenceError, SingularityError, ArithmeticError) as exc:
        print(f"iho: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
