"""Command-line entry points.

Subcommands: verify | hybrid | wigner | lindblad. Exit codes: 0 all checks
pass, 1 at least one check failed, 2 usage or configuration error. Reports
are JSON documents with sorted keys so identical inputs give identical bytes.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import verify as verify_mod
from .hybrid import (GaussianInitialState, HybridParams, closed_form_commutators,
                     commutator_of, energy_trajectory, evolve_analytic,
                     integrate_numeric, noninteracting_report)
from .matrixrep import lindblad_residual_numeric
from .scalars import ScalarPoly
from .wigner import (consistency_residual, gaussian_state, moyal_rhs,
                     propagate, uniform_grid, wigner_transform)

USAGE_ERROR = 2


def _dump_json(doc: dict, path: Path | None):
    text = json.dumps(doc, indent=2, sort_keys=True, default=float)
    if path is None:
        print(text)
    else:
        path.write_text(text + "\n")


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return USAGE_ERROR


# -- verify -------------------------------------------------------------------

def cmd_verify(args) -> int:
    config = {}
    if args.config is not None:
        cfg_path = Path(args.config)
        if not cfg_path.is_file():
            return _fail(f"config file not found: {cfg_path}")
        try:
            config = json.loads(cfg_path.read_text())
        except json.JSONDecodeError as exc:
            return _fail(f"malformed config: {exc}")
        if not isinstance(config, dict):
            return _fail("config must be a JSON object")
    seed = args.seed if args.seed is not None else config.get(
        "seed", verify_mod.DEFAULT_SEED)
    dim = args.dim if args.dim is not None else config.get("dim", 40)
    margin = args.margin if args.margin is not None else config.get("margin", 12)
    exploratory = bool(config.get("exploratory_nonstandard_jacobi", False)) \
        or args.exploratory_nonstandard_jacobi
    report = verify_mod.run_all(seed=seed, dim=dim, margin=margin,
                                exploratory_nonstandard_jacobi=exploratory)
    _dump_json(report, Path(args.out) if args.out else None)
    if not report["all_pass"]:
        for section, entries in sorted(report["sections"].items()):
            for entry in entries:
                if not entry["pass"]:
                    print(f"FAILED [{section}] {json.dumps(entry, sort_keys=True, default=float)}",
                          file=sys.stderr)
        return 1
    return 0


# -- hybrid -------------------------------------------------------------------

def _write_trajectory_csv(path: Path, times: np.ndarray, rows: np.ndarray):
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "u_x", "u_p", "u_X", "u_P", "u_1"])
        for t, row in zip(times, rows):
            writer.writerow([repr(float(t))] + [repr(float(v)) for v in row])


def cmd_hybrid(args) -> int:
    try:
        params = HybridParams(m=args.m, M=args.M, alpha=args.alpha,
                              hbar=args.hbar)
        if args.dt <= 0:
            raise ValueError("dt must be positive")
        if args.t_end <= 0:
            raise ValueError("t-end must be positive")
        state = GaussianInitialState.minimal(args.x0, args.p0, params.hbar)
        state.check_admissible(params.hbar)
    except ValueError as exc:
        return _fail(str(exc))

    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    stride = max(1, args.stride)

    times, traj = integrate_numeric(args.t_end, args.dt, params,
                                    extra=("com_p",))
    files = {"x": "pos_c", "p": "mom_c", "X": "pos_q", "P": "mom_q",
             "com_p": "total_mom"}
    for name, stem in files.items():
        _write_trajectory_csv(out_dir / f"{stem}.csv", times[::stride],
                              traj[name][::stride])

    max_err = 0.0
    for idx in range(0, times.size, stride):
        exact = evolve_analytic(times[idx], params)
        for name in ("x", "p", "X", "P"):
            max_err = max(max_err, float(
                np.max(np.abs(traj[name][idx] - exact[name].coeffs))))

    sample_times = np.linspace(0.0, args.t_end, 100)
    comm_err = 0.0
    for t in sample_times:
        obs = evolve_analytic(t, params)
        closed = closed_form_commutators(t, params)
        comm_err = max(
            comm_err,
            abs(commutator_of(obs["com_x"], obs["com_p"], params) - closed["com_pair"]),
            abs(commutator_of(obs["rel_x"], obs["rel_p"], params) - closed["rel_pair"]),
            abs(commutator_of(obs["rel_x"], obs["com_x"], params) - closed["rel_x_com_x"]),
            abs(commutator_of(obs["rel_p"], obs["com_p"], params) - closed["rel_p_com_p"]),
        )

    com_p = traj["com_p"]
    energies = energy_trajectory(params, state, sample_times)
    drift = float(np.max(np.abs(energies - energies[0])) / abs(energies[0]))

    report = {
        "schema_version": 1,
        "params": {"m": params.m, "M": params.M, "alpha": params.alpha,
                   "hbar": params.hbar, "t_end": args.t_end, "dt": args.dt},
        "max_coefficient_error_vs_analytic": max_err,
        "max_commutator_error_vs_closed_form": comm_err,
        "total_momentum_exactly_constant": bool(np.all(com_p == com_p[0])),
        "energy_relative_drift": drift,
        "checks_pass": bool(max_err < 1e-8 and comm_err < 1e-12
                            and np.all(com_p == com_p[0]) and drift < 1e-8),
    }
    if params.alpha == 0.0:
        free = noninteracting_report(params, sample_times)
        report["noninteracting"] = free
        report["checks_pass"] = bool(
            report["checks_pass"]
            and free["max_free_solution_error"] == 0.0
            and free["max_classical_pair_commutator"] == 0.0
            and free["max_quantum_pair_commutator_error"] == 0.0)
    _dump_json(report, out_dir / "report.json")
    return 0 if report["checks_pass"] else 1


# -- wigner -------------------------------------------------------------------

def _parse_potential(text: str) -> list[float]:
    try:
        return [float(v) for v in text.replace(",", " ").split()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad potential coefficients: {text!r}")


def _parse_state(text: str):
    kind, _, rest = text.partition(":")
    if kind != "gaussian":
        raise argparse.ArgumentTypeError(f"unknown state kind: {kind!r}")
    try:
        x0, p0, sigma = (float(v) for v in rest.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            "state must look like gaussian:x0,p0,sigma")
    if sigma <= 0:
        raise argparse.ArgumentTypeError("sigma must be positive")
    return x0, p0, sigma


def _write_wigner_csv(path: Path, grid_x, grid_p, w):
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x\\p"] + [repr(float(p)) for p in grid_p])
        for xv, row in zip(grid_x, w):
            writer.writerow([repr(float(xv))] + [repr(float(v)) for v in row])


def cmd_wigner(args) -> int:
    if args.dt <= 0 or args.t_end < 0:
        return _fail("dt must be positive and t-end non-negative")
    x0, p0, sigma = args.state
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)

    x = uniform_grid(args.x_max, args.nx)
    wf = gaussian_state(x, x0, p0, sigma, hbar=args.hbar)
    coeffs = args.potential

    grid0 = wigner_transform(wf, args.hbar)
    _write_wigner_csv(out_dir / "wigner_initial.csv", grid0.x, grid0.p, grid0.w)

    residual = consistency_residual(wf, coeffs, mass=args.mass,
                                    hbar=args.hbar, dt=args.dt)
    rhs0 = moyal_rhs(grid0, coeffs, mass=args.mass, hbar=args.hbar)
    integral = abs(float(np.sum(rhs0) * grid0.dx * grid0.dp))

    n_steps = int(round(args.t_end / args.dt))
    wf_end = propagate(wf, coeffs, args.mass, args.hbar, args.dt, n_steps)
    grid1 = wigner_transform(wf_end, args.hbar)
    _write_wigner_csv(out_dir / "wigner_final.csv", grid1.x, grid1.p, grid1.w)

    degree = len(coeffs) - 1
    active_orders = [2 * el + 1 for el in range(1, max(degree, 1) // 2 + 1)
                     if np.any(np.asarray(coeffs[2 * el + 1:], dtype=float))]
    tol = 1e-3 if degree <= 2 else 5e-3
    report = {
        "schema_version": 1,
        "grid": {"nx": args.nx, "x_max": args.x_max},
        "potential": list(map(float, coeffs)),
        "active_higher_orders": active_orders,
        "consistency_residual": residual,
        "residual_tolerance": tol,
        "rhs_phase_space_integral": integral,
        "normalization": grid1.total(),
        "checks_pass": bool(residual < tol and integral < 1e-8),
    }
    _dump_json(report, out_dir / "report.json")
    return 0 if report["checks_pass"] else 1


# -- lindblad -----------------------------------------------------------------

def cmd_lindblad(args) -> int:
    if args.dim < 4:
        return _fail("dim must be at least 4")
    if args.diffusion <= 0 or args.hbar <= 0:
        return _fail("diffusion and hbar must be positive")
    from .algebra import CanonicalSystem
    from .dynamics import lindblad_residual_symbolic

    rng = np.random.default_rng(args.seed)
    numeric = lindblad_residual_numeric(args.dim, args.diffusion,
                                        hbar=args.hbar, rng=rng)
    system = CanonicalSystem.standard(1)
    sym_rng = verify_mod.random.Random(args.seed)
    symbolic_zero = all(
        lindblad_residual_symbolic(
            verify_mod.random_ncpoly(sym_rng, system, 3, 3),
            ScalarPoly.symbol("D")).is_zero()
        for _ in range(5))
    report = {
        "schema_version": 1,
        "dim": args.dim,
        "diffusion": args.diffusion,
        "numeric_residual": numeric,
        "symbolic_residual_zero": symbolic_zero,
        "checks_pass": bool(symbolic_zero and numeric < 1e-12),
    }
    _dump_json(report, Path(args.out) if args.out else None)
    return 0 if report["checks_pass"] else 1


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="opcalc",
        description="verification and simulation runs for the operator-"
                    "bracket calculus")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run all symbolic and numeric checks")
    p_verify.add_argument("--config", help="JSON config; flags override it")
    p_verify.add_argument("--seed", type=int)
    p_verify.add_argument("--dim", type=int)
    p_verify.add_argument("--margin", type=int)
    p_verify.add_argument("--out", help="write the JSON report here instead of stdout")
    p_verify.add_argument("--exploratory-nonstandard-jacobi", action="store_true")
    p_verify.set_defaults(func=cmd_verify)

    p_hyb = sub.add_parser("hybrid", help="two-particle hybrid model run")
    p_hyb.add_argument("--m", type=float, default=1.0)
    p_hyb.add_argument("--M", type=float, default=2.0)
    p_hyb.add_argument("--alpha", type=float, default=1.0)
    p_hyb.add_argument("--hbar", type=float, default=1.0)
    p_hyb.add_argument("--t-end", type=float, default=10.0)
    p_hyb.add_argument("--dt", type=float, default=1e-3)
    p_hyb.add_argument("--x0", type=float, default=1.0)
    p_hyb.add_argument("--p0", type=float, default=0.5)
    p_hyb.add_argument("--stride", type=int, default=100,
                       help="CSV row decimation")
    p_hyb.add_argument("--out", required=True)
    p_hyb.set_defaults(func=cmd_hybrid)

    p_wig = sub.add_parser("wigner", help="phase-space consistency run")
    p_wig.add_argument("--potential", type=_parse_potential,
                       default=[0.0, 0.0, 0.5],
                       help="ascending coefficients, e.g. '0,0,0.5'")
    p_wig.add_argument("--state", type=_parse_state, default=(1.0, 0.5, 0.7071),
                       help="gaussian:x0,p0,sigma")
    p_wig.add_argument("--t-end", type=float, default=1.0)
    p_wig.add_argument("--dt", type=float, default=1e-3)
    p_wig.add_argument("--nx", type=int, default=256)
    p_wig.add_argument("--x-max", type=float, default=10.0)
    p_wig.add_argument("--mass", type=float, default=1.0)
    p_wig.add_argument("--hbar", type=float, default=1.0)
    p_wig.add_argument("--out", required=True)
    p_wig.set_defaults(func=cmd_wigner)

    p_lin = sub.add_parser("lindblad", help="diffusion-generator identity check")
    p_lin.add_argument("--dim", type=int, default=30)
    p_lin.add_argument("--diffusion", type=float, default=0.7)
    p_lin.add_argument("--hbar", type=float, default=1.0)
    p_lin.add_argument("--seed", type=int, default=verify_mod.DEFAULT_SEED)
    p_lin.add_argument("--out")
    p_lin.set_defaults(func=cmd_lindblad)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        return _fail(str(exc))


if __name__ == "__main__":
    sys.exit(main())
