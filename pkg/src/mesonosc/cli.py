"""Command-line front end.

Every command emits plot-ready CSV or JSON data plus a run manifest (JSON,
stable key order) describing the command, parameters, config hash, seed and
wall-clock duration.  Outputs are deterministic given (config, flags, seed);
rerunning reproduces byte-identical data files.

Exit codes: 0 success, 2 usage error, 3 config error, 4 numeric failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

import numpy as np

from . import __version__
from .constants import CONSTANTS, ConfigError, DEFAULT_CONFIG, Registry, load_config
from .entangle import (
    JointQuery,
    antisymmetric_state,
    flavor_projection,
    joint_probability,
)
from .inference import (
    default_time_grid,
    events_from_csv,
    events_to_csv,
    fit_zeta,
    generate_events,
    lambda_ratio,
)
from .kernels import ExponentialKernel, GaussianKernel, KernelError, WhiteKernel
from .oracle import OracleResult, PlanError, SimulationPlan, simulate_damping
from .oscillation import (
    CslDamping,
    FlavorState,
    LindbladDamping,
    NoDamping,
    csl_damping_rate,
    momentum_spread_diagnostic,
    phase_magnitude_diagnostic,
    transition_probability,
)
from .wavepackets import GaussianPacket, suppression_ratio

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CONFIG = 3
EXIT_NUMERIC = 4

_FLAVOR = {"P": FlavorState.PARTICLE, "A": FlavorState.ANTIPARTICLE}


def _load_registry(args) -> tuple[Registry, str]:
    if args.config is not None:
        with open(args.config, "r", encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = json.dumps(DEFAULT_CONFIG)
    return load_config(text), text


def _kernel_from_arg(spec: str):
    if spec == "white":
        return WhiteKernel()
    kind, _, arg = spec.partition(":")
    if kind == "exp":
        return ExponentialKernel(tau=float(arg))
    if kind == "gauss":
        return GaussianKernel(tau=float(arg))
    raise ConfigError(f"unknown kernel spec '{spec}'")


def _damping_from_args(args, reg: Registry):
    model = getattr(args, "model", "none")
    if model == "none":
        return NoDamping()
    if model == "csl":
        return CslDamping(
            params=reg.get_csl(args.csl_preset),
            kernel=_kernel_from_arg(args.kernel),
            momentum=args.momentum,
            relativistic=args.relativistic,
        )
    if model == "lindblad":
        return LindbladDamping(lambda_single=args.lambda_single)
    raise ConfigError(f"unknown model '{model}'")


def _write_output(args, text: str, manifest: dict):
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        with open(args.out + ".manifest.json", "w", encoding="utf-8") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True)
            fh.write("\n")
    else:
        sys.stdout.write(text)
        json.dump(manifest, sys.stderr, indent=2, sort_keys=True)
        sys.stderr.write("\n")


def _manifest(args, config_text: str, started: float) -> dict:
    params = {
        k: v for k, v in sorted(vars(args).items())
        if k != "func" and not callable(v)
    }
    return {
        "command": args.command,
        "config_sha256": hashlib.sha256(config_text.encode()).hexdigest(),
        "duration_s": time.monotonic() - started,
        "parameters": params,
        "seed": getattr(args, "seed", None),
        "version": __version__,
    }


def _csv(header: list[str], rows) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(
            x if isinstance(x, str) else f"{x:.12e}" for x in row
        ))
    return "\n".join(lines) + "\n"


def _grid(spec: str) -> np.ndarray:
    """Parse 'start:stop:n' into a linspace."""
    try:
        start, stop, n = spec.split(":")
        grid = np.linspace(float(start), float(stop), int(n))
    except ValueError:
        raise ValueError(f"bad grid spec '{spec}'") from None
    if grid.size < 1 or grid[0] < 0:
        raise ValueError(f"bad grid spec '{spec}'")
    return grid


def cmd_rates(args, reg: Registry) -> str:
    params = reg.get_csl(args.csl_preset)
    rows = []
    for name, sp in reg.species.items():
        lam = csl_damping_rate(params, sp)
        rows.append((name, lam, lambda_ratio(lam, sp)))
    return _csv(["species", "lambda_csl_per_s", "lambda_over_width"], rows)


def cmd_single(args, reg: Registry) -> str:
    sp = reg.get_species(args.species)
    spec = _damping_from_args(args, reg)
    grid = _grid(args.t_grid)
    decay = not args.no_decay
    rows = []
    for t in grid:
        p_surv = transition_probability(
            FlavorState.PARTICLE, FlavorState.PARTICLE, sp, t, spec,
            args.momentum, decay)
        p_flip = transition_probability(
            FlavorState.PARTICLE, FlavorState.ANTIPARTICLE, sp, t, spec,
            args.momentum, decay)
        p_surv_a = transition_probability(
            FlavorState.ANTIPARTICLE, FlavorState.ANTIPARTICLE, sp, t, spec,
            args.momentum, decay)
        p_flip_a = transition_probability(
            FlavorState.ANTIPARTICLE, FlavorState.PARTICLE, sp, t, spec,
            args.momentum, decay)
        rows.append((t, p_surv, p_flip, p_surv_a, p_flip_a,
                     p_surv + p_flip))
    return _csv(
        ["t_s", "p_survive", "p_flip", "p_survive_anti", "p_flip_anti",
         "sum_check"],
        rows,
    )


def cmd_joint(args, reg: Registry) -> str:
    sp = reg.get_species(args.species)
    spec = _damping_from_args(args, reg)
    state = antisymmetric_state()
    proj = flavor_projection(_FLAVOR[args.proj_left], _FLAVOR[args.proj_right])
    rows = []
    for t_l in _grid(args.t_left):
        for t_r in _grid(args.t_right):
            q = JointQuery(t_l, t_r, sp, spec, args.momentum)
            rows.append((t_l, t_r, joint_probability(state, proj, q)))
    return _csv(["t_left_s", "t_right_s", "probability"], rows)


def cmd_mc(args, reg: Registry) -> str:
    plan = SimulationPlan(
        n_trajectories=args.n_trajectories,
        n_steps=args.n_steps,
        dt=args.t / args.n_steps,
        seed=args.seed,
        kernel=_kernel_from_arg(args.kernel),
    )
    res: OracleResult = simulate_damping(
        args.gamma_j, args.gamma_k, args.f0, args.t, plan
    )
    payload = {
        "analytic_prediction": res.analytic_prediction,
        "mean_interference": res.mean_interference,
        "std_error": res.std_error,
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def cmd_fit(args, reg: Registry) -> str:
    sp = reg.get_species(args.species)
    if args.events:
        with open(args.events, "r", encoding="utf-8") as fh:
            events = events_from_csv(fh.read())
    else:
        if args.zeta_true is None:
            raise ConfigError("provide --events or --zeta-true/--n-events")
        events = generate_events(
            sp, args.zeta_true, args.n_events, args.seed,
            default_time_grid(sp),
        )
        if args.save_events:
            with open(args.save_events, "w", encoding="utf-8", newline="") as fh:
                fh.write(events_to_csv(events))
    result = fit_zeta(events, sp)
    if not result.converged:
        raise PlanError("fit did not converge")
    payload = {
        "ci_high": result.ci_high,
        "ci_low": result.ci_low,
        "converged": result.converged,
        "log_likelihood": result.log_likelihood,
        "n_events": result.n_events,
        "zeta_hat": result.zeta_hat,
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def cmd_overlap(args, reg: Registry) -> str:
    left = GaussianPacket(0.0, args.sigma, -args.speed)
    right = GaussianPacket(0.0, args.sigma, args.speed)
    rows = []
    for t in _grid(args.t_grid):
        d = abs(left.speed - right.speed) * t
        rows.append((t, d, suppression_ratio(t, left, right, args.r_c)))
    return _csv(["t_s", "separation_cm", "suppression_ratio"], rows)


def cmd_diag(args, reg: Registry) -> str:
    sp = reg.get_species(args.species)
    payload = {
        "momentum_spread": momentum_spread_diagnostic(args.r_c),
        "phase_magnitude": phase_magnitude_diagnostic(sp, args.t),
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def _add_model_flags(p):
    p.add_argument("--model", choices=["none", "csl", "lindblad"], default="none")
    p.add_argument("--csl-preset", default="adler")
    p.add_argument("--kernel", default="white",
                   help="white | exp:TAU | gauss:TAU")
    p.add_argument("--lambda-single", type=float, default=0.0)
    p.add_argument("--momentum", type=float, default=0.0)
    p.add_argument("--relativistic", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="mesonosc",
        description="Neutral-meson oscillation probabilities under collapse "
                    "and decoherence models",
    )
    ap.add_argument("--config", default=None, help="JSON config path")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--out", default=None, help="output file path")
    ap.add_argument("--format", choices=["csv", "json"], default="csv")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("rates", help="collapse damping-rate table")
    p.add_argument("--csl-preset", default="adler")
    p.set_defaults(func=cmd_rates)

    p = sub.add_parser("single", help="single-particle probability curves")
    p.add_argument("--species", default="K0")
    p.add_argument("--t-grid", default="0:1e-9:201", help="start:stop:n")
    p.add_argument("--no-decay", action="store_true")
    _add_model_flags(p)
    p.set_defaults(func=cmd_single)

    p = sub.add_parser("joint", help="two-particle probability surface")
    p.add_argument("--species", default="K0")
    p.add_argument("--t-left", default="0:5e-10:21")
    p.add_argument("--t-right", default="0:5e-10:21")
    p.add_argument("--proj-left", choices=["P", "A"], default="P")
    p.add_argument("--proj-right", choices=["P", "A"], default="P")
    _add_model_flags(p)
    p.set_defaults(func=cmd_joint)

    p = sub.add_parser("mc", help="stochastic damping oracle")
    p.add_argument("--gamma-j", type=float, required=True)
    p.add_argument("--gamma-k", type=float, required=True)
    p.add_argument("--f0", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--n-trajectories", type=int, default=100000)
    p.add_argument("--n-steps", type=int, default=64)
    p.add_argument("--kernel", default="white")
    p.set_defaults(func=cmd_mc)

    p = sub.add_parser("fit", help="zeta maximum-likelihood fit")
    p.add_argument("--species", default="K0")
    p.add_argument("--events", default=None, help="event CSV path")
    p.add_argument("--zeta-true", type=float, default=None)
    p.add_argument("--n-events", type=int, default=20000)
    p.add_argument("--save-events", default=None)
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("overlap", help="wave-packet cross-term suppression")
    p.add_argument("--sigma", type=float, default=1e-4)
    p.add_argument("--r-c", type=float, default=1e-5)
    p.add_argument("--speed", type=float, default=0.2 * CONSTANTS.c_cm_s)
    p.add_argument("--t-grid", default="0:1e-12:21")
    p.set_defaults(func=cmd_overlap)

    p = sub.add_parser("diag", help="momentum-spread and phase diagnostics")
    p.add_argument("--species", default="K0")
    p.add_argument("--r-c", type=float, default=1e-5)
    p.add_argument("--t", type=float, default=1.6e-7)
    p.set_defaults(func=cmd_diag)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    started = time.monotonic()
    try:
        reg, config_text = _load_registry(args)
        text = args.func(args, reg)
    except (ConfigError, KernelError, FileNotFoundError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (PlanError, ArithmeticError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _write_output(args, text, _manifest(args, config_text, started))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
