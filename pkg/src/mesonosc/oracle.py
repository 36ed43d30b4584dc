"""Monte Carlo dephasing oracle for the interference damping law.

Two phases driven by ONE shared scalar Gaussian noise path with couplings
sqrt(gamma_j), sqrt(gamma_k) accumulate a Gaussian phase difference, so the
averaged interference E[cos(theta_j - theta_k)] must equal

    exp(-(sqrt(gamma_j) - sqrt(gamma_k))^2 F0 D(t))

non-perturbatively, with D(t) the kernel growth integral.  This verifies
the exponential form of the damping independently of the perturbative
derivation.  Physical couplings give unmeasurably small exponents, so the
oracle is meant to run at rescaled couplings with the exponent O(1).

Reproducibility: trajectory i draws its noise from a counter-based Philox
substream keyed by (seed, i), so results are bitwise identical for a fixed
seed regardless of how trajectories are distributed over workers, provided
the reduction is done in index order (as here, via numpy pairwise sums).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.signal import lfilter

from .kernels import ExponentialKernel, NoiseKernel, WhiteKernel


class PlanError(ValueError):
    pass


@dataclass(frozen=True)
class SimulationPlan:
    n_trajectories: int
    n_steps: int
    dt: float
    seed: int
    kernel: NoiseKernel = field(default_factory=WhiteKernel)

    def __post_init__(self):
        if self.n_trajectories < 100:
            raise PlanError("need at least 100 trajectories")
        if self.n_steps < 10:
            raise PlanError("need at least 10 steps")
        if self.dt <= 0:
            raise PlanError("dt must be positive")
        if isinstance(self.kernel, ExponentialKernel):
            if self.dt > self.kernel.tau / 10.0:
                raise PlanError("dt must resolve the correlation time (dt <= tau/10)")
        elif not isinstance(self.kernel, WhiteKernel):
            raise PlanError("oracle supports white or exponential kernels only")

    @property
    def total_time(self) -> float:
        return self.n_steps * self.dt


@dataclass(frozen=True)
class OracleResult:
    mean_interference: float
    std_error: float
    analytic_prediction: float

    def __post_init__(self):
        if abs(self.mean_interference) > 1.0 + 3.0 * self.std_error:
            raise PlanError("mean interference outside physical range")


def _trajectory_chunks(n: int, chunk: int = 4096):
    start = 0
    while start < n:
        yield start, min(start + chunk, n)
        start = start + chunk


def simulate_damping(
    gamma_j: float,
    gamma_k: float,
    f0: float,
    t: float,
    plan: SimulationPlan,
) -> OracleResult:
    """Sample mean and standard error of cos(theta_j - theta_k) at time t,
    plus the analytic exponential prediction.

    White kernel: each step contributes an independent Gaussian integrated-
    noise increment of variance f0*dt (exact in distribution).  Exponential
    kernel: a stationary Ornstein-Uhlenbeck path with covariance
    f0 exp(-|dt|/tau)/(2 tau), initialized from the stationary distribution
    and integrated with a left Riemann sum (weak order-1 bias in dt).
    """
    if gamma_j <= 0 or gamma_k <= 0 or f0 <= 0:
        raise PlanError("couplings and f0 must be positive")
    if t < 0:
        raise PlanError("negative time")
    if not math.isclose(t, plan.total_time, rel_tol=1e-9, abs_tol=0.0) and t != 0.0:
        raise PlanError(
            f"t = {t} does not match plan n_steps*dt = {plan.total_time}"
        )

    coupling = math.sqrt(gamma_j) - math.sqrt(gamma_k)
    prediction = math.exp(-(coupling**2) * f0 * plan.kernel.growth_integral(t))

    if t == 0.0 or coupling == 0.0:
        # identical phases cancel exactly; no sampling noise
        return OracleResult(1.0, 0.0, prediction)

    n = plan.n_trajectories
    is_ou = isinstance(plan.kernel, ExponentialKernel)
    if is_ou:
        tau = plan.kernel.tau
        rho = math.exp(-plan.dt / tau)
        sigma = math.sqrt(f0 / (2.0 * tau))
        innov = sigma * math.sqrt(1.0 - rho * rho)

    cos_vals = np.empty(n, dtype=float)
    sqrt_var_white = math.sqrt(f0 * plan.dt)
    for lo, hi in _trajectory_chunks(n):
        block = np.empty((hi - lo, plan.n_steps), dtype=float)
        for i in range(lo, hi):
            rng = np.random.Generator(np.random.Philox(key=[plan.seed, i]))
            block[i - lo] = rng.standard_normal(plan.n_steps)
        if is_ou:
            # exact stationary AR(1) recursion, then left Riemann sum
            block[:, 0] *= sigma
            block[:, 1:] *= innov
            paths = lfilter([1.0], [1.0, -rho], block, axis=1)
            phase_noise = paths.sum(axis=1) * plan.dt
        else:
            phase_noise = block.sum(axis=1) * sqrt_var_white
        cos_vals[lo:hi] = np.cos(coupling * phase_noise)

    mean = float(np.mean(cos_vals))
    std_err = float(np.std(cos_vals, ddof=1) / math.sqrt(n))
    return OracleResult(mean, std_err, prediction)


def convergence_sweep(
    base_plan: SimulationPlan,
    t: float,
    gamma_j: float,
    gamma_k: float,
    f0: float,
    n_halvings: int = 3,
) -> list[dict]:
    """Run simulate_damping at a halving sequence of dt (total time fixed)
    and tabulate |sample mean - analytic prediction| against dt."""
    if n_halvings < 3:
        raise PlanError("need at least 3 dt values in the sweep")
    rows = []
    for level in range(n_halvings):
        factor = 2**level
        plan = SimulationPlan(
            n_trajectories=base_plan.n_trajectories,
            n_steps=base_plan.n_steps * factor,
            dt=base_plan.dt / factor,
            seed=base_plan.seed,
            kernel=base_plan.kernel,
        )
        res = simulate_damping(gamma_j, gamma_k, f0, t, plan)
        rows.append(
            {
                "dt": plan.dt,
                "n_steps": plan.n_steps,
                "mean_interference": res.mean_interference,
                "std_error": res.std_error,
                "abs_error": abs(res.mean_interference - res.analytic_prediction),
                "analytic_prediction": res.analytic_prediction,
            }
        )
    return rows
