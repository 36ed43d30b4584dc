"""Time-correlation functions of the collapse noise and their kernel integrals.

All kernels are even functions of the time lag normalized to unit integral
over the full line, so every parametric family interpolates to the white
(delta-correlated) limit as its correlation time goes to zero.  Any overall
noise strength lives in the collapse coupling, never in the kernel.

The two integrals that drive every damping exponent are

    D(t)    = int_0^t f(s) (t - s) ds            (growth integral)
    C(t, a) = 2 int_0^t cos(a s) f(s) (t - s) ds (cosine-weighted)

with the one-sided delta carrying weight 1/2, so that the white-noise
limits are D(t) = t/2 and C(t, a) = t exactly.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

_QUAD_RTOL = 1e-10
_QUAD_ATOL = 1e-16


class KernelError(ValueError):
    pass


class NoiseKernel:
    """Base class; concrete kernels implement ``correlation`` and may
    override the integrals with closed forms."""

    def correlation(self, s: float) -> float:
        """Pointwise value f(|s|) in s^-1."""
        raise NotImplementedError

    def growth_integral(self, t: float) -> float:
        """D(t) = int_0^t f(s)(t-s) ds, in seconds."""
        if t < 0:
            raise KernelError("negative time")
        if t == 0.0:
            return 0.0
        val, _ = integrate.quad(
            lambda s: self.correlation(s) * (t - s), 0.0, t,
            epsrel=_QUAD_RTOL, epsabs=_QUAD_ATOL, limit=200,
        )
        return val

    def cosine_weighted_integral(self, t: float, a: float) -> float:
        """C(t, a) = 2 int_0^t cos(as) f(s)(t-s) ds, in seconds.

        Uses QUADPACK's oscillation-aware cosine-weight rule for a != 0,
        which subdivides in units of the oscillation period.
        """
        if t < 0:
            raise KernelError("negative time")
        if t == 0.0:
            return 0.0
        if a == 0.0:
            return 2.0 * self.growth_integral(t)
        val, _ = integrate.quad(
            lambda s: self.correlation(s) * (t - s), 0.0, t,
            weight="cos", wvar=abs(a),
            epsrel=_QUAD_RTOL, epsabs=_QUAD_ATOL, limit=500,
        )
        return 2.0 * val


class WhiteKernel(NoiseKernel):
    """Delta-correlated noise.  Exists only through its integrals."""

    def correlation(self, s: float) -> float:
        raise KernelError("white kernel has no pointwise correlation value")

    def growth_integral(self, t: float) -> float:
        if t < 0:
            raise KernelError("negative time")
        return 0.5 * t

    def cosine_weighted_integral(self, t: float, a: float) -> float:
        if t < 0:
            raise KernelError("negative time")
        return float(t)

    def __repr__(self):
        return "WhiteKernel()"


@dataclass(frozen=True, repr=True)
class ExponentialKernel(NoiseKernel):
    """f(s) = exp(-|s|/tau) / (2 tau)."""

    tau: float

    def __post_init__(self):
        if self.tau <= 0:
            raise KernelError("tau must be positive")

    def correlation(self, s: float) -> float:
        if not math.isfinite(s):
            raise KernelError("non-finite lag")
        return math.exp(-abs(s) / self.tau) / (2.0 * self.tau)

    def growth_integral(self, t: float) -> float:
        if t < 0:
            raise KernelError("negative time")
        # closed-form antiderivative; use expm1 for small t/tau accuracy
        x = t / self.tau
        return 0.5 * (t + self.tau * math.expm1(-x))


@dataclass(frozen=True, repr=True)
class GaussianKernel(NoiseKernel):
    """f(s) = exp(-s^2 / (2 tau^2)) / (sqrt(2 pi) tau)."""

    tau: float

    def __post_init__(self):
        if self.tau <= 0:
            raise KernelError("tau must be positive")

    def correlation(self, s: float) -> float:
        if not math.isfinite(s):
            raise KernelError("non-finite lag")
        x = s / self.tau
        return math.exp(-0.5 * x * x) / (math.sqrt(2.0 * math.pi) * self.tau)


class TabulatedKernel(NoiseKernel):
    """Kernel given by samples (s_i, f_i) for s >= 0, linearly interpolated
    and treated as an even extension about s = 0.  Values outside the last
    sample are zero."""

    def __init__(self, s: np.ndarray, f: np.ndarray):
        s = np.asarray(s, dtype=float)
        f = np.asarray(f, dtype=float)
        if s.ndim != 1 or s.shape != f.shape or s.size < 2:
            raise KernelError("need two equal-length 1-d sample arrays")
        if np.any(np.diff(s) <= 0):
            raise KernelError("sample lags must be strictly increasing")
        if np.any(f < 0):
            raise KernelError("kernel values must be nonnegative")
        self.s = s
        self.f = f

    def correlation(self, s: float) -> float:
        if not math.isfinite(s):
            raise KernelError("non-finite lag")
        return float(np.interp(abs(s), self.s, self.f, left=self.f[0], right=0.0))

    def growth_integral(self, t: float) -> float:
        if t < 0:
            raise KernelError("negative time")
        if t == 0.0:
            return 0.0
        # f is piecewise linear, so f(s)(t-s) is piecewise quadratic and
        # per-segment Simpson is exact
        edges = np.concatenate(([0.0], self.s[(self.s > 0.0) & (self.s < t)], [t]))
        a, b = edges[:-1], edges[1:]
        mid = 0.5 * (a + b)
        def g(x):
            return np.interp(x, self.s, self.f, left=self.f[0], right=0.0) * (t - x)
        return float(np.sum((b - a) / 6.0 * (g(a) + 4.0 * g(mid) + g(b))))

    def __repr__(self):
        return f"TabulatedKernel(n={self.s.size})"


def tabulated_from_csv(text: str) -> TabulatedKernel:
    """Load a tabulated kernel from two-column CSV (s_seconds, f_per_second).

    A header line is required.
    """
    lines = [ln for ln in io.StringIO(text).read().splitlines() if ln.strip()]
    if len(lines) < 3:
        raise KernelError("CSV must have a header and at least two samples")
    try:
        data = np.loadtxt(io.StringIO("\n".join(lines[1:])), delimiter=",")
    except ValueError as exc:
        raise KernelError(f"bad CSV data: {exc}") from exc
    if data.ndim != 2 or data.shape[1] != 2:
        raise KernelError("CSV must have exactly two columns")
    return TabulatedKernel(data[:, 0], data[:, 1])


def spatial_zero(r_c: float) -> float:
    """Zero-separation value of the spatial noise correlator, in cm^-3.

    F(0) = (sqrt(4 pi) r_C)^-3, the effective noise power seen by a
    localized particle.
    """
    if r_c <= 0:
        raise KernelError("r_c must be positive")
    return (4.0 * math.pi) ** -1.5 / r_c**3
