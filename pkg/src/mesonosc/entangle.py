"""Two-particle joint probabilities for entangled neutral-meson pairs.

The general quadruple-sum factorization over mass-basis coefficients is the
single source of truth; the phenomenological closed forms (zeta model,
min-time Lindblad model, equal-width formula) are validated against it.

Sign note: expanding the factorization for the antisymmetric state with
like-flavor projections yields a MINUS sign in front of the interference
term, restoring the equal-time EPR anti-correlation.  Published expansions
sometimes print a plus sign there; this module keeps the sign that follows
from the state's coefficients, and the zeta/equal-width forms inherit it.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .constants import CONSTANTS, MesonSpecies
from .oscillation import (
    DampingSpec,
    Eigenstate,
    FlavorState,
    NoDamping,
    energy_difference,
    pkj,
)

_EIG = (Eigenstate.LIGHT, Eigenstate.HEAVY)


class ImaginaryResidueError(RuntimeError):
    """Joint probability came out with a non-negligible imaginary part;
    signals an implementation bug, not bad user input."""


@dataclass(frozen=True)
class TwoParticleState:
    """Mass-basis coefficients alpha[j, k], indexed (light, heavy) = (0, 1)."""

    alpha: np.ndarray

    def __post_init__(self):
        a = np.asarray(self.alpha, dtype=complex)
        if a.shape != (2, 2):
            raise ValueError("alpha must be a 2x2 array")
        norm = float(np.sum(np.abs(a) ** 2))
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"state not normalized: sum |alpha|^2 = {norm}")
        object.__setattr__(self, "alpha", a)


@dataclass(frozen=True)
class FinalProjection:
    """Projection coefficients in the mass basis for the left (beta) and
    right (gamma) detections; each pair is unit-normalized."""

    beta: tuple[complex, complex]
    gamma: tuple[complex, complex]

    def __post_init__(self):
        for pair, name in ((self.beta, "beta"), (self.gamma, "gamma")):
            norm = abs(pair[0]) ** 2 + abs(pair[1]) ** 2
            if abs(norm - 1.0) > 1e-12:
                raise ValueError(f"{name} not normalized")


@dataclass(frozen=True)
class JointQuery:
    t_left: float
    t_right: float
    species: MesonSpecies
    spec: DampingSpec = field(default_factory=NoDamping)
    momentum: float = 0.0
    include_decay: bool = True

    def __post_init__(self):
        if self.t_left < 0 or self.t_right < 0:
            raise ValueError("times must be >= 0")


def antisymmetric_state() -> TwoParticleState:
    """The Bell-type state (|light heavy> - |heavy light>) / sqrt(2)."""
    a = np.zeros((2, 2), dtype=complex)
    s = 1.0 / math.sqrt(2.0)
    a[0, 1] = s
    a[1, 0] = -s
    return TwoParticleState(a)


def flavor_coefficients(flavor: FlavorState) -> tuple[complex, complex]:
    """Mass-basis coefficients (light, heavy) of a flavor eigenstate."""
    s = 1.0 / math.sqrt(2.0)
    if flavor is FlavorState.PARTICLE:
        return (s, s)
    return (-s, s)


def flavor_projection(left: FlavorState, right: FlavorState) -> FinalProjection:
    return FinalProjection(
        beta=flavor_coefficients(left), gamma=flavor_coefficients(right)
    )


def joint_probability(
    state: TwoParticleState, proj: FinalProjection, q: JointQuery
) -> float:
    """Joint detection probability via the quadruple sum over mass indices."""
    alpha = state.alpha
    beta = np.asarray(proj.beta, dtype=complex)
    gamma = np.asarray(proj.gamma, dtype=complex)

    # interference factors P[a, b] = pkj(b, a): left uses (j', j), right (k', k)
    pl = np.empty((2, 2), dtype=complex)
    pr = np.empty((2, 2), dtype=complex)
    for a in range(2):
        for b in range(2):
            pl[a, b] = pkj(q.species, _EIG[b], _EIG[a], q.t_left, q.spec,
                           q.momentum, q.include_decay)
            pr[a, b] = pkj(q.species, _EIG[b], _EIG[a], q.t_right, q.spec,
                           q.momentum, q.include_decay)

    total = 0.0 + 0.0j
    for j in range(2):
        for k in range(2):
            cjk = alpha[j, k] * np.conj(beta[j]) * np.conj(gamma[k])
            if cjk == 0:
                continue
            for jp in range(2):
                for kp in range(2):
                    cpp = np.conj(alpha[jp, kp]) * beta[jp] * gamma[kp]
                    if cpp == 0:
                        continue
                    total += cjk * cpp * pl[jp, j] * pr[kp, k]

    if abs(total.imag) > 1e-12 * max(1.0, abs(total.real)):
        raise ImaginaryResidueError(
            f"joint probability has imaginary residue {total.imag}"
        )
    return max(total.real, 0.0)


def _decay_envelopes(species: MesonSpecies, t_l: float, t_r: float):
    hbar = CONSTANTS.hbar_mev_s
    g_l = species.gamma_light / hbar
    g_h = species.gamma_heavy / hbar
    e1 = math.exp(-g_l * t_l - g_h * t_r)
    e2 = math.exp(-g_h * t_l - g_l * t_r)
    e_int = math.exp(-0.5 * (g_l + g_h) * (t_l + t_r))
    return e1, e2, e_int


def _oscillation_phase(species: MesonSpecies, dt: float, p: float) -> float:
    de = energy_difference(species, Eigenstate.HEAVY, Eigenstate.LIGHT, p)
    return de * dt / CONSTANTS.hbar_mev_s


def zeta_joint_probability(
    t_left: float,
    t_right: float,
    species: MesonSpecies,
    zeta: float,
    momentum: float = 0.0,
    like_flavor: bool = True,
) -> float:
    """Antisymmetric-state joint probability with the interference term
    multiplied by (1 - zeta).  zeta = 0 is undamped quantum mechanics,
    zeta = 1 total decoherence.

    ``like_flavor`` selects same-flavor projections on both sides (minus
    interference sign) versus opposite flavors (plus sign).
    """
    if not 0.0 <= zeta <= 1.0:
        raise ValueError("zeta must be in [0, 1]")
    if t_left < 0 or t_right < 0:
        raise ValueError("times must be >= 0")
    e1, e2, e_int = _decay_envelopes(species, t_left, t_right)
    cos = math.cos(_oscillation_phase(species, t_right - t_left, momentum))
    sign = -1.0 if like_flavor else 1.0
    return 0.125 * (e1 + e2 + sign * 2.0 * cos * e_int * (1.0 - zeta))


def min_time_joint_probability(
    t_left: float,
    t_right: float,
    species: MesonSpecies,
    lambda_two: float,
    momentum: float = 0.0,
    like_flavor: bool = True,
) -> float:
    """Same structure as the zeta model with (1 - zeta) replaced by
    exp(-lambda_two * min(t_left, t_right))."""
    if lambda_two < 0:
        raise ValueError("lambda_two must be >= 0")
    if t_left < 0 or t_right < 0:
        raise ValueError("times must be >= 0")
    e1, e2, e_int = _decay_envelopes(species, t_left, t_right)
    cos = math.cos(_oscillation_phase(species, t_right - t_left, momentum))
    damp = math.exp(-lambda_two * min(t_left, t_right))
    sign = -1.0 if like_flavor else 1.0
    return 0.125 * (e1 + e2 + sign * 2.0 * cos * e_int * damp)


def equal_width_joint_probability(
    t_left: float,
    t_right: float,
    species: MesonSpecies,
    momentum: float = 0.0,
    like_flavor: bool = True,
) -> float:
    """Undamped joint probability for species with (nearly) equal widths.

    (exp(-Gbar (t_l + t_r)/hbar) / 4) * {1 -+ cos[...(t_r - t_l)]} with
    Gbar the mean width; the interference sign follows the general
    factorization (minus for like flavors, EPR zero at equal times), and
    the formula is cross-checked against joint_probability in the tests.
    """
    if t_left < 0 or t_right < 0:
        raise ValueError("times must be >= 0")
    rel = abs(species.gamma_light - species.gamma_heavy) / max(
        species.gamma_light, species.gamma_heavy, 1e-300
    )
    if rel > 0.01:
        warnings.warn(
            f"{species.name}: widths differ by {rel:.1%}; equal-width formula "
            "is a poor approximation",
            stacklevel=2,
        )
    gbar = 0.5 * (species.gamma_light + species.gamma_heavy) / CONSTANTS.hbar_mev_s
    cos = math.cos(_oscillation_phase(species, t_right - t_left, momentum))
    sign = -1.0 if like_flavor else 1.0
    return 0.25 * math.exp(-gbar * (t_left + t_right)) * (1.0 + sign * cos)
