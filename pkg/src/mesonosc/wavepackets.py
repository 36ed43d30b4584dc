"""Suppression of left-right noise cross-terms for separated wave packets.

Two Gaussian packet densities of width sigma separated by d, averaged over
the Gaussian spatial noise correlator of width ~r_C, give a per-dimension
overlap

    r_C / sqrt(r_C^2 + sigma^2) * exp(-d^2 / (4 (r_C^2 + sigma^2)))

normalized so coincident point packets give 1.  For realistic meson
kinematics the separation grows to many correlation lengths essentially
instantly, which is what justifies dropping the mixed noise terms from the
two-particle probabilities.  Packet dispersion is ignored; spreading only
strengthens the suppression at these scales.
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class GaussianPacket:
    center: float   # cm
    sigma: float    # cm
    speed: float    # cm/s, signed

    def __post_init__(self):
        if self.sigma <= 0:
            raise ValueError("sigma must be positive")


def cross_term_kernel_overlap(
    d: float, sigma: float, r_c: float, dims: int = 1
) -> float:
    """Overlap of two packet densities through the spatial noise correlator.

    For dims = 3 the separation lies along one axis; the transverse factors
    use d = 0.
    """
    if sigma <= 0 or r_c <= 0:
        raise ValueError("sigma and r_c must be positive")
    if d < 0:
        raise ValueError("separation must be >= 0")
    if dims not in (1, 3):
        raise ValueError("dims must be 1 or 3")
    s2 = r_c * r_c + sigma * sigma
    axial = r_c / math.sqrt(s2) * math.exp(-d * d / (4.0 * s2))
    if dims == 1:
        return axial
    transverse = r_c / math.sqrt(s2)
    return axial * transverse * transverse


def suppression_ratio(
    t: float, left: GaussianPacket, right: GaussianPacket, r_c: float
) -> float:
    """Cross-term overlap at time t relative to coincident packets.

    d(t) = |(c_l - c_r) + (v_l - v_r) t| with constant widths; packets must
    share a width for the ratio to be a pure separation factor, so the mean
    width is used.
    """
    if t < 0:
        raise ValueError("negative time")
    sigma = 0.5 * (left.sigma + right.sigma)
    d = abs((left.center - right.center) + (left.speed - right.speed) * t)
    return (
        cross_term_kernel_overlap(d, sigma, r_c)
        / cross_term_kernel_overlap(0.0, sigma, r_c)
    )
