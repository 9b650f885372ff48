"""Optimal power control for the scalar Gaussian pair of channels.

The secrecy sum rate under a common average-power cap is piecewise in the
total transmit power: below a breakpoint it is the main-channel capacity
term alone, above it the eavesdropper's capacity term is debited and the
feedback key term saturates.  The maximizer has a closed form; this module
implements it together with a brute-force grid oracle used to cross-check
the closed form, and a sweep helper that tabulates the optimum as a
function of the power cap.

All rates are in bits.  The closed form is only meaningful when the
per-transmitter saturation power (2*pi*e*sigma1_sq - 1)*sigma2_sq/2 is
nonnegative, i.e. sigma1_sq >= 1/(2*pi*e); smaller main-channel variances
are rejected rather than silently extrapolated.
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np

from .channels import GaussianMacWt
from .info import TWO_PI_E, ValidationError, gaussian_diff_entropy

__all__ = [
    "ABOVE_THRESHOLD",
    "BELOW_THRESHOLD",
    "MIN_SIGMA1_SQ",
    "PowerControlResult",
    "grid_oracle",
    "optimal_power",
    "saturation_threshold",
    "sum_rate",
    "sweep",
]

#: Smallest admissible main-channel noise variance, 1/(2*pi*e).
MIN_SIGMA1_SQ = 1.0 / TWO_PI_E

BELOW_THRESHOLD = "below_threshold"
ABOVE_THRESHOLD = "above_threshold"


@dataclasses.dataclass(frozen=True)
class PowerControlResult:
    """Maximizer of the secrecy sum rate under a common power cap.

    ``regime`` is ``"below_threshold"`` when the cap is strictly below the
    per-transmitter saturation power and ``"above_threshold"`` otherwise
    (a cap exactly at the threshold is labeled above, where both branches
    of the closed form agree).  The reported point is one maximizer; every
    power pair with the same total is equally optimal because the sum rate
    depends on the pair only through its sum.
    """

    p1_star: float
    p2_star: float
    r_sum_star: float
    regime: str
    threshold: float


def saturation_threshold(g: GaussianMacWt) -> float:
    """Per-transmitter power (2*pi*e*sigma1_sq - 1)*sigma2_sq/2 at which the
    symmetric optimum stops growing when the eavesdropper's channel is the
    noisier one."""
    _check_domain(g)
    return 0.5 * (TWO_PI_E * g.sigma1_sq - 1.0) * g.sigma2_sq


def sum_rate(p1: float, p2: float, g: GaussianMacWt) -> float:
    """Secrecy sum rate of the power pair ``(p1, p2)`` in bits.

    Piecewise in the total t = p1 + p2 with breakpoint
    (2*pi*e*sigma1_sq - 1)*sigma2_sq: below it the rate is
    log2(1 + t/sigma1_sq)/2, above it the eavesdropper term
    log2(1 + t/sigma2_sq)/2 is subtracted and the constant
    log2(2*pi*e*sigma1_sq)/2 added.  The two branches agree at the
    breakpoint, so the function is continuous.
    """
    _check_domain(g)
    if p1 < 0.0 or p2 < 0.0:
        raise ValidationError("powers must be nonnegative, got (%g, %g)" % (p1, p2))
    return float(_rate_of_total(np.asarray(p1 + p2, dtype=float), g))


def optimal_power(power_cap: float, g: GaussianMacWt) -> PowerControlResult:
    """Closed-form maximizer of :func:`sum_rate` over [0, cap]^2.

    When sigma1_sq > sigma2_sq the rate peaks at the saturation threshold:
    both transmitters use min(cap, threshold).  Otherwise the rate is
    nondecreasing in the total power and the corner (cap, cap) is optimal.
    """
    _check_domain(g)
    if power_cap < 0.0:
        raise ValidationError("power cap must be nonnegative, got %g" % power_cap)
    threshold = 0.5 * (TWO_PI_E * g.sigma1_sq - 1.0) * g.sigma2_sq
    regime = ABOVE_THRESHOLD if power_cap >= threshold else BELOW_THRESHOLD
    if g.sigma1_sq > g.sigma2_sq and power_cap >= threshold:
        rate = 0.5 * math.log2(
            1.0 + (TWO_PI_E * g.sigma1_sq - 1.0) * g.sigma2_sq / g.sigma1_sq
        )
        return PowerControlResult(threshold, threshold, rate, regime, threshold)
    rate = sum_rate(power_cap, power_cap, g)
    return PowerControlResult(power_cap, power_cap, rate, regime, threshold)


def grid_oracle(
    power_cap: float, g: GaussianMacWt, resolution: int
) -> tuple[float, float, float]:
    """Exhaustive maximum of :func:`sum_rate` over a uniform grid on the
    square [0, cap]^2.

    Returns ``(p1, p2, rate)`` at the first grid maximum in row-major
    order, which breaks ties toward smaller p1 and then smaller p2.  Used
    as an independent check of :func:`optimal_power`.
    """
    _check_domain(g)
    if resolution < 2:
        raise ValidationError("grid resolution must be at least 2, got %d" % resolution)
    if power_cap < 0.0:
        raise ValidationError("power cap must be nonnegative, got %g" % power_cap)
    axis = np.linspace(0.0, power_cap, resolution)
    rate = _rate_of_total(axis[:, None] + axis[None, :], g)
    flat = int(np.argmax(rate))
    i, j = divmod(flat, resolution)
    return float(axis[i]), float(axis[j]), float(rate[i, j])


def sweep(
    p_max: float, steps: int, g: GaussianMacWt
) -> list[tuple[float, PowerControlResult]]:
    """Tabulate :func:`optimal_power` on a uniform grid of ``steps`` caps
    spanning [0, p_max].  The optimal sum rate column is nondecreasing in
    the cap."""
    _check_domain(g)
    if steps < 2:
        raise ValidationError("sweep needs at least 2 steps, got %d" % steps)
    if p_max < 0.0:
        raise ValidationError("maximum power must be nonnegative, got %g" % p_max)
    caps = np.linspace(0.0, p_max, steps)
    return [(float(cap), optimal_power(float(cap), g)) for cap in caps]


def _check_domain(g: GaussianMacWt) -> None:
    if g.sigma1_sq < MIN_SIGMA1_SQ:
        raise ValidationError(
            "sigma1_sq=%g is below 1/(2*pi*e)=%.12g, so the breakpoint "
            "(2*pi*e*sigma1_sq - 1)*sigma2_sq of the piecewise sum rate is "
            "negative and the closed form does not apply" % (g.sigma1_sq, MIN_SIGMA1_SQ)
        )


def _rate_of_total(total: np.ndarray, g: GaussianMacWt) -> np.ndarray:
    s1, s2 = g.sigma1_sq, g.sigma2_sq
    breakpoint_total = (TWO_PI_E * s1 - 1.0) * s2
    below = 0.5 * np.log2(1.0 + total / s1)
    above = below - 0.5 * np.log2(1.0 + total / s2) + gaussian_diff_entropy(s1)
    return np.where(total <= breakpoint_total, below, above)
