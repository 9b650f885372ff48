"""Closed-form secrecy rate bounds for the Gaussian model.

Y = X1 + X2 + N1, Z = X1 + X2 + N2, with noise variances sigma1_sq (main)
and sigma2_sq (eavesdropper) and average powers p1, p2. All rates in bits.

The decode-and-forward inner region caps each rate by its single-user main
channel capacity and the sum by the main-minus-eavesdropper sum capacity
difference. The hybrid region adds the secret-key gain
min{ h(N1), 1/2 log2(1 + (p1+p2)/sigma2_sq) } to the sum cap, where h(N1) is
the differential entropy of the main noise; both closed forms are evaluated
at the full-power, fully-correlated-auxiliary operating point, which is where
they are maximized. The outer bound caps the secret sum rate through the
conditional entropy h(Y|Z) of jointly Gaussian outputs.
"""

from __future__ import annotations

import math
import warnings

from .channels import GaussianMacWt
from .info import TWO_PI_E, ValidationError, gaussian_diff_entropy
from .regions import RateRegion, region_from_halfspaces


def _cap(snr: float) -> float:
    """1/2 log2(1 + snr), the Gaussian capacity formula."""
    return 0.5 * math.log2(1.0 + snr)


def df_sum_bound(g: GaussianMacWt) -> float:
    """Sum-rate cap of the decode-and-forward region (may be negative)."""
    s = g.p1 + g.p2
    return _cap(s / g.sigma1_sq) - _cap(s / g.sigma2_sq)


def hybrid_sum_bound(g: GaussianMacWt) -> float:
    """Sum-rate cap of the hybrid (key-generation) region."""
    gain = min(gaussian_diff_entropy(g.sigma1_sq), _cap((g.p1 + g.p2) / g.sigma2_sq))
    return df_sum_bound(g) + gain


def gaussian_df_region(g: GaussianMacWt) -> RateRegion:
    """Decode-and-forward inner bound region."""
    return region_from_halfspaces([
        (1.0, 0.0, _cap(g.p1 / g.sigma1_sq)),
        (0.0, 1.0, _cap(g.p2 / g.sigma1_sq)),
        (1.0, 1.0, df_sum_bound(g)),
    ])


def gaussian_hybrid_region(g: GaussianMacWt) -> RateRegion:
    """Hybrid inner bound region: decode-and-forward plus a fed-back secret key.

    For sigma1_sq < 1/(2 pi e) the key-rate term h(N1) is negative and the
    closed form is evaluated literally; a RuntimeWarning flags the result
    since the region is then smaller than decode-and-forward alone.
    """
    if gaussian_diff_entropy(g.sigma1_sq) < 0.0:
        warnings.warn(
            "main-noise differential entropy is negative "
            f"(sigma1_sq={g.sigma1_sq!r} < 1/(2 pi e)); the hybrid sum bound "
            "is evaluated literally and shrinks below decode-and-forward",
            RuntimeWarning,
            stacklevel=2,
        )
    return region_from_halfspaces([
        (1.0, 0.0, _cap(g.p1 / g.sigma1_sq)),
        (0.0, 1.0, _cap(g.p2 / g.sigma1_sq)),
        (1.0, 1.0, hybrid_sum_bound(g)),
    ])


def tekin_yener_region(g: GaussianMacWt) -> RateRegion:
    """No-feedback comparison region (Tekin-Yener style individual caps).

    Each individual cap subtracts the rate the eavesdropper collects when the
    other user's signal acts as its noise; the sum cap coincides with the
    decode-and-forward one.
    """
    r1 = _cap(g.p1 / g.sigma1_sq) - _cap(g.p1 / (g.sigma2_sq + g.p2))
    r2 = _cap(g.p2 / g.sigma1_sq) - _cap(g.p2 / (g.sigma2_sq + g.p1))
    return region_from_halfspaces([
        (1.0, 0.0, r1),
        (0.0, 1.0, r2),
        (1.0, 1.0, df_sum_bound(g)),
    ])


def gaussian_outer_sum(g: GaussianMacWt) -> float:
    """Sato-type outer cap on R1 + R2, clamped at zero.

    With sigma1_sq > sigma2_sq the eavesdropper's output determines Y up to
    independent noise of variance sigma1_sq - sigma2_sq; the bound is the
    differential entropy of that gap and is power-independent. With
    sigma1_sq < sigma2_sq the roles flip and a power-dependent correction
    appears. Equal variances leave h(Y|Z) degenerate, which the closed form
    cannot represent, so that case is rejected.
    """
    s1, s2 = g.sigma1_sq, g.sigma2_sq
    if s1 == s2:
        raise ValidationError(
            "outer bound is undefined for equal noise variances "
            f"(sigma1_sq == sigma2_sq == {s1!r})"
        )
    if s1 > s2:
        value = gaussian_diff_entropy(s1 - s2)
    else:
        s = g.p1 + g.p2
        value = gaussian_diff_entropy(s2 - s1) + 0.5 * math.log2((s + s1) / (s + s2))
    return max(0.0, value)


def gaussian_outer_region(g: GaussianMacWt) -> RateRegion:
    """Triangle {R1 + R2 <= gaussian_outer_sum} in the quadrant.

    The converse constrains only the sum rate, so the region is the plain
    simplex below the outer sum cap.
    """
    return region_from_halfspaces([(1.0, 1.0, gaussian_outer_sum(g))])
