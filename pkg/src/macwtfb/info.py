"""Information measures over finite distributions, in bits.

Distributions are validated numpy float arrays. All measures use log base 2
and treat 0 * log 0 = 0. Tiny negative results caused by float cancellation
(within NEG_CLAMP) are clamped to zero; anything more negative signals a bug
in the caller and raises ConsistencyError.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

# mass functions must sum to 1 within this
PROB_ATOL = 1e-12
# float cancellation allowance on quantities that are nonnegative in exact math
NEG_CLAMP = 1e-10

TWO_PI_E = 2.0 * math.pi * math.e


class ValidationError(ValueError):
    """Raised when an input fails a distribution or argument contract."""


class ConsistencyError(RuntimeError):
    """Raised when an internally computed quantity violates exact-math bounds."""


def _as_mass(values, ndim: int | None = None) -> np.ndarray:
    arr = np.asarray(values, dtype=float)
    if ndim is not None and arr.ndim != ndim:
        raise ValidationError(f"expected a {ndim}-dimensional mass array, got shape {arr.shape}")
    if arr.size == 0:
        raise ValidationError("mass array is empty")
    if not np.isfinite(arr).all():
        raise ValidationError("mass array contains non-finite entries")
    if arr.min() < -PROB_ATOL:
        raise ValidationError(f"mass array has negative entry {arr.min():.3e}")
    arr = np.where(arr < 0.0, 0.0, arr)
    total = arr.sum()
    if abs(total - 1.0) > PROB_ATOL:
        raise ValidationError(f"mass must sum to 1 within {PROB_ATOL:g}, got {total!r}")
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class FiniteDist:
    """Probability mass function on a finite alphabet {0, ..., n-1}."""

    mass: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "mass", _as_mass(self.mass, ndim=1))

    def __len__(self) -> int:
        return self.mass.shape[0]


@dataclass(frozen=True)
class JointDist:
    """Joint probability mass function; axis i is the i-th random variable."""

    mass: np.ndarray

    def __post_init__(self):
        arr = _as_mass(self.mass)
        object.__setattr__(self, "mass", arr)

    @property
    def axis_sizes(self) -> tuple[int, ...]:
        return self.mass.shape

    @property
    def num_axes(self) -> int:
        return self.mass.ndim

    def marginal(self, axes: Sequence[int]) -> np.ndarray:
        """Marginal mass over the given axes, in the order given."""
        axes = _check_axes(self, axes, "axes")
        drop = tuple(i for i in range(self.mass.ndim) if i not in axes)
        m = self.mass.sum(axis=drop) if drop else self.mass
        # sum() preserves the original relative order; permute to match `axes`
        kept = [i for i in range(self.mass.ndim) if i in axes]
        perm = [kept.index(i) for i in axes]
        return np.transpose(m, perm) if perm != list(range(len(axes))) else m


def _check_axes(joint: JointDist, axes: Sequence[int], name: str) -> tuple[int, ...]:
    axes = tuple(int(i) for i in axes)
    if len(set(axes)) != len(axes):
        raise ValidationError(f"{name} contains repeated axes: {axes}")
    for i in axes:
        if not 0 <= i < joint.num_axes:
            raise ValidationError(f"{name} axis {i} out of range for {joint.num_axes} axes")
    return axes


def _entropy_of(mass: np.ndarray) -> float:
    flat = np.asarray(mass, dtype=float).ravel()
    nz = flat[flat > 0.0]
    if nz.size == 0:
        return 0.0
    return float(-np.dot(nz, np.log2(nz)))


def entropy(dist: FiniteDist | JointDist) -> float:
    """Shannon entropy H(X) in bits; for a JointDist, the entropy of all axes."""
    if not isinstance(dist, (FiniteDist, JointDist)):
        raise ValidationError(f"expected FiniteDist or JointDist, got {type(dist).__name__}")
    return _entropy_of(dist.mass)


def _clamp_nonneg(value: float, what: str) -> float:
    if value < 0.0:
        if value < -NEG_CLAMP:
            raise ConsistencyError(f"{what} = {value!r} is negative beyond the float allowance")
        return 0.0
    return value


def conditional_entropy(joint: JointDist, target_axes: Sequence[int],
                        given_axes: Sequence[int] = ()) -> float:
    """H(target | given) in bits, computed as H(target, given) - H(given)."""
    target = _check_axes(joint, target_axes, "target_axes")
    given = _check_axes(joint, given_axes, "given_axes")
    if set(target) & set(given):
        raise ValidationError(f"target and given axes overlap: {target} vs {given}")
    if not target:
        raise ValidationError("target_axes is empty")
    h_joint = _entropy_of(joint.marginal(target + given))
    h_given = _entropy_of(joint.marginal(given)) if given else 0.0
    return _clamp_nonneg(h_joint - h_given, "conditional entropy")


def mutual_information(joint: JointDist, left_axes: Sequence[int],
                       right_axes: Sequence[int],
                       given_axes: Sequence[int] = ()) -> float:
    """I(left; right | given) in bits.

    Evaluated as H(left,given) + H(right,given) - H(left,right,given) - H(given),
    which is nonnegative in exact arithmetic; tiny float negatives clamp to 0.
    """
    left = _check_axes(joint, left_axes, "left_axes")
    right = _check_axes(joint, right_axes, "right_axes")
    given = _check_axes(joint, given_axes, "given_axes")
    groups = (set(left), set(right), set(given))
    if (groups[0] & groups[1]) or (groups[0] & groups[2]) or (groups[1] & groups[2]):
        raise ValidationError(f"axis groups overlap: {left}, {right}, {given}")
    if not left or not right:
        raise ValidationError("left_axes and right_axes must be nonempty")
    h_lg = _entropy_of(joint.marginal(left + given))
    h_rg = _entropy_of(joint.marginal(right + given))
    h_lrg = _entropy_of(joint.marginal(left + right + given))
    h_g = _entropy_of(joint.marginal(given)) if given else 0.0
    return _clamp_nonneg(h_lg + h_rg - h_lrg - h_g, "mutual information")


def gaussian_diff_entropy(variance: float) -> float:
    """Differential entropy of a scalar Gaussian, 1/2 log2(2 pi e variance), bits."""
    v = float(variance)
    if not math.isfinite(v) or v <= 0.0:
        raise ValidationError(f"variance must be positive and finite, got {variance!r}")
    return 0.5 * math.log2(TWO_PI_E * v)


def binary_entropy(p: float) -> float:
    """Entropy of a Bernoulli(p) source in bits."""
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"Bernoulli parameter must lie in [0, 1], got {p!r}")
    if p == 0.0 or p == 1.0:
        return 0.0
    return -(p * math.log2(p) + (1.0 - p) * math.log2(1.0 - p))
