"""Discrete-channel secrecy bounds by seeded search over input laws.

The inner bounds hold for factorized input laws P(u) P(x1|u) P(x2|u); the
outer bound is a conditional entropy maximized over arbitrary joint input
laws.  None of the objectives is concave, so every maximization here is a
seeded multi-start projected coordinate ascent on simplex blocks: honest,
reproducible lower bounds on the true suprema.  Results are deterministic
functions of the kernel, the configuration and the seed; restarts are
independent and merged in seed order, so a concurrent execution would have
to produce the identical output.

Single-letter quantities for one input law come from the channels module;
the search loop uses a private einsum evaluation of the same expressions
that is pinned to the public one by the test suite.
"""

from __future__ import annotations

import dataclasses
import math
from typing import Callable, Sequence

import numpy as np

from .channels import (
    InfoQuantities,
    InputFactorization,
    MacWiretapKernel,
    WiretapKernel,
    info_quantities,
    joint_from_input_law,
)
from .info import JointDist, ValidationError, conditional_entropy
from .regions import Halfspace, RateRegion, hull_of_regions, is_subset, region_from_halfspaces

__all__ = [
    "InnerSearchResult",
    "SearchConfig",
    "df_region_for_input",
    "feedback_secrecy_capacity",
    "hybrid_region_for_input",
    "sato_outer_for_joint",
    "search_inner",
    "search_outer",
    "wyner_capacity",
]

# Distinct stream labels keep the three searches' random restarts decoupled
# even when they share a user seed.
_INNER_STREAM = 1
_OUTER_STREAM = 2
_SINGLE_STREAM = 3

_BOUND_KINDS = ("df", "hybrid")


@dataclasses.dataclass(frozen=True)
class SearchConfig:
    """Knobs of the seeded multi-start ascent.

    ``refinement_iterations`` caps the number of full coordinate sweeps per
    restart.  The simplex step starts at ``initial_step`` and is multiplied
    by ``step_decay`` after every ``decay_patience`` consecutive sweeps
    without improvement; a restart stops early once three patience windows
    pass without progress.
    """

    u_cardinality_max: int = 4
    restarts: int = 64
    refinement_iterations: int = 200
    seed: int = 0
    initial_step: float = 0.25
    step_decay: float = 0.5
    decay_patience: int = 25

    def __post_init__(self):
        for name in ("u_cardinality_max", "restarts", "refinement_iterations", "decay_patience"):
            if getattr(self, name) < 1:
                raise ValidationError("%s must be at least 1" % name)
        if not 0.0 < self.initial_step:
            raise ValidationError("initial_step must be positive")
        if not 0.0 < self.step_decay < 1.0:
            raise ValidationError("step_decay must lie in (0, 1)")
        if self.seed < 0:
            raise ValidationError("seed must be a nonnegative integer")


@dataclasses.dataclass(frozen=True)
class InnerSearchResult:
    """Nondominated input laws found by the search, their regions, and the
    convex hull of the union (time-sharing closure) when requested."""

    candidates: tuple[tuple[InputFactorization, RateRegion], ...]
    hull: RateRegion | None


# --- per-distribution regions ---------------------------------------------------


def df_region_for_input(q: InfoQuantities) -> RateRegion:
    """Decode-and-forward inner region of one input law:
    R1 <= a, R2 <= b, R1 + R2 <= min(c, a + b) - d."""
    return region_from_halfspaces(
        [
            Halfspace(1.0, 0.0, q.a),
            Halfspace(0.0, 1.0, q.b),
            Halfspace(1.0, 1.0, min(q.c, q.a + q.b) - q.d),
        ]
    )


def hybrid_region_for_input(q: InfoQuantities) -> RateRegion:
    """Hybrid inner region of one input law: the decode-and-forward shape
    with the leakage debit partially refunded by the feedback key,
    R1 + R2 <= min(c, a + b) - d + min(d, e)."""
    return region_from_halfspaces(
        [
            Halfspace(1.0, 0.0, q.a),
            Halfspace(0.0, 1.0, q.b),
            Halfspace(1.0, 1.0, min(q.c, q.a + q.b) - q.d + min(q.d, q.e)),
        ]
    )


def sato_outer_for_joint(kernel: MacWiretapKernel, joint_input: np.ndarray) -> float:
    """H(Y|Z) in bits under an arbitrary joint input law P(x1, x2).

    The outer region for this input is {R1 + R2 <= returned value}
    intersected with the nonnegative quadrant.
    """
    joint = joint_from_input_law(kernel, joint_input)
    return conditional_entropy(joint, [2], [3])


# --- seeded searches --------------------------------------------------------------


def search_inner(
    kernel: MacWiretapKernel,
    bound_kind: str,
    config: SearchConfig = SearchConfig(),
    include_hull: bool = True,
) -> InnerSearchResult:
    """Search factorized input laws maximizing an inner bound.

    For every auxiliary cardinality up to the configured maximum, three
    objectives are maximized separately (the sum bound and the two corner
    rates), each with seeded random restarts around a uniform start.  The
    distinct local maxima are reduced to the nondominated set; the hull of
    their union is included unless ``include_hull`` is false.
    """
    if bound_kind not in _BOUND_KINDS:
        raise ValidationError(
            "bound_kind must be one of %s, got %r" % (list(_BOUND_KINDS), bound_kind)
        )
    kind_id = _BOUND_KINDS.index(bound_kind)
    sum_score = _df_sum if bound_kind == "df" else _hybrid_sum
    scores: list[Callable] = [
        sum_score,
        lambda a, b, c, d, e: min(a, sum_score(a, b, c, d, e)),
        lambda a, b, c, d, e: min(b, sum_score(a, b, c, d, e)),
    ]
    w = kernel.transition
    n1, n2 = kernel.x1_size, kernel.x2_size
    found: list[tuple[InputFactorization, RateRegion]] = []
    for u_size in range(1, config.u_cardinality_max + 1):
        for score_id, score in enumerate(scores):
            best_value = -math.inf
            best_rows = None
            for restart in range(config.restarts):
                rows = _initial_rows(
                    [u_size] + [n1] * u_size + [n2] * u_size,
                    restart,
                    np.random.default_rng(
                        (config.seed, _INNER_STREAM, kind_id, u_size, score_id, restart)
                    ),
                )
                objective = _factorized_objective(w, u_size, score)
                value = _ascend(rows, objective, config)
                if value > best_value:
                    best_value = value
                    best_rows = rows
            fact = InputFactorization(
                best_rows[0],
                np.stack(best_rows[1 : 1 + u_size]),
                np.stack(best_rows[1 + u_size :]),
            )
            region_of = df_region_for_input if bound_kind == "df" else hybrid_region_for_input
            found.append((fact, region_of(info_quantities(kernel, fact))))
    kept = _nondominated(found)
    hull = hull_of_regions([region for _, region in kept]) if include_hull else None
    return InnerSearchResult(candidates=tuple(kept), hull=hull)


def search_outer(
    kernel: MacWiretapKernel, config: SearchConfig = SearchConfig()
) -> tuple[JointDist, float]:
    """Maximize H(Y|Z) over joint input laws P(x1, x2).

    No concavity is assumed; the returned value is the best of the seeded
    restarts and is therefore a lower bound on the true outer-bound
    constant.  The first restart starts at the uniform joint, so the
    result never falls below the uniform-input value.
    """
    w = kernel.transition
    n1, n2 = kernel.x1_size, kernel.x2_size

    def objective(rows: list[np.ndarray]) -> float:
        p_yz = np.einsum("q,qyz->yz", rows[0], w.reshape(n1 * n2, kernel.y_size, kernel.z_size))
        return _entropy_bits(p_yz) - _entropy_bits(p_yz.sum(axis=0))

    best_value = -math.inf
    best_rows = None
    for restart in range(config.restarts):
        rows = _initial_rows(
            [n1 * n2], restart, np.random.default_rng((config.seed, _OUTER_STREAM, restart))
        )
        value = _ascend(rows, objective, config)
        if value > best_value:
            best_value = value
            best_rows = rows
    joint = JointDist(best_rows[0].reshape(n1, n2))
    return joint, sato_outer_for_joint(kernel, np.asarray(joint.mass))


def wyner_capacity(kernel: WiretapKernel, config: SearchConfig = SearchConfig()) -> float:
    """Search maximum of I(X;Y) - I(X;Z) over single-transmitter input
    laws, clamped at zero (a constant input always achieves zero)."""

    def score(i_xy: float, i_xz: float, h_y_given_xz: float) -> float:
        return i_xy - i_xz

    return max(0.0, _single_user_search(kernel, config, score))


def feedback_secrecy_capacity(
    kernel: WiretapKernel, config: SearchConfig = SearchConfig()
) -> float:
    """Search maximum of min{I(X;Y), I(X;Y) - I(X;Z) + H(Y|X,Z)}, the
    single-user secrecy rate with noiseless feedback, clamped at zero.

    The objective dominates the one of :func:`wyner_capacity` pointwise,
    so with equal seeds the returned value is never smaller.
    """

    def score(i_xy: float, i_xz: float, h_y_given_xz: float) -> float:
        return min(i_xy, i_xy - i_xz + h_y_given_xz)

    return max(0.0, _single_user_search(kernel, config, score))


# --- search internals ---------------------------------------------------------------


def _df_sum(a: float, b: float, c: float, d: float, e: float) -> float:
    return min(c, a + b) - d


def _hybrid_sum(a: float, b: float, c: float, d: float, e: float) -> float:
    return min(c, a + b) - d + min(d, e)


def _entropy_bits(mass: np.ndarray) -> float:
    positive = mass[mass > 0.0]
    if positive.size == 0:
        return 0.0
    return float(-(positive * np.log2(positive)).sum())


def _clamp(value: float) -> float:
    return value if value > 0.0 else 0.0


def _factorized_quantities(
    w: np.ndarray, u: np.ndarray, x1: np.ndarray, x2: np.ndarray
) -> tuple[float, float, float, float, float]:
    """(a, b, c, d, e) for P(u)P(x1|u)P(x2|u); fast path of the public
    info_quantities, kept numerically equivalent by the test suite."""
    joint = np.einsum("i,ia,ib,abyz->iabyz", u, x1, x2, w)
    p_uaby = joint.sum(axis=4)
    p_uab = p_uaby.sum(axis=3)
    p_uay = p_uaby.sum(axis=2)
    p_uby = p_uaby.sum(axis=1)
    p_ua = p_uab.sum(axis=2)
    p_ub = p_uab.sum(axis=1)
    p_abyz = joint.sum(axis=0)
    p_aby = p_uaby.sum(axis=0)
    p_ab = p_uab.sum(axis=0)
    p_abz = p_abyz.sum(axis=2)
    h_y_given_all = _entropy_bits(p_uaby) - _entropy_bits(p_uab)
    a = _clamp(_entropy_bits(p_uby) - _entropy_bits(p_ub) - h_y_given_all)
    b = _clamp(_entropy_bits(p_uay) - _entropy_bits(p_ua) - h_y_given_all)
    c = _clamp(
        _entropy_bits(p_aby.sum(axis=(0, 1)))
        - (_entropy_bits(p_aby) - _entropy_bits(p_ab))
    )
    d = _clamp(
        _entropy_bits(p_abz.sum(axis=(0, 1)))
        - (_entropy_bits(p_abz) - _entropy_bits(p_ab))
    )
    e = _clamp(_entropy_bits(p_abyz) - _entropy_bits(p_abz))
    return a, b, c, d, e


def _factorized_objective(
    w: np.ndarray, u_size: int, score: Callable
) -> Callable[[list[np.ndarray]], float]:
    def objective(rows: list[np.ndarray]) -> float:
        return score(
            *_factorized_quantities(
                w, rows[0], np.stack(rows[1 : 1 + u_size]), np.stack(rows[1 + u_size :])
            )
        )

    return objective


def _single_user_search(kernel: WiretapKernel, config: SearchConfig, score: Callable) -> float:
    w = kernel.transition

    def objective(rows: list[np.ndarray]) -> float:
        p_xyz = rows[0][:, None, None] * w
        p_xy = p_xyz.sum(axis=2)
        p_xz = p_xyz.sum(axis=1)
        h_x = _entropy_bits(rows[0])
        i_xy = _clamp(h_x + _entropy_bits(p_xy.sum(axis=0)) - _entropy_bits(p_xy))
        i_xz = _clamp(h_x + _entropy_bits(p_xz.sum(axis=0)) - _entropy_bits(p_xz))
        h_y_given_xz = _clamp(_entropy_bits(p_xyz) - _entropy_bits(p_xz))
        return score(i_xy, i_xz, h_y_given_xz)

    best = -math.inf
    for restart in range(config.restarts):
        rows = _initial_rows(
            [kernel.x_size],
            restart,
            np.random.default_rng((config.seed, _SINGLE_STREAM, restart)),
        )
        best = max(best, _ascend(rows, objective, config))
    return best


def _initial_rows(sizes: Sequence[int], restart: int, rng) -> list[np.ndarray]:
    if restart == 0:
        return [np.full(n, 1.0 / n) for n in sizes]
    return [rng.dirichlet(np.ones(n)) for n in sizes]


def _ascend(
    rows: list[np.ndarray], objective: Callable[[list[np.ndarray]], float], config: SearchConfig
) -> float:
    """Projected coordinate ascent over simplex blocks, in place.

    Each move bumps one coordinate of one block by the current step (both
    signs tried), clips at zero and renormalizes; improving moves are kept
    greedily.  Deterministic: no randomness beyond the initial rows.
    """
    best = objective(rows)
    step = config.initial_step
    stalled = 0
    for _ in range(config.refinement_iterations):
        improved = False
        for row in rows:
            for i in range(row.size):
                for sign in (1.0, -1.0):
                    trial = row.copy()
                    trial[i] = max(0.0, trial[i] + sign * step)
                    total = trial.sum()
                    if total <= 0.0:
                        continue
                    trial /= total
                    saved = row.copy()
                    row[:] = trial
                    value = objective(rows)
                    if value > best + 1e-15:
                        best = value
                        improved = True
                    else:
                        row[:] = saved
        if improved:
            stalled = 0
            continue
        stalled += 1
        if stalled >= 3 * config.decay_patience:
            break
        if stalled % config.decay_patience == 0:
            step *= config.step_decay
    return best


def _nondominated(
    found: list[tuple[InputFactorization, RateRegion]]
) -> list[tuple[InputFactorization, RateRegion]]:
    kept = []
    for i, (fact, region) in enumerate(found):
        dominated = False
        for j, (_, other) in enumerate(found):
            if i == j or not is_subset(region, other):
                continue
            if not is_subset(other, region) or j < i:
                dominated = True
                break
        if not dominated:
            kept.append((fact, region))
    return kept
