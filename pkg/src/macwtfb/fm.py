"""Exact Fourier-Motzkin elimination and the rate-splitting consistency check.

The hybrid inner bound is stated as a closed-form region in the pair of
message rates, but its proof works with six auxiliary rates: a common part,
a key-protected part and a residual randomization part per transmitter.
This module re-derives the closed form independently: it encodes the
auxiliary constraint system verbatim, projects it onto the message-rate
plane by Fourier-Motzkin elimination in exact rational arithmetic, and
compares the projected polygon vertex by vertex with the closed form.

Every coefficient is an integer and every bound a ``fractions.Fraction``;
no floating-point comparison occurs anywhere in this module.  Float inputs
are rationalized once at the boundary with denominators capped at 2**32,
an error far below every tolerance used elsewhere in the package.

Rows are kept in a canonical normal form: the coefficient vector of each
inequality ``coeffs . x <= bound`` is scaled to primitive integers (content
divided out), identical coefficient vectors are merged keeping the tightest
bound, satisfied constant rows are dropped, and a contradictory constant
row collapses the whole system to the single marker row ``0 <= -1``.
"""

from __future__ import annotations

import dataclasses
import math
from fractions import Fraction
from typing import Iterable, Sequence

from .info import ValidationError
from .regions import Halfspace, RateRegion, region_from_halfspaces

__all__ = [
    "LinearSystem",
    "ProjectionCheck",
    "as_rational",
    "eliminate",
    "exact_vertices",
    "hybrid_closed_form_system",
    "project_to",
    "rate_splitting_system",
    "verify_hybrid_region_projection",
]

#: Denominator cap used when rationalizing floating-point inputs.
RATIONALIZE_DENOMINATOR = 1 << 32

# A normalized inequality: primitive integer coefficients and a rational
# upper bound, meaning coeffs . x <= bound.
Row = tuple[tuple[int, ...], Fraction]


def as_rational(value) -> Fraction:
    """Convert an int, Fraction or float to an exact rational.

    Floats are rounded to the nearest fraction with denominator at most
    2**32, so downstream arithmetic is exact and reproducible.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValidationError("cannot rationalize non-finite value %r" % value)
        return Fraction(value).limit_denominator(RATIONALIZE_DENOMINATOR)
    raise ValidationError(
        "expected int, float or Fraction, got %s" % type(value).__name__
    )


class LinearSystem:
    """A finite list of linear inequalities over named variables.

    Construct with inequalities given as ``(coefficients, relation, bound)``
    triples where ``relation`` is ``"<="`` or ``">="``; everything is stored
    internally as normalized ``<=`` rows.  The row list is kept sorted, so
    two systems with the same feasible description compare equal.
    """

    __slots__ = ("variable_names", "rows")

    def __init__(
        self,
        variable_names: Sequence[str],
        inequalities: Iterable[tuple[Sequence, str, object]],
    ) -> None:
        names = tuple(variable_names)
        if not names:
            raise ValidationError("a system needs at least one variable")
        if len(set(names)) != len(names):
            raise ValidationError("variable names must be distinct")
        rows = []
        for coeffs, relation, bound in inequalities:
            vec = [as_rational(c) for c in coeffs]
            if len(vec) != len(names):
                raise ValidationError(
                    "coefficient vector has length %d, expected %d"
                    % (len(vec), len(names))
                )
            b = as_rational(bound)
            if relation == ">=":
                vec = [-c for c in vec]
                b = -b
            elif relation != "<=":
                raise ValidationError("relation must be '<=' or '>=', got %r" % relation)
            rows.append(_canonical_row(vec, b))
        object.__setattr__(self, "variable_names", names)
        object.__setattr__(self, "rows", _normalize(len(names), rows))

    def __setattr__(self, name, value):  # immutable after construction
        raise AttributeError("LinearSystem is immutable")

    @classmethod
    def _from_rows(cls, names: tuple[str, ...], rows: tuple[Row, ...]) -> "LinearSystem":
        system = object.__new__(cls)
        object.__setattr__(system, "variable_names", names)
        object.__setattr__(system, "rows", rows)
        return system

    @property
    def is_infeasible(self) -> bool:
        """True when normalization surfaced a contradictory constant row."""
        return any(not any(c) and b < 0 for c, b in self.rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearSystem):
            return NotImplemented
        return self.variable_names == other.variable_names and self.rows == other.rows

    def __hash__(self) -> int:
        return hash((self.variable_names, self.rows))

    def __repr__(self) -> str:
        return "LinearSystem(%r, %d rows)" % (list(self.variable_names), len(self.rows))


def eliminate(system: LinearSystem, drop_variable: str) -> LinearSystem:
    """One Fourier-Motzkin step: project out ``drop_variable``.

    Rows not involving the variable pass through; every upper bound on it
    is combined with every lower bound.  The projection is exact: the
    result's feasible set is precisely the shadow of the input's.
    """
    try:
        idx = system.variable_names.index(drop_variable)
    except ValueError:
        raise ValidationError(
            "variable %r not in system %r" % (drop_variable, list(system.variable_names))
        ) from None
    keep = [k for k in range(len(system.variable_names)) if k != idx]
    names = tuple(system.variable_names[k] for k in keep)
    upper = []
    lower = []
    rows = []
    for coeffs, bound in system.rows:
        weight = coeffs[idx]
        reduced = tuple(coeffs[k] for k in keep)
        if weight > 0:
            upper.append((weight, reduced, bound))
        elif weight < 0:
            lower.append((-weight, reduced, bound))
        else:
            rows.append((reduced, bound))
    for wu, ru, bu in upper:
        for wl, rl, bl in lower:
            combo = tuple(wl * u + wu * l for u, l in zip(ru, rl))
            rows.append(_canonical_int_row(combo, wl * bu + wu * bl))
    return LinearSystem._from_rows(names, _normalize(len(names), rows))


def project_to(system: LinearSystem, keep_variables: Iterable[str]) -> LinearSystem:
    """Eliminate every variable outside ``keep_variables``.

    At each step the variable with the fewest upper-times-lower bound
    pairs is eliminated first, which keeps intermediate systems small on
    the block-structured inputs this package produces.
    """
    keep = set(keep_variables)
    if not keep:
        raise ValidationError("must keep at least one variable")
    missing = keep.difference(system.variable_names)
    if missing:
        raise ValidationError("unknown variables in keep set: %s" % sorted(missing))
    current = system
    while True:
        drops = [v for v in current.variable_names if v not in keep]
        if not drops:
            return current

        def pair_count(name: str) -> tuple[int, int]:
            at = current.variable_names.index(name)
            pos = sum(1 for coeffs, _ in current.rows if coeffs[at] > 0)
            neg = sum(1 for coeffs, _ in current.rows if coeffs[at] < 0)
            return pos * neg, at

        current = eliminate(current, min(drops, key=pair_count))


RATE_SPLIT_VARIABLES = ("R1", "R2", "R10", "R11", "R1s", "R20", "R21", "R2s")


def rate_splitting_system(a, b, c, d, e) -> LinearSystem:
    """The auxiliary-rate constraint system behind the hybrid inner bound.

    Variables: message rates R1, R2 and the six split rates R10, R11, R1s,
    R20, R21, R2s (common, key-protected and randomization parts).  The
    constants are the channel information quantities: a and b bound each
    transmitter's decodable total, c the joint total, d the leakage total
    of the key-protected and randomization parts, and the randomization
    parts must cover the leakage left uncovered by the feedback key, whose
    rate is at most e.
    """
    consts = [as_rational(v) for v in (a, b, c, d, e)]
    if any(v < 0 for v in consts):
        raise ValidationError("information quantities must be nonnegative")
    a, b, c, d, e = consts

    def vec(**weights) -> list[int]:
        return [weights.get(name, 0) for name in RATE_SPLIT_VARIABLES]

    inequalities = [
        (vec(R10=1, R11=1, R1s=1), "<=", a),
        (vec(R20=1, R21=1, R2s=1), "<=", b),
        (vec(R10=1, R11=1, R1s=1, R20=1, R21=1, R2s=1), "<=", c),
        (vec(R11=1, R21=1, R1s=1, R2s=1), "<=", d),
        (vec(R1s=1, R2s=1), ">=", d - e),
        (vec(R1=1, R10=-1, R11=-1), "<=", 0),
        (vec(R1=1, R10=-1, R11=-1), ">=", 0),
        (vec(R2=1, R20=-1, R21=-1), "<=", 0),
        (vec(R2=1, R20=-1, R21=-1), ">=", 0),
    ]
    for split in ("R10", "R11", "R1s", "R20", "R21", "R2s"):
        inequalities.append((vec(**{split: 1}), ">=", 0))
    return LinearSystem(RATE_SPLIT_VARIABLES, inequalities)


def hybrid_closed_form_system(a, b, c, d, e) -> LinearSystem:
    """The closed-form hybrid region as a two-variable system:
    R1 <= a, R2 <= b, R1 + R2 <= min(c, a + b) - d + min(d, e), both
    rates nonnegative."""
    consts = [as_rational(v) for v in (a, b, c, d, e)]
    if any(v < 0 for v in consts):
        raise ValidationError("information quantities must be nonnegative")
    a, b, c, d, e = consts
    sum_bound = min(c, a + b) - d + min(d, e)
    return LinearSystem(
        ("R1", "R2"),
        [
            ((1, 0), "<=", a),
            ((0, 1), "<=", b),
            ((1, 1), "<=", sum_bound),
            ((1, 0), ">=", 0),
            ((0, 1), ">=", 0),
        ],
    )


def exact_vertices(system: LinearSystem) -> tuple[tuple[Fraction, Fraction], ...]:
    """Vertices of a bounded two-variable system, in exact rationals.

    Candidate points are all pairwise boundary-line intersections; the
    feasible ones are reduced to extreme points by an exact convex hull.
    The result is ordered counterclockwise starting from the
    lexicographically smallest vertex, so equal regions give equal tuples.
    An infeasible system yields the empty tuple.  The caller must ensure
    boundedness (every system built in this module is bounded).
    """
    if len(system.variable_names) != 2:
        raise ValidationError(
            "vertex enumeration needs exactly two variables, got %d"
            % len(system.variable_names)
        )
    if system.is_infeasible:
        return ()
    rows = system.rows
    points = set()
    for i in range(len(rows)):
        (a1, a2), b1 = rows[i]
        for j in range(i + 1, len(rows)):
            (c1, c2), b2 = rows[j]
            det = a1 * c2 - a2 * c1
            if det == 0:
                continue
            x = Fraction(b1 * c2 - b2 * a2, det)
            y = Fraction(a1 * b2 - c1 * b1, det)
            points.add((x, y))
    feasible = [
        p for p in points
        if all(c[0] * p[0] + c[1] * p[1] <= b for c, b in rows)
    ]
    if not feasible:
        return ()
    return _hull(feasible)


@dataclasses.dataclass(frozen=True)
class ProjectionCheck:
    """Outcome of comparing the projected rate-splitting system with the
    closed-form hybrid region.

    ``match`` is an exact rational verdict on the two vertex tuples.  The
    two regions are float renderings for display; an empty (infeasible)
    exact region renders as the degenerate origin region.
    """

    match: bool
    projected_vertices: tuple[tuple[Fraction, Fraction], ...]
    closed_form_vertices: tuple[tuple[Fraction, Fraction], ...]
    projected_region: RateRegion
    closed_form_region: RateRegion


def verify_hybrid_region_projection(a, b, c, d, e) -> ProjectionCheck:
    """Project the rate-splitting system to the message-rate plane and
    compare with the closed form, exactly.

    Any float input is rationalized first, so the comparison is a strict
    polygon equality, not a tolerance check.
    """
    consts = tuple(as_rational(v) for v in (a, b, c, d, e))
    projected = project_to(rate_splitting_system(*consts), ("R1", "R2"))
    closed = hybrid_closed_form_system(*consts)
    projected_vertices = exact_vertices(projected)
    closed_vertices = exact_vertices(closed)
    return ProjectionCheck(
        match=projected_vertices == closed_vertices,
        projected_vertices=projected_vertices,
        closed_form_vertices=closed_vertices,
        projected_region=_to_rate_region(projected),
        closed_form_region=_to_rate_region(closed),
    )


# --- internals ----------------------------------------------------------------


def _canonical_row(coeffs: Sequence[Fraction], bound: Fraction) -> Row:
    scale = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
    ints = tuple(int(c * scale) for c in coeffs)
    return _canonical_int_row(ints, bound * scale)


def _canonical_int_row(coeffs: tuple[int, ...], bound: Fraction) -> Row:
    content = math.gcd(*coeffs) if coeffs else 0
    if content > 1:
        coeffs = tuple(c // content for c in coeffs)
        bound = Fraction(bound) / content
    return coeffs, Fraction(bound)


def _normalize(num_variables: int, rows: Iterable[Row]) -> tuple[Row, ...]:
    merged: dict[tuple[int, ...], Fraction] = {}
    for coeffs, bound in rows:
        if not any(coeffs):
            if bound < 0:
                return (((0,) * num_variables, Fraction(-1)),)
            continue
        held = merged.get(coeffs)
        if held is None or bound < held:
            merged[coeffs] = bound
    return tuple(sorted(merged.items()))


def _hull(points: list[tuple[Fraction, Fraction]]) -> tuple[tuple[Fraction, Fraction], ...]:
    pts = sorted(set(points))
    if len(pts) == 1:
        return (pts[0],)

    def cross(o, p, q):
        return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])

    lower = []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return tuple(lower[:-1] + upper[:-1])


def _to_rate_region(system: LinearSystem) -> RateRegion:
    return region_from_halfspaces(
        [
            Halfspace(float(coeffs[0]), float(coeffs[1]), float(bound))
            for coeffs, bound in system.rows
        ]
    )
