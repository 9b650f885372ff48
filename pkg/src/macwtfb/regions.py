"""Two-dimensional rate regions as halfspace intersections.

A region is the intersection of halfspaces coeff_r1*R1 + coeff_r2*R2 <= bound
with the nonnegative quadrant. Regions are canonicalized on construction:
vertices are enumerated from pairwise constraint intersections, ordered
counterclockwise starting at the lexicographically smallest vertex, and
halfspaces that are not tight anywhere are dropped. The empty intersection
canonicalizes to the degenerate region {(0, 0)}.

All comparisons use the absolute tolerance TOL = 1e-9.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .info import ValidationError

TOL = 1e-9


@dataclass(frozen=True)
class Halfspace:
    """The constraint coeff_r1 * R1 + coeff_r2 * R2 <= bound."""

    coeff_r1: float
    coeff_r2: float
    bound: float

    def __post_init__(self):
        for name in ("coeff_r1", "coeff_r2", "bound"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValidationError(f"halfspace {name} must be finite, got {v!r}")
            object.__setattr__(self, name, v)

    def value_at(self, point) -> float:
        return self.coeff_r1 * point[0] + self.coeff_r2 * point[1]


@dataclass(frozen=True)
class RateRegion:
    """Canonical bounded region in the nonnegative quadrant.

    vertices are counterclockwise, starting at the lexicographically smallest
    vertex; the quadrant constraints are implied and not stored. Construct
    through region_from_halfspaces, which establishes the invariants.
    """

    halfspaces: tuple[Halfspace, ...]
    vertices: tuple[tuple[float, float], ...]

    @property
    def is_degenerate(self) -> bool:
        return len(self.vertices) == 1 and self.vertices[0] == (0.0, 0.0)

    def max_sum(self) -> float:
        """Largest R1 + R2 over the region."""
        return max(v[0] + v[1] for v in self.vertices)

    def max_r1(self) -> float:
        return max(v[0] for v in self.vertices)

    def max_r2(self) -> float:
        return max(v[1] for v in self.vertices)


_DEGENERATE_HALFSPACES = (Halfspace(1.0, 0.0, 0.0), Halfspace(0.0, 1.0, 0.0))


def _degenerate() -> RateRegion:
    return RateRegion(_DEGENERATE_HALFSPACES, ((0.0, 0.0),))


def _coerce(halfspaces) -> list[Halfspace]:
    out = []
    for h in halfspaces:
        if isinstance(h, Halfspace):
            out.append(h)
        else:
            c1, c2, b = h
            out.append(Halfspace(c1, c2, b))
    return out


def _canonical_rows(halfspaces: list[Halfspace]):
    """Scale to max(|c1|,|c2|) = 1, drop trivial rows, merge duplicates.

    Returns (rows, infeasible) where rows is a list of (c1, c2, bound) and
    infeasible marks a 0 <= negative row.
    """
    merged: dict[tuple[float, float], float] = {}
    infeasible = False
    for h in halfspaces:
        scale = max(abs(h.coeff_r1), abs(h.coeff_r2))
        if scale <= TOL:
            if h.bound < -TOL:
                infeasible = True
            continue
        c1, c2, b = h.coeff_r1 / scale, h.coeff_r2 / scale, h.bound / scale
        key = (round(c1, 12), round(c2, 12))
        if key not in merged or b < merged[key]:
            merged[key] = b
    rows = [(c1, c2, b) for (c1, c2), b in merged.items()]
    return rows, infeasible


def _recession_direction(rows) -> tuple[float, float] | None:
    """A nonzero quadrant direction along which every constraint stays satisfied."""
    candidates = [(1.0, 0.0), (0.0, 1.0)]
    for c1, c2, _ in rows:
        for d in ((-c2, c1), (c2, -c1)):
            n = math.hypot(*d)
            if n <= TOL:
                continue
            u = (d[0] / n, d[1] / n)
            if u[0] >= -1e-12 and u[1] >= -1e-12:
                candidates.append((max(u[0], 0.0), max(u[1], 0.0)))
    for u in candidates:
        if all(c1 * u[0] + c2 * u[1] <= 1e-12 for c1, c2, _ in rows):
            return u
    return None


def _intersection_candidates(rows) -> list[tuple[float, float]]:
    lines = list(rows) + [(-1.0, 0.0, 0.0), (0.0, -1.0, 0.0)]
    pts = []
    for i in range(len(lines)):
        a1, a2, b1 = lines[i]
        for j in range(i + 1, len(lines)):
            c1, c2, b2 = lines[j]
            det = a1 * c2 - a2 * c1
            if abs(det) <= 1e-12:
                continue
            pts.append(((b1 * c2 - b2 * a2) / det, (a1 * b2 - b1 * c1) / det))
    return pts


def _feasible(point, rows, tol=TOL) -> bool:
    x, y = point
    if x < -tol or y < -tol:
        return False
    return all(c1 * x + c2 * y <= b + tol for c1, c2, b in rows)


def _dedupe(points: list[tuple[float, float]]) -> list[tuple[float, float]]:
    kept: list[tuple[float, float]] = []
    for p in points:
        if not any(abs(p[0] - q[0]) <= TOL and abs(p[1] - q[1]) <= TOL for q in kept):
            kept.append(p)
    return kept


def _cross(o, a, b) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _hull_ccw(points: list[tuple[float, float]]) -> list[tuple[float, float]]:
    """Monotone-chain convex hull, counterclockwise from the lexicographic min.

    Collinear intermediate points are removed.
    """
    pts = sorted(points)
    if len(pts) <= 2:
        return pts
    extent = max(max(abs(p[0]), abs(p[1])) for p in pts)
    eps = TOL * max(1.0, extent)

    def build(seq):
        chain = []
        for p in seq:
            while len(chain) >= 2 and _cross(chain[-2], chain[-1], p) <= eps:
                chain.pop()
            chain.append(p)
        return chain

    lower = build(pts)
    upper = build(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    return hull if hull else [pts[0]]


def region_from_halfspaces(halfspaces: Iterable) -> RateRegion:
    """Canonical region for the given halfspaces intersected with the quadrant.

    Accepts Halfspace objects or (coeff_r1, coeff_r2, bound) triples. Returns
    the degenerate region {(0,0)} when no quadrant point is feasible. Raises
    ValidationError if the intersection is unbounded.
    """
    rows, infeasible = _canonical_rows(_coerce(halfspaces))
    if infeasible:
        return _degenerate()

    candidates = [p for p in _intersection_candidates(rows) if _feasible(p, rows)]
    if not candidates:
        return _degenerate()

    direction = _recession_direction(rows)
    if direction is not None:
        raise ValidationError(
            f"halfspace intersection is unbounded along direction {direction}"
        )

    verts = _hull_ccw(_dedupe([(max(p[0], 0.0), max(p[1], 0.0)) for p in candidates]))

    kept = []
    for c1, c2, b in rows:
        slack = min(b - (c1 * vx + c2 * vy) for vx, vy in verts)
        if abs(slack) <= TOL * max(1.0, abs(b)):
            kept.append(Halfspace(c1, c2, b))
    kept.sort(key=lambda h: (-h.coeff_r1, h.coeff_r2, h.bound))
    return RateRegion(tuple(kept), tuple((float(x), float(y)) for x, y in verts))


def contains(region: RateRegion, point, tol: float = TOL) -> bool:
    """Whether the point lies in the region (within absolute tolerance)."""
    x, y = float(point[0]), float(point[1])
    if x < -tol or y < -tol:
        return False
    if region.is_degenerate:
        return abs(x) <= tol and abs(y) <= tol
    return all(h.value_at((x, y)) <= h.bound + tol for h in region.halfspaces)


def is_subset(inner: RateRegion, outer: RateRegion, tol: float = TOL) -> bool:
    """Whether inner is contained in outer; exact for convex polygons."""
    return all(contains(outer, v, tol) for v in inner.vertices)


def _pareto_path(region: RateRegion) -> list[tuple[float, float]]:
    """Upper-right boundary chain, from the highest-R2 end to the highest-R1 end."""
    verts = list(region.vertices)
    n = len(verts)
    start = max(range(n), key=lambda i: (verts[i][1], -verts[i][0]))
    end = max(range(n), key=lambda i: (verts[i][0], -verts[i][1]))
    path = [verts[start]]
    i = start
    while i != end:
        i = (i - 1) % n  # clockwise in the counterclockwise list
        path.append(verts[i])
    return path


def boundary_samples(region: RateRegion, count: int) -> list[tuple[float, float]]:
    """Evenly spaced points along the upper-right boundary, by arc length.

    Ordered by increasing R1; both endpoints of the chain are included.
    """
    if count < 1:
        raise ValidationError(f"count must be at least 1, got {count}")
    path = _pareto_path(region)
    if count == 1 or len(path) == 1:
        return [path[0]] * count

    seg_len = [
        math.hypot(path[i + 1][0] - path[i][0], path[i + 1][1] - path[i][1])
        for i in range(len(path) - 1)
    ]
    total = sum(seg_len)
    if total <= 0.0:
        return [path[0]] * count

    samples = []
    cum = [0.0]
    for s in seg_len:
        cum.append(cum[-1] + s)
    for k in range(count):
        if k == count - 1:
            samples.append(path[-1])
            break
        target = total * k / (count - 1)
        i = 0
        while i < len(seg_len) - 1 and cum[i + 1] < target:
            i += 1
        t = (target - cum[i]) / seg_len[i] if seg_len[i] > 0 else 0.0
        x = path[i][0] + t * (path[i + 1][0] - path[i][0])
        y = path[i][1] + t * (path[i + 1][1] - path[i][1])
        samples.append((x, y))
    return samples


def hull_of_regions(regions: Sequence[RateRegion]) -> RateRegion:
    """Convex hull of a union of regions (the time-sharing region).

    Assumes each input region is closed downward (every constraint has
    nonnegative coefficients), which holds for all bound regions produced
    by this package.
    """
    if not regions:
        raise ValidationError("hull_of_regions needs at least one region")
    points = [v for r in regions for v in r.vertices]
    if max(max(abs(x), abs(y)) for x, y in points) <= TOL:
        return _degenerate()
    hull = _hull_ccw(_dedupe(points))
    halfspaces = []
    n = len(hull)
    for i in range(n):
        px, py = hull[i]
        qx, qy = hull[(i + 1) % n]
        if n == 2 and i == 1:
            break  # a segment has a single generating edge
        nx, ny = qy - py, px - qx  # outward normal of a counterclockwise edge
        if max(nx, ny) <= 1e-12:
            continue  # quadrant-facing edge, implied by nonnegativity
        scale = max(abs(nx), abs(ny))
        halfspaces.append(Halfspace(nx / scale, ny / scale, (nx * px + ny * py) / scale))
    # Axis caps: redundant for a two-dimensional hull, but they close the
    # region when the hull collapses to a segment on either axis (whose only
    # counterclockwise edge bounds just one coordinate).
    halfspaces.append(Halfspace(1.0, 0.0, max(x for x, _ in hull)))
    halfspaces.append(Halfspace(0.0, 1.0, max(y for _, y in hull)))
    return region_from_halfspaces(halfspaces)


def region_to_dict(region: RateRegion) -> dict:
    """JSON-ready structure with halfspaces and vertices."""
    return {
        "halfspaces": [
            {"coeff_r1": h.coeff_r1, "coeff_r2": h.coeff_r2, "bound": h.bound}
            for h in region.halfspaces
        ],
        "vertices": [[x, y] for x, y in region.vertices],
    }
