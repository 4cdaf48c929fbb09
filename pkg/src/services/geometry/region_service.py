"""
Region Service - convex polygon algebra in the non-negative (R1, R2) quadrant

Regions are stored as counter-clockwise vertex tuples starting at the
lexicographically smallest vertex. A region with no vertices is empty; a single
vertex or a segment is a valid (degenerate) region.
"""
import math
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Sequence, Tuple, Union

import numpy as np

from src.models.types import DEFAULTS

Point = Tuple[float, float]


@dataclass(frozen=True)
class HalfPlane:
    """a*R1 + b*R2 <= c"""
    a: float
    b: float
    c: float

    def __post_init__(self):
        if self.a == 0.0 and self.b == 0.0:
            raise ValueError("half-plane needs a non-zero normal (a, b)")

    def violation(self, point: Point) -> float:
        """Signed distance of `point` outside the boundary line (<= 0 means inside)"""
        norm = math.hypot(self.a, self.b)
        return (self.a * point[0] + self.b * point[1] - self.c) / norm


@dataclass(frozen=True)
class RateRegion:
    vertices: Tuple[Point, ...] = ()
    provenance: Dict[str, object] = field(default_factory=dict, compare=False, hash=False)

    @property
    def empty(self) -> bool:
        return len(self.vertices) == 0

    def as_array(self) -> np.ndarray:
        return np.asarray(self.vertices, dtype=float).reshape(-1, 2)

    def with_provenance(self, **notes) -> "RateRegion":
        merged = dict(self.provenance)
        merged.update(notes)
        return RateRegion(self.vertices, merged)


def empty_region(**notes) -> RateRegion:
    return RateRegion((), dict(notes))


def _cross(o: Point, p: Point, q: Point) -> float:
    return (p[0] - o[0]) * (q[1] - o[1]) - (p[1] - o[1]) * (q[0] - o[0])


def _turn(o: Point, p: Point, q: Point) -> float:
    """Sine of the turn o -> p -> q; positive for a left turn, independent of the rate scale"""
    lengths = math.hypot(p[0] - o[0], p[1] - o[1]) * math.hypot(q[0] - p[0], q[1] - p[1])
    if lengths == 0.0:
        return 0.0
    return _cross(o, p, q) / lengths


def _canonical(points: Iterable[Point], tol: float = DEFAULTS.GEOM_TOL) -> Tuple[Point, ...]:
    """Monotone-chain hull with near-duplicates and near-collinear vertices dropped"""
    ordered = sorted((float(x), float(y)) for x, y in points)
    unique: List[Point] = []
    for p in ordered:
        if unique and abs(p[0] - unique[-1][0]) <= tol and abs(p[1] - unique[-1][1]) <= tol:
            continue
        unique.append(p)
    if len(unique) <= 2:
        return tuple(unique)

    lower: List[Point] = []
    for p in unique:
        while len(lower) >= 2 and _turn(lower[-2], lower[-1], p) <= tol:
            lower.pop()
        lower.append(p)
    upper: List[Point] = []
    for p in reversed(unique):
        while len(upper) >= 2 and _turn(upper[-2], upper[-1], p) <= tol:
            upper.pop()
        upper.append(p)
    ring = lower[:-1] + upper[:-1]
    # sorting alone misses near-duplicates separated by an intermediate x
    closed: List[Point] = []
    for p in ring:
        if closed and abs(p[0] - closed[-1][0]) <= tol and abs(p[1] - closed[-1][1]) <= tol:
            continue
        closed.append(p)
    while len(closed) > 1 and abs(closed[0][0] - closed[-1][0]) <= tol and abs(closed[0][1] - closed[-1][1]) <= tol:
        closed.pop()
    return tuple(closed)


def _clip(polygon: List[Point], plane: HalfPlane, tol: float) -> List[Point]:
    """One Sutherland-Hodgman pass against a single half-plane"""
    if not polygon:
        return []
    norm = math.hypot(plane.a, plane.b)
    a, b, c = plane.a / norm, plane.b / norm, plane.c / norm

    def dist(p: Point) -> float:
        return a * p[0] + b * p[1] - c

    result: List[Point] = []
    n = len(polygon)
    for i in range(n):
        cur, nxt = polygon[i], polygon[(i + 1) % n]
        d_cur, d_nxt = dist(cur), dist(nxt)
        cur_in, nxt_in = d_cur <= tol, d_nxt <= tol
        if cur_in:
            result.append(cur)
        if cur_in != nxt_in and n > 1:
            t = d_cur / (d_cur - d_nxt)
            t = min(max(t, 0.0), 1.0)
            result.append((cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1])))
    return result


def intersect_halfplanes(
    planes: Sequence[HalfPlane],
    clip: float = DEFAULTS.CLIP_BITS,
    tol: float = DEFAULTS.GEOM_TOL,
) -> RateRegion:
    """Feasible polygon of `planes` together with R1 >= 0, R2 >= 0, clipped to [0, clip]^2"""
    polygon: List[Point] = [(0.0, 0.0), (clip, 0.0), (clip, clip), (0.0, clip)]
    for plane in planes:
        if not (math.isfinite(plane.a) and math.isfinite(plane.b)) or math.isnan(plane.c):
            return empty_region(reason="non-finite half-plane")
        if plane.c == math.inf:
            continue
        polygon = _clip(polygon, plane, tol)
        if not polygon:
            return empty_region(reason="infeasible half-planes")
    clamped = [(max(x, 0.0), max(y, 0.0)) for x, y in polygon]
    return RateRegion(_canonical(clamped, tol))


def hull(items: Iterable[Union[RateRegion, Point]], tol: float = DEFAULTS.GEOM_TOL) -> RateRegion:
    """Convex hull (time sharing) of regions and loose rate points"""
    points: List[Point] = []
    parts = 0
    for item in items:
        if isinstance(item, RateRegion):
            points.extend(item.vertices)
            parts += 1
        else:
            points.append((float(item[0]), float(item[1])))
    if not points:
        return empty_region(reason="hull of empty inputs")
    clamped = [(max(x, 0.0), max(y, 0.0)) for x, y in points]
    return RateRegion(_canonical(clamped, tol), {"hull_parts": parts})


def _distance_to_segment(p: Point, a: Point, b: Point) -> float:
    dx, dy = b[0] - a[0], b[1] - a[1]
    length2 = dx * dx + dy * dy
    if length2 == 0.0:
        return math.hypot(p[0] - a[0], p[1] - a[1])
    t = min(max(((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / length2, 0.0), 1.0)
    return math.hypot(p[0] - a[0] - t * dx, p[1] - a[1] - t * dy)


def point_in_region(region: RateRegion, point: Point, tol: float = DEFAULTS.INCLUSION_TOL) -> bool:
    verts = region.vertices
    if not verts:
        return False
    if len(verts) == 1:
        return math.hypot(point[0] - verts[0][0], point[1] - verts[0][1]) <= tol
    if len(verts) == 2:
        return _distance_to_segment(point, verts[0], verts[1]) <= tol
    n = len(verts)
    for i in range(n):
        p, q = verts[i], verts[(i + 1) % n]
        edge = math.hypot(q[0] - p[0], q[1] - p[1])
        # CCW order: interior lies to the left of every edge
        if _cross(p, q, point) / edge < -tol:
            return False
    return True


def contains(outer: RateRegion, inner: RateRegion, tol: float = DEFAULTS.INCLUSION_TOL) -> bool:
    if inner.empty:
        return True
    if outer.empty:
        return False
    return all(point_in_region(outer, v, tol) for v in inner.vertices)


def regions_equal(a: RateRegion, b: RateRegion, tol: float = DEFAULTS.GEOM_TOL) -> bool:
    return contains(a, b, tol) and contains(b, a, tol)


def area(region: RateRegion) -> float:
    verts = region.vertices
    if len(verts) < 3:
        return 0.0
    xs = np.array([v[0] for v in verts])
    ys = np.array([v[1] for v in verts])
    return float(0.5 * abs(np.dot(xs, np.roll(ys, -1)) - np.dot(ys, np.roll(xs, -1))))


def transpose(region: RateRegion) -> RateRegion:
    """Mirror across R1 = R2 (exchange of user roles)"""
    if region.empty:
        return region
    return RateRegion(_canonical((y, x) for x, y in region.vertices), dict(region.provenance))


def scale(region: RateRegion, factor: float) -> RateRegion:
    if region.empty:
        return region
    return RateRegion(_canonical((x * factor, y * factor) for x, y in region.vertices), dict(region.provenance))


def pentagon(r1_max: float, r2_max: float, sum_max: float, **notes) -> RateRegion:
    """Region {R1 <= r1_max, R2 <= r2_max, R1 + R2 <= sum_max}"""
    bounds = {"R1": r1_max, "R2": r2_max, "R1+R2": sum_max}
    collapsed = [name for name, value in bounds.items() if math.isnan(value) or value < 0.0]
    if collapsed:
        return empty_region(collapsed=collapsed, **notes)
    region = intersect_halfplanes([
        HalfPlane(1.0, 0.0, r1_max),
        HalfPlane(0.0, 1.0, r2_max),
        HalfPlane(1.0, 1.0, sum_max),
    ])
    return region.with_provenance(**notes)


def pareto_boundary(region: RateRegion) -> List[Point]:
    """Vertices on the dominant (upper-right) part of the boundary, ordered by increasing R1"""
    verts = list(region.vertices)
    if not verts:
        return []
    boundary = [v for v in verts if not any(
        (w[0] >= v[0] and w[1] >= v[1]) and (w[0] > v[0] + DEFAULTS.GEOM_TOL or w[1] > v[1] + DEFAULTS.GEOM_TOL)
        for w in verts
    )]
    boundary.sort(key=lambda v: (v[0], -v[1]))
    # close the staircase to the axes
    left = (0.0, boundary[0][1])
    right = (boundary[-1][0], 0.0)
    chain = [left] + boundary + [right]
    return _dedupe_chain(chain)


def _dedupe_chain(chain: List[Point]) -> List[Point]:
    out: List[Point] = []
    for p in chain:
        if out and math.hypot(p[0] - out[-1][0], p[1] - out[-1][1]) <= DEFAULTS.GEOM_TOL:
            continue
        out.append(p)
    return out


def sample_boundary(region: RateRegion, n: int = DEFAULTS.BOUNDARY_SAMPLES) -> List[Point]:
    """`n` points equally spaced by arc length along the Pareto boundary"""
    chain = pareto_boundary(region)
    if len(chain) <= 1 or n <= 1:
        return chain[:1] * max(n, 0) if chain else []
    pts = np.asarray(chain)
    seg = np.hypot(np.diff(pts[:, 0]), np.diff(pts[:, 1]))
    cum = np.concatenate([[0.0], np.cumsum(seg)])
    targets = np.linspace(0.0, cum[-1], n)
    xs = np.interp(targets, cum, pts[:, 0])
    ys = np.interp(targets, cum, pts[:, 1])
    return [(float(x), float(y)) for x, y in zip(xs, ys)]
