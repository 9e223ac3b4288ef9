"""Planar rate regions.

``RateRegion2D`` is a closed convex polygon in the nonnegative quadrant,
kept both as halfplanes and as counterclockwise vertices. Unions of such
regions are generally not convex and are held as shapely geometries.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np
import shapely
from shapely.geometry import LineString, Point, Polygon
from shapely.geometry.base import BaseGeometry
from shapely.geometry.polygon import orient
from shapely.ops import unary_union

from secrecy_toolkit.utils.exceptions import UnboundedRegionError
from secrecy_toolkit.utils.settings import settings

Vertex = tuple[float, float]

# Degenerate pieces (points, segments) are thickened by this much before union
_SLIVER = 1e-12
_OUTLINE_SIMPLIFY = 1e-10
_OUTLINE_MERGE = 1e-9


@dataclass(frozen=True)
class HalfPlane:
    """``a*R1 + b*R2 <= c``."""

    a: float
    b: float
    c: float

    def slack(self, point: Sequence[float]) -> float:
        return self.c - (self.a * point[0] + self.b * point[1])

    def contains(self, point: Sequence[float], tol: float = 0.0) -> bool:
        return self.slack(point) >= -tol * (1.0 + abs(self.c))

    def format(self, digits: int = 12) -> str:
        return f"{self.a:.{digits}g}*R1 + {self.b:.{digits}g}*R2 <= {self.c:.{digits}g}"


NONNEGATIVITY = (HalfPlane(-1.0, 0.0, 0.0), HalfPlane(0.0, -1.0, 0.0))


def order_counterclockwise(points: Sequence[Vertex]) -> list[Vertex]:
    """Sort points by angle around their centroid."""
    if len(points) <= 1:
        return list(points)
    cx = sum(p[0] for p in points) / len(points)
    cy = sum(p[1] for p in points) / len(points)
    ordered = sorted(points, key=lambda p: math.atan2(p[1] - cy, p[0] - cx))
    # start at the point nearest the origin so listings are stable
    start = min(range(len(ordered)), key=lambda i: (ordered[i][0] + ordered[i][1], ordered[i][0]))
    return ordered[start:] + ordered[:start]


def _dedupe(points: Iterable[Vertex], tol: float) -> list[Vertex]:
    kept: list[Vertex] = []
    for p in points:
        if all(abs(p[0] - q[0]) > tol or abs(p[1] - q[1]) > tol for q in kept):
            kept.append(p)
    return kept


def recession_direction(normals: Sequence[tuple], zero=0.0) -> Optional[tuple]:
    """
    A nonzero direction ``d`` with ``a.d <= 0`` for every normal, or None.

    Only the axes and the two perpendiculars of each normal can span an
    extreme ray of a planar cone, so testing those candidates is exact when
    the normals are exact. Works with floats or ``Fraction`` entries.
    """
    one = zero + 1
    candidates = [(one, zero), (-one, zero), (zero, one), (zero, -one)]
    for a, b in normals:
        if a != 0 or b != 0:
            candidates.extend([(-b, a), (b, -a)])
    for d in candidates:
        if all(a * d[0] + b * d[1] <= zero for a, b in normals):
            return d
    return None


@dataclass(frozen=True, eq=False)
class RateRegion2D:
    """
    Closed convex region of rate pairs (R1, R2).

    ``exact_vertices`` is filled when the region came out of an exact
    rational projection.
    """

    halfplanes: tuple[HalfPlane, ...]
    vertices: tuple[Vertex, ...]
    exact_vertices: Optional[tuple[tuple[Fraction, Fraction], ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "halfplanes", tuple(self.halfplanes))
        object.__setattr__(
            self, "vertices", tuple((float(x), float(y)) for x, y in self.vertices)
        )

    @classmethod
    def origin(cls) -> "RateRegion2D":
        """The single-point region {(0, 0)}."""
        return cls((HalfPlane(1.0, 0.0, 0.0), HalfPlane(0.0, 1.0, 0.0)) + NONNEGATIVITY, ((0.0, 0.0),))

    @classmethod
    def from_halfplanes(
        cls, halfplanes: Iterable[HalfPlane], tol: Optional[float] = None
    ) -> "RateRegion2D":
        """
        Intersect ``halfplanes`` with the nonnegative quadrant.

        An empty intersection yields the origin region. An unbounded one
        raises ``UnboundedRegionError``.
        """
        tol = settings.vertex_tolerance if tol is None else tol
        planes = tuple(halfplanes) + NONNEGATIVITY
        points: list[Vertex] = []
        for i, h in enumerate(planes):
            for g in planes[i + 1:]:
                det = h.a * g.b - h.b * g.a
                if abs(det) <= 1e-15:
                    continue
                x = (h.c * g.b - h.b * g.c) / det
                y = (h.a * g.c - h.c * g.a) / det
                if all(p.contains((x, y), tol) for p in planes):
                    points.append((0.0 if abs(x) <= tol else x, 0.0 if abs(y) <= tol else y))
        points = _dedupe(points, tol)
        if not points:
            return cls.origin()
        direction = recession_direction([(h.a, h.b) for h in planes])
        if direction is not None:
            raise UnboundedRegionError(direction)
        return cls(planes, tuple(order_counterclockwise(points)))

    @property
    def is_origin(self) -> bool:
        return all(abs(x) <= _OUTLINE_MERGE and abs(y) <= _OUTLINE_MERGE for x, y in self.vertices)

    @property
    def geometry(self) -> BaseGeometry:
        """Point, segment or polygon, whichever the vertex count gives."""
        if len(self.vertices) == 1:
            return Point(self.vertices[0])
        if len(self.vertices) == 2:
            return LineString(self.vertices)
        return Polygon(self.vertices)

    @property
    def area(self) -> float:
        return float(self.geometry.area)

    def contains(self, point: Sequence[float], tol: Optional[float] = None) -> bool:
        tol = settings.vertex_tolerance if tol is None else tol
        return all(h.contains(point, tol) for h in self.halfplanes)

    def max_r1(self) -> float:
        return max(x for x, _ in self.vertices)

    def max_r2(self) -> float:
        return max(y for _, y in self.vertices)


@dataclass(frozen=True, eq=False)
class RegionUnion:
    """Union of rate regions, not necessarily convex."""

    geometry: BaseGeometry
    pieces: int

    def contains(self, point: Sequence[float], tol: float = 1e-9) -> bool:
        return _covers(self.geometry, Point(point), tol)

    def contains_region(self, other: "RateRegion2D | RegionUnion", tol: float = 1e-9) -> bool:
        return _covers(self.geometry, other.geometry, tol)

    def outline(self) -> list[list[Vertex]]:
        """Exterior rings of the union, counterclockwise, without closing points."""
        simplified = self.geometry.simplify(_OUTLINE_SIMPLIFY, preserve_topology=True)
        parts = getattr(simplified, "geoms", [simplified])
        rings = []
        for part in parts:
            if part.is_empty:
                continue
            if isinstance(part, Polygon):
                coords = list(orient(part, 1.0).exterior.coords)[:-1]
            else:
                coords = list(part.coords)
            rings.append(_clean_ring(coords))
        return rings or [[(0.0, 0.0)]]

    @property
    def vertices(self) -> list[Vertex]:
        return [p for ring in self.outline() for p in ring]

    def convex_hull(self) -> RateRegion2D:
        """Smallest convex region holding the union, as halfplanes and vertices."""
        coords = shapely.get_coordinates(self.geometry.convex_hull)
        points = _dedupe(((_snap(float(x)), _snap(float(y))) for x, y in coords), _OUTLINE_MERGE)
        if len(points) == 1 and points[0] == (0.0, 0.0):
            return RateRegion2D.origin()
        ordered = order_counterclockwise(points)
        return RateRegion2D(_edges_to_halfplanes(ordered) + NONNEGATIVITY, tuple(ordered))


def _snap(value: float) -> float:
    return 0.0 if abs(value) <= _OUTLINE_MERGE else value


def _clean_ring(coords: Sequence[Sequence[float]]) -> list[Vertex]:
    ring: list[Vertex] = []
    for x, y in coords:
        p = (_snap(float(x)), _snap(float(y)))
        if ring and abs(p[0] - ring[-1][0]) <= _OUTLINE_MERGE and abs(p[1] - ring[-1][1]) <= _OUTLINE_MERGE:
            continue
        ring.append(p)
    while len(ring) > 1 and abs(ring[0][0] - ring[-1][0]) <= _OUTLINE_MERGE and abs(ring[0][1] - ring[-1][1]) <= _OUTLINE_MERGE:
        ring.pop()
    if len(ring) > 2:
        ring = order_counterclockwise(ring) if _is_convex(ring) else _rotate_to_origin(ring)
    return ring


def _is_convex(ring: Sequence[Vertex]) -> bool:
    n = len(ring)
    sign = 0
    for i in range(n):
        (x0, y0), (x1, y1), (x2, y2) = ring[i], ring[(i + 1) % n], ring[(i + 2) % n]
        cross = (x1 - x0) * (y2 - y1) - (y1 - y0) * (x2 - x1)
        if abs(cross) <= 1e-15:
            continue
        s = 1 if cross > 0 else -1
        if sign and s != sign:
            return False
        sign = s
    return True


def _rotate_to_origin(ring: list[Vertex]) -> list[Vertex]:
    start = min(range(len(ring)), key=lambda i: (ring[i][0] + ring[i][1], ring[i][0]))
    return ring[start:] + ring[:start]


def _edges_to_halfplanes(ordered: Sequence[Vertex]) -> tuple[HalfPlane, ...]:
    """Halfplanes of a counterclockwise polygon; segments and points get a closed box."""
    n = len(ordered)
    if n >= 3:
        planes = []
        for i in range(n):
            (x0, y0), (x1, y1) = ordered[i], ordered[(i + 1) % n]
            a, b = y1 - y0, x0 - x1
            planes.append(HalfPlane(a, b, a * x0 + b * y0))
        return tuple(planes)
    (x0, y0), (x1, y1) = ordered[0], ordered[-1]
    planes = [
        HalfPlane(1.0, 0.0, max(x0, x1)),
        HalfPlane(0.0, 1.0, max(y0, y1)),
    ]
    if n == 2:
        # the supporting line, from both sides
        a, b = y1 - y0, x0 - x1
        planes += [HalfPlane(a, b, a * x0 + b * y0), HalfPlane(-a, -b, -(a * x0 + b * y0))]
    else:
        planes += [HalfPlane(-1.0, 0.0, -x0), HalfPlane(0.0, -1.0, -y0)]
    return tuple(planes)


def _thicken(geom: BaseGeometry) -> BaseGeometry:
    if geom.area > 0:
        return geom
    return geom.buffer(_SLIVER, cap_style="square", join_style="mitre")


def _covers(outer: BaseGeometry, inner: BaseGeometry, tol: float) -> bool:
    grown = outer.buffer(tol, join_style="mitre") if tol > 0 else outer
    return bool(grown.covers(inner))


# =============================================================================
# Region operations
# =============================================================================


def union_regions(regions: Iterable[RateRegion2D | RegionUnion]) -> RegionUnion:
    """Polygon union of the given regions; the empty union is the origin."""
    geoms = []
    for region in regions:
        geoms.append(region.geometry if isinstance(region, RegionUnion) else _thicken(region.geometry))
    if not geoms:
        geoms.append(_thicken(Point(0.0, 0.0)))
    return RegionUnion(unary_union(geoms), len(geoms))


def region_contains(
    outer: RateRegion2D | RegionUnion,
    inner: RateRegion2D | RegionUnion,
    tol: float = 1e-9,
) -> bool:
    """Whether ``inner`` lies inside ``outer`` grown by ``tol``."""
    return _covers(outer.geometry, inner.geometry, tol)


def hausdorff_distance(
    first: RateRegion2D | RegionUnion,
    second: RateRegion2D | RegionUnion,
    step: float = 1e-3,
) -> float:
    """
    Hausdorff distance between two regions as closed sets.

    Boundaries are densified to ``step`` and each sample's distance to the
    other region (zero inside it) is taken; the largest one wins.
    """
    a, b = first.geometry, second.geometry
    return max(_directed(a, b, step), _directed(b, a, step))


def _directed(source: BaseGeometry, target: BaseGeometry, step: float) -> float:
    edge = source.boundary if source.area > 0 else source
    dense = shapely.segmentize(edge, step) if not isinstance(edge, Point) else edge
    coords = shapely.get_coordinates(dense)
    if coords.size == 0:
        coords = shapely.get_coordinates(source)
    distances = shapely.distance(shapely.points(coords), target)
    return float(np.max(distances))
