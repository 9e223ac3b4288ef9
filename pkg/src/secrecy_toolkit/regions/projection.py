"""From an exact system over (R1, R2) to a planar region."""

from fractions import Fraction

from secrecy_toolkit.polyhedral.system import EQ, LinSystem
from secrecy_toolkit.regions.geometry import (
    NONNEGATIVITY,
    HalfPlane,
    RateRegion2D,
    order_counterclockwise,
    recession_direction,
)
from secrecy_toolkit.utils.exceptions import PolyhedralError, UnboundedRegionError
from secrecy_toolkit.utils.logging import get_logger

logger = get_logger("regions.projection")

RATE_VARIABLES = ("R1", "R2")

ZERO = Fraction(0)


def project_to_region(sys: LinSystem) -> RateRegion2D:
    """
    Intersect a system over R1, R2 with the quadrant and enumerate vertices.

    Vertices come from exact pairwise line intersections, so the result
    carries ``exact_vertices`` as well. An infeasible system maps to the
    origin region.

    Raises:
        PolyhedralError: if the system mentions other variables
        UnboundedRegionError: if the region has a recession direction
    """
    extra = set(sys.vars) - set(RATE_VARIABLES)
    if extra:
        raise PolyhedralError(f"projection needs a system over R1, R2 only; also found {sorted(extra)}")
    if sys.is_infeasible:
        return RateRegion2D.origin()

    rows: list[tuple[Fraction, Fraction, Fraction]] = []
    for ineq in sys.ineqs:
        if ineq.is_trivial:
            continue
        row = (ineq.coeff("R1"), ineq.coeff("R2"), ineq.rhs)
        rows.append(row)
        if ineq.relation == EQ:
            rows.append((-row[0], -row[1], -row[2]))
    rows += [(Fraction(-1), ZERO, ZERO), (ZERO, Fraction(-1), ZERO)]

    points: set[tuple[Fraction, Fraction]] = set()
    for i, (a1, b1, c1) in enumerate(rows):
        for a2, b2, c2 in rows[i + 1:]:
            det = a1 * b2 - b1 * a2
            if det == 0:
                continue
            x = (c1 * b2 - b1 * c2) / det
            y = (a1 * c2 - c1 * a2) / det
            if all(a * x + b * y <= c for a, b, c in rows):
                points.add((x, y))
    if not points:
        logger.debug("Projected system has no point in the quadrant")
        return RateRegion2D.origin()

    direction = recession_direction([(a, b) for a, b, _ in rows], zero=ZERO)
    if direction is not None:
        raise UnboundedRegionError(tuple(float(d) for d in direction))

    exact_by_float = {(float(x), float(y)): (x, y) for x, y in points}
    ordered = order_counterclockwise(list(exact_by_float))
    halfplanes = tuple(
        HalfPlane(float(a), float(b), float(c)) for a, b, c in rows[:-2]
    ) + NONNEGATIVITY
    return RateRegion2D(
        halfplanes,
        tuple(ordered),
        exact_vertices=tuple(exact_by_float[p] for p in ordered),
    )
