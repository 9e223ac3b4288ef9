"""Capacity regions of deterministic degraded channels and their sub-regions.

The thm2 family covers channels whose outputs are functions of X with Y2
ahead of Y1 in the degradedness chain; thm3 is its mirror image. Each
capacity region is a union over input distributions, and each splits into
four entropy cases with a prescribed choice of auxiliaries.
"""

import itertools
from dataclasses import dataclass, field
from typing import Literal, Optional, Sequence

import numpy as np

from secrecy_toolkit.channel.broadcast import BroadcastChannel, induced_joint, require_family
from secrecy_toolkit.info.probability import Pmf, conditional_entropy, entropy_of
from secrecy_toolkit.regions.geometry import HalfPlane, RateRegion2D, RegionUnion, union_regions
from secrecy_toolkit.utils.exceptions import ChannelPreconditionError
from secrecy_toolkit.utils.logging import get_logger
from secrecy_toolkit.utils.settings import settings

logger = get_logger("regions.capacity")

Family = Literal["thm2", "thm3"]

SUBREGIONS: dict[str, tuple[str, ...]] = {
    "thm2": ("R1a", "R1b", "R1c", "R1d"),
    "thm3": ("R2a", "R2b", "R2c", "R2d"),
}

# Auxiliary identifications under which each sub-region is achieved
IDENTIFICATIONS: dict[str, str] = {
    "R1a": "U=const, V1=V=Y1, V2=Y2",
    "R1b": "U=const, V1=V2=V=Y1=Y2",
    "R1c": "V1=V=U=Y1, V2=Y2",
    "R1d": "no secure transmission",
    "R2a": "U=const, V1=Y1, V2=V=Y2",
    "R2b": "U=const, V1=V2=V=Y1=Y2",
    "R2c": "V1=Y1, V2=V=U=const",
    "R2d": "no secure transmission",
}


def family_of(which: str) -> Family:
    for family, names in SUBREGIONS.items():
        if which in names:
            return family
    raise ValueError(f"unknown sub-region {which!r}; expected one of {sum(SUBREGIONS.values(), ())}")


# =============================================================================
# Input-distribution grids
# =============================================================================


def px_grid(card_x: int, size: Optional[int] = None, seed: Optional[int] = None) -> list[Pmf]:
    """
    Grid over the input simplex.

    Corners, edge midpoints and the centroid always come first; Dirichlet(1)
    samples fill up to ``size`` points.
    """
    size = settings.grid_size if size is None else size
    seed = settings.grid_seed if seed is None else seed
    structured = [np.eye(card_x)[i] for i in range(card_x)]
    for i, j in itertools.combinations(range(card_x), 2):
        mid = np.zeros(card_x)
        mid[[i, j]] = 0.5
        structured.append(mid)
    if card_x > 2:
        structured.append(np.full(card_x, 1.0 / card_x))

    rng = np.random.default_rng(seed)
    extra = max(0, size - len(structured))
    samples = rng.dirichlet(np.ones(card_x), size=extra) if extra else np.empty((0, card_x))
    return [Pmf(p) for p in structured] + [Pmf(p / p.sum()) for p in samples]


# =============================================================================
# Per-distribution quantities
# =============================================================================


@dataclass(frozen=True)
class EntropyProfile:
    """Output entropies under one input distribution, in bits."""

    h_y1: float
    h_y2: float
    h_z: float
    h_y1_given_z: float
    h_y2_given_z: float
    h_y1_given_y2: float
    h_y2_given_y1: float

    @classmethod
    def of(cls, ch: BroadcastChannel, p_x: Pmf) -> "EntropyProfile":
        joint = induced_joint(ch, p_x)
        return cls(
            h_y1=entropy_of(joint, ["Y1"]),
            h_y2=entropy_of(joint, ["Y2"]),
            h_z=entropy_of(joint, ["Z"]),
            h_y1_given_z=conditional_entropy(joint, ["Y1"], ["Z"]),
            h_y2_given_z=conditional_entropy(joint, ["Y2"], ["Z"]),
            h_y1_given_y2=conditional_entropy(joint, ["Y1"], ["Y2"]),
            h_y2_given_y1=conditional_entropy(joint, ["Y2"], ["Y1"]),
        )

    def case(self, family: Family, tol: Optional[float] = None) -> str:
        """Which sub-region applies; ties go to the weaker case."""
        tol = settings.condition_tolerance if tol is None else tol
        strong, weak = (self.h_y2, self.h_y1) if family == "thm2" else (self.h_y1, self.h_y2)
        prefix = "R1" if family == "thm2" else "R2"
        if self.h_z >= strong - tol:
            return prefix + "d"
        if self.h_z >= weak - tol:
            return prefix + "c"
        if abs(strong - weak) <= tol:
            return prefix + "b"
        return prefix + "a"


def thm2_bounds(profile: EntropyProfile) -> list[HalfPlane]:
    p = profile
    return [
        HalfPlane(1.0, 0.0, min(p.h_y1, p.h_y2_given_z)),
        HalfPlane(1.0, -1.0, p.h_y1_given_z),
        HalfPlane(0.0, 1.0, p.h_y2_given_z),
        HalfPlane(1.0, 1.0, p.h_y2),
    ]


def thm3_bounds(profile: EntropyProfile) -> list[HalfPlane]:
    p = profile
    return [
        HalfPlane(1.0, 0.0, p.h_y1_given_z),
        HalfPlane(0.0, 1.0, p.h_y2_given_z),
        HalfPlane(1.0, 1.0, p.h_y1),
    ]


def _capacity_region(ch: BroadcastChannel, grid: Sequence[Pmf], family: Family) -> RegionUnion:
    require_family(ch, family)
    bounds = thm2_bounds if family == "thm2" else thm3_bounds
    pieces = [RateRegion2D.from_halfplanes(bounds(EntropyProfile.of(ch, p_x))) for p_x in grid]
    logger.info(f"Capacity region ({family}) over {len(grid)} input distributions")
    return union_regions(pieces)


def capacity_region_thm2(ch: BroadcastChannel, grid: Sequence[Pmf]) -> RegionUnion:
    """Union over ``grid`` of {R1 <= min(H(Y1), H(Y2|Z), H(Y1|Z)+R2), R2 <= H(Y2|Z), R1+R2 <= H(Y2)}."""
    return _capacity_region(ch, grid, "thm2")


def capacity_region_thm3(ch: BroadcastChannel, grid: Sequence[Pmf]) -> RegionUnion:
    """Union over ``grid`` of {R1 <= H(Y1|Z), R2 <= H(Y2|Z), R1+R2 <= H(Y1)}."""
    return _capacity_region(ch, grid, "thm3")


# =============================================================================
# Sub-regions
# =============================================================================


@dataclass(frozen=True, eq=False)
class SubRegion:
    """One sub-region at one input distribution, with how it was decided."""

    name: str
    region: RateRegion2D
    case: str
    active: bool
    identification: str
    failed_conditions: tuple[str, ...] = field(default_factory=tuple)


def _side_conditions(name: str, p: EntropyProfile) -> list[tuple[str, float]]:
    return {
        "R1a": [("H(Y1|Z) > 0", p.h_y1_given_z), ("H(Y2|Y1) > 0", p.h_y2_given_y1)],
        "R1b": [("H(Y1|Z) > 0", p.h_y1_given_z)],
        "R2a": [("H(Y1|Z) > 0", p.h_y1_given_z), ("H(Y1|Y2) > 0", p.h_y1_given_y2)],
        "R2b": [("H(Y2|Z) > 0", p.h_y2_given_z)],
    }.get(name, [])


def _subregion_bounds(name: str, p: EntropyProfile) -> list[HalfPlane]:
    if name == "R1a":
        return [
            HalfPlane(1.0, 0.0, min(p.h_y1, p.h_y2_given_z)),
            HalfPlane(1.0, -1.0, p.h_y1_given_z),
            HalfPlane(0.0, 1.0, p.h_y2_given_z),
            HalfPlane(1.0, 1.0, p.h_y2),
        ]
    if name == "R1b":
        return [
            HalfPlane(1.0, 0.0, p.h_y2_given_z),
            HalfPlane(0.0, 1.0, p.h_y2_given_z),
            HalfPlane(1.0, 1.0, p.h_y2),
        ]
    if name == "R1c":
        return [
            HalfPlane(1.0, 0.0, p.h_y1),
            HalfPlane(1.0, -1.0, 0.0),
            HalfPlane(0.0, 1.0, p.h_y2_given_z),
            HalfPlane(1.0, 1.0, p.h_y2),
        ]
    if name in ("R2a", "R2b"):
        return thm3_bounds(p)
    if name == "R2c":
        return [HalfPlane(1.0, 0.0, p.h_y1_given_z), HalfPlane(0.0, 1.0, 0.0)]
    return [HalfPlane(1.0, 0.0, 0.0), HalfPlane(0.0, 1.0, 0.0)]


def subregion_from_profile(profile: EntropyProfile, which: str) -> SubRegion:
    """Sub-region ``which`` given precomputed entropies (no channel checks)."""
    family = family_of(which)
    case = profile.case(family)
    identification = IDENTIFICATIONS[which]
    if case != which:
        return SubRegion(which, RateRegion2D.origin(), case, False, identification)
    tol = settings.condition_tolerance
    failed = tuple(text for text, value in _side_conditions(which, profile) if not value > tol)
    if failed or which.endswith("d"):
        return SubRegion(which, RateRegion2D.origin(), case, False, identification, failed)
    region = RateRegion2D.from_halfplanes(_subregion_bounds(which, profile))
    return SubRegion(which, region, case, True, identification)


def subregion(ch: BroadcastChannel, p_x: Pmf, which: str) -> SubRegion:
    """
    Evaluate one of the eight specialization sub-regions at ``p_x``.

    The polygon is returned only when the entropy case under ``p_x`` is the
    one ``which`` covers and its side conditions hold; otherwise the region
    is the origin. Raises ``ChannelPreconditionError`` if the channel is not
    in the sub-region's theorem family.
    """
    require_family(ch, family_of(which))
    return subregion_from_profile(EntropyProfile.of(ch, p_x), which)


def subregion_union(ch: BroadcastChannel, grid: Sequence[Pmf], family: Family) -> RegionUnion:
    """Union of the family's four sub-regions over every grid point."""
    if family not in SUBREGIONS:
        raise ChannelPreconditionError("sub-region family", f"unknown family {family!r}")
    require_family(ch, family)
    pieces = []
    for p_x in grid:
        profile = EntropyProfile.of(ch, p_x)
        pieces.extend(subregion_from_profile(profile, which).region for which in SUBREGIONS[family])
    return union_regions(pieces)
