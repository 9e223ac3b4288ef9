"""Rate regions: inner bound, capacity regions and their geometry."""

from secrecy_toolkit.regions.geometry import (
    HalfPlane,
    RateRegion2D,
    RegionUnion,
    hausdorff_distance,
    region_contains,
    union_regions,
)
from secrecy_toolkit.regions.projection import project_to_region
from secrecy_toolkit.regions.cascade import (
    AuxiliaryCascade,
    cascade_from_functions,
    random_cascade,
    structured_cascades,
)
from secrecy_toolkit.regions.theorem1 import (
    FMDerivation,
    Theorem1Terms,
    build_appendix_a_system,
    compute_terms,
    derive_region_fm,
    eval_theorem1,
    theorem1_region,
)
from secrecy_toolkit.regions.capacity import (
    EntropyProfile,
    SubRegion,
    capacity_region_thm2,
    capacity_region_thm3,
    px_grid,
    subregion,
    subregion_union,
)
from secrecy_toolkit.regions.search import SearchResult, inner_bound_search, search_inner_bound

__all__ = [
    "AuxiliaryCascade",
    "EntropyProfile",
    "FMDerivation",
    "HalfPlane",
    "RateRegion2D",
    "RegionUnion",
    "SearchResult",
    "SubRegion",
    "Theorem1Terms",
    "build_appendix_a_system",
    "capacity_region_thm2",
    "capacity_region_thm3",
    "cascade_from_functions",
    "compute_terms",
    "derive_region_fm",
    "eval_theorem1",
    "hausdorff_distance",
    "inner_bound_search",
    "project_to_region",
    "px_grid",
    "random_cascade",
    "region_contains",
    "search_inner_bound",
    "structured_cascades",
    "subregion",
    "subregion_union",
    "theorem1_region",
    "union_regions",
]
