"""Randomized search for the inner-bound region of a channel."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from numpy.random import SeedSequence, default_rng

from secrecy_toolkit.channel.broadcast import BroadcastChannel
from secrecy_toolkit.regions.cascade import AuxiliaryCascade, random_cascade, structured_cascades
from secrecy_toolkit.regions.geometry import RateRegion2D, RegionUnion, union_regions
from secrecy_toolkit.regions.theorem1 import eval_theorem1
from secrecy_toolkit.utils.config import worker_count
from secrecy_toolkit.utils.logging import get_logger
from secrecy_toolkit.utils.settings import settings

logger = get_logger("regions.search")


@dataclass(frozen=True, eq=False)
class SearchResult:
    region: RegionUnion
    evaluated: int
    structured: int
    nontrivial: int


def evaluate_cascades(
    ch: BroadcastChannel,
    cascades: Sequence[AuxiliaryCascade],
    workers: Optional[int] = None,
) -> list[RateRegion2D]:
    """Inner-bound region of each cascade, in input order."""
    with ThreadPoolExecutor(max_workers=worker_count(workers)) as pool:
        return list(pool.map(lambda aux: eval_theorem1(ch, aux), cascades))


def _random_region(ch: BroadcastChannel, sizes: Sequence[int], seed: SeedSequence) -> RateRegion2D:
    return eval_theorem1(ch, random_cascade(sizes, ch.card_x, default_rng(seed)))


def search_inner_bound(
    ch: BroadcastChannel,
    budget: Optional[int] = None,
    sizes: Optional[Sequence[int]] = None,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
) -> SearchResult:
    """
    Like ``inner_bound_search`` but also reports how many cascades were tried.

    Random cascade ``i`` is drawn from child ``i`` of ``SeedSequence(seed)``,
    so a run with budget ``k`` sees exactly the first ``k`` cascades of any
    larger run with the same seed.
    """
    budget = settings.search_budget if budget is None else budget
    sizes = tuple(settings.search_sizes if sizes is None else sizes)
    seed = settings.seed if seed is None else seed
    if budget < 1 or len(sizes) != 4 or any(int(s) < 1 for s in sizes):
        raise ValueError(f"budget must be >= 1 and sizes four positive integers; got {budget}, {sizes}")

    candidates = list(structured_cascades(ch, sizes))
    regions = evaluate_cascades(ch, candidates, workers)
    logger.info(f"Evaluated {len(candidates)} structured cascades")

    children = SeedSequence(seed).spawn(budget)
    with ThreadPoolExecutor(max_workers=worker_count(workers)) as pool:
        regions += list(pool.map(lambda s: _random_region(ch, sizes, s), children))
    nontrivial = sum(not r.is_origin for r in regions)
    logger.info(
        f"Evaluated {budget} random cascades with sizes {sizes}; "
        f"{nontrivial} of {len(regions)} regions are nontrivial"
    )
    return SearchResult(union_regions(regions), len(regions), len(candidates), nontrivial)


def inner_bound_search(
    ch: BroadcastChannel,
    budget: Optional[int] = None,
    sizes: Optional[Sequence[int]] = None,
    seed: Optional[int] = None,
    workers: Optional[int] = None,
) -> RegionUnion:
    """
    Union of the inner-bound regions of many auxiliary cascades.

    Deterministic candidates (auxiliaries identified with a constant, Y1,
    Y2 or X) are evaluated first, followed by ``budget`` cascades whose
    factors are drawn uniformly from their simplices.
    """
    return search_inner_bound(ch, budget, sizes, seed, workers).region


def best_sum_rate(region: RegionUnion) -> float:
    """Largest R1 + R2 over the region's outline."""
    return max(float(np.sum(p)) for p in region.vertices)
