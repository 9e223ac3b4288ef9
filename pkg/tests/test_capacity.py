"""Tests for the deterministic-channel capacity regions and their sub-regions."""

import numpy as np
import pytest
from pytest import approx

from secrecy_toolkit.channel.broadcast import BroadcastChannel
from secrecy_toolkit.info.probability import Pmf
from secrecy_toolkit.regions.capacity import (
    SUBREGIONS,
    EntropyProfile,
    capacity_region_thm2,
    capacity_region_thm3,
    px_grid,
    subregion,
    subregion_union,
)
from secrecy_toolkit.regions.geometry import hausdorff_distance, region_contains
from secrecy_toolkit.utils.exceptions import ChannelPreconditionError


def _hull_vertices(union):
    return sorted((round(x, 9) + 0.0, round(y, 9) + 0.0) for x, y in union.convex_hull().vertices)


@pytest.fixture
def eavesdropper_as_receiver1() -> BroadcastChannel:
    """Y2 = X, Y1 = Z = floor(X/2)."""
    return BroadcastChannel.from_functions([0, 0, 1, 1], [0, 1, 2, 3], [0, 0, 1, 1], 2, 4, 2)


@pytest.fixture
def eavesdropper_as_receiver2() -> BroadcastChannel:
    """Y1 = X, Y2 = Z = floor(X/2)."""
    return BroadcastChannel.from_functions([0, 1, 2, 3], [0, 0, 1, 1], [0, 0, 1, 1], 4, 2, 2)


class TestGrid:
    def test_structured_points_first(self):
        grid = px_grid(3, size=10, seed=1)
        assert len(grid) == 10
        assert grid[0].probs.tolist() == [1.0, 0.0, 0.0]
        assert grid[3].probs.tolist() == [0.5, 0.5, 0.0]
        assert grid[6].probs == approx([1 / 3] * 3)

    def test_binary_grid_has_no_centroid_duplicate(self):
        grid = px_grid(2, size=3, seed=0)
        assert grid[2].probs.tolist() == [0.5, 0.5]

    def test_grid_is_seeded(self):
        first = [p.probs.tolist() for p in px_grid(4, size=30, seed=5)]
        second = [p.probs.tolist() for p in px_grid(4, size=30, seed=5)]
        assert first == second


class TestThm2Capacity:
    def test_worked_channel_uniform_input(self, thm2_channel):
        region = capacity_region_thm2(thm2_channel, [Pmf.uniform(4)])
        assert _hull_vertices(region) == [(0.0, 0.0), (0.0, 2.0), (1.0, 0.0), (1.0, 1.0)]

    def test_grid_union_equals_uniform_region(self, thm2_channel):
        uniform = capacity_region_thm2(thm2_channel, [Pmf.uniform(4)])
        gridded = capacity_region_thm2(thm2_channel, px_grid(4, size=200, seed=3))
        assert hausdorff_distance(uniform, gridded) == approx(0.0, abs=1e-9)

    def test_strong_eavesdropper_limits_r1_by_r2(self, eavesdropper_as_receiver1):
        region = capacity_region_thm2(eavesdropper_as_receiver1, [Pmf.uniform(4)])
        assert region.contains((0.5, 0.5))
        assert region.contains((1.0, 1.0))
        assert not region.contains((0.6, 0.4), tol=1e-9)
        assert not region.contains((0.0, 1.1), tol=1e-9)

    def test_wrong_family_rejected(self, thm3_channel, bsc_channel):
        with pytest.raises(ChannelPreconditionError):
            capacity_region_thm2(thm3_channel, [Pmf.uniform(4)])
        with pytest.raises(ChannelPreconditionError):
            capacity_region_thm2(bsc_channel, [Pmf.uniform(2)])


class TestThm3Capacity:
    def test_mirror_channel_uniform_input(self, thm3_channel):
        region = capacity_region_thm3(thm3_channel, [Pmf.uniform(4)])
        assert _hull_vertices(region) == [(0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (2.0, 0.0)]

    def test_eavesdropper_as_receiver2_gives_segment(self, eavesdropper_as_receiver2):
        region = capacity_region_thm3(eavesdropper_as_receiver2, px_grid(4, size=50, seed=0))
        hull = region.convex_hull()
        assert hull.max_r1() == approx(1.0, abs=1e-9)
        assert hull.max_r2() == approx(0.0, abs=1e-9)
        assert region.contains((1.0, 0.0))
        assert not region.contains((0.5, 0.01), tol=1e-9)

    def test_eavesdropper_as_receiver1_gives_origin(self):
        # Y1 = Z = X, Y2 = floor(X/2)
        ch = BroadcastChannel.from_functions([0, 1, 2, 3], [0, 0, 1, 1], [0, 1, 2, 3], 4, 2, 4)
        region = capacity_region_thm3(ch, px_grid(4, size=20, seed=0))
        assert region.convex_hull().is_origin


class TestSubRegions:
    def test_case_selection(self, thm2_channel):
        profile = EntropyProfile.of(thm2_channel, Pmf.uniform(4))
        assert profile.case("thm2") == "R1a"

    def test_r1a_matches_capacity_at_uniform_input(self, thm2_channel):
        sub = subregion(thm2_channel, Pmf.uniform(4), "R1a")
        assert sub.active
        vertices = sorted((round(x, 9) + 0.0, round(y, 9) + 0.0) for x, y in sub.region.vertices)
        assert vertices == [(0.0, 0.0), (0.0, 2.0), (1.0, 0.0), (1.0, 1.0)]

    def test_inactive_cases_are_origin(self, thm2_channel):
        for name in ("R1b", "R1c", "R1d"):
            sub = subregion(thm2_channel, Pmf.uniform(4), name)
            assert not sub.active
            assert sub.region.is_origin

    def test_r1c_with_eavesdropper_as_receiver1(self, eavesdropper_as_receiver1):
        sub = subregion(eavesdropper_as_receiver1, Pmf.uniform(4), "R1c")
        assert sub.active
        assert "V1=V=U=Y1" in sub.identification
        assert sub.region.contains((1.0, 1.0))
        assert not sub.region.contains((1.0, 0.5), tol=1e-9)

    def test_wrong_family(self, thm2_channel):
        with pytest.raises(ChannelPreconditionError):
            subregion(thm2_channel, Pmf.uniform(4), "R2a")

    @pytest.mark.parametrize("family", ["thm2", "thm3"])
    def test_union_matches_capacity(self, family, thm2_channel, thm3_channel):
        ch = thm2_channel if family == "thm2" else thm3_channel
        grid = px_grid(4, size=60, seed=2)
        capacity = (capacity_region_thm2 if family == "thm2" else capacity_region_thm3)(ch, grid)
        union = subregion_union(ch, grid, family)
        assert region_contains(capacity, union, tol=1e-6)
        assert hausdorff_distance(union, capacity) <= 0.02

    def test_every_subregion_inside_capacity(self, thm2_channel):
        rng = np.random.default_rng(6)
        grid = [Pmf(p) for p in rng.dirichlet(np.ones(4), size=15)]
        capacity = capacity_region_thm2(thm2_channel, grid)
        for p_x in grid:
            for name in SUBREGIONS["thm2"]:
                assert region_contains(capacity, subregion(thm2_channel, p_x, name).region, tol=1e-6)
