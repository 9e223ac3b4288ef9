"""Tests for the inner-bound region and its Fourier-Motzkin derivation."""

from fractions import Fraction

import numpy as np
import pytest
from pytest import approx

from secrecy_toolkit.info.probability import mutual_information
from secrecy_toolkit.regions.cascade import AuxiliaryCascade, random_cascade
from secrecy_toolkit.regions.geometry import hausdorff_distance
from secrecy_toolkit.regions.theorem1 import (
    RATE_SPLIT_VARIABLES,
    Theorem1Terms,
    build_appendix_a_system,
    compute_terms,
    derive_region_fm,
    eval_theorem1,
    theorem1_region,
)
from secrecy_toolkit.utils.exceptions import DimensionMismatchError


def _zero_terms() -> Theorem1Terms:
    return Theorem1Terms(**{name: 0.0 for name in Theorem1Terms.model_fields})


def _holding_terms(channel, seed: int, count: int, sizes=(2, 2, 2, 2), draws: int = 400) -> list[Theorem1Terms]:
    """The first ``count`` random cascades on ``channel`` whose side conditions hold."""
    rng = np.random.default_rng(seed)
    found = []
    for _ in range(draws):
        terms = compute_terms(random_cascade(sizes, channel.card_x, rng).joint(channel))
        if terms.conditions_hold():
            found.append(terms)
            if len(found) == count:
                break
    assert len(found) == count
    return found


def _sorted_vertices(region):
    return sorted((round(x, 9), round(y, 9)) for x, y in region.vertices)


class TestEvalTheorem1:
    def test_degenerate_cascade_gives_origin(self, noiseless_channel):
        region = eval_theorem1(noiseless_channel, AuxiliaryCascade.degenerate(4))
        assert region.is_origin

    def test_binary_noiseless_channel(self, binary_noiseless_channel, binary_cascade):
        terms = compute_terms(binary_cascade.joint(binary_noiseless_channel))
        assert (terms.rn1, terms.rn2, terms.rn3, terms.rn4, terms.rn5) == approx((0, 0, 0, 0, 0), abs=1e-12)
        assert terms.conditions_hold()
        region = eval_theorem1(binary_noiseless_channel, binary_cascade)
        assert _sorted_vertices(region) == [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0)]

    def test_independent_bits_against_direct_terms(self, noiseless_channel, bits_cascade):
        joint = bits_cascade.joint(noiseless_channel)
        assert mutual_information(joint, ["V1"], ["Y1"], ["V"]) == approx(1.0)
        assert mutual_information(joint, ["V2"], ["Y2"], ["V"]) == approx(1.0)
        assert mutual_information(joint, ["V1"], ["V2"], ["V"]) == approx(0.0, abs=1e-12)
        region = eval_theorem1(noiseless_channel, bits_cascade)
        assert _sorted_vertices(region) == [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)]
        assert region.contains((0.25, 0.25))

    def test_dimension_mismatch(self, binary_noiseless_channel, bits_cascade):
        with pytest.raises(DimensionMismatchError):
            eval_theorem1(binary_noiseless_channel, bits_cascade)

    def test_origin_always_inside(self, bsc_channel):
        rng = np.random.default_rng(8)
        for _ in range(20):
            region = eval_theorem1(bsc_channel, random_cascade((2, 2, 2, 2), 2, rng))
            assert region.contains((0.0, 0.0))


class TestTerms:
    def test_auxiliary_rate_relations(self, bsc_channel):
        rng = np.random.default_rng(21)
        for _ in range(25):
            terms = compute_terms(random_cascade((2, 3, 2, 2), 2, rng).joint(bsc_channel))
            assert terms.rn2 <= 0.0
            assert terms.rn3 == min(terms.rn1, 0.0)
            assert terms.rn3 <= 0.0
            assert terms.rn5 <= terms.i_v_z_u

    def test_failed_condition_gives_origin(self):
        assert theorem1_region(_zero_terms()).is_origin


class TestRateSplittingSystem:
    def test_variables_and_redundant_rows(self):
        base = build_appendix_a_system(_zero_terms())
        extended = build_appendix_a_system(_zero_terms(), include_redundant=True)
        assert base.vars == RATE_SPLIT_VARIABLES
        assert len(extended.ineqs) == len(base.ineqs) + 2

    def test_zero_terms_force_zero_rates(self):
        derivation = derive_region_fm(_zero_terms())
        assert derivation.region.is_origin
        assert derivation.reduced.vars == ("R1", "R2")

    def test_binary_noiseless_exact_vertices(self, binary_noiseless_channel, binary_cascade):
        terms = compute_terms(binary_cascade.joint(binary_noiseless_channel))
        derivation = derive_region_fm(terms)
        assert set(derivation.region.exact_vertices) == {
            (Fraction(0), Fraction(0)),
            (Fraction(1), Fraction(0)),
            (Fraction(0), Fraction(1)),
        }
        assert len(derivation.steps) == len(RATE_SPLIT_VARIABLES) - 2

    def test_redundant_secrecy_rows_do_not_change_region(self, noiseless_channel, bits_cascade):
        terms = compute_terms(bits_cascade.joint(noiseless_channel))
        plain = derive_region_fm(terms)
        extended = derive_region_fm(terms, include_redundant=True)
        assert set(plain.region.exact_vertices) == set(extended.region.exact_vertices)

    def test_redundant_rows_with_noisy_eavesdropper(self, weak_eavesdropper_channel):
        for terms in _holding_terms(weak_eavesdropper_channel, seed=17, count=5):
            plain = derive_region_fm(terms)
            extended = derive_region_fm(terms, include_redundant=True)
            assert set(plain.region.exact_vertices) == set(extended.region.exact_vertices)

    def test_trace_callback_sees_every_step(self, binary_noiseless_channel, binary_cascade):
        seen = []
        terms = compute_terms(binary_cascade.joint(binary_noiseless_channel))
        derivation = derive_region_fm(terms, trace=seen.append)
        assert seen == derivation.steps

    def test_elimination_matches_closed_form(self, noiseless_channel):
        rng = np.random.default_rng(99)
        checked = 0
        for _ in range(40):
            terms = compute_terms(random_cascade((2, 2, 2, 2), 4, rng).joint(noiseless_channel))
            if not terms.conditions_hold():
                continue
            closed = theorem1_region(terms)
            derived = derive_region_fm(terms).region
            assert hausdorff_distance(closed, derived) <= 1e-6
            checked += 1
            if checked == 5:
                break
        assert checked > 0

    def test_elimination_matches_closed_form_with_noisy_eavesdropper(self, weak_eavesdropper_channel):
        cases = _holding_terms(weak_eavesdropper_channel, seed=99, count=5)
        # every eavesdropper term enters the elimination
        assert all(terms.i_v2_z_v > 1e-6 and terms.i_vv1_z_u > 1e-6 for terms in cases)
        for terms in cases:
            closed = theorem1_region(terms)
            derived = derive_region_fm(terms).region
            assert hausdorff_distance(closed, derived) <= 1e-6
