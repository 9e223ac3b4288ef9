"""Tests for the finite-blocklength simulator."""

import numpy as np
import pytest
from numpy.random import default_rng
from pytest import approx

from secrecy_toolkit.info.probability import JointPmf
from secrecy_toolkit.sim import (
    CodeParams,
    decode_rx1,
    encode,
    generate_codebook,
    join_m2a,
    otp_combine,
    plugin_mutual_information,
    run_trials,
    split_m2a,
    transmit,
    typicality_check,
)
from secrecy_toolkit.sim.trials import EVENT_NAMES, _run_trial, histogram_feasible
from secrecy_toolkit.utils.exceptions import DimensionMismatchError, IndexRangeError, SimulationConfigError

RX1_EVENTS = {"E11", "E12", "E13", "E14"}
RX2_EVENTS = {"E21", "E22", "E23", "E24"}


@pytest.fixture
def noiseless_params(noiseless_channel, bits_cascade) -> CodeParams:
    return CodeParams(n=12, n_1c=4, n_2c=4, eps=2.0, eps_prime=1.5, cascade=bits_cascade, channel=noiseless_channel)


@pytest.fixture
def pad_params(transparent_channel, pad_cascade) -> CodeParams:
    return CodeParams(
        n=8, n_a=4, n_2a1=4, n_2a2=1, eps=2.0, eps_prime=1.5, cascade=pad_cascade, channel=transparent_channel
    )


class TestOneTimePad:
    def test_uniform_key_gives_permutation(self):
        for m1a in range(8):
            assert sorted(otp_combine(m1a, key, 8) for key in range(8)) == list(range(8))

    def test_single_index_is_identity(self):
        assert otp_combine(0, 0, 1) == 0

    def test_out_of_range(self):
        with pytest.raises(IndexRangeError):
            otp_combine(8, 0, 8)

    def test_m2a_split_is_bijective(self):
        joined = {join_m2a(a1, a2, 3) for a1 in range(4) for a2 in range(3)}
        assert joined == set(range(12))
        assert all(split_m2a(join_m2a(a1, a2, 3), 3) == (a1, a2) for a1 in range(4) for a2 in range(3))


class TestTypicality:
    def test_point_mass(self):
        joint = JointPmf.from_table(["A"], [2], [1.0, 0.0])
        assert typicality_check([[0, 0, 0, 0]], joint, 0.5)
        assert not typicality_check([[0, 1, 0, 0]], joint, 0.5)

    def test_frequency_window(self):
        joint = JointPmf.uniform(["A"], [2])
        assert typicality_check([[0, 1, 0, 1]], joint, 0.1)
        assert not typicality_check([[0, 0, 0, 1]], joint, 0.1)
        assert typicality_check([[0, 0, 0, 1]], joint, 0.5)

    def test_under_represented_symbol(self):
        joint = JointPmf.uniform(["A"], [2])
        seq = [[1, 1, 1] + [0] * 17]
        assert not typicality_check(seq, joint, 0.5)
        # from slack 1 on only the upper side of the window is left
        assert typicality_check(seq, joint, 2.0)

    def test_iid_draws_are_mostly_typical(self):
        joint = JointPmf.from_table(["A", "B"], [2, 2], [0.3, 0.2, 0.3, 0.2])
        rng = default_rng(1000)
        accepted = 0
        for _ in range(200):
            a, b = np.unravel_index(rng.choice(4, size=1000, p=joint.flat), (2, 2))
            accepted += typicality_check([a, b], joint, 0.2)
        assert accepted / 200 >= 0.95

    def test_length_mismatch(self):
        joint = JointPmf.uniform(["A", "B"], [2, 2])
        with pytest.raises(DimensionMismatchError):
            typicality_check([[0, 1], [0]], joint, 0.5)

    def test_wrong_sequence_count(self):
        joint = JointPmf.uniform(["A", "B"], [2, 2])
        with pytest.raises(DimensionMismatchError):
            typicality_check([[0, 1]], joint, 0.5)


class TestCodeParams:
    def test_rates(self, noiseless_params):
        rates = noiseless_params.rates()
        assert rates["R1"] == approx(2 / 12)
        assert rates["R2"] == approx(2 / 12)
        assert rates["Ra"] == 0.0

    def test_m2a_split_must_cover_pad(self, noiseless_channel, bits_cascade):
        with pytest.raises(SimulationConfigError):
            CodeParams(n=4, n_a=4, n_2a1=2, n_2a2=1, cascade=bits_cascade, channel=noiseless_channel)

    def test_encoder_slack_below_decoder_slack(self, noiseless_channel, bits_cascade):
        with pytest.raises(SimulationConfigError):
            CodeParams(n=4, eps=1.0, eps_prime=1.5, cascade=bits_cascade, channel=noiseless_channel)

    def test_histogram_gate(self, pad_params, noiseless_params):
        assert histogram_feasible(pad_params)
        assert histogram_feasible(noiseless_params)


class TestCodebook:
    def test_same_seed_same_codebook(self, noiseless_params):
        first = generate_codebook(noiseless_params, (3, 0))
        second = generate_codebook(noiseless_params, (3, 0))
        assert np.array_equal(first.v1, second.v1)
        assert np.array_equal(first.v2, second.v2)

    def test_shapes(self, pad_params):
        cb = generate_codebook(pad_params, 1)
        assert cb.u.shape == (4, 8)
        assert cb.v.shape == (4, 1, 1, 4, 1, 8)
        assert cb.v1.shape == (4, 1, 1, 4, 1, 1, 1, 1, 8)
        assert cb.v2.shape == (4, 1, 1, 4, 1, 1, 1, 1, 1, 8)

    def test_superposition_follows_cascade(self, pad_params):
        cb = generate_codebook(pad_params, 2)
        # V = U and V1 = V2 = V under this cascade
        assert np.array_equal(cb.v[:, 0, 0, 0, 0], cb.u)
        assert np.array_equal(cb.v1[..., 0, 0, 0, :], cb.v)
        assert np.array_equal(cb.v2[..., 0, 0, 0, 0, :], cb.v)


class TestCoder:
    def test_noiseless_round_trip(self, noiseless_params):
        cb = generate_codebook(noiseless_params, (0, 0))
        rng = default_rng(0)
        tx = encode(cb, noiseless_params, (0, 0, 2), (0, 0, 0, 1), rng)
        y1, y2, z = transmit(noiseless_params, tx.x, rng)
        assert np.array_equal(y1, tx.x)
        assert not z.any()
        decoded = decode_rx1(cb, noiseless_params, y1, (0, 0, 0, 1))
        assert decoded.hits >= 1

    def test_message_index_checked(self, noiseless_params):
        cb = generate_codebook(noiseless_params, 0)
        with pytest.raises(IndexRangeError):
            encode(cb, noiseless_params, (0, 0, 4), (0, 0, 0, 0), default_rng(0))

    @pytest.mark.parametrize("eps, eps_prime", [(2.0, 1.5), (0.5, 0.25)])
    def test_every_decoding_error_has_an_event(self, bsc_channel, binary_cascade, eps, eps_prime):
        params = CodeParams(
            n=6, n_1c=2, n_2c=2, eps=eps, eps_prime=eps_prime, cascade=binary_cascade, channel=bsc_channel
        )
        cb = generate_codebook(params, (5, 0))
        for trial in range(150):
            outcome = _run_trial(params, cb, 5, trial, track_z=True)
            if outcome.error1:
                assert outcome.events & RX1_EVENTS
            if outcome.error2:
                assert outcome.events & RX2_EVENTS


class TestLeakageEstimate:
    def test_independent_pairs_give_exact_zero(self):
        messages = [m for m in range(4) for _ in range(5)]
        assert plugin_mutual_information(messages, [0] * len(messages)) == 0.0

    def test_identical_pairs_give_entropy(self):
        values = [0, 1, 2, 3] * 10
        assert plugin_mutual_information(values, values) == approx(2.0)

    def test_unpaired_input(self):
        with pytest.raises(ValueError):
            plugin_mutual_information([0, 1], [0])


class TestRunTrials:
    def test_noiseless_channel(self, noiseless_params):
        report = run_trials(noiseless_params, trials=400, seed=11, regen_every=0, workers=2)
        assert report.design_point_inside
        assert report.err1 <= 0.05
        assert report.err2 <= 0.05
        assert report.leakage_available
        assert report.leak1 == 0.0
        assert report.leak2 == 0.0
        assert set(report.event_counts) == set(EVENT_NAMES)

    def test_pad_hides_common_index(self, pad_params):
        report = run_trials(pad_params, trials=1000, seed=3, regen_every=0, workers=2)
        assert report.leakage_available
        assert report.leak1 <= 0.05
        assert report.leak_rate1 == approx(report.leak1 / 8)

    def test_longer_blocks_make_fewer_errors(self, noiseless_channel, bits_cascade):
        # R1 = R2 = 1/4 at both lengths
        def run(n: int, size: int):
            params = CodeParams(
                n=n, n_1c=size, n_2c=size, eps=0.5, eps_prime=0.25, cascade=bits_cascade, channel=noiseless_channel
            )
            return run_trials(params, trials=1000, seed=5, regen_every=0)

        short, long = run(4, 2), run(12, 8)
        assert short.design_point_inside and long.design_point_inside
        assert short.event_counts["E11"] > 0
        assert short.event_counts["E21"] > 0
        assert short.err1 > 0.5
        assert long.err1 <= short.err1
        assert long.err2 <= short.err2

    def test_independent_of_worker_count(self, bsc_channel, binary_cascade):
        params = CodeParams(n=6, n_1c=2, n_2c=2, cascade=binary_cascade, channel=bsc_channel)
        serial = run_trials(params, trials=60, seed=9, regen_every=20, workers=1)
        threaded = run_trials(params, trials=60, seed=9, regen_every=20, workers=4)
        assert serial.codebooks == 3
        assert serial.to_text() == threaded.to_text()
        assert serial.events_csv() == threaded.events_csv()

    def test_report_text(self, noiseless_params):
        report = run_trials(noiseless_params, trials=20, seed=1)
        text = report.to_text()
        assert text.startswith("trials = 20\n")
        assert "leak1 = 0" in text
        assert "N_1c = 4" in text
        assert report.events_csv().splitlines()[0] == "event,count"

    def test_bad_trial_count(self, noiseless_params):
        with pytest.raises(ValueError):
            run_trials(noiseless_params, trials=0)
