"""Encoder and the two joint-typicality decoders.

Receiver 1 knows M2 and so searches only over (m_a, m_1b, m_1c) and the
nuisance indices (d, d1, l1). Receiver 2 has no side information and
searches the whole cloud layer plus its private layer. A decoder succeeds
when all typical candidates agree on the message tuple.
"""

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from secrecy_toolkit.sim.codebook import (
    Codebook,
    join_m2a,
    otp_combine,
    otp_invert,
    sample_conditional,
)
from secrecy_toolkit.sim.params import CodeParams
from secrecy_toolkit.sim.typicality import joint_codes, typical_mask
from secrecy_toolkit.utils.exceptions import IndexRangeError


def _check_indices(names: Sequence[str], values: Sequence[int], sizes: Sequence[int]) -> None:
    for name, value, size in zip(names, values, sizes):
        if not 0 <= int(value) < size:
            raise IndexRangeError(name, int(value), size)


@dataclass(frozen=True)
class Transmission:
    """Channel input and the indices the encoder settled on."""

    x: np.ndarray
    m_a: int
    d: int
    d1: int
    d2: int
    l1: int
    l2: int
    fallback: bool


@dataclass(frozen=True)
class Decoded:
    """Outcome of one decoder call; ``message`` is None on failure."""

    message: Optional[tuple[int, ...]]
    hits: int
    events: frozenset[str] = field(default_factory=frozenset)

    @property
    def ok(self) -> bool:
        return self.message is not None


def encode(
    cb: Codebook,
    params: CodeParams,
    m1: Sequence[int],
    m2: Sequence[int],
    rng: np.random.Generator,
) -> Transmission:
    """
    Map (m1, m2) to a channel input sequence.

    Args:
        cb: Codebook shared with the receivers
        params: Code parameters
        m1: (m1a, m1b, m1c)
        m2: (m2a1, m2a2, m2b, m2c)
        rng: Source of the randomization indices and of p(x|v1,v2)

    Returns:
        The transmission; ``fallback`` is set when no (l1, l2) pair was
        typical and the first pair was used instead
    """
    m1a, m1b, m1c = (int(i) for i in m1)
    m2a1, m2a2, m2b, m2c = (int(i) for i in m2)
    _check_indices(("m1a", "m1b", "m1c"), (m1a, m1b, m1c), params.m1_shape)
    _check_indices(("m2a1", "m2a2", "m2b", "m2c"), (m2a1, m2a2, m2b, m2c), params.m2_shape)

    m_a = otp_combine(m1a, join_m2a(m2a1, m2a2, params.n_2a2), params.n_a)
    d = int(rng.integers(params.n_d))
    d1 = int(rng.integers(params.n_d1))
    d2 = int(rng.integers(params.n_d2))

    v_index = (m_a, m1b, m2b, m2a1, d)
    u_seq = cb.u[m_a]
    v_seq = cb.v[v_index]
    v1_bin = cb.v1[v_index + (m1c, d1)]            # (N_l1, n)
    v2_bin = cb.v2[v_index + (m2a2, m2c, d2)]      # (N_l2, n)

    joint = params.encoder_joint
    codes = joint_codes(
        (u_seq, v_seq, v1_bin[:, None, :], v2_bin[None, :, :]), joint.sizes
    )
    typical = typical_mask(codes, joint.flat, params.eps_prime)
    hits = np.argwhere(typical)
    if hits.size:
        l1, l2 = (int(i) for i in hits[0])        # argwhere is row-major: lexicographic
        fallback = False
    else:
        l1, l2 = 0, 0
        fallback = True

    parents = v1_bin[l1] * params.cascade.sizes[3] + v2_bin[l2]
    x = sample_conditional(rng, params.cascade.p_x_given_v1v2.matrix, parents)
    return Transmission(x=x, m_a=m_a, d=d, d1=d1, d2=d2, l1=l1, l2=l2, fallback=fallback)


def transmit(params: CodeParams, x: np.ndarray, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Pass ``x`` through the memoryless channel; returns (y1, y2, z)."""
    joint_out = sample_conditional(rng, params.channel.kernel.matrix, x)
    y1, y2, z = np.unravel_index(joint_out, params.channel.output_sizes)
    return y1, y2, z


def _unique_message(hit_messages: np.ndarray) -> Optional[tuple[int, ...]]:
    if hit_messages.shape[0] == 0:
        return None
    distinct = np.unique(hit_messages, axis=0)
    if distinct.shape[0] != 1:
        return None
    return tuple(int(i) for i in distinct[0])


def decode_rx1(
    cb: Codebook,
    params: CodeParams,
    y1: np.ndarray,
    m2: Sequence[int],
    truth: Optional[tuple[int, int, int, int, int, int]] = None,
) -> Decoded:
    """
    Receiver 1: find (m_a, m_1b, m_1c) knowing m2.

    The returned message is (m1a, m1b, m1c) with m1a unpadded using m2's
    share. When ``truth`` = (m_a, m1b, m1c, d, d1, l1) is given, the error
    events are tallied as well:

    * E11: the transmitted tuple is not typical
    * E12: a typical hit with correct (m_a, m1b) but wrong m1c
    * E13: a typical hit with correct m_a but wrong m1b
    * E14: a typical hit with wrong m_a
    """
    m2a1, m2a2, m2b, _ = (int(i) for i in m2)
    n = params.n
    # candidate axes: m_a, m1b, d, m1c, d1, l1
    u = cb.u[:, None, None, None, None, None, :]
    v = cb.v[:, :, m2b, m2a1, :, :]                                  # (N_a, N_1b, N_d, n)
    v1 = cb.v1[:, :, m2b, m2a1]                                      # (N_a, N_1b, N_d, N_1c, N_d1, N_l1, n)
    v = v[:, :, :, None, None, None, :]
    y = np.asarray(y1).reshape((1,) * 6 + (n,))

    joint = params.rx1_joint
    typical = typical_mask(joint_codes((u, v, v1, y), joint.sizes), joint.flat, params.eps)
    hits = np.argwhere(typical)
    messages = hits[:, [0, 1, 3]]
    found = _unique_message(messages)

    message = None
    if found is not None:
        m_a, m1b, m1c = found
        m1a = otp_invert(m_a, join_m2a(m2a1, m2a2, params.n_2a2), params.n_a)
        message = (m1a, m1b, m1c)

    events: set[str] = set()
    if truth is not None:
        t_ma, t_1b, t_1c, t_d, t_d1, t_l1 = truth
        if not typical[t_ma, t_1b, t_d, t_1c, t_d1, t_l1]:
            events.add("E11")
        same_a = messages[:, 0] == t_ma
        same_b = messages[:, 1] == t_1b
        if np.any(same_a & same_b & (messages[:, 2] != t_1c)):
            events.add("E12")
        if np.any(same_a & ~same_b):
            events.add("E13")
        if np.any(~same_a):
            events.add("E14")
    return Decoded(message=message, hits=int(hits.shape[0]), events=frozenset(events))


def decode_rx2(
    cb: Codebook,
    params: CodeParams,
    y2: np.ndarray,
    truth: Optional[tuple[int, ...]] = None,
) -> Decoded:
    """
    Receiver 2: find (m_a, m_2b, m_2a1, m_2a2, m_2c) with no side information.

    m_1b and the randomization indices (d, d2, l2) are nuisance. With
    ``truth`` = (m_a, m1b, m2b, m2a1, d, m2a2, m2c, d2, l2) the events are:

    * E21: the transmitted tuple is not typical
    * E22: a hit with correct (m_a, m2b, m2a1) but wrong (m2a2, m2c)
    * E23: a hit with correct m_a but wrong (m2b, m2a1)
    * E24: a hit with wrong m_a
    """
    n = params.n
    # candidate axes: m_a, m1b, m2b, m2a1, d, m2a2, m2c, d2, l2
    u = cb.u[:, None, None, None, None, None, None, None, None, :]
    v = cb.v[:, :, :, :, :, None, None, None, None, :]
    y = np.asarray(y2).reshape((1,) * 9 + (n,))

    joint = params.rx2_joint
    typical = typical_mask(joint_codes((u, v, cb.v2, y), joint.sizes), joint.flat, params.eps)
    hits = np.argwhere(typical)
    messages = hits[:, [0, 2, 3, 5, 6]]
    found = _unique_message(messages)

    events: set[str] = set()
    if truth is not None:
        if not typical[tuple(truth)]:
            events.add("E21")
        t_ma, _, t_2b, t_2a1, _, t_2a2, t_2c, _, _ = truth
        same_a = messages[:, 0] == t_ma
        same_cloud = same_a & (messages[:, 1] == t_2b) & (messages[:, 2] == t_2a1)
        if np.any(same_cloud & ((messages[:, 3] != t_2a2) | (messages[:, 4] != t_2c))):
            events.add("E22")
        if np.any(same_a & ~same_cloud):
            events.add("E23")
        if np.any(~same_a):
            events.add("E24")
    return Decoded(message=found, hits=int(hits.shape[0]), events=frozenset(events))


def rx2_message(decoded: Decoded) -> Optional[tuple[int, int, int, int]]:
    """Receiver 2's estimate of m2 = (m2a1, m2a2, m2b, m2c)."""
    if decoded.message is None:
        return None
    _, m2b, m2a1, m2a2, m2c = decoded.message
    return m2a1, m2a2, m2b, m2c
