"""Random superposition / Marton codebooks and the one-time pad."""

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.random import default_rng

from secrecy_toolkit.sim.params import CodeParams
from secrecy_toolkit.utils.exceptions import IndexRangeError
from secrecy_toolkit.utils.logging import get_logger

logger = get_logger("sim.codebook")


def otp_combine(m1a: int, m2a: int, n_a: int) -> int:
    """Pad ``m1a`` with ``m2a``: (m1a + m2a) mod n_a."""
    for name, value in (("m1a", m1a), ("m2a", m2a)):
        if not 0 <= value < n_a:
            raise IndexRangeError(name, value, n_a)
    return (m1a + m2a) % n_a


def otp_invert(combined: int, key: int, n_a: int) -> int:
    """Undo ``otp_combine`` given one operand."""
    return (combined - key) % n_a


def join_m2a(m2a1: int, m2a2: int, n_2a2: int) -> int:
    return m2a1 * n_2a2 + m2a2


def split_m2a(m2a: int, n_2a2: int) -> tuple[int, int]:
    return divmod(m2a, n_2a2)


def sample_conditional(
    rng: np.random.Generator, matrix: np.ndarray, parents: np.ndarray
) -> np.ndarray:
    """Draw one child symbol per parent symbol from the rows of ``matrix`` (inverse CDF)."""
    cdf = np.cumsum(matrix, axis=1)
    draws = rng.random(parents.shape)
    children = (draws[..., None] >= cdf[parents]).sum(axis=-1)
    return np.minimum(children, matrix.shape[1] - 1)


@dataclass(frozen=True, eq=False)
class Codebook:
    """
    Codewords of every layer.

    Shapes:
        u:  (N_a, n)
        v:  (N_a, N_1b, N_2b, N_2a1, N_d, n)
        v1: v-index + (N_1c, N_d1, N_l1, n)
        v2: v-index + (N_2a2, N_2c, N_d2, N_l2, n)
    """

    u: np.ndarray
    v: np.ndarray
    v1: np.ndarray
    v2: np.ndarray
    seed: tuple[int, ...]

    def v_seq(self, v_index: Sequence[int]) -> np.ndarray:
        return self.v[tuple(v_index)]


def generate_codebook(params: CodeParams, seed: int | Sequence[int]) -> Codebook:
    """
    Draw all codewords i.i.d. over time from the cascade factors.

    U symbols follow p(u); each V codeword follows p(v|u) symbol-wise given
    its cloud center; V1 and V2 codewords follow the marginals p(v1|v) and
    p(v2|v) of the private-layer factor. Identical seeds give identical
    codebooks.
    """
    seed_key = tuple(np.atleast_1d(seed).tolist())
    rng = default_rng(list(seed_key))
    cascade = params.cascade
    n = params.n

    u_shape = (params.n_a, n)
    u = sample_conditional(rng, cascade.p_u.probs[None, :], np.zeros(u_shape, dtype=np.int64))

    v_index = params.v_shape
    u_parent = np.broadcast_to(u.reshape((params.n_a, 1, 1, 1, 1, n)), v_index + (n,))
    v = sample_conditional(rng, cascade.p_v_given_u.matrix, u_parent)

    v1_shape = v_index + (params.n_1c, params.n_d1, params.n_l1, n)
    v_parent = np.broadcast_to(v.reshape(v_index + (1, 1, 1, n)), v1_shape)
    v1 = sample_conditional(rng, cascade.p_v1_given_v, v_parent)

    v2_shape = v_index + (params.n_2a2, params.n_2c, params.n_d2, params.n_l2, n)
    v_parent = np.broadcast_to(v.reshape(v_index + (1, 1, 1, 1, n)), v2_shape)
    v2 = sample_conditional(rng, cascade.p_v2_given_v, v_parent)

    logger.debug(
        f"Codebook {seed_key}: {u.shape[0]} clouds, {int(np.prod(v_index))} satellites, "
        f"{int(np.prod(v1.shape[:-1]))} + {int(np.prod(v2.shape[:-1]))} private codewords"
    )
    return Codebook(u=u, v=v, v1=v1, v2=v2, seed=seed_key)
