"""Robust joint typicality.

A tuple of sequences is eps-typical for p when every joint symbol a has
empirical frequency within eps * p(a) of p(a). Symbols of probability zero
must therefore not occur at all.
"""

from typing import Sequence

import numpy as np

from secrecy_toolkit.info.probability import JointPmf
from secrecy_toolkit.utils.exceptions import DimensionMismatchError

# Absorbs float error in k/n versus p(a) comparisons
_FREQ_SLACK = 1e-12


def joint_codes(seqs: Sequence[np.ndarray], sizes: Sequence[int]) -> np.ndarray:
    """Row-major joint-symbol index of aligned sequences (broadcast over leading axes)."""
    arrays = np.broadcast_arrays(*(np.asarray(s, dtype=np.int64) for s in seqs))
    codes = np.zeros(arrays[0].shape, dtype=np.int64)
    for arr, size in zip(arrays, sizes):
        codes = codes * int(size) + arr
    return codes


def typical_mask(codes: np.ndarray, probs: np.ndarray, slack: float) -> np.ndarray:
    """
    Typicality of every row of joint-symbol sequences.

    Args:
        codes: Integer array (..., n) of joint-symbol indices
        probs: Flat design pmf over the joint alphabet
        slack: Multiplicative tolerance eps

    Returns:
        Boolean array of shape ``codes.shape[:-1]``
    """
    lead = codes.shape[:-1]
    n = codes.shape[-1]
    flat = codes.reshape(-1, n)
    counts = np.zeros((flat.shape[0], probs.size), dtype=np.int64)
    rows = np.repeat(np.arange(flat.shape[0]), n)
    np.add.at(counts, (rows, flat.reshape(-1)), 1)
    deviation = np.abs(counts / n - probs[None, :])
    ok = np.all(deviation <= slack * probs[None, :] + _FREQ_SLACK, axis=1)
    return ok.reshape(lead)


def typicality_check(seqs: Sequence[Sequence[int]], design_joint: JointPmf, slack: float) -> bool:
    """Whether ``seqs`` (one per variable of ``design_joint``) are jointly ``slack``-typical."""
    arrays = [np.asarray(s, dtype=np.int64) for s in seqs]
    if len(arrays) != len(design_joint.variables):
        raise DimensionMismatchError("typicality sequences", len(design_joint.variables), len(arrays))
    lengths = {arr.shape[-1] for arr in arrays}
    if len(lengths) != 1:
        raise DimensionMismatchError("typicality sequence lengths", "equal lengths", sorted(lengths))
    if lengths == {0}:
        return True
    for arr, (name, size) in zip(arrays, design_joint.variables):
        if arr.min() < 0 or arr.max() >= size:
            raise DimensionMismatchError(f"symbols of {name}", f"values in [0, {size})", arr.tolist())
    codes = joint_codes(arrays, design_joint.sizes)
    return bool(typical_mask(codes[None, ...] if codes.ndim == 1 else codes, design_joint.flat, slack).all())
