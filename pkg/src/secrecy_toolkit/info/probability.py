"""Finite distributions and information measures.

All measures are in bits. Distributions are immutable; every function here is
pure and safe to call from several threads at once.
"""

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

import numpy as np

from secrecy_toolkit.utils.exceptions import (
    DimensionMismatchError,
    InvalidDistributionError,
    OverlappingVariablesError,
    UnknownVariableError,
)
from secrecy_toolkit.utils.settings import settings

# Canonical names of the eight variables of a composed cascade
CASCADE_VARIABLES = ("U", "V", "V1", "V2", "X", "Y1", "Y2", "Z")


def _as_checked_array(values, name: str) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.size == 0:
        raise InvalidDistributionError(name, "empty probability vector")
    if not np.all(np.isfinite(arr)):
        raise InvalidDistributionError(name, "non-finite entry")
    if np.any(arr < 0):
        raise InvalidDistributionError(name, f"negative entry {arr.min():.3g}")
    return arr


def _check_mass(total: float, name: str) -> None:
    if abs(total - 1.0) > settings.pmf_tolerance:
        raise InvalidDistributionError(name, f"entries sum to {total!r}, not 1")


def _entropy_bits(probs: np.ndarray) -> float:
    p = probs[probs > settings.log_floor]
    if p.size == 0:
        return 0.0
    return float(max(0.0, -np.sum(p * np.log2(p))))


@dataclass(frozen=True, eq=False)
class Pmf:
    """Probability vector over ``alphabet_size`` symbols."""

    probs: np.ndarray

    def __post_init__(self):
        arr = _as_checked_array(self.probs, "pmf").reshape(-1)
        _check_mass(float(arr.sum()), "pmf")
        arr.setflags(write=False)
        object.__setattr__(self, "probs", arr)

    @property
    def alphabet_size(self) -> int:
        return int(self.probs.size)

    @classmethod
    def uniform(cls, size: int) -> "Pmf":
        return cls(np.full(size, 1.0 / size))

    @classmethod
    def point_mass(cls, size: int, symbol: int) -> "Pmf":
        probs = np.zeros(size)
        probs[symbol] = 1.0
        return cls(probs)

    def __len__(self) -> int:
        return self.alphabet_size


@dataclass(frozen=True, eq=False)
class ConditionalPmf:
    """Row-stochastic matrix p(out|in).

    ``in_shape`` and ``out_shape`` expose product alphabets, e.g. a factor
    p(v1,v2|v) has ``out_shape == (|V1|, |V2|)`` with columns in
    lexicographic order.
    """

    matrix: np.ndarray
    in_shape: Optional[tuple[int, ...]] = None
    out_shape: Optional[tuple[int, ...]] = None

    def __post_init__(self):
        arr = _as_checked_array(self.matrix, "conditional pmf")
        if arr.ndim != 2:
            raise DimensionMismatchError("conditional pmf", "2-d matrix", arr.shape)
        sums = arr.sum(axis=1)
        for row, total in enumerate(sums):
            _check_mass(float(total), f"conditional pmf row {row}")
        in_shape = tuple(self.in_shape) if self.in_shape else (arr.shape[0],)
        out_shape = tuple(self.out_shape) if self.out_shape else (arr.shape[1],)
        if int(np.prod(in_shape)) != arr.shape[0]:
            raise DimensionMismatchError("conditional pmf input shape", arr.shape[0], in_shape)
        if int(np.prod(out_shape)) != arr.shape[1]:
            raise DimensionMismatchError("conditional pmf output shape", arr.shape[1], out_shape)
        arr.setflags(write=False)
        object.__setattr__(self, "matrix", arr)
        object.__setattr__(self, "in_shape", in_shape)
        object.__setattr__(self, "out_shape", out_shape)

    @property
    def in_size(self) -> int:
        return int(self.matrix.shape[0])

    @property
    def out_size(self) -> int:
        return int(self.matrix.shape[1])

    @property
    def rows(self) -> tuple[Pmf, ...]:
        return tuple(Pmf(row) for row in self.matrix)

    @property
    def tensor(self) -> np.ndarray:
        """The matrix reshaped to ``in_shape + out_shape``."""
        return self.matrix.reshape(self.in_shape + self.out_shape)

    @classmethod
    def from_function(
        cls,
        table: Sequence[int],
        out_size: int,
        in_shape: Optional[tuple[int, ...]] = None,
        out_shape: Optional[tuple[int, ...]] = None,
    ) -> "ConditionalPmf":
        """Deterministic kernel sending input ``i`` to ``table[i]``."""
        table = np.asarray(table, dtype=int)
        if np.any(table < 0) or np.any(table >= out_size):
            raise DimensionMismatchError("function table", f"values in [0, {out_size})", table)
        matrix = np.zeros((table.size, out_size))
        matrix[np.arange(table.size), table] = 1.0
        return cls(matrix, in_shape=in_shape, out_shape=out_shape)

    @classmethod
    def identity(cls, size: int) -> "ConditionalPmf":
        return cls(np.eye(size))


@dataclass(frozen=True, eq=False)
class JointPmf:
    """Joint distribution over named variables.

    ``table`` is stored with one axis per variable; ``flat`` gives the
    row-major vector over the product space.
    """

    variables: tuple[tuple[str, int], ...]
    table: np.ndarray
    _entropy_cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)

    def __post_init__(self):
        variables = tuple((str(name), int(size)) for name, size in self.variables)
        names = [name for name, _ in variables]
        if len(set(names)) != len(names):
            raise InvalidDistributionError("joint pmf", f"duplicate variable names in {names}")
        if any(size < 1 for _, size in variables):
            raise InvalidDistributionError("joint pmf", "alphabet sizes must be positive")
        shape = tuple(size for _, size in variables)
        arr = _as_checked_array(self.table, "joint pmf")
        if arr.size != int(np.prod(shape)):
            raise DimensionMismatchError("joint pmf table", int(np.prod(shape)), arr.size)
        arr = arr.reshape(shape)
        _check_mass(float(arr.sum()), "joint pmf")
        arr.setflags(write=False)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "table", arr)

    @classmethod
    def from_table(cls, names: Sequence[str], sizes: Sequence[int], table) -> "JointPmf":
        return cls(tuple(zip(names, sizes)), np.asarray(table, dtype=float))

    @classmethod
    def uniform(cls, names: Sequence[str], sizes: Sequence[int]) -> "JointPmf":
        total = int(np.prod(sizes))
        return cls.from_table(names, sizes, np.full(total, 1.0 / total))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.variables)

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(size for _, size in self.variables)

    @property
    def flat(self) -> np.ndarray:
        return self.table.reshape(-1)

    def axis(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise UnknownVariableError([name]) from None

    def _resolve(self, names: Iterable[str]) -> frozenset[str]:
        resolved = frozenset(_as_names(names))
        unknown = resolved - set(self.names)
        if unknown:
            raise UnknownVariableError(sorted(unknown))
        return resolved

    def subset_entropy(self, names: Iterable[str]) -> float:
        """Joint entropy of a subset of variables (empty set has entropy 0)."""
        key = self._resolve(names)
        if not key:
            return 0.0
        cached = self._entropy_cache.get(key)
        if cached is None:
            drop = tuple(i for i, name in enumerate(self.names) if name not in key)
            marginal = self.table.sum(axis=drop) if drop else self.table
            cached = _entropy_bits(marginal.reshape(-1))
            self._entropy_cache[key] = cached
        return cached


def _as_names(names: Iterable[str] | str) -> tuple[str, ...]:
    if isinstance(names, str):
        return (names,)
    return tuple(names)


# =============================================================================
# Information measures
# =============================================================================


def entropy(p: Pmf) -> float:
    """Shannon entropy of a pmf in bits, with 0 log 0 = 0."""
    if not isinstance(p, Pmf):
        p = Pmf(p)
    return _entropy_bits(p.probs)


def marginalize(j: JointPmf, keep: Iterable[str]) -> JointPmf:
    """Sum out every variable not in ``keep``; variable order is preserved."""
    keep_set = j._resolve(keep)
    if not keep_set:
        raise InvalidDistributionError("marginal", "keep set must be non-empty")
    drop = tuple(i for i, name in enumerate(j.names) if name not in keep_set)
    marginal = j.table.sum(axis=drop) if drop else np.array(j.table)
    marginal = marginal / marginal.sum()
    variables = tuple(var for var in j.variables if var[0] in keep_set)
    return JointPmf(variables, marginal)


def entropy_of(j: JointPmf, names: Iterable[str]) -> float:
    """H(names) under the joint ``j``."""
    return j.subset_entropy(names)


def conditional_entropy(j: JointPmf, a: Iterable[str], given: Iterable[str] = ()) -> float:
    """H(A|C) = H(A,C) - H(C), clamped at zero."""
    a_set, c_set = j._resolve(a), j._resolve(given)
    _require_disjoint(a_set, c_set)
    return max(0.0, j.subset_entropy(a_set | c_set) - j.subset_entropy(c_set))


def mutual_information(
    j: JointPmf,
    a: Iterable[str],
    b: Iterable[str],
    given: Iterable[str] = (),
) -> float:
    """I(A;B|C) in bits, clamped to be non-negative."""
    a_set, b_set, c_set = j._resolve(a), j._resolve(b), j._resolve(given)
    _require_disjoint(a_set, b_set, c_set)
    if not a_set or not b_set:
        return 0.0
    value = (
        j.subset_entropy(a_set | c_set)
        + j.subset_entropy(b_set | c_set)
        - j.subset_entropy(a_set | b_set | c_set)
        - j.subset_entropy(c_set)
    )
    return max(0.0, value)


def _require_disjoint(*sets: frozenset[str]) -> None:
    shared: set[str] = set()
    for i, first in enumerate(sets):
        for second in sets[i + 1:]:
            shared |= first & second
    if shared:
        raise OverlappingVariablesError(sorted(shared))


# =============================================================================
# Cascade composition
# =============================================================================


def chain_compose(
    p_u: Pmf,
    p_v_u: ConditionalPmf,
    p_v1v2_v: ConditionalPmf,
    p_x_v1v2: ConditionalPmf,
    channel_kernel: ConditionalPmf,
    private_sizes: Optional[tuple[int, int]] = None,
    output_sizes: Optional[tuple[int, int, int]] = None,
) -> JointPmf:
    """
    Compose p(u)p(v|u)p(v1,v2|v)p(x|v1,v2)p(y1,y2,z|x) into one joint.

    Args:
        p_u: Distribution of the cloud-center variable U
        p_v_u: Superposition layer p(v|u)
        p_v1v2_v: Private-layer pair p(v1,v2|v); its ``out_shape`` gives (|V1|, |V2|)
        p_x_v1v2: Channel-input map p(x|v1,v2)
        channel_kernel: Broadcast kernel p(y1,y2,z|x); its ``out_shape`` gives (|Y1|,|Y2|,|Z|)
        private_sizes: Overrides (|V1|, |V2|) when the factor is stored flat
        output_sizes: Overrides (|Y1|, |Y2|, |Z|) when the kernel is stored flat

    Returns:
        Joint over U, V, V1, V2, X, Y1, Y2, Z
    """
    card_u = p_u.alphabet_size
    if p_v_u.in_size != card_u:
        raise DimensionMismatchError("p(v|u) input", card_u, p_v_u.in_size)
    card_v = p_v_u.out_size
    if p_v1v2_v.in_size != card_v:
        raise DimensionMismatchError("p(v1,v2|v) input", card_v, p_v1v2_v.in_size)

    v1_v2 = tuple(private_sizes) if private_sizes else p_v1v2_v.out_shape
    if len(v1_v2) != 2 or v1_v2[0] * v1_v2[1] != p_v1v2_v.out_size:
        raise DimensionMismatchError("p(v1,v2|v) output", "(|V1|, |V2|)", v1_v2)
    if p_x_v1v2.in_size != p_v1v2_v.out_size:
        raise DimensionMismatchError("p(x|v1,v2) input", p_v1v2_v.out_size, p_x_v1v2.in_size)
    card_x = p_x_v1v2.out_size
    if channel_kernel.in_size != card_x:
        raise DimensionMismatchError("channel kernel input", card_x, channel_kernel.in_size)

    outputs = tuple(output_sizes) if output_sizes else channel_kernel.out_shape
    if len(outputs) != 3 or int(np.prod(outputs)) != channel_kernel.out_size:
        raise DimensionMismatchError("channel kernel output", "(|Y1|, |Y2|, |Z|)", outputs)

    card_v1, card_v2 = v1_v2
    joint = np.einsum(
        "u,uv,vab,abx,xijk->uvabxijk",
        p_u.probs,
        p_v_u.matrix,
        p_v1v2_v.matrix.reshape(card_v, card_v1, card_v2),
        p_x_v1v2.matrix.reshape(card_v1, card_v2, card_x),
        channel_kernel.matrix.reshape((card_x,) + outputs),
        optimize=True,
    )
    sizes = (card_u, card_v, card_v1, card_v2, card_x) + outputs
    return JointPmf(tuple(zip(CASCADE_VARIABLES, sizes)), joint)
