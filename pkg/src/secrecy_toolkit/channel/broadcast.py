"""Two-receiver broadcast channel with a passive eavesdropper.

The kernel p(y1,y2,z|x) is stored as a ``ConditionalPmf`` whose output
alphabet is the lexicographic product Y1 x Y2 x Z.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from secrecy_toolkit.info.probability import ConditionalPmf, JointPmf, Pmf
from secrecy_toolkit.utils.exceptions import ChannelPreconditionError, DimensionMismatchError
from secrecy_toolkit.utils.logging import get_logger
from secrecy_toolkit.utils.settings import settings

logger = get_logger("channel")


class Output(str, Enum):
    """Channel output selector."""

    Y1 = "Y1"
    Y2 = "Y2"
    Z = "Z"

    @property
    def axis(self) -> int:
        return {"Y1": 0, "Y2": 1, "Z": 2}[self.value]


class DegradednessOrder(str, Enum):
    """Markov chain X -> first -> second -> third among the three outputs."""

    Y2_Y1_Z = "Y2-Y1-Z"
    Y2_Z_Y1 = "Y2-Z-Y1"
    Z_Y2_Y1 = "Z-Y2-Y1"
    Y1_Y2_Z = "Y1-Y2-Z"
    Y1_Z_Y2 = "Y1-Z-Y2"
    Z_Y1_Y2 = "Z-Y1-Y2"
    NONE = "none"

    @property
    def chain(self) -> Optional[tuple[Output, Output, Output]]:
        if self is DegradednessOrder.NONE:
            return None
        first, second, third = self.value.split("-")
        return Output(first), Output(second), Output(third)

    @property
    def family(self) -> Optional[str]:
        """``thm2`` when Y2 precedes Y1, ``thm3`` when Y1 precedes Y2."""
        chain = self.chain
        if chain is None:
            return None
        return "thm2" if chain.index(Output.Y2) < chain.index(Output.Y1) else "thm3"


ORDERED_CHAINS = tuple(o for o in DegradednessOrder if o is not DegradednessOrder.NONE)
THM2_ORDERS = tuple(o for o in ORDERED_CHAINS if o.family == "thm2")
THM3_ORDERS = tuple(o for o in ORDERED_CHAINS if o.family == "thm3")


@dataclass(frozen=True, eq=False)
class BroadcastChannel:
    """Memoryless broadcast channel X -> (Y1, Y2, Z)."""

    card_x: int
    card_y1: int
    card_y2: int
    card_z: int
    kernel: ConditionalPmf

    def __post_init__(self):
        shape = (self.card_y1, self.card_y2, self.card_z)
        if self.kernel.in_size != self.card_x:
            raise DimensionMismatchError("channel kernel rows", self.card_x, self.kernel.in_size)
        if self.kernel.out_size != int(np.prod(shape)):
            raise DimensionMismatchError("channel kernel columns", int(np.prod(shape)), self.kernel.out_size)
        if self.kernel.out_shape != shape:
            object.__setattr__(
                self, "kernel", ConditionalPmf(self.kernel.matrix, out_shape=shape)
            )

    @property
    def output_sizes(self) -> tuple[int, int, int]:
        return self.card_y1, self.card_y2, self.card_z

    @property
    def tensor(self) -> np.ndarray:
        """Kernel as an array indexed [x, y1, y2, z]."""
        return self.kernel.matrix.reshape((self.card_x,) + self.output_sizes)

    @classmethod
    def from_table(
        cls, table, card_y1: int, card_y2: int, card_z: int
    ) -> "BroadcastChannel":
        matrix = np.asarray(table, dtype=float)
        return cls(
            card_x=matrix.shape[0],
            card_y1=card_y1,
            card_y2=card_y2,
            card_z=card_z,
            kernel=ConditionalPmf(matrix, out_shape=(card_y1, card_y2, card_z)),
        )

    @classmethod
    def from_functions(
        cls,
        y1: Sequence[int],
        y2: Sequence[int],
        z: Sequence[int],
        card_y1: Optional[int] = None,
        card_y2: Optional[int] = None,
        card_z: Optional[int] = None,
    ) -> "BroadcastChannel":
        """Deterministic channel with y1 = y1[x], y2 = y2[x], z = z[x]."""
        maps = [np.asarray(m, dtype=int) for m in (y1, y2, z)]
        card_x = maps[0].size
        if any(m.size != card_x for m in maps):
            raise DimensionMismatchError("deterministic maps", card_x, [m.size for m in maps])
        cards = [
            c if c is not None else int(m.max()) + 1
            for c, m in zip((card_y1, card_y2, card_z), maps)
        ]
        for name, m, c in zip(("y1", "y2", "z"), maps, cards):
            if np.any(m < 0) or np.any(m >= c):
                raise DimensionMismatchError(f"map {name}", f"values in [0, {c})", m.tolist())
        flat = np.ravel_multi_index(tuple(maps), tuple(cards))
        kernel = ConditionalPmf.from_function(flat, int(np.prod(cards)), out_shape=tuple(cards))
        return cls(card_x, cards[0], cards[1], cards[2], kernel)


# =============================================================================
# Structural checks
# =============================================================================


def output_kernel(ch: BroadcastChannel, output: Output | str) -> np.ndarray:
    """Marginal kernel p(output|x) as a (card_x, card_output) matrix."""
    output = Output(output)
    others = tuple(ax + 1 for ax in range(3) if ax != output.axis)
    return ch.tensor.sum(axis=others)


def is_deterministic(ch: BroadcastChannel, output: Output | str) -> bool:
    """True iff every row of p(output|x) has a single support symbol."""
    rows = output_kernel(ch, output)
    return bool(np.all(rows.max(axis=1) >= 1.0 - settings.pmf_tolerance))


def output_map(ch: BroadcastChannel, output: Output | str) -> np.ndarray:
    """Function table f with output = f(x) for a deterministic output."""
    output = Output(output)
    if not is_deterministic(ch, output):
        raise ChannelPreconditionError(
            f"deterministic {output.value}", f"{output.value} is not a function of X"
        )
    return output_kernel(ch, output).argmax(axis=1)


def _constant_across(cond: np.ndarray, weights: np.ndarray, tol: float) -> bool:
    """Rows of ``cond`` with positive weight agree within ``tol``."""
    live = cond[weights > settings.log_floor]
    if live.shape[0] <= 1:
        return True
    return bool(np.max(np.ptp(live, axis=0)) <= tol)


def check_degradedness(ch: BroadcastChannel, order: DegradednessOrder | str) -> bool:
    """
    Test physical degradedness X -> first -> second -> third.

    Under the uniform input, p(second|x,first) must not depend on x and
    p(third|x,first,second) must not depend on (x, first). Conditioning
    events of zero probability are skipped. ``NONE`` holds iff no ordered
    chain does.
    """
    order = DegradednessOrder(order)
    if order is DegradednessOrder.NONE:
        return not any(check_degradedness(ch, o) for o in ORDERED_CHAINS)

    tol = settings.channel_tolerance
    first, second, third = order.chain
    joint = ch.tensor / ch.card_x
    joint = np.transpose(joint, (0, first.axis + 1, second.axis + 1, third.axis + 1))

    p_xfs = joint.sum(axis=3)
    p_xf = p_xfs.sum(axis=2)
    with np.errstate(divide="ignore", invalid="ignore"):
        cond_second = np.where(p_xf[..., None] > 0, p_xfs / p_xf[..., None], 0.0)
        cond_third = np.where(p_xfs[..., None] > 0, joint / p_xfs[..., None], 0.0)

    for f in range(joint.shape[1]):
        if not _constant_across(cond_second[:, f, :], p_xf[:, f], tol):
            return False

    card_s = joint.shape[2]
    for s in range(card_s):
        rows = cond_third[:, :, s, :].reshape(-1, joint.shape[3])
        weights = p_xfs[:, :, s].reshape(-1)
        if not _constant_across(rows, weights, tol):
            return False
    return True


def holding_orders(ch: BroadcastChannel) -> list[DegradednessOrder]:
    """Every ordered chain for which the channel is physically degraded."""
    return [o for o in ORDERED_CHAINS if check_degradedness(ch, o)]


def theorem_families(ch: BroadcastChannel) -> set[str]:
    """Capacity theorems whose hypotheses the channel satisfies."""
    if not all(is_deterministic(ch, out) for out in Output):
        return set()
    return {o.family for o in holding_orders(ch)}


def theorem_family(ch: BroadcastChannel) -> Optional[str]:
    """'thm2', 'thm3' or None; a channel in both families reports 'thm2'."""
    families = theorem_families(ch)
    for family in ("thm2", "thm3"):
        if family in families:
            return family
    return None


def require_family(ch: BroadcastChannel, family: str) -> None:
    """Raise a descriptive error unless the channel is in ``family``."""
    for out in Output:
        if not is_deterministic(ch, out):
            raise ChannelPreconditionError(
                f"{family}: deterministic outputs",
                f"{out.value} is not a deterministic function of X",
            )
    orders = THM2_ORDERS if family == "thm2" else THM3_ORDERS
    if not any(check_degradedness(ch, o) for o in orders):
        raise ChannelPreconditionError(
            f"{family}: degradedness",
            "channel satisfies none of the orders "
            + ", ".join(f"X-{o.value}" for o in orders),
        )
    logger.debug(f"Channel satisfies the {family} hypotheses")


def induced_joint(ch: BroadcastChannel, p_x: Pmf) -> JointPmf:
    """Joint p(x)p(y1,y2,z|x) over X, Y1, Y2, Z."""
    if not isinstance(p_x, Pmf):
        p_x = Pmf(p_x)
    if p_x.alphabet_size != ch.card_x:
        raise DimensionMismatchError("input distribution", ch.card_x, p_x.alphabet_size)
    table = p_x.probs[:, None, None, None] * ch.tensor
    return JointPmf(
        (("X", ch.card_x), ("Y1", ch.card_y1), ("Y2", ch.card_y2), ("Z", ch.card_z)),
        table,
    )
