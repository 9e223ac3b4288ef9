"""Auxiliary cascades p(u)p(v|u)p(v1,v2|v)p(x|v1,v2).

Besides random cascades for the inner-bound search, this module builds
deterministic cascades in which every auxiliary is a function of X (a
constant, Y1, Y2 or X itself); the capacity sub-regions are of this kind.
"""

import itertools
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from secrecy_toolkit.channel.broadcast import BroadcastChannel, Output, is_deterministic, output_map
from secrecy_toolkit.info.probability import (
    ConditionalPmf,
    JointPmf,
    Pmf,
    chain_compose,
    conditional_entropy,
)
from secrecy_toolkit.utils.exceptions import DimensionMismatchError
from secrecy_toolkit.utils.settings import settings

AUXILIARIES = ("U", "V", "V1", "V2")

# Identifications available to the structured search
CONST = "const"
IDENTIFICATIONS = (CONST, Output.Y1.value, Output.Y2.value, "X")


@dataclass(frozen=True, eq=False)
class AuxiliaryCascade:
    """The four factors of an auxiliary distribution for the inner bound."""

    p_u: Pmf
    p_v_given_u: ConditionalPmf
    p_v1v2_given_v: ConditionalPmf
    p_x_given_v1v2: ConditionalPmf
    label: str = ""

    def __post_init__(self):
        card_u = self.p_u.alphabet_size
        if self.p_v_given_u.in_size != card_u:
            raise DimensionMismatchError("p(v|u) rows", card_u, self.p_v_given_u.in_size)
        if self.p_v1v2_given_v.in_size != self.p_v_given_u.out_size:
            raise DimensionMismatchError(
                "p(v1,v2|v) rows", self.p_v_given_u.out_size, self.p_v1v2_given_v.in_size
            )
        if len(self.p_v1v2_given_v.out_shape) != 2:
            raise DimensionMismatchError("p(v1,v2|v) columns", "(|V1|, |V2|)", self.p_v1v2_given_v.out_shape)
        if self.p_x_given_v1v2.in_size != self.p_v1v2_given_v.out_size:
            raise DimensionMismatchError(
                "p(x|v1,v2) rows", self.p_v1v2_given_v.out_size, self.p_x_given_v1v2.in_size
            )

    @property
    def sizes(self) -> tuple[int, int, int, int]:
        card_v1, card_v2 = self.p_v1v2_given_v.out_shape
        return self.p_u.alphabet_size, self.p_v_given_u.out_size, card_v1, card_v2

    @property
    def card_x(self) -> int:
        return self.p_x_given_v1v2.out_size

    @property
    def p_v1_given_v(self) -> np.ndarray:
        return self.p_v1v2_given_v.tensor.sum(axis=2)

    @property
    def p_v2_given_v(self) -> np.ndarray:
        return self.p_v1v2_given_v.tensor.sum(axis=1)

    def joint(self, ch: BroadcastChannel) -> JointPmf:
        """Eight-variable joint of this cascade followed by the channel."""
        if self.card_x != ch.card_x:
            raise DimensionMismatchError("cascade input alphabet", ch.card_x, self.card_x)
        return chain_compose(
            self.p_u, self.p_v_given_u, self.p_v1v2_given_v, self.p_x_given_v1v2, ch.kernel
        )

    @classmethod
    def degenerate(cls, card_x: int, p_x: Optional[Pmf] = None) -> "AuxiliaryCascade":
        """All auxiliaries constant; X drawn from ``p_x`` (uniform by default)."""
        p_x = p_x or Pmf.uniform(card_x)
        return cls(
            Pmf.point_mass(1, 0),
            ConditionalPmf(np.ones((1, 1))),
            ConditionalPmf(np.ones((1, 1)), out_shape=(1, 1)),
            ConditionalPmf(p_x.probs.reshape(1, -1), in_shape=(1, 1)),
            label="degenerate",
        )


def _dirichlet_rows(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return rng.dirichlet(np.ones(cols), size=rows)


def random_cascade(
    sizes: Sequence[int], card_x: int, rng: np.random.Generator
) -> AuxiliaryCascade:
    """Cascade with every conditional row drawn uniformly from its simplex."""
    card_u, card_v, card_v1, card_v2 = (int(s) for s in sizes)
    return AuxiliaryCascade(
        Pmf(rng.dirichlet(np.ones(card_u))),
        ConditionalPmf(_dirichlet_rows(rng, card_u, card_v)),
        ConditionalPmf(_dirichlet_rows(rng, card_v, card_v1 * card_v2), out_shape=(card_v1, card_v2)),
        ConditionalPmf(
            _dirichlet_rows(rng, card_v1 * card_v2, card_x), in_shape=(card_v1, card_v2)
        ),
        label="random",
    )


# =============================================================================
# Deterministic cascades
# =============================================================================


def _conditional(joint: np.ndarray, n_in: int, n_out: int) -> np.ndarray:
    """Rows of p(out|in) from a (n_in, n_out) joint; empty rows become uniform."""
    joint = joint.reshape(n_in, n_out)
    mass = joint.sum(axis=1, keepdims=True)
    with np.errstate(divide="ignore", invalid="ignore"):
        rows = np.where(mass > 0, joint / np.where(mass > 0, mass, 1.0), 1.0 / n_out)
    return rows / rows.sum(axis=1, keepdims=True)


def cascade_from_functions(
    p_x: Pmf,
    tables: dict[str, Sequence[int]],
    cards: dict[str, int],
    label: str = "",
) -> AuxiliaryCascade:
    """
    Cascade in which U, V, V1 and V2 are functions of X.

    Args:
        p_x: Input distribution
        tables: For each auxiliary name, its value for every x
        cards: Alphabet size of each auxiliary

    Returns:
        The cascade whose composed joint puts mass p(x) on
        (u(x), v(x), v1(x), v2(x), x)
    """
    card_x = p_x.alphabet_size
    maps = {name: np.asarray(tables[name], dtype=int) for name in AUXILIARIES}
    for name, table in maps.items():
        if table.size != card_x:
            raise DimensionMismatchError(f"map for {name}", card_x, table.size)
    card_u, card_v, card_v1, card_v2 = (cards[name] for name in AUXILIARIES)

    joint = np.zeros((card_u, card_v, card_v1, card_v2, card_x))
    for x in range(card_x):
        joint[maps["U"][x], maps["V"][x], maps["V1"][x], maps["V2"][x], x] += p_x.probs[x]

    p_u = joint.sum(axis=(1, 2, 3, 4))
    p_uv = joint.sum(axis=(2, 3, 4))
    p_v_v1v2 = joint.sum(axis=(0, 4))
    p_v1v2_x = joint.sum(axis=(0, 1))

    return AuxiliaryCascade(
        Pmf(p_u / p_u.sum()),
        ConditionalPmf(_conditional(p_uv, card_u, card_v)),
        ConditionalPmf(
            _conditional(p_v_v1v2, card_v, card_v1 * card_v2), out_shape=(card_v1, card_v2)
        ),
        ConditionalPmf(
            _conditional(p_v1v2_x, card_v1 * card_v2, card_x), in_shape=(card_v1, card_v2)
        ),
        label=label,
    )


def _identification_map(ch: BroadcastChannel, ident: str) -> tuple[np.ndarray, int]:
    if ident == CONST:
        return np.zeros(ch.card_x, dtype=int), 1
    if ident == "X":
        return np.arange(ch.card_x), ch.card_x
    table = output_map(ch, ident)
    return table, int(table.max()) + 1


def is_markov_valid(joint: JointPmf) -> bool:
    """U is a function of V, and V a function of V1 and of V2."""
    tol = settings.channel_tolerance
    return (
        conditional_entropy(joint, ["U"], ["V"]) <= tol
        and conditional_entropy(joint, ["V"], ["V1"]) <= tol
        and conditional_entropy(joint, ["V"], ["V2"]) <= tol
    )


def structured_cascades(
    ch: BroadcastChannel,
    sizes: Sequence[int],
    p_x: Optional[Pmf] = None,
) -> Iterator[AuxiliaryCascade]:
    """
    Deterministic candidates with each auxiliary set to const, Y1, Y2 or X.

    Outputs are only used when the channel makes them functions of X.
    Candidates whose alphabets exceed ``sizes`` or that break the cascade's
    Markov structure are skipped.
    """
    p_x = p_x or Pmf.uniform(ch.card_x)
    choices = [
        ident for ident in IDENTIFICATIONS if ident in (CONST, "X") or is_deterministic(ch, ident)
    ]
    maps = {ident: _identification_map(ch, ident) for ident in choices}

    for combo in itertools.product(choices, repeat=len(AUXILIARIES)):
        cards = {name: maps[ident][1] for name, ident in zip(AUXILIARIES, combo)}
        if any(cards[name] > int(bound) for name, bound in zip(AUXILIARIES, sizes)):
            continue
        tables = {name: maps[ident][0] for name, ident in zip(AUXILIARIES, combo)}
        label = ", ".join(f"{name}={ident}" for name, ident in zip(AUXILIARIES, combo))
        cascade = cascade_from_functions(p_x, tables, cards, label=label)
        aux_joint = JointPmf(
            tuple(zip(AUXILIARIES, cascade.sizes)),
            _auxiliary_table(p_x, tables, cascade.sizes),
        )
        if is_markov_valid(aux_joint):
            yield cascade


def _auxiliary_table(p_x: Pmf, tables: dict[str, np.ndarray], sizes: Sequence[int]) -> np.ndarray:
    table = np.zeros(tuple(sizes))
    for x, px in enumerate(p_x.probs):
        table[tuple(int(tables[name][x]) for name in AUXILIARIES)] += px
    return table
