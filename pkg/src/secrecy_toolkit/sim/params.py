"""Parameters of the layered secrecy code used by the simulator."""

import math
from functools import cached_property

from pydantic import BaseModel, ConfigDict, Field, model_validator

from secrecy_toolkit.channel.broadcast import BroadcastChannel
from secrecy_toolkit.info.probability import JointPmf, marginalize
from secrecy_toolkit.regions.cascade import AuxiliaryCascade
from secrecy_toolkit.utils.exceptions import SimulationConfigError

# Index cardinalities in the order they appear in reports
CARDINALITY_FIELDS = (
    "n_a", "n_1b", "n_1c", "n_2b", "n_2c", "n_2a1", "n_2a2",
    "n_d", "n_d1", "n_d2", "n_l1", "n_l2",
)


class CodeParams(BaseModel):
    """
    Blocklength, index-set sizes and typicality slacks of one code.

    ``n_a`` is the size of the padded common index (|M_a| = |M_1a| = |M_2a|);
    receiver 2's part M_2a is split into ``n_2a1 * n_2a2 == n_a`` pieces.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    n: int = Field(ge=1, description="Blocklength")
    n_a: int = Field(default=1, ge=1, description="|M_a|, the one-time-padded index")
    n_1b: int = Field(default=1, ge=1, description="|M_1b|, receiver 1's cloud-layer part")
    n_1c: int = Field(default=1, ge=1, description="|M_1c|, receiver 1's private part")
    n_2b: int = Field(default=1, ge=1, description="|M_2b|, receiver 2's cloud-layer part")
    n_2c: int = Field(default=1, ge=1, description="|M_2c|, receiver 2's private part")
    n_2a1: int = Field(default=1, ge=1, description="|M_2a1|, cloud-layer share of M_2a")
    n_2a2: int = Field(default=1, ge=1, description="|M_2a2|, private-layer share of M_2a")
    n_d: int = Field(default=1, ge=1, description="Cloud-layer randomization")
    n_d1: int = Field(default=1, ge=1, description="Receiver 1 private randomization")
    n_d2: int = Field(default=1, ge=1, description="Receiver 2 private randomization")
    n_l1: int = Field(default=1, ge=1, description="Marton bin size for V1")
    n_l2: int = Field(default=1, ge=1, description="Marton bin size for V2")
    eps: float = Field(default=2.0, gt=0, description="Decoder typicality slack")
    eps_prime: float = Field(default=1.5, gt=0, description="Encoder typicality slack")
    cascade: AuxiliaryCascade
    channel: BroadcastChannel

    @model_validator(mode="after")
    def _check_bounds(self) -> "CodeParams":
        if self.n_2a1 * self.n_2a2 != self.n_a:
            raise SimulationConfigError(
                "n_2a1 * n_2a2 == n_a",
                f"{self.n_2a1} * {self.n_2a2} != {self.n_a}",
            )
        if not self.eps > self.eps_prime:
            raise SimulationConfigError(
                "eps > eps_prime", f"eps={self.eps} is not larger than eps_prime={self.eps_prime}"
            )
        if self.cascade.card_x != self.channel.card_x:
            raise SimulationConfigError(
                "cascade input alphabet",
                f"cascade emits |X|={self.cascade.card_x}, channel expects {self.channel.card_x}",
            )
        return self

    @property
    def cardinalities(self) -> dict[str, int]:
        return {name: getattr(self, name) for name in CARDINALITY_FIELDS}

    @property
    def v_shape(self) -> tuple[int, int, int, int, int]:
        """Index space of the cloud layer: (m_a, m_1b, m_2b, m_2a1, d)."""
        return self.n_a, self.n_1b, self.n_2b, self.n_2a1, self.n_d

    @property
    def m1_shape(self) -> tuple[int, int, int]:
        return self.n_a, self.n_1b, self.n_1c

    @property
    def m2_shape(self) -> tuple[int, int, int, int]:
        return self.n_2a1, self.n_2a2, self.n_2b, self.n_2c

    def rates(self) -> dict[str, float]:
        """Rates log2(N)/n of every index, plus the message rates R1 and R2."""
        split = {f"R{name[2:]}": math.log2(size) / self.n for name, size in self.cardinalities.items()}
        split["R1a"] = split["R2a"] = split["Ra"]
        split["R1"] = split["Ra"] + split["R1b"] + split["R1c"]
        split["R2"] = split["Ra"] + split["R2b"] + split["R2c"]
        return split

    @cached_property
    def design_joint(self) -> JointPmf:
        """Joint of the cascade and channel that codebooks are drawn from."""
        return self.cascade.joint(self.channel)

    @cached_property
    def encoder_joint(self) -> JointPmf:
        return marginalize(self.design_joint, ["U", "V", "V1", "V2"])

    @cached_property
    def rx1_joint(self) -> JointPmf:
        return marginalize(self.design_joint, ["U", "V", "V1", "Y1"])

    @cached_property
    def rx2_joint(self) -> JointPmf:
        return marginalize(self.design_joint, ["U", "V", "V2", "Y2"])
