"""Inner bound for the broadcast channel with one-sided side information.

Two routes lead to the same region for a fixed auxiliary cascade:

* direct evaluation of the five closed-form rate bounds, and
* the raw rate-splitting system over sixteen rate variables, reduced to
  (R1, R2) by Fourier-Motzkin elimination.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from secrecy_toolkit.channel.broadcast import BroadcastChannel
from secrecy_toolkit.info.probability import JointPmf, mutual_information
from secrecy_toolkit.polyhedral.fourier_motzkin import EliminationStep, TraceCallback, eliminate_all
from secrecy_toolkit.polyhedral.system import LinIneq, LinSystem, to_fraction
from secrecy_toolkit.regions.cascade import AuxiliaryCascade
from secrecy_toolkit.regions.geometry import HalfPlane, RateRegion2D
from secrecy_toolkit.regions.projection import project_to_region
from secrecy_toolkit.utils.logging import get_logger
from secrecy_toolkit.utils.settings import settings

logger = get_logger("regions.theorem1")

RATE_SPLIT_VARIABLES = (
    "R1", "R2", "Ra", "R1a", "R1b", "R1c", "R2a", "R2a1", "R2a2",
    "R2b", "R2c", "Rd", "Rd1", "Rd2", "Rl1", "Rl2",
)
AUXILIARY_RATES = RATE_SPLIT_VARIABLES[2:]


class Theorem1Terms(BaseModel):
    """Information quantities of one cascade, in bits."""

    model_config = ConfigDict(frozen=True)

    # ===== Terms of the closed-form bounds =====
    i_v1_y1_v: float = Field(description="I(V1;Y1|V)")
    i_v1_z_v: float = Field(description="I(V1;Z|V)")
    i_v_y2_u: float = Field(description="I(V;Y2|U)")
    i_v_z_u: float = Field(description="I(V;Z|U)")
    i_uvv1_y1: float = Field(description="I(U,V,V1;Y1)")
    i_vv1_y1_u: float = Field(description="I(V,V1;Y1|U)")
    i_vv1_z_u: float = Field(description="I(V,V1;Z|U)")
    i_vv2_y2_u: float = Field(description="I(V,V2;Y2|U)")
    i_vv2_z_u: float = Field(description="I(V,V2;Z|U)")
    i_uvv2_y2: float = Field(description="I(U,V,V2;Y2)")
    i_v_y1_u: float = Field(description="I(V;Y1|U)")
    i_u_y1: float = Field(description="I(U;Y1)")
    i_u_y2: float = Field(description="I(U;Y2)")
    i_v1_v2_v: float = Field(description="I(V1;V2|V)")
    i_v2_y2_v: float = Field(description="I(V2;Y2|V)")
    i_v2_z_v: float = Field(description="I(V2;Z|V)")

    # ===== Extra terms of the rate-splitting system =====
    i_v1_v2_uv: float = Field(description="I(V1;V2|U,V)")
    i_v1_y1_uv: float = Field(description="I(V1;Y1|U,V)")
    i_v2_y2_uv: float = Field(description="I(V2;Y2|U,V)")
    i_v1_z_uv: float = Field(description="I(V1;Z|U,V)")
    i_v2_z_uv: float = Field(description="I(V2;Z|U,V)")

    @property
    def rn1(self) -> float:
        return self.i_v2_y2_v - self.i_v2_z_v - self.i_v1_v2_v

    @property
    def rn2(self) -> float:
        return min(self.i_v_y1_u - self.i_v_z_u, 0.0)

    @property
    def rn3(self) -> float:
        return min(self.rn1, 0.0)

    @property
    def rn4(self) -> float:
        return self.i_v1_y1_v - self.i_v1_z_v - self.i_v1_v2_v

    @property
    def rn5(self) -> float:
        return min(self.i_v_y1_u + self.i_u_y1 - self.i_u_y2, self.i_v_y1_u, self.i_v_z_u)

    def conditions(self) -> list[tuple[str, float, float]]:
        """The three strict side conditions as (description, left, right)."""
        return [
            ("I(V,V1;Y1|U) + RN3 > I(V,V1;Z|U)", self.i_vv1_y1_u + self.rn3, self.i_vv1_z_u),
            ("I(V1;Y1|V) + RN3 > I(V1;Z|V)", self.i_v1_y1_v + self.rn3, self.i_v1_z_v),
            ("I(V2;Y2|V) > I(V2;Z|V)", self.i_v2_y2_v, self.i_v2_z_v),
        ]

    def conditions_hold(self, tol: Optional[float] = None) -> bool:
        tol = settings.condition_tolerance if tol is None else tol
        return all(left - right > tol for _, left, right in self.conditions())

    def bounds(self) -> list[HalfPlane]:
        """The five rate bounds as halfplanes over (R1, R2)."""
        return [
            HalfPlane(
                1.0, 0.0,
                self.i_v1_y1_v - self.i_v1_z_v + self.i_v_y2_u - self.i_v_z_u + self.rn1 + self.rn2,
            ),
            HalfPlane(1.0, 0.0, self.i_uvv1_y1 - self.i_v1_z_v + self.rn3),
            HalfPlane(1.0, -1.0, self.i_vv1_y1_u - self.i_vv1_z_u + self.rn3),
            HalfPlane(0.0, 1.0, self.i_vv2_y2_u - self.i_vv2_z_u + min(self.rn2 + self.rn4, 0.0)),
            HalfPlane(1.0, 1.0, self.i_uvv2_y2 - self.i_vv2_z_u + self.rn4 + self.rn5),
        ]


def compute_terms(joint: JointPmf) -> Theorem1Terms:
    """Evaluate every information term on a composed cascade joint."""

    def mi(a, b, given=()):
        return mutual_information(joint, a, b, given)

    return Theorem1Terms(
        i_v1_y1_v=mi(["V1"], ["Y1"], ["V"]),
        i_v1_z_v=mi(["V1"], ["Z"], ["V"]),
        i_v_y2_u=mi(["V"], ["Y2"], ["U"]),
        i_v_z_u=mi(["V"], ["Z"], ["U"]),
        i_uvv1_y1=mi(["U", "V", "V1"], ["Y1"]),
        i_vv1_y1_u=mi(["V", "V1"], ["Y1"], ["U"]),
        i_vv1_z_u=mi(["V", "V1"], ["Z"], ["U"]),
        i_vv2_y2_u=mi(["V", "V2"], ["Y2"], ["U"]),
        i_vv2_z_u=mi(["V", "V2"], ["Z"], ["U"]),
        i_uvv2_y2=mi(["U", "V", "V2"], ["Y2"]),
        i_v_y1_u=mi(["V"], ["Y1"], ["U"]),
        i_u_y1=mi(["U"], ["Y1"]),
        i_u_y2=mi(["U"], ["Y2"]),
        i_v1_v2_v=mi(["V1"], ["V2"], ["V"]),
        i_v2_y2_v=mi(["V2"], ["Y2"], ["V"]),
        i_v2_z_v=mi(["V2"], ["Z"], ["V"]),
        i_v1_v2_uv=mi(["V1"], ["V2"], ["U", "V"]),
        i_v1_y1_uv=mi(["V1"], ["Y1"], ["U", "V"]),
        i_v2_y2_uv=mi(["V2"], ["Y2"], ["U", "V"]),
        i_v1_z_uv=mi(["V1"], ["Z"], ["U", "V"]),
        i_v2_z_uv=mi(["V2"], ["Z"], ["U", "V"]),
    )


def theorem1_region(terms: Theorem1Terms) -> RateRegion2D:
    """Closure of the inner bound for given terms; origin if a side condition fails."""
    failed = [
        text for text, left, right in terms.conditions()
        if not left - right > settings.condition_tolerance
    ]
    if failed:
        logger.debug(f"Side conditions fail: {'; '.join(failed)}")
        return RateRegion2D.origin()
    return RateRegion2D.from_halfplanes(terms.bounds())


def eval_theorem1(ch: BroadcastChannel, aux: AuxiliaryCascade) -> RateRegion2D:
    """Inner-bound region achieved by one auxiliary cascade on ``ch``."""
    return theorem1_region(compute_terms(aux.joint(ch)))


# =============================================================================
# Rate-splitting system and its elimination
# =============================================================================


def build_appendix_a_system(
    terms: Theorem1Terms, include_redundant: bool = False
) -> LinSystem:
    """
    Raw rate-splitting system over the sixteen rate variables.

    Information terms enter as rationals rounded to
    ``settings.mi_rounding_digits`` decimals. ``include_redundant`` adds the
    two secrecy constraints that are implied by the others.
    """
    digits = settings.mi_rounding_digits

    def q(value: float) -> Fraction:
        return to_fraction(float(value), digits)

    le, ge, eq = LinIneq.le, LinIneq.ge, LinIneq.eq
    rows = [ge({name: 1}, 0) for name in RATE_SPLIT_VARIABLES]
    rows += [
        # rate splitting
        eq({"R1": 1, "R1a": -1, "R1b": -1, "R1c": -1}, 0),
        eq({"R2": 1, "R2a": -1, "R2b": -1, "R2c": -1}, 0),
        eq({"Ra": 1, "R1a": -1}, 0),
        eq({"Ra": 1, "R2a": -1}, 0),
        eq({"R2a": 1, "R2a1": -1, "R2a2": -1}, 0),
        # covering for the Marton pair
        ge({"Rl1": 1, "Rl2": 1}, q(terms.i_v1_v2_uv)),
        # decoding at receiver 1
        le({"R1": 1, "Rd": 1, "Rd1": 1, "Rl1": 1}, q(terms.i_uvv1_y1)),
        le({"R1": 1, "Ra": -1, "Rd": 1, "Rd1": 1, "Rl1": 1}, q(terms.i_vv1_y1_u)),
        le({"R1c": 1, "Rd1": 1, "Rl1": 1}, q(terms.i_v1_y1_uv)),
        # decoding at receiver 2
        le({"R2": 1, "R1b": 1, "Rd": 1, "R2a": 1, "Rd2": 1, "Rl2": 1}, q(terms.i_uvv2_y2)),
        le({"R2": 1, "Ra": -1, "R1b": 1, "Rd": 1, "R2a": 1, "Rd2": 1, "Rl2": 1}, q(terms.i_vv2_y2_u)),
        le({"R2a2": 1, "R2c": 1, "Rd2": 1, "Rl2": 1}, q(terms.i_v2_y2_uv)),
        # secrecy
        ge({"R2b": 1, "Rd": 1}, q(terms.i_v_z_u)),
        ge({"Rd1": 1}, q(terms.i_v1_z_uv)),
        ge({"R1b": 1, "Rd": 1}, q(terms.i_v_z_u)),
        ge({"Rd2": 1}, q(terms.i_v2_z_uv)),
    ]
    if include_redundant:
        rows += [
            ge({"R1b": 1, "R2b": 1, "Rd": 1}, q(terms.i_v_z_u)),
            ge({"R2c": 1, "Rd2": 1}, q(terms.i_v2_z_uv)),
        ]
    return LinSystem(RATE_SPLIT_VARIABLES, tuple(rows))


@dataclass
class FMDerivation:
    """Outcome of the elimination route for one set of terms."""

    system: LinSystem
    reduced: LinSystem
    region: RateRegion2D
    steps: list[EliminationStep] = field(default_factory=list)


def derive_region_fm(
    terms: Theorem1Terms,
    include_redundant: bool = False,
    trace: Optional[TraceCallback] = None,
) -> FMDerivation:
    """Build the rate-splitting system, eliminate auxiliary rates and project."""
    system = build_appendix_a_system(terms, include_redundant=include_redundant)
    steps: list[EliminationStep] = []

    def record(step: EliminationStep) -> None:
        steps.append(step)
        if trace is not None:
            trace(step)

    reduced = eliminate_all(system, AUXILIARY_RATES, trace=record)
    logger.info(
        f"Eliminated {len(AUXILIARY_RATES)} rate variables in {len(steps)} steps; "
        f"{len(reduced.ineqs)} inequalities remain"
    )
    return FMDerivation(system, reduced, project_to_region(reduced), steps)
