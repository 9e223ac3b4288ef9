"""Numerical defaults for the secrecy toolkit using Pydantic Settings."""

from pathlib import Path

from pydantic import Field, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Tolerances and default experiment sizes.

    Every field can be overridden with a ``SECRECY_TOOLKIT_<FIELD>`` variable.
    """

    model_config = SettingsConfigDict(
        env_prefix="SECRECY_TOOLKIT_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
        extra="ignore",
    )

    # ===== Tolerances =====
    pmf_tolerance: float = Field(
        default=1e-12,
        description="Allowed deviation of a pmf's total mass from 1",
        gt=0,
    )
    log_floor: float = Field(
        default=1e-15,
        description="Probabilities below this are treated as zero in log terms",
        ge=0,
    )
    channel_tolerance: float = Field(
        default=1e-9,
        description="Tolerance for determinism/degradedness comparisons and spec-file row sums",
        gt=0,
    )
    condition_tolerance: float = Field(
        default=1e-12,
        description="Margin for strict entropy and information conditions",
        ge=0,
    )
    vertex_tolerance: float = Field(
        default=1e-9,
        description="Tolerance for vertex deduplication and halfplane membership",
        gt=0,
    )

    # ===== Polyhedral =====
    mi_rounding_digits: int = Field(
        default=12,
        description="Decimal digits kept when injecting information terms as rationals",
        ge=1,
        le=17,
    )

    # ===== Region Construction =====
    grid_size: int = Field(
        default=2000,
        description="Number of p(x) points in capacity-region grids",
        ge=1,
    )
    grid_seed: int = Field(default=0, description="Seed for Dirichlet grid samples")
    search_budget: int = Field(
        default=5000,
        description="Random cascades evaluated by the inner-bound search",
        ge=1,
    )
    search_sizes: tuple[int, int, int, int] = Field(
        default=(2, 2, 2, 2),
        description="Auxiliary alphabet bounds |U|,|V|,|V1|,|V2| for the search",
    )
    union_containment_tolerance: float = Field(
        default=0.02,
        description="Tolerance for grid-resolution region comparisons",
        gt=0,
    )

    # ===== Simulation =====
    sim_n: int = Field(default=8, description="Blocklength", ge=1)
    sim_trials: int = Field(default=1000, description="Monte-Carlo trials", ge=1)
    sim_eps: float = Field(default=2.0, description="Decoder typicality slack", gt=0)
    sim_eps_prime: float = Field(
        default=1.5, description="Encoder typicality slack", gt=0
    )
    sim_regen_every: int = Field(
        default=0,
        description="Regenerate the codebook every this many trials (0 = never)",
        ge=0,
    )
    histogram_bits_limit: int = Field(
        default=16,
        description="Largest n*log2|Z| for which leakage histograms are built",
        ge=1,
    )

    # ===== Output =====
    csv_significant_digits: int = Field(
        default=12, description="Significant digits in region CSV files", ge=1, le=17
    )
    output_dir: Path = Field(
        default=Path("./secrecy_output"),
        description="Default directory for command outputs",
    )
    seed: int = Field(default=0, description="Default random seed", ge=0, lt=2**64)

    @model_validator(mode="after")
    def _check_slack_order(self) -> "Settings":
        if not self.sim_eps > self.sim_eps_prime:
            raise ValueError("sim_eps must exceed sim_eps_prime")
        return self


settings = Settings()
