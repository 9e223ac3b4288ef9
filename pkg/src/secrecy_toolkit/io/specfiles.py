"""Readers for channel, cascade and simulation input files (TOML).

All three formats are validated with pydantic models; failures surface as
``SpecParseError`` (TOML syntax, with line and column) or ``SpecFieldError``
(schema, naming the offending field).
"""

import re
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional, TypeVar

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from secrecy_toolkit.channel.broadcast import BroadcastChannel
from secrecy_toolkit.info.probability import ConditionalPmf, Pmf
from secrecy_toolkit.regions.cascade import AuxiliaryCascade
from secrecy_toolkit.sim.params import CodeParams
from secrecy_toolkit.utils.exceptions import SpecFieldError, SpecParseError
from secrecy_toolkit.utils.logging import get_logger
from secrecy_toolkit.utils.settings import settings

logger = get_logger("io.specfiles")

Model = TypeVar("Model", bound=BaseModel)

_TOML_POSITION = re.compile(r"at line (\d+), column (\d+)")

# File key -> CodeParams field
CARDINALITY_KEYS = {
    "a": "n_a",
    "b1": "n_1b",
    "c1": "n_1c",
    "b2": "n_2b",
    "c2": "n_2c",
    "a21": "n_2a1",
    "a22": "n_2a2",
    "d": "n_d",
    "d1": "n_d1",
    "d2": "n_d2",
    "l1": "n_l1",
    "l2": "n_l2",
}


def parse_probability(value: Any) -> float:
    """A table entry: a number or a rational string such as ``"1/3"``."""
    if isinstance(value, bool):
        raise ValueError(f"expected a probability, got {value!r}")
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            return float(Fraction(value.strip()))
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"'{value}' is not a number or p/q rational") from e
    raise ValueError(f"expected a probability, got {type(value).__name__}")


def _parse_rows(rows: Any) -> list[list[float]]:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ValueError("expected a list of rows")
    return [[parse_probability(v) for v in row] for row in rows]


# =============================================================================
# Schemas
# =============================================================================


class _SpecModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class Alphabets(_SpecModel):
    x: int = Field(ge=1)
    y1: int = Field(ge=1)
    y2: int = Field(ge=1)
    z: int = Field(ge=1)


class DeterministicMaps(_SpecModel):
    y1: list[int]
    y2: list[int]
    z: list[int]


class KernelTable(_SpecModel):
    table: list[list[float]]

    @field_validator("table", mode="before")
    @classmethod
    def _entries(cls, v: Any) -> list[list[float]]:
        return _parse_rows(v)


class ChannelSpec(_SpecModel):
    """Channel spec file: alphabets plus exactly one kernel description."""

    alphabets: Alphabets
    deterministic: Optional[DeterministicMaps] = None
    kernel: Optional[KernelTable] = None

    @model_validator(mode="after")
    def _one_kernel(self) -> "ChannelSpec":
        if (self.deterministic is None) == (self.kernel is None):
            raise ValueError("give exactly one of [deterministic] and [kernel]")
        return self


class CascadeSizes(_SpecModel):
    u: int = Field(ge=1)
    v: int = Field(ge=1)
    v1: int = Field(ge=1)
    v2: int = Field(ge=1)


class CascadeSpec(_SpecModel):
    sizes: CascadeSizes
    p_u: list[float]
    p_v_given_u: list[list[float]]
    p_v1v2_given_v: list[list[float]]
    p_x_given_v1v2: list[list[float]]
    label: str = ""

    @field_validator("p_u", mode="before")
    @classmethod
    def _entries(cls, v: Any) -> list[float]:
        if not isinstance(v, list):
            raise ValueError("expected a list")
        return [parse_probability(x) for x in v]

    @field_validator("p_v_given_u", "p_v1v2_given_v", "p_x_given_v1v2", mode="before")
    @classmethod
    def _tables(cls, v: Any) -> list[list[float]]:
        return _parse_rows(v)


class Cardinalities(_SpecModel):
    a: int = Field(default=1, ge=1)
    b1: int = Field(default=1, ge=1)
    c1: int = Field(default=1, ge=1)
    b2: int = Field(default=1, ge=1)
    c2: int = Field(default=1, ge=1)
    a21: int = Field(default=1, ge=1)
    a22: int = Field(default=1, ge=1)
    d: int = Field(default=1, ge=1)
    d1: int = Field(default=1, ge=1)
    d2: int = Field(default=1, ge=1)
    l1: int = Field(default=1, ge=1)
    l2: int = Field(default=1, ge=1)


class SimulationConfig(_SpecModel):
    """Simulation config file; unset values fall back to ``settings``."""

    n: int = Field(default_factory=lambda: settings.sim_n, ge=1)
    trials: int = Field(default_factory=lambda: settings.sim_trials, ge=1)
    eps: float = Field(default_factory=lambda: settings.sim_eps, gt=0)
    eps_prime: float = Field(default_factory=lambda: settings.sim_eps_prime, gt=0)
    regen_every: int = Field(default_factory=lambda: settings.sim_regen_every, ge=0)
    seed: int = Field(default_factory=lambda: settings.seed, ge=0, lt=2**64)
    cardinalities: Cardinalities = Field(default_factory=Cardinalities)

    def with_overrides(self, **overrides: Any) -> "SimulationConfig":
        """Copy with every non-None override applied and re-validated."""
        data = self.model_dump()
        data.update({k: v for k, v in overrides.items() if v is not None})
        return SimulationConfig.model_validate(data)

    def code_params(self, cascade: AuxiliaryCascade, channel: BroadcastChannel) -> CodeParams:
        sizes = {CARDINALITY_KEYS[k]: v for k, v in self.cardinalities.model_dump().items()}
        return CodeParams(
            n=self.n, eps=self.eps, eps_prime=self.eps_prime, cascade=cascade, channel=channel, **sizes
        )


# =============================================================================
# Loading
# =============================================================================


def read_toml(path: Path | str) -> dict[str, Any]:
    """Parse a TOML file, reporting syntax errors with their position."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise SpecParseError(path, f"cannot read file: {e.strerror or e}") from e
    try:
        return tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        line = getattr(e, "lineno", None)
        column = getattr(e, "colno", None)
        if line is None:
            match = _TOML_POSITION.search(str(e))
            if match:
                line, column = int(match.group(1)), int(match.group(2))
        reason = getattr(e, "msg", None) or _TOML_POSITION.sub("", str(e)).strip(" ()")
        raise SpecParseError(path, reason, line=line, column=column) from e


def _validate(model: type[Model], data: dict[str, Any], path: Path | str) -> Model:
    try:
        return model.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        field = ".".join(str(part) for part in first["loc"]) or "<document>"
        raise SpecFieldError(path, field, first["msg"]) from e


def _check_rows(path: Path | str, field: str, rows: list[list[float]], n_rows: int, n_cols: int) -> np.ndarray:
    """Shape, sign and row-sum checks; returns rows renormalized to sum 1 exactly."""
    if len(rows) != n_rows:
        raise SpecFieldError(path, field, f"expected {n_rows} rows, got {len(rows)}")
    for i, row in enumerate(rows):
        if len(row) != n_cols:
            raise SpecFieldError(path, f"{field}[{i}]", f"expected {n_cols} entries, got {len(row)}")
    matrix = np.asarray(rows, dtype=float).reshape(n_rows, n_cols)
    tol = settings.channel_tolerance
    if np.any(matrix < 0):
        i = int(np.argwhere(matrix < 0)[0][0])
        raise SpecFieldError(path, f"{field}[{i}]", "negative probability")
    sums = matrix.sum(axis=1)
    for i, total in enumerate(sums):
        if abs(total - 1.0) > tol:
            raise SpecFieldError(path, f"{field}[{i}]", f"row sums to {total:.12g}, not 1 (tolerance {tol:g})")
    return matrix / sums[:, None]


def channel_from_spec(spec: ChannelSpec, path: Path | str = "<channel>") -> BroadcastChannel:
    a = spec.alphabets
    if spec.deterministic is not None:
        maps = spec.deterministic
        for name, card in (("y1", a.y1), ("y2", a.y2), ("z", a.z)):
            values = getattr(maps, name)
            if len(values) != a.x:
                raise SpecFieldError(path, f"deterministic.{name}", f"expected {a.x} entries, got {len(values)}")
            bad = [v for v in values if not 0 <= v < card]
            if bad:
                raise SpecFieldError(path, f"deterministic.{name}", f"values {bad} outside [0, {card})")
        return BroadcastChannel.from_functions(maps.y1, maps.y2, maps.z, a.y1, a.y2, a.z)
    matrix = _check_rows(path, "kernel.table", spec.kernel.table, a.x, a.y1 * a.y2 * a.z)
    return BroadcastChannel.from_table(matrix, a.y1, a.y2, a.z)


def cascade_from_spec(spec: CascadeSpec, path: Path | str = "<cascade>") -> AuxiliaryCascade:
    s = spec.sizes
    p_u = _check_rows(path, "p_u", [spec.p_u], 1, s.u)[0]
    p_v_given_u = _check_rows(path, "p_v_given_u", spec.p_v_given_u, s.u, s.v)
    p_v1v2 = _check_rows(path, "p_v1v2_given_v", spec.p_v1v2_given_v, s.v, s.v1 * s.v2)
    if not spec.p_x_given_v1v2 or not spec.p_x_given_v1v2[0]:
        raise SpecFieldError(path, "p_x_given_v1v2", "table is empty")
    card_x = len(spec.p_x_given_v1v2[0])
    p_x = _check_rows(path, "p_x_given_v1v2", spec.p_x_given_v1v2, s.v1 * s.v2, card_x)
    return AuxiliaryCascade(
        Pmf(p_u),
        ConditionalPmf(p_v_given_u),
        ConditionalPmf(p_v1v2, out_shape=(s.v1, s.v2)),
        ConditionalPmf(p_x, in_shape=(s.v1, s.v2)),
        label=spec.label or Path(str(path)).stem,
    )


def load_channel(path: Path | str) -> BroadcastChannel:
    """Read a channel spec file."""
    channel = channel_from_spec(_validate(ChannelSpec, read_toml(path), path), path)
    logger.debug(
        f"Loaded channel from {path}: |X|={channel.card_x}, "
        f"|Y1|={channel.card_y1}, |Y2|={channel.card_y2}, |Z|={channel.card_z}"
    )
    return channel


def load_cascade(path: Path | str, channel: Optional[BroadcastChannel] = None) -> AuxiliaryCascade:
    """Read a cascade file; with ``channel`` also check the input alphabet."""
    cascade = cascade_from_spec(_validate(CascadeSpec, read_toml(path), path), path)
    if channel is not None and cascade.card_x != channel.card_x:
        raise SpecFieldError(
            path, "p_x_given_v1v2", f"rows have {cascade.card_x} columns but the channel has |X|={channel.card_x}"
        )
    logger.debug(f"Loaded cascade '{cascade.label}' with sizes {cascade.sizes}")
    return cascade


def load_simulation_config(path: Optional[Path | str] = None) -> SimulationConfig:
    """Read a simulation config file, or the defaults when ``path`` is None."""
    if path is None:
        return SimulationConfig()
    return _validate(SimulationConfig, read_toml(path), path)
