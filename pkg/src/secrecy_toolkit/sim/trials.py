"""Monte-Carlo runs of the layered secrecy code."""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
from numpy.random import default_rng
from pydantic import BaseModel, ConfigDict, Field

from secrecy_toolkit.regions.theorem1 import eval_theorem1
from secrecy_toolkit.sim.codebook import Codebook, generate_codebook
from secrecy_toolkit.sim.coder import decode_rx1, decode_rx2, encode, rx2_message, transmit
from secrecy_toolkit.sim.params import CodeParams
from secrecy_toolkit.utils.config import worker_count
from secrecy_toolkit.utils.logging import get_logger
from secrecy_toolkit.utils.settings import settings

logger = get_logger("sim.trials")

EVENT_NAMES = ("E0", "E11", "E12", "E13", "E14", "E21", "E22", "E23", "E24")

# Order of the lines in report.txt
REPORT_KEYS = (
    "trials", "n", "seed", "regen_every", "codebooks",
    "R1", "R2", "design_point_inside",
    "err1", "err2", "encoder_fallbacks",
    "leakage_available", "leak1", "leak2", "leak_rate1", "leak_rate2",
)


class SimulationReport(BaseModel):
    """Aggregated outcome of ``run_trials``."""

    model_config = ConfigDict(frozen=True)

    trials: int = Field(ge=1)
    n: int = Field(ge=1)
    seed: int
    regen_every: int = Field(ge=0)
    codebooks: int = Field(ge=1, description="Codebooks drawn during the run")
    R1: float = Field(ge=0, description="Message rate of receiver 1 implied by the cardinalities")
    R2: float = Field(ge=0, description="Message rate of receiver 2 implied by the cardinalities")
    design_point_inside: bool = Field(
        description="Whether (R1, R2) lies in the inner-bound region of the design cascade"
    )
    err1: float = Field(ge=0, le=1, description="Frequency of wrong m1 estimates")
    err2: float = Field(ge=0, le=1, description="Frequency of wrong m2 estimates")
    encoder_fallbacks: int = Field(ge=0)
    event_counts: dict[str, int]
    leakage_available: bool
    leak1: Optional[float] = Field(default=None, ge=0, description="Plug-in I(M1;Z^n) in bits")
    leak2: Optional[float] = Field(default=None, ge=0, description="Plug-in I(M2;Z^n) in bits")
    cardinalities: dict[str, int] = Field(default_factory=dict)

    @property
    def leak_rate1(self) -> Optional[float]:
        return None if self.leak1 is None else self.leak1 / self.n

    @property
    def leak_rate2(self) -> Optional[float]:
        return None if self.leak2 is None else self.leak2 / self.n

    def to_text(self) -> str:
        """Flat ``key = value`` block; floats carry 12 significant digits."""
        lines = [f"{key} = {_format_value(getattr(self, key))}" for key in REPORT_KEYS]
        lines += [f"N_{name[2:]} = {size}" for name, size in self.cardinalities.items()]
        return "\n".join(lines) + "\n"

    def events_csv(self) -> str:
        rows = ["event,count"] + [f"{name},{self.event_counts.get(name, 0)}" for name in EVENT_NAMES]
        return "\n".join(rows) + "\n"


def _format_value(value: object) -> str:
    if value is None:
        return "unavailable"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.12g}"
    return str(value)


@dataclass(frozen=True)
class TrialOutcome:
    m1: int
    m2: int
    z: Optional[int]
    error1: bool
    error2: bool
    fallback: bool
    events: frozenset[str]


def histogram_feasible(params: CodeParams) -> bool:
    """Whether Z^n histograms fit under ``settings.histogram_bits_limit``."""
    return params.n * math.log2(params.channel.card_z) <= settings.histogram_bits_limit


def plugin_mutual_information(messages: Sequence[int], observations: Sequence[int]) -> float:
    """
    Plug-in estimate of I(M; Z) in bits from paired samples.

    Counts are kept as integers so that independent pairs give exact zeros.
    """
    if len(messages) != len(observations):
        raise ValueError("messages and observations must be paired")
    total = len(messages)
    if total == 0:
        return 0.0
    pairs, pair_counts = np.unique(
        np.column_stack([np.asarray(messages), np.asarray(observations)]), axis=0, return_counts=True
    )
    m_totals: dict[int, int] = {}
    z_totals: dict[int, int] = {}
    for (m, z), c in zip(pairs.tolist(), pair_counts.tolist()):
        m_totals[m] = m_totals.get(m, 0) + c
        z_totals[z] = z_totals.get(z, 0) + c
    info = 0.0
    for (m, z), c in zip(pairs.tolist(), pair_counts.tolist()):
        info += c / total * math.log2((c * total) / (m_totals[m] * z_totals[z]))
    return max(info, 0.0)


def _run_trial(
    params: CodeParams, cb: Codebook, seed: int, trial: int, track_z: bool
) -> TrialOutcome:
    rng = default_rng([seed, trial])
    m1 = tuple(int(rng.integers(size)) for size in params.m1_shape)
    m2 = tuple(int(rng.integers(size)) for size in params.m2_shape)
    _, m1b, m1c = m1
    m2a1, m2a2, m2b, m2c = m2

    tx = encode(cb, params, m1, m2, rng)
    y1, y2, z = transmit(params, tx.x, rng)

    rx1 = decode_rx1(cb, params, y1, m2, truth=(tx.m_a, m1b, m1c, tx.d, tx.d1, tx.l1))
    rx2 = decode_rx2(
        cb, params, y2, truth=(tx.m_a, m1b, m2b, m2a1, tx.d, m2a2, m2c, tx.d2, tx.l2)
    )
    events = set(rx1.events | rx2.events)
    if tx.fallback:
        events.add("E0")

    z_code = None
    if track_z:
        z_code = 0
        for symbol in z.tolist():
            z_code = z_code * params.channel.card_z + int(symbol)
    return TrialOutcome(
        m1=int(np.ravel_multi_index(m1, params.m1_shape)),
        m2=int(np.ravel_multi_index(m2, params.m2_shape)),
        z=z_code,
        error1=rx1.message != m1,
        error2=rx2_message(rx2) != m2,
        fallback=tx.fallback,
        events=frozenset(events),
    )


def run_trials(
    params: CodeParams,
    trials: Optional[int] = None,
    seed: Optional[int] = None,
    regen_every: Optional[int] = None,
    workers: Optional[int] = None,
) -> SimulationReport:
    """
    Simulate ``trials`` independent message transmissions.

    Args:
        params: Code parameters
        trials: Number of trials (default ``settings.sim_trials``)
        seed: Seeds both the codebooks and the per-trial streams
        regen_every: Draw a fresh codebook every this many trials; 0 keeps
            one codebook for the whole run
        workers: Thread count, capped by SECRECY_TOOLKIT_THREADS

    Returns:
        The report. Results do not depend on ``workers``.
    """
    trials = settings.sim_trials if trials is None else trials
    seed = settings.seed if seed is None else seed
    regen_every = settings.sim_regen_every if regen_every is None else regen_every
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    if regen_every < 0:
        raise ValueError(f"regen_every must be >= 0, got {regen_every}")

    epochs = 1 if regen_every == 0 else math.ceil(trials / regen_every)
    codebooks = [generate_codebook(params, (seed, epoch)) for epoch in range(epochs)]

    track_z = histogram_feasible(params)
    if not track_z:
        logger.warning(
            f"n*log2|Z| = {params.n * math.log2(params.channel.card_z):.2f} exceeds "
            f"{settings.histogram_bits_limit} bits; leakage is not estimated"
        )

    # Populate cached joints before threads share them
    _ = (params.encoder_joint, params.rx1_joint, params.rx2_joint)

    def run(trial: int) -> TrialOutcome:
        epoch = 0 if regen_every == 0 else trial // regen_every
        return _run_trial(params, codebooks[epoch], seed, trial, track_z)

    with ThreadPoolExecutor(max_workers=worker_count(workers)) as pool:
        outcomes = list(pool.map(run, range(trials)))
    logger.info(f"Ran {trials} trials over {epochs} codebook(s) at n={params.n}")

    event_counts = {name: 0 for name in EVENT_NAMES}
    for outcome in outcomes:
        for name in outcome.events:
            event_counts[name] += 1

    leak1 = leak2 = None
    if track_z:
        zs = [o.z for o in outcomes]
        leak1 = plugin_mutual_information([o.m1 for o in outcomes], zs)
        leak2 = plugin_mutual_information([o.m2 for o in outcomes], zs)

    rates = params.rates()
    inside = eval_theorem1(params.channel, params.cascade).contains((rates["R1"], rates["R2"]))
    return SimulationReport(
        trials=trials,
        n=params.n,
        seed=seed,
        regen_every=regen_every,
        codebooks=epochs,
        R1=rates["R1"],
        R2=rates["R2"],
        design_point_inside=inside,
        err1=sum(o.error1 for o in outcomes) / trials,
        err2=sum(o.error2 for o in outcomes) / trials,
        encoder_fallbacks=sum(o.fallback for o in outcomes),
        event_counts=event_counts,
        leakage_available=track_z,
        leak1=leak1,
        leak2=leak2,
        cardinalities=params.cardinalities,
    )
