"""Finite-blocklength simulation of the layered secrecy code."""

from secrecy_toolkit.sim.codebook import Codebook, generate_codebook, join_m2a, otp_combine, split_m2a
from secrecy_toolkit.sim.coder import Decoded, Transmission, decode_rx1, decode_rx2, encode, transmit
from secrecy_toolkit.sim.params import CodeParams
from secrecy_toolkit.sim.trials import SimulationReport, plugin_mutual_information, run_trials
from secrecy_toolkit.sim.typicality import typicality_check

__all__ = [
    "CodeParams",
    "Codebook",
    "Decoded",
    "SimulationReport",
    "Transmission",
    "decode_rx1",
    "decode_rx2",
    "encode",
    "generate_codebook",
    "join_m2a",
    "otp_combine",
    "plugin_mutual_information",
    "run_trials",
    "split_m2a",
    "transmit",
    "typicality_check",
]
