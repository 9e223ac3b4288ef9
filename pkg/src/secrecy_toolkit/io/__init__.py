"""Input files and result exports."""

from secrecy_toolkit.io.exports import (
    read_region_csv,
    write_fm_trace,
    write_region_csv,
    write_report,
    write_system,
)
from secrecy_toolkit.io.specfiles import (
    SimulationConfig,
    load_cascade,
    load_channel,
    load_simulation_config,
)

__all__ = [
    "SimulationConfig",
    "load_cascade",
    "load_channel",
    "load_simulation_config",
    "read_region_csv",
    "write_fm_trace",
    "write_region_csv",
    "write_report",
    "write_system",
]
