"""Broadcast channel model and structural checks."""

from secrecy_toolkit.channel.broadcast import (
    ORDERED_CHAINS,
    THM2_ORDERS,
    THM3_ORDERS,
    BroadcastChannel,
    DegradednessOrder,
    Output,
    check_degradedness,
    holding_orders,
    induced_joint,
    is_deterministic,
    output_kernel,
    output_map,
    require_family,
    theorem_families,
    theorem_family,
)

__all__ = [
    "ORDERED_CHAINS",
    "THM2_ORDERS",
    "THM3_ORDERS",
    "BroadcastChannel",
    "DegradednessOrder",
    "Output",
    "check_degradedness",
    "holding_orders",
    "induced_joint",
    "is_deterministic",
    "output_kernel",
    "output_map",
    "require_family",
    "theorem_families",
    "theorem_family",
]
