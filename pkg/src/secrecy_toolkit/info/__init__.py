"""Probability bookkeeping and information measures."""

from secrecy_toolkit.info.probability import (
    CASCADE_VARIABLES,
    ConditionalPmf,
    JointPmf,
    Pmf,
    chain_compose,
    conditional_entropy,
    entropy,
    entropy_of,
    marginalize,
    mutual_information,
)

__all__ = [
    "CASCADE_VARIABLES",
    "ConditionalPmf",
    "JointPmf",
    "Pmf",
    "chain_compose",
    "conditional_entropy",
    "entropy",
    "entropy_of",
    "marginalize",
    "mutual_information",
]
