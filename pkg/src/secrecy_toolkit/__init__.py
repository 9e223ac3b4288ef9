"""secrecy-toolkit - secrecy rate regions for broadcast channels.

Inner bounds and capacity regions for the two-receiver broadcast channel
with an eavesdropper and receiver message side information, a
Fourier-Motzkin engine over exact rationals, and a small-blocklength
simulator of the layered random code.
"""

__version__ = "0.1.0"
__author__ = "secrecy-toolkit contributors"

__all__ = ["__version__"]
