"""Ambient utilities: configuration, settings, logging and exceptions."""

from secrecy_toolkit.utils.logging import get_logger, setup_logging
from secrecy_toolkit.utils.settings import Settings, settings

__all__ = ["get_logger", "setup_logging", "Settings", "settings"]
