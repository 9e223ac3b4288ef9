"""secrecy-toolkit CLI package."""

__all__ = []
