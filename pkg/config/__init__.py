"""
Shared configuration, error types and logging setup.
"""

from config.settings import Settings, settings

__all__ = ["Settings", "settings"]
