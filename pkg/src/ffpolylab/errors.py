"""Shared exception types.

The CLI maps these onto exit codes: ConfigError -> 2, CapExceeded -> 3,
VerificationError -> 4.
"""


class ConfigError(ValueError):
    """Invalid user-supplied configuration."""


class CapExceeded(RuntimeError):
    """A hard resource guard (state space, enumeration size, memory) was hit."""


class VerificationError(RuntimeError):
    """An output failed re-verification against its recorded config hash."""
