"""Exception types that map onto distinct CLI exit codes."""


class ConfigError(ValueError):
    """Invalid or inconsistent run configuration (CLI exit code 2)."""


class RealizabilityError(RuntimeError):
    """A count vector cannot be walked as a single closed sequence (exit code 3)."""


class IdentifiabilityError(RuntimeError):
    """The uniform design yields a singular information matrix (exit code 3)."""
