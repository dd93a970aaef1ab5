"""Package-level exception types."""


class ConfigError(ValueError):
    """Invalid configuration: bad parameter values or unresolvable references."""


class DivergenceError(RuntimeError):
    """A simulation signal or state became non-finite."""
