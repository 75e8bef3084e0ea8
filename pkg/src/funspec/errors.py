"""Exception types shared across the package.

All input-validation failures derive from ``ValueError`` so callers can
catch broadly; the CLI maps each class to a distinct exit code.
"""


class ConfigError(ValueError):
    """Invalid configuration: bandwidth out of range, empty frequency list,
    malformed run config, and similar validation failures."""


class DimensionError(ValueError):
    """Mismatched grids or array shapes between operands."""


class ResolutionError(ValueError):
    """A grid (in time, space, or frequency) is too coarse for the request."""


class DataFormatError(ValueError):
    """Malformed on-disk data (CSV/JSON parse or structure problems)."""


class NumericsError(ArithmeticError):
    """Non-finite values detected where finite results are required."""
