"""Exception types shared across the package."""


class ElectronLabError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(ElectronLabError, ValueError):
    """An argument lies outside the domain an operation is defined on."""


class UnsupportedConfigurationError(ElectronLabError, ValueError):
    """The requested parameter choice has no closed form in this model."""


class ConfigError(ElectronLabError, ValueError):
    """A run configuration is malformed, unknown, or of the wrong type."""
