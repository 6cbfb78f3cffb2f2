"""Exception hierarchy shared across the package."""


class CavlinkError(Exception):
    """Base class for all package errors."""


class DomainError(CavlinkError, ValueError):
    """An input lies outside the domain where a model is defined."""


class GeometryError(DomainError):
    """Cavity geometry is unstable or admits no solution."""


class LosslessCavityError(DomainError):
    """A loss-dependent quantity was requested for a zero-loss cavity."""


class SingularityError(DomainError):
    """A response function was evaluated at a pole."""


class NoHeraldError(DomainError):
    """No detection event is possible, so the protocol never heralds."""


class ConfigurationError(CavlinkError, ValueError):
    """A run configuration is malformed or violates a numerical policy."""
