"""Exception types shared across the package."""


class OpsampError(Exception):
    """Base class for all package-specific errors."""


class DomainError(OpsampError, ValueError):
    """An argument is outside the mathematical domain of the operation."""


class UnsupportedOrderError(OpsampError, ValueError):
    """A derivative order above the supported range was requested."""


class BandwidthRangeError(OpsampError, OverflowError):
    """A bandwidth/order combination overflows the representable range."""


class CertificateError(OpsampError, ValueError):
    """A vector lacks (or violates) the bandwidth certificate an operator needs."""


class MissingAuxiliaryError(OpsampError, ValueError):
    """An odd-order divided-difference formula needs a first derivative that
    was neither supplied nor computable."""


class QuadratureSpecError(OpsampError, ValueError):
    """A quadrature specification cannot reach the requested tolerance."""


class ConstructionError(OpsampError, ValueError):
    """A model vector cannot be built from the given data."""


class InsufficientDataError(OpsampError, ValueError):
    """Too few usable data points remain for a fit."""
