"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input lies outside the region where a formula is valid."""


class DegenerateAttackError(ValueError):
    """Attack ensemble with a vanishing rate denominator."""


class SamplingError(RuntimeError):
    """Rejection sampling exhausted its draw budget."""


class InsufficientSiftError(RuntimeError):
    """Protocol run ended with too few sifted rounds in some basis."""


class NoSecureDistanceError(RuntimeError):
    """Key rate is nonpositive already at zero distance."""
