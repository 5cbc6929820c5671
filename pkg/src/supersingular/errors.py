"""Exception types shared across the package."""


class PreconditionError(ValueError):
    """An operation was called outside its supported input range."""


class UnsupportedPrime(PreconditionError):
    """No supersingular construction is available for this prime."""


class NoRationalStep(ArithmeticError):
    """The level-2 modular polynomial has no root in F_{p^2} at this vertex."""


class SearchCapExceeded(PreconditionError):
    """A bounded search ran past its limit."""
