"""Exception and warning types shared across the package."""


class BerglabError(Exception):
    """Base class for all library errors."""


class OutOfSupport(BerglabError):
    """An evaluation point lies outside a weight's support interval."""


class UnsupportedOrder(BerglabError):
    """A derivative order beyond the closed-form providers was requested."""


class NoConvergence(BerglabError):
    """An adaptive computation hit its depth/term cap above tolerance."""

    def __init__(self, message, best_value=None, error_estimate=None):
        super().__init__(message)
        self.best_value = best_value
        self.error_estimate = error_estimate


class InnerTransformFailure(NoConvergence):
    """The inner Laplace transform of a nested quadrature did not converge."""


class NoDecay(BerglabError):
    """A series never exhibited the sustained term decay needed for a tail bound."""


class PoleInC(BerglabError):
    """Hypergeometric lower parameter hits a nonpositive integer pole."""


class UnsupportedSelector(BerglabError):
    """Requested geometry/kind combination has no closed-form oracle."""


class HigherVanishing(BerglabError):
    """Weight vanishes to order > 1 at the origin; only first order is handled."""


class DegenerateGrid(BerglabError):
    """Extrapolation grid contains repeated abscissae."""


class NonpositiveSlope(BerglabError):
    """Endpoint expansion requires a strictly positive phase slope."""


class DerivativeUnavailable(BerglabError):
    """A function object cannot supply derivatives of the requested order."""


class ParseError(BerglabError):
    """A weight string or run configuration could not be parsed."""


class ValidationError(BerglabError):
    """A parsed run configuration violates an invariant."""


class HypothesisViolation(UserWarning):
    """A prediction was computed for a weight failing the required hypotheses."""
