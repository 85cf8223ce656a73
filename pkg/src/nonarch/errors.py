"""Exception types shared across the package."""


class NonarchError(Exception):
    """Base class for all library errors."""


class PrecisionExhaustedError(NonarchError):
    """A result cannot be certified at the working precision or window."""


class UndecidableSlopeError(NonarchError):
    """Explicit coefficients and the tail bound disagree on the critical slope."""


class IndeterminateGermError(NonarchError):
    """The germ is constant (or not certifiably nonconstant) at the known degree."""


class PoleCollisionError(NonarchError):
    """An evaluation point collides with a pole or forbidden zero."""


class TailCertificateError(NonarchError):
    """The truncation window is too small to certify the discarded tail."""


class NonStabilizedError(NonarchError):
    """An iterative estimate did not stabilize within the allowed depth."""


class NoAdmissibleOrderError(NonarchError):
    """No vanishing order k with k+1 not a prime power exists in the window."""

    def __init__(self, nmax, orders):
        self.nmax = nmax
        self.orders = tuple(orders)
        super().__init__(
            f"no order k <= {nmax} with k+1 not a p-power; achieved orders: {self.orders}"
        )


class NotSeparatedError(NonarchError):
    """The tower is too coarse to separate the two points."""
