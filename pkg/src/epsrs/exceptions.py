"""Exception types shared across the package.

Plain ``ValueError`` is used for bad arguments and domain errors; the classes
here mark conditions discovered *during* a computation, so callers can react
to them (retry with another contour, declare an order, ...) without parsing
messages.
"""


class EpsrsError(Exception):
    """Base class for all computational errors raised by this package."""


class NumericalFailureError(EpsrsError):
    """An iterative kernel (QR eigensolver, SVD) failed to converge."""


class SingularMatrixError(EpsrsError):
    """Matrix is singular to working precision.

    Carries the offending pivot magnitude in ``pivot``.
    """

    def __init__(self, msg: str, pivot: float = 0.0):
        super().__init__(msg)
        self.pivot = pivot


class PairingError(EpsrsError):
    """Left/right eigenvector pairing failed its consistency check."""


class AmbiguousOrderError(EpsrsError):
    """The rank test could not decide a cluster's order.

    The singular-value gap across the rank threshold was below one decade;
    the caller should declare the order explicitly (``declared_orders``).
    """

    def __init__(self, msg: str, cluster_index: int | None = None):
        super().__init__(msg)
        self.cluster_index = cluster_index


class NotAnEpError(EpsrsError):
    """The nilpotency check failed: the matrix is not at an EP of the

    requested order, so the m = n shortcut does not apply.
    """


class ContourError(EpsrsError):
    """A contour does not separate its cluster from the rest of the spectrum."""


class BracketingError(EpsrsError):
    """A search window does not bracket the event being located."""


class AtEpError(EpsrsError):
    """Biorthogonal overlap vanished: the eigenstate is defective and the

    Petermann factor is undefined (divergent).
    """


class SeparationError(EpsrsError):
    """Perturbed cluster members cannot be separated from foreign eigenvalues."""
