"""Exception hierarchy shared by all starmono modules."""


class StarMonoError(Exception):
    """Base class for all library-specific errors."""


class ShapeMismatch(StarMonoError):
    """Matrix or block dimensions do not fit together."""


class NotInvertible(StarMonoError):
    """A homomorphism or matrix that was required to be invertible is not."""


class DiagonalBlockNotInvertible(StarMonoError):
    """A block-row operator's diagonal block is not an automorphism."""


class NotRealizable(StarMonoError):
    """An operator admits no block-row factorization for the given decomposition.

    ``index`` is the first step k (1-based, in star order) whose diagonal
    block fails to be invertible.
    """

    def __init__(self, index: int, message: str | None = None):
        self.index = index
        super().__init__(message or f"not realizable: diagonal block {index} is not invertible")


class TorsionPresent(StarMonoError):
    """Duality requested over integral (co)homology that is not torsion free."""


class InconsistentData(StarMonoError):
    """Critical-value data violates the exact-sequence rank constraints."""


class DegenerateSeifertForm(StarMonoError):
    """The Seifert form is singular, so the monodromy cannot be recovered."""


class InstanceFormatError(StarMonoError):
    """An instance file is malformed or violates the schema."""
