"""Exception hierarchy shared by every module."""


class TQFTError(Exception):
    """Base class for all library errors."""


class SingularMatrix(TQFTError):
    """A linear system or form is rank-deficient at the working tolerance."""


class DimensionMismatch(TQFTError, ValueError):
    pass


class NotCommuting(TQFTError):
    def __init__(self, residual, tol):
        super().__init__(f"operators do not commute: residual {residual:.3e} > {tol:.3e}")
        self.residual = residual


class NotSelfAdjoint(TQFTError):
    pass


class FormNotPositive(TQFTError):
    def __init__(self, min_eig, tol):
        super().__init__(f"form is not positive definite: eigenvalue {min_eig:.3e} <= {tol:.3e}")
        self.min_eig = min_eig


class NotPositiveDefinite(TQFTError):
    """The Hermitian form has a non-positive eigenvalue, so the data is not unitary."""


class RankDeficient(TQFTError):
    pass


class ArityMismatch(TQFTError, ValueError):
    pass


class IncompatiblePair(TQFTError):
    """The (algebra, hermitian form) pair violates a consequence of the Hermitian axiom."""

    def __init__(self, report):
        failing = ", ".join(report.failing()) or "?"
        super().__init__(f"Hermitian axiom fails: {failing}")
        self.report = report


class AlgebraFileError(TQFTError):
    pass


class ParseError(AlgebraFileError):
    pass


class ShapeError(AlgebraFileError):
    pass


class AxiomViolation(TQFTError):
    def __init__(self, report):
        super().__init__("Frobenius axioms fail: " + ", ".join(report.failing()))
        self.report = report
