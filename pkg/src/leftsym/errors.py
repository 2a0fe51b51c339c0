"""Exception hierarchy.

Every failure a caller can act on gets its own class; all inherit from
LeftSymError so scripts can catch the whole family at once.  Errors that
carry a measured residual keep it as an attribute for reporting.
"""

from __future__ import annotations


class LeftSymError(Exception):
    """Base class for all errors raised by this package."""


class DimensionMismatch(LeftSymError):
    """An argument's shape does not match the algebra dimension."""


class SingularMatrix(LeftSymError):
    """A matrix that must be invertible is numerically singular."""


class SingularMetric(LeftSymError):
    """A metric that must be invertible is numerically singular."""


class NotAntisymmetric(LeftSymError):
    """Structure constants expected to be antisymmetric are not."""


class NotLieBracket(LeftSymError):
    """Constants fail antisymmetry or the Jacobi identity."""


class NotPositiveDefinite(LeftSymError):
    """A bilinear form required to be positive definite is not."""


class NotSkew(LeftSymError):
    """An operator required to be skew-adjoint is not."""


class PreconditionFailed(LeftSymError):
    """An operation's precondition does not hold for the given input."""


class DiagonalizationFailed(LeftSymError):
    """A diagonalization-based routine could not produce a usable basis."""


class IdempotentCheckFailed(LeftSymError):
    """The distinguished vector fails H*H = H beyond tolerance."""

    def __init__(self, residual: float):
        self.residual = residual
        super().__init__(f"H*H - H residual {residual:.3e} exceeds tolerance")


class SystemASViolated(LeftSymError):
    """A relation of the split product system fails on the complement."""

    def __init__(self, name: str, residual: float):
        self.name = name
        self.residual = residual
        super().__init__(f"relation {name} violated, residual {residual:.3e}")


class SpectrumNotZeroOne(LeftSymError):
    """The scaling operator has eigenvalues away from {0, 1}."""


class BlockNotSkew(LeftSymError):
    """A rotation block extracted from the splitting is not skew."""

    def __init__(self, which: str, residual: float):
        self.which = which
        self.residual = residual
        super().__init__(f"block {which} not skew, residual {residual:.3e}")


class Circ1NonZero(LeftSymError):
    """The induced product on the eigenvalue-0 part does not vanish."""

    def __init__(self, residual: float):
        self.residual = residual
        super().__init__(f"product on the flat part nonzero, residual {residual:.3e}")


class SystemViolated(LeftSymError):
    """A compatibility equation of the extracted data fails."""

    def __init__(self, name: str, residual: float):
        self.name = name
        self.residual = residual
        super().__init__(f"equation {name} violated, residual {residual:.3e}")


class ValidationFailed(LeftSymError):
    """Construction data fails its compatibility system."""


class KoszulMismatch(LeftSymError):
    """A built algebra's trace form differs from the predicted one."""

    def __init__(self, residual: float):
        self.residual = residual
        super().__init__(f"trace form mismatch, residual {residual:.3e}")


class HypothesisFailed(LeftSymError):
    """A named hypothesis of a construction recipe fails."""

    def __init__(self, name: str, residual: float):
        self.name = name
        self.residual = residual
        super().__init__(f"hypothesis '{name}' fails, residual {residual:.3e}")


class ZeroH(LeftSymError):
    """The defining vector of a pointed construction is zero."""


class NoKernelVector(LeftSymError):
    """No common kernel vector of the left multiplications exists."""


class VerificationFailed(LeftSymError):
    """An internal cross-check that should hold by theory does not."""


class OracleMismatch(LeftSymError):
    """Two independent computations of the same quantity disagree."""

    def __init__(self, what: str, residual: float):
        self.what = what
        self.residual = residual
        super().__init__(f"{what}: independent routes disagree by {residual:.3e}")


class NotLSPK(LeftSymError):
    """The algebra is not left-symmetric with positive definite trace form."""


class NotEinstein(LeftSymError):
    """The tangent-bundle Ricci form is not proportional to the metric."""

    def __init__(self, residual: float):
        self.residual = residual
        super().__init__(f"Ricci not proportional to the metric, residual {residual:.3e}")


class UnknownSystem(LeftSymError):
    """No built-in polynomial system with the requested name."""


class UnknownEntry(LeftSymError):
    """No catalog entry with the requested name."""


class FixtureBroken(LeftSymError):
    """A catalog entry fails one of its declared predicates."""

    def __init__(self, name: str, predicate: str, residual: float | None = None):
        self.name = name
        self.predicate = predicate
        self.residual = residual
        tail = "" if residual is None else f" (residual {residual:.3e})"
        super().__init__(f"catalog entry '{name}' fails predicate '{predicate}'{tail}")


class ParseError(LeftSymError):
    """The input is not valid JSON."""


class SchemaError(LeftSymError):
    """The input is valid JSON but violates the algebra-file schema."""
