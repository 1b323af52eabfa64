"""Exception types shared across the package."""


class EndoscopeError(Exception):
    """Base class for all package errors."""


class InvalidType(EndoscopeError):
    """Unknown or invalid simple root-system type/rank combination."""


class RankTooSmall(EndoscopeError):
    """Operation needs a root system of larger rank."""


class NotDominant(EndoscopeError):
    """Weight has a negative fundamental coordinate."""


class NotNilpotentOfOrderP(EndoscopeError):
    """Matrix does not satisfy m^p = 0."""


class RestrictednessViolation(EndoscopeError):
    """(ad u_i)^p does not vanish mod p for some generator."""


class RelationViolation(EndoscopeError):
    """Action matrices do not satisfy the algebra relations."""


class AlgebraMismatch(EndoscopeError):
    """Modules live over different algebras."""


class SplittingFailure(EndoscopeError):
    """Free-summand splitting could not be constructed."""


class CapExceeded(EndoscopeError):
    """Requested computation exceeds the configured desk-scale cap."""


class BudgetExceeded(EndoscopeError):
    """Enumeration budget exhausted before completion."""


class NotEndotrivialLocally(EndoscopeError):
    """Restriction to a rank-2 subalgebra is not a syzygy plus projectives."""


class InconclusiveIsomorphism(EndoscopeError):
    """Isomorphism test exhausted its configured search without a verdict."""
