"""Exception hierarchy shared by the solver modules."""


class DickeBECError(Exception):
    """Base class for all package errors."""


class DomainError(DickeBECError, ValueError):
    """An argument lies outside the domain of the function."""


class DivergenceError(DickeBECError, ArithmeticError):
    """The requested quantity is infinite (e.g. rho0(0) for nu <= 2)."""


class StabilityViolation(DickeBECError, ValueError):
    """The couplings violate lambda > g**2 / (8 Omega)."""


class ConstraintError(DickeBECError, ValueError):
    """A candidate state violates the gap constraint x >= epsilon."""


class BracketError(DickeBECError, RuntimeError):
    """A monotone equation could not be bracketed. Indicates a bug."""


class NoCandidateError(DickeBECError, RuntimeError):
    """No stationary point exists at the requested chemical potential."""


class TruncationError(DickeBECError, RuntimeError):
    """Fock-space cutoffs are too small for the requested accuracy."""
