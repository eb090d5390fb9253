"""Exception types shared across the package.

Every error carries a short machine-readable reason in ``args[0]`` so the
CLI can map failures onto exit codes without string matching.
"""


class FFZetaError(Exception):
    """Base class for all package errors."""


class NotPrime(FFZetaError):
    pass


class BoundExceeded(FFZetaError):
    """A desk-scale enumeration or extension bound was exceeded."""


class ZeroInput(FFZetaError):
    pass


class NotAPower(FFZetaError):
    """Raised when no (r-1)-st root exists; names the failing condition."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class NotOneUnit(FFZetaError):
    pass


class DomainMismatch(FFZetaError):
    pass


class BadReduction(FFZetaError):
    """No integral model with unit leading coefficient exists at the prime."""


class NotCyclic(FFZetaError):
    """Point module is not cyclic; flags a bug or a genuine counterexample."""


class InconsistentCRT(FFZetaError):
    """Frobenius data from distinct auxiliary primes cannot be reconciled."""


class SingularRecursion(FFZetaError):
    pass


class NonConvergent(FFZetaError):
    pass


class InsufficientData(FFZetaError):
    pass


class BadPrime(FFZetaError):
    """The prime meets a zero or pole of the object being evaluated."""


class NotAUnitModV(FFZetaError):
    pass


class Unsupported(FFZetaError):
    """Requested quantity is outside the implemented theory (e.g. rank-2 bad primes)."""


class CacheCorrupt(FFZetaError):
    pass


class ParseError(FFZetaError):
    def __init__(self, text: str, pos: int, message: str):
        super().__init__(f"parse error at position {pos}: {message} (input: {text!r})")
        self.text = text
        self.pos = pos
