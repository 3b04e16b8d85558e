"""Exception hierarchy shared by every module."""


class LocalSpectraError(Exception):
    """Base class for all errors raised by this package."""


class ModelMismatchError(LocalSpectraError, ValueError):
    """Operands belong to different fields (kind or prime differ)."""


class PrecisionError(LocalSpectraError, ArithmeticError):
    """An operation needs digits beyond the known precision window."""


class InvalidSetError(LocalSpectraError, ValueError):
    """A ball family, digit set or residue set violates its invariants."""


class SearchBudgetExceeded(LocalSpectraError, RuntimeError):
    """A depth-first search visited more nodes than its budget allows."""


class CertificateError(LocalSpectraError, AssertionError):
    """A tile or Hadamard certificate failed exact re-verification."""
