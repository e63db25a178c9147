"""Exception types shared across the package."""
from .deadline import TaskTimeout
from .hilbert import InfiniteLength
from .monomials import ExponentOverflow
from .polynomial import ParseError


class PreconditionError(ValueError):
    """A mathematical precondition of an operation does not hold."""


__all__ = ["PreconditionError", "InfiniteLength", "ExponentOverflow", "ParseError", "TaskTimeout"]
