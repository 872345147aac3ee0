"""
Exception hierarchy for the digraph cyclability toolkit
"""

from typing import Optional


class CyclabilityError(Exception):
    """Base class for every toolkit error"""


class InvalidVertexError(CyclabilityError, ValueError):
    """Vertex id outside 0..n-1, or a forbidden repeated vertex"""


class InvalidDigraphError(CyclabilityError, ValueError):
    """Digraph invariant broken (loop, bad order)"""


class DuplicateArcError(InvalidDigraphError):
    """Arc inserted twice into a builder"""


class InvalidPathError(CyclabilityError, ValueError):
    """Vertex sequence is not a path / cycle of the digraph"""


class DigraphFormatError(CyclabilityError, ValueError):
    """Malformed digraph text"""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class PreconditionError(CyclabilityError, ValueError):
    """An operation was called outside its precondition"""


class ConditionNotMet(PreconditionError):
    """Degree condition required by a construction does not hold"""


class HypothesisNotMet(PreconditionError):
    """A check requiring condition A0 was called on a set that violates it"""


class LemmaViolation(CyclabilityError, RuntimeError):
    """A construction guaranteed by its degree condition failed"""


class CapExceeded(CyclabilityError, RuntimeError):
    """Digraph order is above the exact oracle's cap"""


class SearchBudgetExceeded(CyclabilityError, RuntimeError):
    """Bounded path search expanded more nodes than allowed"""


class ScanTooLarge(CyclabilityError, ValueError):
    """Exhaustive enumeration requested above the supported order"""
