"""Exception types.

The tripwire errors mark conditions that can only arise from a bug (a
non-exact division, a log term, a non-Laurent right-hand side).  Each one
bumps a process-wide counter so a test run can assert that none fired.
"""

from __future__ import annotations

from collections import Counter

TRIPWIRE_COUNTS: Counter = Counter()


class BCMotzkinError(Exception):
    """Base class for all package errors."""


class PreconditionError(BCMotzkinError, ValueError):
    """An identity or operation was invoked outside its hypotheses."""


class VariableMismatchError(BCMotzkinError, ValueError):
    """Operands live in different variable sets or truncation orders."""


class PoleError(BCMotzkinError, ZeroDivisionError):
    """A substitution or evaluation landed on a pole."""


class MissingDependencyError(BCMotzkinError, LookupError):
    """A recursion step needed a lower entry that is not in the store."""


class OracleCapError(BCMotzkinError):
    """Brute-force enumeration refused: the profile is above the cap."""


class ResidueDepthError(BCMotzkinError):
    """The pole order at an expansion center exceeds the requested depth."""


class Tripwire(BCMotzkinError, ArithmeticError):
    """Base for correctness tripwires; construction is counted."""

    def __init__(self, *args):
        TRIPWIRE_COUNTS[type(self).__name__] += 1
        super().__init__(*args)


class ExactDivisionError(Tripwire):
    pass


class LogTermError(Tripwire):
    pass


class NonLaurentError(Tripwire):
    pass


class ShapeError(Tripwire):
    """Top-degree part of F does not have the intersection-number shape."""


def tripwire_total() -> int:
    return sum(TRIPWIRE_COUNTS.values())
