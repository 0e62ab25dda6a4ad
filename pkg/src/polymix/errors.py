"""Exception taxonomy.

Budget overruns (BudgetExceeded, CapExceeded, TooLarge) are recoverable:
callers surface them as an "undecided" outcome rather than a crash.
Everything else signals bad input or a broken internal invariant.
"""


class PolymixError(Exception):
    """Base class for all package errors."""


class ParseError(PolymixError):
    """Malformed expression or symbol text.

    Carries the character offset of the first offending token when known.
    """

    def __init__(self, message, position=None):
        super().__init__(message)
        self.position = position


class InvalidSymbol(PolymixError):
    """A Schlafli symbol entry out of range (every entry must be >= 2)."""


class NotConvexSeed(PolymixError):
    """A mix leaf that is not a regular convex polytope."""


class RankMismatch(PolymixError):
    """Operands of a mix or comparison have different ranks."""


class InvalidWord(PolymixError):
    """A word referencing a generator index outside the presentation."""


class DegreeMismatch(PolymixError):
    """Permutations of different degrees combined in one operation."""


class BudgetExceeded(PolymixError):
    """Coset enumeration needed more live cosets than the budget allows."""


class CapExceeded(PolymixError):
    """Element enumeration or intersection filtering exceeded its cap."""


class TooLarge(PolymixError):
    """A flag graph would exceed the configured maximum number of flags."""


class FaithfulnessFailure(PolymixError):
    """The coset action of a group on a stabilizer subgroup is unfaithful."""


class NonIntegralFaceCount(PolymixError):
    """A face-count division came out non-integral; upstream data is wrong."""
