"""Exception types raised across the package.

Every error derives from :class:`QibamError`; most also derive from
``ValueError`` so callers validating user input can catch either.
"""


class QibamError(Exception):
    pass


# -- simulator --------------------------------------------------------------

class QubitCountOutOfRange(QibamError, ValueError):
    pass


class InvalidQubitIndex(QibamError, ValueError):
    pass


class DuplicateQubitIndex(QibamError, ValueError):
    pass


class NonUnitaryMatrix(QibamError, ValueError):
    pass


class ZeroShots(QibamError, ValueError):
    pass


class QubitCountMismatch(QibamError, ValueError):
    pass


# -- circuit text format ----------------------------------------------------

class UnsupportedOpForSerialization(QibamError, TypeError):
    pass


class QasmError(QibamError, ValueError):
    """Parse failure; ``line`` is 1-based."""

    def __init__(self, line, message):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")


class QasmSyntaxError(QasmError):
    pass


class UnknownGate(QasmError):
    pass


class QubitOutOfRange(QasmError):
    pass


class MissingHeader(QasmError):
    pass


# -- DNA / database ---------------------------------------------------------

class InvalidBase(QibamError, ValueError):
    def __init__(self, position, char):
        self.position = position
        self.char = char
        super().__init__(f"invalid base {char!r} at position {position}")


class EmptySequence(QibamError, ValueError):
    pass


class LengthMismatch(QibamError, ValueError):
    pass


class PatternLongerThanReference(QibamError, ValueError):
    pass


class LayoutInvalid(QibamError, ValueError):
    pass


# -- search pipeline --------------------------------------------------------

class GammaOutOfRange(QibamError, ValueError):
    pass


class DimensionTooLarge(QibamError, ValueError):
    pass


class NoSolutions(QibamError, ValueError):
    pass


class SolutionsExceedSpace(QibamError, ValueError):
    pass


class QueryTooLong(QibamError, ValueError):
    pass


class QubitCeilingExceeded(QibamError, ValueError):
    pass


class MaxRoundsExceeded(QibamError):
    """The randomized schedule ran out of rounds without a verified hit.

    ``outcome`` holds the best candidate seen (``verified`` is False).
    """

    def __init__(self, outcome):
        self.outcome = outcome
        super().__init__(
            f"no verified match after {outcome.rounds} rounds "
            f"(best tag seen: {outcome.tag})"
        )


class InvalidParameters(QibamError, ValueError):
    pass
